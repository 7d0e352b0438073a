#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>

#include "chi/exact.hpp"

namespace chi::localization {

/// Exponent vector for the variables (a1, a2, k) -- the two torus weights and
/// the scale parameter. All exponents stay nonnegative; fractional weights
/// like a1/5 live in the coefficients.
using Monomial = std::array<int, 3>;

inline constexpr int kAlpha1 = 0;
inline constexpr int kAlpha2 = 1;
inline constexpr int kScaleK = 2;

/// Sparse polynomial over exact rationals in a1, a2, k.
class Poly {
  public:
    Poly() = default;
    explicit Poly(const Rat& c);
    static Poly variable(int var, int power = 1);
    static Poly term(const Rat& c, const Monomial& m);

    bool is_zero() const { return terms_.empty(); }
    const std::map<Monomial, Rat>& terms() const { return terms_; }

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    friend Poly operator*(const Poly& a, const Rat& c);
    bool operator==(const Poly& o) const { return terms_ == o.terms_; }

    int degree(int var) const;  // -1 for the zero polynomial

    /// Substitutes numbers for a1 and a2, leaving a polynomial in k.
    Poly substitute_alphas(const Rat& a1, const Rat& a2) const;
    /// Full evaluation (all three variables).
    Rat evaluate(const Rat& a1, const Rat& a2, const Rat& k) const;

    /// Coefficient map by k-power; nonzero entries only. Meaningful when the
    /// polynomial has no alpha dependence.
    std::map<int, Rat> k_coefficients() const;

    /// Largest monomial in lex order with its coefficient.
    std::pair<Monomial, Rat> leading_term() const;

    /// Exact quotient this / g, or nullopt when g does not divide this.
    std::optional<Poly> divided_by(const Poly& g) const;

    /// Human-readable rendering like "5/2*k^2 - a1*k + 1"; terms in
    /// lex-descending order. Deterministic.
    std::string str() const;

  private:
    void prune();
    std::map<Monomial, Rat> terms_;
};

/// Fraction of polynomials. Canonical form: integer contents reduced out of
/// numerator and denominator jointly and the denominator's lex-leading
/// coefficient made positive; no polynomial gcd is attempted, so equality is
/// decided by cross-multiplication.
class MultivariateRational {
  public:
    MultivariateRational() : num_(), den_(Rat(1)) {}
    MultivariateRational(Poly num, Poly den);
    explicit MultivariateRational(Poly num) : MultivariateRational(std::move(num), Poly(Rat(1))) {}

    const Poly& numerator() const { return num_; }
    const Poly& denominator() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    friend MultivariateRational operator+(const MultivariateRational& a,
                                          const MultivariateRational& b);
    friend MultivariateRational operator-(const MultivariateRational& a,
                                          const MultivariateRational& b);
    friend MultivariateRational operator*(const MultivariateRational& a,
                                          const MultivariateRational& b);
    friend MultivariateRational operator/(const MultivariateRational& a,
                                          const MultivariateRational& b);

    /// Equality by cross-multiplication of canonical forms.
    bool equals(const MultivariateRational& o) const;

    /// The fraction as a polynomial, when the denominator divides exactly.
    std::optional<Poly> as_polynomial() const;

  private:
    void normalize();
    Poly num_;
    Poly den_;
};

}  // namespace chi::localization
