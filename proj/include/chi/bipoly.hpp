#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "chi/exact.hpp"

namespace chi::resolution {

/// Sparse bivariate polynomial over arbitrary-precision integers. The two
/// variables are positional; names live at the chart/germ level.
class Poly2 {
  public:
    Poly2() = default;
    explicit Poly2(const Int& c);
    static Poly2 term(const Int& c, int ex, int ey);
    static Poly2 variable(int which, int power = 1);  // 0 -> x, 1 -> y

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    const std::map<std::pair<int, int>, Int>& terms() const { return terms_; }

    Poly2 operator-() const;
    Poly2& operator+=(const Poly2& o);
    Poly2& operator-=(const Poly2& o);
    friend Poly2 operator+(Poly2 a, const Poly2& b) { return a += b; }
    friend Poly2 operator-(Poly2 a, const Poly2& b) { return a -= b; }
    friend Poly2 operator*(const Poly2& a, const Poly2& b);
    bool operator==(const Poly2& o) const { return terms_ == o.terms_; }

    /// Smallest total degree of a monomial; -1 for the zero polynomial.
    int order_at_origin() const;
    /// Smallest power of x (resp. y) dividing every term.
    int content_x() const;
    int content_y() const;
    Poly2 divided_by_monomial(int ex, int ey) const;

    Int coefficient(int ex, int ey) const;
    Int value_at_origin() const { return coefficient(0, 0); }

    /// y -> x*y (first blow-up chart) and x -> x*y (second chart).
    Poly2 substitute_y_to_xy() const;
    Poly2 substitute_x_to_xy() const;
    /// y -> y + t and x -> x + t (chart recentering).
    Poly2 shift_y(const Int& t) const;
    Poly2 shift_x(const Int& t) const;

    /// Restriction to the coordinate line {y = 0} (resp. {x = 0}) as a dense
    /// univariate coefficient vector, low degree first.
    std::vector<Int> restrict_to_y0() const;
    std::vector<Int> restrict_to_x0() const;

    int total_degree() const;

    /// Rendering with explicit variable names; terms sorted lex-descending by
    /// (x exponent, y exponent). Example: "p_1^3+z^2".
    std::string str(const std::string& xname, const std::string& yname) const;

  private:
    void prune();
    std::map<std::pair<int, int>, Int> terms_;
};

/// Rational roots of a dense univariate integer polynomial (low degree
/// first), returned with multiplicities. Reports whether the nonzero root
/// set was fully accounted for over the rationals.
struct RootSearch {
    std::vector<std::pair<Rat, int>> roots;  // root, multiplicity
    bool complete;                           // all nonzero roots are rational
};
RootSearch rational_roots(const std::vector<Int>& coeffs);

/// Parsed polynomial text together with the variable names encountered,
/// in first-appearance order.
struct ParsedPoly {
    Poly2 poly;
    std::vector<std::string> vars;  // size 0, 1 or 2
};

/// Parses "+ - * ^" polynomial expressions with parentheses, implicit
/// multiplication (juxtaposition) and brace exponents ("q^{15}").
/// Variables are a letter optionally followed by digits or _digits.
/// More than two distinct variables is an arity error; syntax errors carry
/// the offending position.
ParsedPoly parse_poly2(const std::string& text);

}  // namespace chi::resolution
