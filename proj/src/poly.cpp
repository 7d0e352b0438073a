#include "chi/poly.hpp"

#include <algorithm>
#include <sstream>

#include "chi/error.hpp"

namespace chi::localization {

Poly::Poly(const Rat& c) {
    if (c != 0) terms_[{0, 0, 0}] = c;
}

Poly Poly::variable(int var, int power) {
    if (var < 0 || var > 2) throw domain_error("variable index must be 0, 1 or 2");
    if (power < 0) throw domain_error("negative exponents are not representable");
    Monomial m{0, 0, 0};
    m[var] = power;
    return term(Rat(1), m);
}

Poly Poly::term(const Rat& c, const Monomial& m) {
    Poly p;
    if (c != 0) p.terms_[m] = c;
    return p;
}

void Poly::prune() {
    for (auto it = terms_.begin(); it != terms_.end();)
        it = (it->second == 0) ? terms_.erase(it) : std::next(it);
}

Poly Poly::operator-() const {
    Poly p = *this;
    for (auto& [m, c] : p.terms_) c = -c;
    return p;
}

Poly& Poly::operator+=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) terms_[m] += c;
    prune();
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) terms_[m] -= c;
    prune();
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly p;
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            const Monomial m{ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]};
            p.terms_[m] += ca * cb;
        }
    }
    p.prune();
    return p;
}

Poly operator*(const Poly& a, const Rat& c) {
    Poly p;
    if (c == 0) return p;
    p = a;
    for (auto& [m, coeff] : p.terms_) coeff *= c;
    return p;
}

int Poly::degree(int var) const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m[var]);
    return d;
}

Poly Poly::substitute_alphas(const Rat& a1, const Rat& a2) const {
    Poly out;
    for (const auto& [m, c] : terms_) {
        Rat value = c;
        for (int i = 0; i < m[kAlpha1]; ++i) value *= a1;
        for (int i = 0; i < m[kAlpha2]; ++i) value *= a2;
        out.terms_[{0, 0, m[kScaleK]}] += value;
    }
    out.prune();
    return out;
}

Rat Poly::evaluate(const Rat& a1, const Rat& a2, const Rat& k) const {
    Rat sum(0);
    for (const auto& [m, c] : terms_) {
        Rat value = c;
        for (int i = 0; i < m[kAlpha1]; ++i) value *= a1;
        for (int i = 0; i < m[kAlpha2]; ++i) value *= a2;
        for (int i = 0; i < m[kScaleK]; ++i) value *= k;
        sum += value;
    }
    return sum;
}

std::map<int, Rat> Poly::k_coefficients() const {
    std::map<int, Rat> out;
    for (const auto& [m, c] : terms_) {
        if (m[kAlpha1] != 0 || m[kAlpha2] != 0)
            throw consistency_error("polynomial still depends on torus weights");
        out[m[kScaleK]] += c;
    }
    for (auto it = out.begin(); it != out.end();)
        it = (it->second == 0) ? out.erase(it) : std::next(it);
    return out;
}

std::pair<Monomial, Rat> Poly::leading_term() const {
    if (terms_.empty()) throw domain_error("zero polynomial has no leading term");
    const auto& [m, c] = *terms_.rbegin();
    return {m, c};
}

std::optional<Poly> Poly::divided_by(const Poly& g) const {
    if (g.is_zero()) throw domain_error("division by the zero polynomial");
    Poly rem = *this;
    Poly quot;
    const auto [gm, gc] = g.leading_term();
    while (!rem.is_zero()) {
        const auto [rm, rc] = rem.leading_term();
        if (rm[0] < gm[0] || rm[1] < gm[1] || rm[2] < gm[2]) return std::nullopt;
        const Monomial qm{rm[0] - gm[0], rm[1] - gm[1], rm[2] - gm[2]};
        const Poly t = Poly::term(rc / gc, qm);
        quot += t;
        rem -= t * g;
    }
    return quot;
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    static const char* names[3] = {"a1", "a2", "k"};
    std::ostringstream out;
    bool first = true;
    // lex-descending over (a1, a2, k)
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        const bool neg = c < 0;
        const Rat mag = neg ? Rat(-c) : c;
        if (first) {
            if (neg) out << '-';
            first = false;
        } else {
            out << (neg ? " - " : " + ");
        }
        const bool has_vars = (m[0] != 0 || m[1] != 0 || m[2] != 0);
        if (!has_vars || mag != 1) {
            out << mag.get_str();
            if (has_vars) out << '*';
        }
        bool started = false;
        for (int v = 0; v < 3; ++v) {
            if (m[v] == 0) continue;
            if (started) out << '*';
            out << names[v];
            if (m[v] > 1) out << '^' << m[v];
            started = true;
        }
    }
    return out.str();
}

MultivariateRational::MultivariateRational(Poly num, Poly den)
    : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw domain_error("rational function with zero denominator");
    normalize();
}

void MultivariateRational::normalize() {
    if (num_.is_zero()) {
        den_ = Poly(Rat(1));
        return;
    }
    // clear coefficient denominators, then remove the joint integer content
    Int lcm(1);
    for (const auto& [m, c] : num_.terms())
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
    for (const auto& [m, c] : den_.terms())
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
    num_ = num_ * Rat(lcm);
    den_ = den_ * Rat(lcm);

    Int content(0);
    for (const auto& [m, c] : num_.terms())
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_num().get_mpz_t());
    for (const auto& [m, c] : den_.terms())
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_num().get_mpz_t());
    if (content > 1) {
        const Rat inv = Rat(1) / Rat(content);
        num_ = num_ * inv;
        den_ = den_ * inv;
    }
    if (den_.leading_term().second < 0) {
        num_ = -num_;
        den_ = -den_;
    }
}

MultivariateRational operator+(const MultivariateRational& a, const MultivariateRational& b) {
    return MultivariateRational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

MultivariateRational operator-(const MultivariateRational& a, const MultivariateRational& b) {
    return MultivariateRational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

MultivariateRational operator*(const MultivariateRational& a, const MultivariateRational& b) {
    return MultivariateRational(a.num_ * b.num_, a.den_ * b.den_);
}

MultivariateRational operator/(const MultivariateRational& a, const MultivariateRational& b) {
    if (b.is_zero()) throw domain_error("division by zero rational function");
    return MultivariateRational(a.num_ * b.den_, a.den_ * b.num_);
}

bool MultivariateRational::equals(const MultivariateRational& o) const {
    return (num_ * o.den_ - o.num_ * den_).is_zero();
}

std::optional<Poly> MultivariateRational::as_polynomial() const {
    return num_.divided_by(den_);
}

}  // namespace chi::localization
