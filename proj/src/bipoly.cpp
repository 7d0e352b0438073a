#include "chi/bipoly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "chi/error.hpp"

namespace chi::resolution {

Poly2::Poly2(const Int& c) {
    if (c != 0) terms_[{0, 0}] = c;
}

Poly2 Poly2::term(const Int& c, int ex, int ey) {
    Poly2 p;
    if (c != 0) p.terms_[{ex, ey}] = c;
    return p;
}

Poly2 Poly2::variable(int which, int power) {
    return term(Int(1), which == 0 ? power : 0, which == 0 ? 0 : power);
}

bool Poly2::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == std::pair{0, 0});
}

void Poly2::prune() {
    for (auto it = terms_.begin(); it != terms_.end();)
        it = (it->second == 0) ? terms_.erase(it) : std::next(it);
}

Poly2 Poly2::operator-() const {
    Poly2 p = *this;
    for (auto& [m, c] : p.terms_) c = -c;
    return p;
}

Poly2& Poly2::operator+=(const Poly2& o) {
    for (const auto& [m, c] : o.terms_) terms_[m] += c;
    prune();
    return *this;
}

Poly2& Poly2::operator-=(const Poly2& o) {
    for (const auto& [m, c] : o.terms_) terms_[m] -= c;
    prune();
    return *this;
}

Poly2 operator*(const Poly2& a, const Poly2& b) {
    Poly2 p;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_)
            p.terms_[{ma.first + mb.first, ma.second + mb.second}] += ca * cb;
    p.prune();
    return p;
}

int Poly2::order_at_origin() const {
    int best = -1;
    for (const auto& [m, c] : terms_) {
        const int deg = m.first + m.second;
        if (best < 0 || deg < best) best = deg;
    }
    return best;
}

int Poly2::content_x() const {
    int best = -1;
    for (const auto& [m, c] : terms_)
        best = (best < 0) ? m.first : std::min(best, m.first);
    return std::max(best, 0);
}

int Poly2::content_y() const {
    int best = -1;
    for (const auto& [m, c] : terms_)
        best = (best < 0) ? m.second : std::min(best, m.second);
    return std::max(best, 0);
}

Poly2 Poly2::divided_by_monomial(int ex, int ey) const {
    Poly2 p;
    for (const auto& [m, c] : terms_) {
        if (m.first < ex || m.second < ey)
            throw domain_error("monomial does not divide polynomial");
        p.terms_[{m.first - ex, m.second - ey}] = c;
    }
    return p;
}

Int Poly2::coefficient(int ex, int ey) const {
    const auto it = terms_.find({ex, ey});
    return it == terms_.end() ? Int(0) : it->second;
}

Poly2 Poly2::substitute_y_to_xy() const {
    Poly2 p;
    for (const auto& [m, c] : terms_) p.terms_[{m.first + m.second, m.second}] += c;
    p.prune();
    return p;
}

Poly2 Poly2::substitute_x_to_xy() const {
    Poly2 p;
    for (const auto& [m, c] : terms_) p.terms_[{m.first, m.first + m.second}] += c;
    p.prune();
    return p;
}

Poly2 Poly2::shift_y(const Int& t) const {
    Poly2 out;
    for (const auto& [m, c] : terms_) {
        // c x^i (y + t)^j expanded by iterated multiplication
        Poly2 factor(Int(1));
        const Poly2 binomial = Poly2::variable(1) + Poly2(t);
        for (int i = 0; i < m.second; ++i) factor = factor * binomial;
        out += factor * Poly2::term(c, m.first, 0);
    }
    return out;
}

Poly2 Poly2::shift_x(const Int& t) const {
    Poly2 out;
    for (const auto& [m, c] : terms_) {
        Poly2 factor(Int(1));
        const Poly2 binomial = Poly2::variable(0) + Poly2(t);
        for (int i = 0; i < m.first; ++i) factor = factor * binomial;
        out += factor * Poly2::term(c, 0, m.second);
    }
    return out;
}

std::vector<Int> Poly2::restrict_to_y0() const {
    std::vector<Int> coeffs;
    for (const auto& [m, c] : terms_) {
        if (m.second != 0) continue;
        if (static_cast<int>(coeffs.size()) <= m.first) coeffs.resize(m.first + 1, Int(0));
        coeffs[m.first] = c;
    }
    return coeffs;
}

std::vector<Int> Poly2::restrict_to_x0() const {
    std::vector<Int> coeffs;
    for (const auto& [m, c] : terms_) {
        if (m.first != 0) continue;
        if (static_cast<int>(coeffs.size()) <= m.second) coeffs.resize(m.second + 1, Int(0));
        coeffs[m.second] = c;
    }
    return coeffs;
}

int Poly2::total_degree() const {
    int best = -1;
    for (const auto& [m, c] : terms_) best = std::max(best, m.first + m.second);
    return best;
}

std::string Poly2::str(const std::string& xname, const std::string& yname) const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        const bool neg = c < 0;
        Int mag = neg ? Int(-c) : c;
        if (first) {
            if (neg) out << '-';
            first = false;
        } else {
            out << (neg ? "-" : "+");
        }
        const bool has_vars = (m.first != 0 || m.second != 0);
        if (!has_vars || mag != 1) {
            out << mag.get_str();
            if (has_vars) out << '*';
        }
        if (m.first > 0) {
            out << xname;
            if (m.first > 1) out << '^' << m.first;
        }
        if (m.second > 0) {
            if (m.first > 0) out << '*';
            out << yname;
            if (m.second > 1) out << '^' << m.second;
        }
    }
    return out.str();
}

namespace {

std::vector<Int> positive_divisors(Int n, std::size_t guard = 1u << 20) {
    if (n < 0) n = -n;
    std::vector<Int> divisors;
    if (n == 0) return divisors;
    for (Int d(1); d * d <= n; ++d) {
        if (n % d == 0) {
            divisors.push_back(d);
            if (d * d != n) divisors.push_back(n / d);
        }
        if (divisors.size() > guard)
            throw resource_error("divisor search exceeded guard while factoring " + to_string(n));
    }
    std::sort(divisors.begin(), divisors.end());
    return divisors;
}

Rat evaluate(const std::vector<Int>& coeffs, const Rat& x) {
    Rat acc(0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + Rat(*it);
    return acc;
}

std::vector<Int> deflate(const std::vector<Int>& coeffs, const Rat& root) {
    // synthetic division by (x - root) over the rationals, then the result is
    // rescaled to integers by the caller's loop structure; here we only need
    // it for multiplicity counting, so rational coefficients suffice
    std::vector<Rat> out(coeffs.size() - 1);
    Rat carry(0);
    for (std::size_t i = coeffs.size(); i-- > 1;) {
        carry = Rat(coeffs[i]) + carry * root;
        out[i - 1] = carry;
    }
    // clear denominators back to integers
    Int lcm(1);
    for (const Rat& c : out) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
    std::vector<Int> scaled(out.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        Rat v = out[i] * Rat(lcm);
        scaled[i] = v.get_num();
    }
    return scaled;
}

}  // namespace

RootSearch rational_roots(const std::vector<Int>& coeffs_in) {
    RootSearch result;
    result.complete = true;

    std::vector<Int> coeffs = coeffs_in;
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    if (coeffs.empty()) {
        result.complete = false;  // identically zero: roots everywhere
        return result;
    }
    // strip the root at zero
    std::size_t low = 0;
    while (low < coeffs.size() && coeffs[low] == 0) ++low;
    coeffs.erase(coeffs.begin(), coeffs.begin() + low);

    while (coeffs.size() > 1) {
        const std::vector<Int> ps = positive_divisors(coeffs.front());
        const std::vector<Int> qs = positive_divisors(coeffs.back());
        bool found = false;
        for (const Int& p : ps) {
            for (const Int& q : qs) {
                for (int sign : {1, -1}) {
                    Rat candidate(sign * p, q);
                    candidate.canonicalize();
                    if (evaluate(coeffs, candidate) == 0) {
                        int mult = 0;
                        while (coeffs.size() > 1 && evaluate(coeffs, candidate) == 0) {
                            coeffs = deflate(coeffs, candidate);
                            ++mult;
                        }
                        result.roots.emplace_back(candidate, mult);
                        found = true;
                        break;
                    }
                }
                if (found) break;
            }
            if (found) break;
        }
        if (!found) break;
    }
    if (coeffs.size() > 1) result.complete = false;  // an irrational/complex factor remains
    return result;
}

namespace {

class PolyParser {
  public:
    explicit PolyParser(const std::string& text) : text_(text) {}

    ParsedPoly run() {
        const Poly2 p = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return {p, vars_};
    }

  private:
    [[noreturn]] void fail(const std::string& why) const {
        throw parse_error(why + " at position " + std::to_string(pos_) + " in \"" + text_ + "\"");
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool peek_factor_start() {
        skip_ws();
        if (pos_ >= text_.size()) return false;
        const char c = text_[pos_];
        return std::isalpha(static_cast<unsigned char>(c)) ||
               std::isdigit(static_cast<unsigned char>(c)) || c == '(';
    }

    Poly2 parse_expr() {
        skip_ws();
        bool negate = false;
        if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
            negate = (text_[pos_] == '-');
            ++pos_;
        }
        Poly2 acc = parse_term();
        if (negate) acc = -acc;
        while (true) {
            skip_ws();
            if (pos_ >= text_.size() || (text_[pos_] != '+' && text_[pos_] != '-')) break;
            const bool minus = (text_[pos_] == '-');
            ++pos_;
            const Poly2 t = parse_term();
            acc += minus ? -t : t;
        }
        return acc;
    }

    Poly2 parse_term() {
        Poly2 acc = parse_factor();
        while (true) {
            skip_ws();
            if (pos_ < text_.size() && text_[pos_] == '*') {
                ++pos_;
                acc = acc * parse_factor();
            } else if (peek_factor_start()) {
                acc = acc * parse_factor();  // juxtaposition
            } else {
                break;
            }
        }
        return acc;
    }

    Poly2 parse_factor() {
        Poly2 base = parse_base();
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '^') {
            ++pos_;
            const long e = parse_exponent();
            Poly2 out(Int(1));
            for (long i = 0; i < e; ++i) out = out * base;
            return out;
        }
        return base;
    }

    long parse_exponent() {
        skip_ws();
        bool braced = false;
        if (pos_ < text_.size() && text_[pos_] == '{') {
            braced = true;
            ++pos_;
        }
        skip_ws();
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            fail("expected exponent");
        long e = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            e = e * 10 + (text_[pos_] - '0');
            if (e > 1000) fail("exponent too large");
            ++pos_;
        }
        if (braced) {
            skip_ws();
            if (pos_ >= text_.size() || text_[pos_] != '}') fail("expected '}'");
            ++pos_;
        }
        return e;
    }

    Poly2 parse_base() {
        skip_ws();
        if (pos_ >= text_.size()) fail("expected a factor");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            const Poly2 inner = parse_expr();
            skip_ws();
            if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'");
            ++pos_;
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Int value(0);
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                value = value * 10 + (text_[pos_] - '0');
                ++pos_;
            }
            if (pos_ < text_.size() && text_[pos_] == '.') fail("non-integer coefficient");
            return Poly2(value);
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string name(1, c);
            ++pos_;
            if (pos_ < text_.size() && text_[pos_] == '_') {
                name += '_';
                ++pos_;
                if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    fail("expected digits after '_'");
            }
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                name += text_[pos_];
                ++pos_;
            }
            return Poly2::variable(var_index(name));
        }
        fail("unexpected character");
    }

    int var_index(const std::string& name) {
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i] == name) return static_cast<int>(i);
        if (vars_.size() >= 2)
            throw parse_error("more than two variables: saw \"" + name + "\" after \"" +
                              vars_[0] + "\" and \"" + vars_[1] + "\"");
        vars_.push_back(name);
        return static_cast<int>(vars_.size()) - 1;
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    std::vector<std::string> vars_;
};

}  // namespace

ParsedPoly parse_poly2(const std::string& text) { return PolyParser(text).run(); }

}  // namespace chi::resolution
