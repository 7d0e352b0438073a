#include "chi/lattice.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "chi/error.hpp"

namespace chi::lattice {

namespace {

constexpr long kBruteGuard = 10000;

void check_guard(const JackpotInstance& inst) {
    if (inst.k < 0) throw domain_error("k must be nonnegative");
    if (inst.k > kBruteGuard)
        throw resource_error("brute enumeration guarded at k <= " + std::to_string(kBruteGuard) +
                             ", got k = " + std::to_string(inst.k));
}

}  // namespace

Int count_jackpots(const JackpotInstance& inst, CountMode mode) {
    if (inst.k < 0) throw domain_error("k must be nonnegative");
    if (mode == CountMode::formula) {
        const Int k(inst.k);
        Int twice = 5 * k * k + 7 * k + 2;  // always even
        Int result;
        mpz_divexact_ui(result.get_mpz_t(), twice.get_mpz_t(), 2);
        return result;
    }
    check_guard(inst);
    // honest enumeration: one callback per solution, no closed form anywhere
    std::int64_t count = 0;
    enumerate_points(inst, [&count](long, long, long) { ++count; });
    return Int(static_cast<long>(count));
}

void enumerate_points(const JackpotInstance& inst,
                      const std::function<void(long, long, long)>& sink) {
    check_guard(inst);
    for (long q = 0; q <= inst.k; ++q) {
        const long budget = 5 * (inst.k - q);
        for (long n = 0; n <= budget; ++n) sink(q, n, budget - n);
    }
}

LinearInequality parse_inequality(const std::string& text) {
    std::size_t pos = 0;
    const auto fail = [&](const std::string& why) {
        throw parse_error(why + " at position " + std::to_string(pos) + " in \"" + text + "\"");
    };
    const auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };

    LinearInequality out;
    bool seen_rel = false;
    long lhs_const = 0;
    long rhs_const = 0;
    bool rhs_present = false;

    skip_ws();
    while (pos < text.size()) {
        skip_ws();
        if (pos >= text.size()) break;
        const char ch = text[pos];
        if (ch == '<' || ch == '>') {
            if (seen_rel) fail("second relation");
            out.rel = (ch == '<') ? LinearInequality::Rel::le : LinearInequality::Rel::ge;
            ++pos;
            if (pos >= text.size() || text[pos] != '=') fail("expected '=' after relation");
            ++pos;
            seen_rel = true;
            continue;
        }
        long sign = 1;
        if (ch == '+') {
            ++pos;
        } else if (ch == '-') {
            sign = -1;
            ++pos;
        }
        skip_ws();
        if (pos >= text.size()) fail("dangling sign");
        long coeff = 1;
        bool have_digits = false;
        if (std::isdigit(static_cast<unsigned char>(text[pos]))) {
            coeff = 0;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                coeff = coeff * 10 + (text[pos] - '0');
                ++pos;
            }
            have_digits = true;
            if (pos < text.size() && text[pos] == '.')
                fail("non-integer coefficient");
        }
        if (pos < text.size() && text[pos] == '*') ++pos;
        skip_ws();
        std::string var;
        while (pos < text.size() && (std::isalpha(static_cast<unsigned char>(text[pos])) ||
                                     text[pos] == '_' ||
                                     (!var.empty() &&
                                      std::isdigit(static_cast<unsigned char>(text[pos]))))) {
            var += text[pos];
            ++pos;
        }
        if (var.empty()) {
            if (!have_digits) fail("expected coefficient or variable");
            if (seen_rel) {
                if (rhs_present) fail("second constant on right-hand side");
                rhs_const = sign * coeff;
                rhs_present = true;
            } else {
                lhs_const += sign * coeff;
            }
        } else {
            if (seen_rel) fail("variables allowed only left of the relation");
            out.coeffs[var] += sign * coeff;
        }
    }
    if (!seen_rel) {
        pos = text.size();
        fail("missing relation <= or >=");
    }
    out.rhs = rhs_const - lhs_const;
    for (auto it = out.coeffs.begin(); it != out.coeffs.end();) {
        if (it->second == 0)
            it = out.coeffs.erase(it);
        else
            ++it;
    }
    return out;
}

EqualitySystem slackify(const std::vector<LinearInequality>& system) {
    EqualitySystem out;
    int next_slack = 1;
    for (const LinearInequality& iq : system) {
        // "x >= 0" with unit coefficient declares x nonnegative, no slack
        if (iq.rel == LinearInequality::Rel::ge && iq.rhs == 0 && iq.coeffs.size() == 1 &&
            iq.coeffs.begin()->second == 1) {
            out.nonnegative.push_back(iq.coeffs.begin()->first);
            continue;
        }
        std::string slack = "s" + std::to_string(next_slack++);
        LinearEquality eq;
        eq.coeffs = iq.coeffs;
        eq.rhs = iq.rhs;
        // a.x <= b  ->  a.x + s = b;   a.x >= b  ->  a.x - s = b
        eq.coeffs[slack] = (iq.rel == LinearInequality::Rel::le) ? 1 : -1;
        out.nonnegative.push_back(slack);
        out.equalities.push_back(std::move(eq));
    }
    return out;
}

namespace {

using I64 = std::int64_t;

Int cross(const LatticePoint& o, const LatticePoint& a, const LatticePoint& b) {
    return Int(a.x - o.x) * Int(b.y - o.y) - Int(a.y - o.y) * Int(b.x - o.x);
}

bool on_segment(const LatticePoint& a, const LatticePoint& b, const LatticePoint& p) {
    if (cross(a, b, p) != 0) return false;
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

int sgn(const Int& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

bool segments_intersect(const LatticePoint& a, const LatticePoint& b, const LatticePoint& c,
                        const LatticePoint& d) {
    const int d1 = sgn(cross(c, d, a));
    const int d2 = sgn(cross(c, d, b));
    const int d3 = sgn(cross(a, b, c));
    const int d4 = sgn(cross(a, b, d));
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
        return true;
    if (d1 == 0 && on_segment(c, d, a)) return true;
    if (d2 == 0 && on_segment(c, d, b)) return true;
    if (d3 == 0 && on_segment(a, b, c)) return true;
    if (d4 == 0 && on_segment(a, b, d)) return true;
    return false;
}

Int twice_shoelace(const std::vector<LatticePoint>& v) {
    Int a2(0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        const LatticePoint& p = v[i];
        const LatticePoint& q = v[(i + 1) % v.size()];
        a2 += Int(p.x) * Int(q.y) - Int(q.x) * Int(p.y);
    }
    return a2;
}

}  // namespace

LatticePolygon LatticePolygon::create(std::vector<LatticePoint> vertices) {
    const std::size_t n = vertices.size();
    if (n < 3) throw domain_error("polygon needs at least 3 vertices");
    for (std::size_t i = 0; i < n; ++i)
        if (vertices[i] == vertices[(i + 1) % n])
            throw domain_error("consecutive polygon vertices coincide at index " +
                               std::to_string(i));
    if (twice_shoelace(vertices) <= 0)
        throw domain_error("polygon must be counterclockwise with positive area");

    // simplicity: non-adjacent edges must not meet at all; adjacent edges may
    // share only their common endpoint
    for (std::size_t i = 0; i < n; ++i) {
        const LatticePoint& a = vertices[i];
        const LatticePoint& b = vertices[(i + 1) % n];
        for (std::size_t j = i + 1; j < n; ++j) {
            const LatticePoint& c = vertices[j];
            const LatticePoint& d = vertices[(j + 1) % n];
            const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            if (adjacent) {
                // shared endpoint allowed; any second contact means an overlap
                const LatticePoint& shared = (j == i + 1) ? b : a;
                const LatticePoint& tip1 = (j == i + 1) ? a : b;
                const LatticePoint& tip2 = (j == i + 1) ? d : c;
                if ((on_segment(c, d, tip1) && !(tip1 == shared)) ||
                    (on_segment(a, b, tip2) && !(tip2 == shared)))
                    throw domain_error("polygon folds back onto itself at edge " +
                                       std::to_string(i));
                continue;
            }
            if (segments_intersect(a, b, c, d))
                throw domain_error("polygon self-intersects between edges " + std::to_string(i) +
                                   " and " + std::to_string(j));
        }
    }
    LatticePolygon p;
    p.vertices_ = std::move(vertices);
    return p;
}

bool point_on_boundary(const LatticePolygon& poly, const LatticePoint& p) {
    const auto& v = poly.vertices();
    for (std::size_t i = 0; i < v.size(); ++i)
        if (on_segment(v[i], v[(i + 1) % v.size()], p)) return true;
    return false;
}

bool point_in_polygon(const LatticePolygon& poly, const LatticePoint& p) {
    if (point_on_boundary(poly, p)) return false;
    const auto& v = poly.vertices();
    bool inside = false;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const LatticePoint& a = v[i];
        const LatticePoint& b = v[(i + 1) % v.size()];
        if ((a.y > p.y) == (b.y > p.y)) continue;
        // crossing strictly right of p: x_int > p.x, decided exactly
        const Int dy(b.y - a.y);
        const Int num = Int(a.x - p.x) * dy + Int(p.y - a.y) * Int(b.x - a.x);
        if (sgn(num) * sgn(dy) > 0) inside = !inside;
    }
    return inside;
}

PickReport pick_count(const LatticePolygon& poly) {
    const auto& v = poly.vertices();

    PickReport report;
    report.area = Rat(twice_shoelace(v)) / 2;

    Int boundary(0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        const LatticePoint& a = v[i];
        const LatticePoint& b = v[(i + 1) % v.size()];
        boundary += Int(std::gcd(std::abs(b.x - a.x), std::abs(b.y - a.y)));
    }
    report.boundary = boundary;

    const Rat interior_q = report.area - Rat(boundary) / 2 + 1;
    if (interior_q.get_den() != 1 || interior_q < 0)
        throw consistency_error("Pick interior count is not a nonnegative integer");
    report.interior = interior_q.get_num();
    report.total = report.interior + report.boundary;

    // brute verification on small bounding boxes
    I64 minx = v[0].x, maxx = v[0].x, miny = v[0].y, maxy = v[0].y;
    for (const auto& p : v) {
        minx = std::min(minx, p.x);
        maxx = std::max(maxx, p.x);
        miny = std::min(miny, p.y);
        maxy = std::max(maxy, p.y);
    }
    const Int box = Int(maxx - minx + 1) * Int(maxy - miny + 1);
    if (box <= 10000000) {
        Int count(0);
        for (I64 x = minx; x <= maxx; ++x)
            for (I64 y = miny; y <= maxy; ++y)
                if (point_in_polygon(poly, {x, y})) ++count;
        if (count != report.interior)
            throw consistency_error("enumerated interior count " + to_string(count) +
                                    " disagrees with Pick count " + to_string(report.interior));
        report.enumerated = count;
    }
    return report;
}

}  // namespace chi::lattice
