#include <doctest.h>

#include <map>
#include <set>
#include <string>

#include "chi/error.hpp"
#include "chi/resolution.hpp"

using namespace chi;
using namespace chi::resolution;

namespace {

// variable-name-aware polynomial fingerprint, so "(p^3+z^2)z^3" and
// "z^3*(p^3+z^2)" compare equal regardless of the order the parser met the
// variables in
std::map<std::map<std::string, int>, Int> fingerprint(const std::string& text) {
    const ParsedPoly parsed = parse_poly2(text);
    std::map<std::map<std::string, int>, Int> out;
    for (const auto& [m, c] : parsed.poly.terms()) {
        std::map<std::string, int> names;
        if (m.first != 0) names[parsed.vars.at(0)] = m.first;
        if (m.second != 0) names[parsed.vars.at(1)] = m.second;
        out[names] += c;
    }
    return out;
}

bool same_poly(const std::string& a, const std::string& b) {
    return fingerprint(a) == fingerprint(b);
}

bool trace_contains(const ResolutionOutcome& outcome, const std::string& expected) {
    for (const auto& step : outcome.trace)
        for (const auto& chart : step.charts)
            if (same_poly(chart, expected)) return true;
    return false;
}

}  // namespace

TEST_CASE("germ parsing and canonical content") {
    const Germ cusp = parse_germ("y^3+z^5");
    CHECK(cusp.content_x == 0);
    CHECK(cusp.content_y == 0);
    CHECK(vanishing_order(cusp) == 3);
    CHECK(cusp.str() == "y^3+z^5");

    const Germ factored = parse_germ("z^3*(p^3+z^2)");
    CHECK(factored.vars[0] == "z");
    CHECK(factored.vars[1] == "p");
    CHECK(factored.content_x == 3);
    CHECK(factored.content_y == 0);
    CHECK(same_poly(factored.strict.str("z", "p"), "p^3+z^2"));
    CHECK(vanishing_order(factored) == 5);

    const Germ unit = parse_germ("1");
    CHECK(vanishing_order(unit) == 0);

    // implicit multiplication and brace exponents
    CHECK(same_poly("p_1^5q_2^3(p_1+q_2^2)", "p_1^5*q_2^3*(p_1+q_2^2)"));
    CHECK(same_poly("p^{15}", "p^15"));

    CHECK_THROWS_AS(parse_germ("x+y+w"), Error);
    CHECK_THROWS_AS(parse_germ("y^"), Error);
    CHECK_THROWS_AS(parse_germ("0"), Error);
    CHECK_THROWS_AS(parse_germ("2.5*y"), Error);
}

TEST_CASE("blow-up of a unit germ is a no-op") {
    DivisorGraph graph;
    Chart chart;
    chart.vars = {"x", "y"};
    chart.factors.push_back({graph.add_cycle(1, 0, false, "branch"), Poly2(Int(1)) + Poly2::variable(0), 1});
    // factor 1 + x is a unit at the origin; nothing passes through
    const auto result = blow_up_at_origin(chart, graph, 1);
    CHECK(result.was_unit);
    CHECK(graph.cycles().size() == 1);
}

TEST_CASE("stepping through the first four blow-ups") {
    DivisorGraph graph;
    const int branch = graph.add_cycle(1, 0, false, "branch");
    Chart start;
    start.vars = {"y", "z"};
    start.factors.push_back({branch, parse_germ("y^3+z^5").strict, 1});
    std::vector<Chart> charts{start};

    auto step = [&](int index) {
        const auto targets = detect_targets(charts, graph);
        REQUIRE_FALSE(targets.empty());
        const Target t = targets.front();
        REQUIRE(t.shift_x == 0);
        REQUIRE(t.shift_y == 0);
        const auto r = blow_up_at_origin(charts[t.chart], graph, index);
        REQUIRE_FALSE(r.was_unit);
        charts.erase(charts.begin() + static_cast<long>(t.chart));
        charts.push_back(r.chart_a);
        charts.push_back(r.chart_b);
        return targets;
    };

    // B0 -> B1: the branch curve is singular at the origin
    auto t1 = step(1);
    CHECK(t1.front().kind == TargetKind::singular);
    CHECK(graph.cycle(1).multiplicity == 3);
    bool found_b1 = false;
    for (const auto& c : charts) found_b1 |= same_poly(c.str(), "(p_1^3+z^2)z^3");
    CHECK(found_b1);

    // B1 -> B2: still singular
    auto t2 = step(2);
    CHECK(t2.front().kind == TargetKind::singular);
    CHECK(graph.cycle(2).multiplicity == 5);
    bool found_b2 = false;
    for (const auto& c : charts) found_b2 |= same_poly(c.str(), "p_1^5q_2^3(p_1+q_2^2)");
    CHECK(found_b2);

    // B2 -> B3: exactly one tangency target
    const auto b2_targets = detect_targets(charts, graph);
    REQUIRE(b2_targets.size() == 1);
    CHECK(b2_targets.front().kind == TargetKind::tangency);
    step(3);
    CHECK(graph.cycle(3).multiplicity == 9);
    bool found_b3a = false, found_b3b = false;
    for (const auto& c : charts) {
        found_b3a |= same_poly(c.str(), "p_1^9q_3^3(1+p_1q_3^2)");
        found_b3b |= same_poly(c.str(), "p_3^5q_2^9(p_3+q_2)");
    }
    CHECK(found_b3a);
    CHECK(found_b3b);

    // B3 -> B4: exactly one triple point
    const auto b3_targets = detect_targets(charts, graph);
    REQUIRE(b3_targets.size() == 1);
    CHECK(b3_targets.front().kind == TargetKind::triple);
    step(4);
    CHECK(graph.cycle(4).multiplicity == 15);
    bool found_b4 = false;
    for (const auto& c : charts) found_b4 |= same_poly(c.str(), "p_3^{15}q_4^9(1+q_4)");
    CHECK(found_b4);

    // B4: exactly four odd-odd intersections, identified by multiplicity pairs
    const auto b4_targets = detect_targets(charts, graph);
    REQUIRE(b4_targets.size() == 4);
    std::multiset<std::pair<long, long>> pairs;
    for (const auto& t : b4_targets) {
        CHECK(t.kind == TargetKind::odd_odd);
        REQUIRE(t.cycles.size() == 2);
        pairs.insert(std::minmax(graph.cycle(t.cycles[0]).multiplicity,
                                 graph.cycle(t.cycles[1]).multiplicity));
    }
    CHECK(pairs == std::multiset<std::pair<long, long>>{{1, 15}, {3, 9}, {5, 15}, {9, 15}});
}

TEST_CASE("full (2,3,5) resolution") {
    const auto outcome = resolve_235();

    std::multiset<long> mults;
    for (const auto& c : outcome.graph.cycles()) {
        if (!c.compact) continue;
        mults.insert(c.multiplicity);
        if (c.multiplicity % 2 == 1)
            CHECK(c.self_intersection == -4);
        else
            CHECK(c.self_intersection == -1);
    }
    CHECK(mults == std::multiset<long>{3, 5, 9, 15, 12, 16, 20, 24});

    // the paper-facing chart polynomials all appear in the trace
    CHECK(trace_contains(outcome, "(p_1^3+z^2)z^3"));
    CHECK(trace_contains(outcome, "p_1^5q_2^3(p_1+q_2^2)"));
    CHECK(trace_contains(outcome, "p_1^9q_3^3(1+p_1q_3^2)"));
    CHECK(trace_contains(outcome, "p_3^5q_2^9(p_3+q_2)"));
    CHECK(trace_contains(outcome, "p_3^{15}q_4^9(1+q_4)"));

    // odd-odd blow-ups add multiplicities: 16 = 15+1, 12 = 3+9, 20 = 15+5, 24 = 15+9
    CHECK(outcome.trace.size() == 8);
    std::multiset<long> late;
    for (std::size_t i = 4; i < 8; ++i) late.insert(outcome.trace[i].new_multiplicity);
    CHECK(late == std::multiset<long>{12, 16, 20, 24});
}

TEST_CASE("double cover rewrites the self-intersections") {
    const auto outcome = resolve_235();
    const auto cover = double_cover_transform(outcome.graph);
    CHECK(cover.cycles().size() == 8);
    for (const auto& c : cover.cycles()) {
        CHECK(c.compact);
        CHECK(c.self_intersection == -2);
        CHECK(c.multiplicity == 1);  // dropped
    }

    // even rule alone
    DivisorGraph lone;
    lone.add_cycle(2, -1, true, "even");
    const auto lone_cover = double_cover_transform(lone);
    REQUIRE(lone_cover.cycles().size() == 1);
    CHECK(lone_cover.cycles()[0].self_intersection == -2);

    // odd cycle at the wrong self-intersection is rejected
    DivisorGraph bad;
    bad.add_cycle(3, -3, true, "odd");
    CHECK_THROWS_AS(double_cover_transform(bad), Error);
}

TEST_CASE("intersection matrix of the resolved cover is the E8 form") {
    const auto outcome = resolve_235();
    const auto cover = double_cover_transform(outcome.graph);
    const auto form = intersection_matrix(cover, Ordering::canonical);
    REQUIRE(form.matrix.rows() == 8);

    for (std::size_t i = 0; i < 8; ++i) CHECK(form.matrix.at(i, i) == -2);

    std::set<std::pair<std::size_t, std::size_t>> ones;
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = i + 1; j < 8; ++j)
            if (form.matrix.at(i, j) != 0) {
                CHECK(form.matrix.at(i, j) == 1);
                CHECK(form.matrix.at(j, i) == 1);
                ones.insert({i, j});
            }
    // chain 1-2-3-4-5-6-7 with the eighth node on the fifth (0-based below)
    CHECK(ones == std::set<std::pair<std::size_t, std::size_t>>{
                      {0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {4, 7}});

    CHECK(exact_determinant(form.matrix) == 1);
    const auto inertia = congruence_inertia(form.matrix.to_rational());
    CHECK(inertia.negative == 8);  // negative definite
    CHECK(signature(form.matrix) == -8);
}

TEST_CASE("matrix corners") {
    DivisorGraph empty;
    CHECK(intersection_matrix(empty, Ordering::canonical).matrix.rows() == 0);

    DivisorGraph two;
    two.add_cycle(1, -2, true, "a");
    two.add_cycle(1, -2, true, "b");
    const auto m = intersection_matrix(two, Ordering::canonical);
    CHECK(m.matrix.at(0, 0) == -2);
    CHECK(m.matrix.at(1, 1) == -2);
    CHECK(m.matrix.at(0, 1) == 0);

    DivisorGraph with_branch;
    const int id = with_branch.add_cycle(1, 0, false, "branch");
    CHECK_THROWS_AS(intersection_matrix(with_branch, std::vector<int>{id}), Error);
}

TEST_CASE("signature on small forms") {
    IntMatrix identity(2, 2);
    identity.at(0, 0) = 1;
    identity.at(1, 1) = 1;
    CHECK(signature(identity) == 2);

    IntMatrix mixed(2, 2);
    mixed.at(0, 0) = 1;
    mixed.at(1, 1) = -1;
    CHECK(signature(mixed) == 0);

    IntMatrix skew(2, 2);
    skew.at(0, 1) = 1;
    skew.at(1, 0) = -1;
    CHECK_THROWS_AS(signature(skew), Error);
}

TEST_CASE("divisibility by sixteen") {
    CHECK(rochlin_check(-8).divisible_by_16 == false);
    CHECK(rochlin_check(-8).contradiction == true);
    CHECK(rochlin_check(-16).divisible_by_16 == true);
    CHECK(rochlin_check(-16).contradiction == false);
    CHECK(rochlin_check(0).divisible_by_16 == true);
    CHECK(rochlin_check(0).contradiction == false);
}

TEST_CASE("the (2,3) cusp resolves to a negative definite graph") {
    const auto outcome = resolve(parse_germ("y^2+z^3"));
    const auto form = intersection_matrix(outcome.graph, Ordering::canonical);
    REQUIRE(form.matrix.rows() >= 1);
    const auto inertia = congruence_inertia(form.matrix.to_rational());
    CHECK(inertia.negative == form.matrix.rows());
    CHECK(inertia.positive == 0);
    CHECK(inertia.zero == 0);
}
