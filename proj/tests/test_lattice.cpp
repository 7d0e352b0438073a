#include <doctest.h>

#include <random>
#include <vector>

#include "chi/error.hpp"
#include "chi/lattice.hpp"

using namespace chi;
using namespace chi::lattice;

namespace {

// independent oracle: count triples by a full triple loop with an explicit
// equation check (the production path never tests the equation)
long triple_loop_count(long k) {
    long count = 0;
    for (long q = 0; q <= k; ++q)
        for (long n = 0; n <= 5 * k; ++n)
            for (long c = 0; c <= 5 * k; ++c)
                if (5 * q + n + c == 5 * k) ++count;
    return count;
}

}  // namespace

TEST_CASE("jackpot counts for tiny k against the triple-loop oracle") {
    CHECK(count_jackpots({0}, CountMode::brute) == 1);
    CHECK(count_jackpots({1}, CountMode::brute) == triple_loop_count(1));
    CHECK(count_jackpots({1}, CountMode::brute) == 7);
    CHECK(count_jackpots({2}, CountMode::brute) == triple_loop_count(2));
    CHECK(count_jackpots({2}, CountMode::brute) == 18);
    CHECK(count_jackpots({3}, CountMode::formula) == triple_loop_count(3));
}

TEST_CASE("headline jackpot value") {
    CHECK(count_jackpots({4000}, CountMode::formula) == Int("40014001"));
}

TEST_CASE("formula equals enumeration across a range") {
    for (long k = 0; k <= 400; ++k)
        CHECK(count_jackpots({k}, CountMode::brute) == count_jackpots({k}, CountMode::formula));
}

TEST_CASE("brute mode resource guard") {
    CHECK_THROWS_AS(count_jackpots({10001}, CountMode::brute), Error);
    CHECK_THROWS_AS(count_jackpots({-1}, CountMode::formula), Error);
    CHECK_NOTHROW(count_jackpots({10001}, CountMode::formula));
}

TEST_CASE("enumeration order and degrees") {
    std::vector<std::array<long, 3>> points;
    enumerate_points({1}, [&](long q, long n, long c) { points.push_back({q, n, c}); });
    REQUIRE(points.size() == 7);
    CHECK(points.front() == std::array<long, 3>{0, 0, 5});
    CHECK(points.back() == std::array<long, 3>{1, 0, 0});
    for (const auto& [q, n, c] : points) CHECK(5 * q + n + c == 5);

    points.clear();
    enumerate_points({0}, [&](long q, long n, long c) { points.push_back({q, n, c}); });
    CHECK(points == std::vector<std::array<long, 3>>{{0, 0, 0}});

    std::size_t count = 0;
    enumerate_points({2}, [&](long, long, long) { ++count; });
    CHECK(count == 18);
}

TEST_CASE("inequality parsing") {
    const auto iq = parse_inequality("5q+n <= 20000");
    CHECK(iq.rel == LinearInequality::Rel::le);
    CHECK(iq.rhs == 20000);
    CHECK(iq.coeffs.at("q") == 5);
    CHECK(iq.coeffs.at("n") == 1);

    const auto ge = parse_inequality("x>=0");
    CHECK(ge.rel == LinearInequality::Rel::ge);
    CHECK(ge.coeffs.at("x") == 1);

    CHECK_THROWS_AS(parse_inequality("0.25q+0.05n<=1000"), Error);
    CHECK_THROWS_AS(parse_inequality("q+n"), Error);
}

TEST_CASE("slackify introduces one nonnegative variable per genuine inequality") {
    const std::vector<LinearInequality> system = {
        parse_inequality("q>=0"), parse_inequality("n>=0"), parse_inequality("5q+n<=20000")};
    const auto eq = slackify(system);
    REQUIRE(eq.equalities.size() == 1);
    CHECK(eq.equalities[0].rhs == 20000);
    CHECK(eq.equalities[0].coeffs.size() == 3);  // q, n and the slack
    CHECK(eq.nonnegative == std::vector<std::string>{"q", "n", "s1"});

    const auto single = slackify({parse_inequality("x<=3")});
    REQUIRE(single.equalities.size() == 1);
    CHECK(single.equalities[0].coeffs.at("x") == 1);
    CHECK(single.equalities[0].coeffs.at("s1") == 1);
    CHECK(single.equalities[0].rhs == 3);

    CHECK(slackify({}).equalities.empty());
}

TEST_CASE("slackify preserves solution counts on random boxed systems") {
    std::mt19937 rng(123);
    std::uniform_int_distribution<int> coeff(0, 3);
    std::uniform_int_distribution<int> bound(0, 12);
    const int box = 6;  // x, y range over 0..box

    for (int trial = 0; trial < 20; ++trial) {
        const int a = coeff(rng), b = coeff(rng), rhs = bound(rng);
        LinearInequality iq;
        iq.coeffs = {{"x", a}, {"y", b}};
        iq.rel = LinearInequality::Rel::le;
        iq.rhs = rhs;

        long direct = 0;
        for (int x = 0; x <= box; ++x)
            for (int y = 0; y <= box; ++y)
                if (a * x + b * y <= rhs) ++direct;

        const auto eq = slackify({iq});
        REQUIRE(eq.equalities.size() == 1);
        long via_slack = 0;
        for (int x = 0; x <= box; ++x)
            for (int y = 0; y <= box; ++y) {
                // slack is determined; count when it is a nonnegative integer
                const long s = eq.equalities[0].rhs - a * x - b * y;
                if (s >= 0) ++via_slack;
            }
        CHECK(direct == via_slack);
    }
}

TEST_CASE("pick counts on the textbook polygons") {
    const auto square = LatticePolygon::create({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    const auto sq = pick_count(square);
    CHECK(sq.area == Rat(1));
    CHECK(sq.boundary == 4);
    CHECK(sq.interior == 0);
    CHECK(sq.total == 4);
    REQUIRE(sq.enumerated.has_value());
    CHECK(*sq.enumerated == 0);

    const auto triangle = LatticePolygon::create({{0, 0}, {1, 0}, {0, 1}});
    const auto tr = pick_count(triangle);
    CHECK(tr.area == Rat(1, 2));
    CHECK(tr.boundary == 3);
    CHECK(tr.interior == 0);
    CHECK(tr.total == 3);
}

TEST_CASE("jackpot triangle matches the coin count") {
    const auto triangle = LatticePolygon::create({{0, 0}, {4000, 0}, {0, 20000}});
    const auto report = pick_count(triangle);
    CHECK(report.area == Rat(40000000));
    CHECK(report.boundary == 28000);
    CHECK(report.total == Int("40014001"));
    CHECK(report.total == count_jackpots({4000}, CountMode::formula));
    CHECK_FALSE(report.enumerated.has_value());  // bounding box above the brute guard
}

TEST_CASE("degenerate polygons are rejected") {
    CHECK_THROWS_AS(LatticePolygon::create({{0, 0}, {1, 0}}), Error);
    CHECK_THROWS_AS(LatticePolygon::create({{0, 0}, {0, 0}, {1, 1}}), Error);
    // clockwise
    CHECK_THROWS_AS(LatticePolygon::create({{0, 0}, {0, 1}, {1, 0}}), Error);
    // bowtie
    CHECK_THROWS_AS(LatticePolygon::create({{0, 0}, {2, 2}, {2, 0}, {0, 2}}), Error);
}

TEST_CASE("pick identity on random simple polygons") {
    std::mt19937 rng(987654);
    std::uniform_int_distribution<int> coord(-50, 50);
    std::uniform_int_distribution<int> size(3, 12);

    int built = 0;
    while (built < 200) {
        const int n = size(rng);
        std::vector<LatticePoint> pts;
        for (int i = 0; i < n; ++i) pts.push_back({coord(rng), coord(rng)});

        // order around the centroid, then rely on create() to reject the
        // leftovers (duplicates, collinear fans, residual crossings)
        double cx = 0, cy = 0;
        for (const auto& p : pts) {
            cx += static_cast<double>(p.x);
            cy += static_cast<double>(p.y);
        }
        cx /= n;
        cy /= n;
        std::sort(pts.begin(), pts.end(), [&](const LatticePoint& a, const LatticePoint& b) {
            return std::atan2(static_cast<double>(a.y) - cy, static_cast<double>(a.x) - cx) <
                   std::atan2(static_cast<double>(b.y) - cy, static_cast<double>(b.x) - cx);
        });

        try {
            const auto poly = LatticePolygon::create(pts);
            const auto report = pick_count(poly);  // throws if Pick and brute disagree
            REQUIRE(report.enumerated.has_value());
            CHECK(*report.enumerated == report.interior);
            ++built;
        } catch (const Error&) {
            continue;  // rejection sampling
        }
    }
}
