#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chi/exact.hpp"

namespace chi::lattice {

/// Coin-count instance: nonnegative integer triples (q, n, c) with
/// 5q + n + c = 5k. The weight vector (5, 1, 1) is fixed.
struct JackpotInstance {
    long k = 0;
};

enum class CountMode { brute, formula };

/// Number of solutions. Brute mode enumerates every triple and is guarded at
/// k <= 10000; formula mode evaluates (5/2)k^2 + (7/2)k + 1 exactly.
Int count_jackpots(const JackpotInstance& inst, CountMode mode);

/// Emits each solution once, ordered lexicographically by (q, n) with c
/// determined. Same resource guard as brute counting.
void enumerate_points(const JackpotInstance& inst,
                      const std::function<void(long q, long n, long c)>& sink);

// --- linear inequality systems and slack variables ---

struct LinearInequality {
    std::map<std::string, long> coeffs;
    enum class Rel { ge, le } rel = Rel::le;
    long rhs = 0;
};

struct LinearEquality {
    std::map<std::string, long> coeffs;
    long rhs = 0;
};

struct EqualitySystem {
    std::vector<LinearEquality> equalities;
    std::vector<std::string> nonnegative;  // declared nonnegative variables, in order
};

/// Parses forms like "5q+n <= 20000" or "x>=0". Integer coefficients only:
/// a decimal point is a parse error.
LinearInequality parse_inequality(const std::string& text);

/// Turns each inequality into an equality over nonnegative variables by
/// introducing one named slack variable (s1, s2, ... or c for the classic
/// coin layout is up to the caller's naming; here s1, s2, ...).
/// An inequality that merely states "var >= 0" declares the variable
/// nonnegative instead of spending a slack. Solution sets are in bijection.
EqualitySystem slackify(const std::vector<LinearInequality>& system);

// --- lattice polygons and Pick's theorem ---

struct LatticePoint {
    std::int64_t x;
    std::int64_t y;
    bool operator==(const LatticePoint&) const = default;
};

/// Simple lattice polygon, counterclockwise. Construction validates at least
/// 3 vertices, distinct consecutive vertices, positive signed area and
/// no self-intersection.
class LatticePolygon {
  public:
    static LatticePolygon create(std::vector<LatticePoint> vertices);
    const std::vector<LatticePoint>& vertices() const { return vertices_; }

  private:
    LatticePolygon() = default;
    std::vector<LatticePoint> vertices_;
};

struct PickReport {
    Rat area;                       // exact shoelace area
    Int boundary;                   // lattice points on the boundary
    Int interior;                   // A - B/2 + 1
    Int total;                      // interior + boundary
    std::optional<Int> enumerated;  // brute interior count when the bbox is small
};

/// Shoelace area, gcd boundary count and Pick interior count. When the
/// bounding box holds at most 10^7 lattice points the interior count is also
/// enumerated point by point and checked against Pick's formula.
PickReport pick_count(const LatticePolygon& poly);

/// Strictly-interior test for one lattice point; exact arithmetic.
bool point_in_polygon(const LatticePolygon& poly, const LatticePoint& p);
/// True when the point lies on a polygon edge (vertices included).
bool point_on_boundary(const LatticePolygon& poly, const LatticePoint& p);

}  // namespace chi::lattice
