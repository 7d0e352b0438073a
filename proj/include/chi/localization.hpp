#pragma once

#include <array>
#include <map>
#include <vector>

#include "chi/poly.hpp"

namespace chi::localization {

/// Weighted projective model: ambient coordinate weights (w0, w1, w2) and a
/// fiber that scales with weight fiber_scale * k. The torus assignment is
/// fixed at a = (a1, a2, 0). The coin problem is (5, 1, 1) with fiber 5k; the
/// unweighted plane is (1, 1, 1) with fiber k.
struct WeightedModel {
    std::array<long, 3> ambient_weights{5, 1, 1};
    long fiber_scale = 5;
};

inline WeightedModel jackpot_model() { return WeightedModel{{5, 1, 1}, 5}; }
inline WeightedModel plane_model() { return WeightedModel{{1, 1, 1}, 1}; }

/// Torus data at one coordinate fixed point: the two tangent weights, the
/// fiber weight and the order of the local symmetry group.
struct FixedPointDatum {
    int label;  // index of the nonzero homogeneous coordinate
    std::array<Poly, 2> tangent_weights;
    Poly fiber_weight;
    long orbifold_order;
};

/// At fixed point j the tangent weight along coordinate i != j is
/// (w_i / w_j) a_j - a_i, the fiber weight is (fiber_scale k / w_j) a_j and
/// the orbifold order is w_j.
std::array<FixedPointDatum, 3> fixed_point_data(const WeightedModel& model);

/// Product of the two tangent weights (top Chern class of the normal bundle).
Poly euler_class(const FixedPointDatum& d);

/// (1, w, w^2/2) for fiber weight w; degree-6 terms vanish on a 4-dimensional
/// base.
std::array<Poly, 3> chern_character(const FixedPointDatum& d);

/// (1, (x1+x2)/2, (x1^2+x2^2+3 x1 x2)/12) for tangent weights x1, x2.
std::array<Poly, 3> todd_class(const FixedPointDatum& d);

struct PointContribution {
    FixedPointDatum datum;
    Poly euler;
    std::array<Poly, 3> ch;
    std::array<Poly, 3> td;
};

struct LocalizationResult {
    std::array<Poly, 3> graded;  // k^0, k^1, k^2 partial sums (each alpha-free)
    Poly total;                  // polynomial in k
    std::vector<PointContribution> per_point;
};

/// Fixed-point sum (1/ord) (td4 + ch2 td2 + ch4) / e(N) over the three
/// coordinate points, assembled over a common denominator and divided out
/// exactly. All torus-weight dependence must cancel; anything left over
/// raises a consistency error.
LocalizationResult localized_index(const WeightedModel& model);

/// Same sum with numbers substituted for the torus weights; used to check
/// that the symbolic result does not depend on them. Throws a domain error
/// when a weight choice kills one of the Euler classes.
std::map<int, Rat> localized_index_at(const WeightedModel& model, const Rat& a1, const Rat& a2);

/// Degree-truncated class 1*c0 + h*c1 on the projective line, where h is the
/// normalized curvature 2-form with unit integral; h^2 = 0.
struct TruncatedClass {
    Poly c0;
    Poly c1;

    TruncatedClass mul(const TruncatedClass& o) const {
        return TruncatedClass{c0 * o.c0, c0 * o.c1 + c1 * o.c0};
    }
};

/// ch(L_k) td(T P^1) = (1 + k h)(1 + h) truncated at h^2 = 0.
TruncatedClass cp1_index_symbolic();
/// The h-coefficient evaluated at an integer k: the index k + 1.
Int cp1_index(long k);

/// Trapezoid quadrature of the normalized connection circulation around the
/// circle |z| = R; converges to R^2 / (R^2 + 1) and to 1 as R grows.
double curvature_quadrature(double radius, int steps);

}  // namespace chi::localization
