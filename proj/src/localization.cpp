#include "chi/localization.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "chi/error.hpp"

namespace chi::localization {

std::array<FixedPointDatum, 3> fixed_point_data(const WeightedModel& model) {
    for (long w : model.ambient_weights)
        if (w < 1) throw domain_error("ambient weights must be positive integers");

    const std::array<Poly, 3> assignment = {Poly::variable(kAlpha1), Poly::variable(kAlpha2),
                                            Poly()};
    std::array<FixedPointDatum, 3> out;
    for (int j = 0; j < 3; ++j) {
        FixedPointDatum d;
        d.label = j;
        const long wj = model.ambient_weights[j];
        int slot = 0;
        for (int i = 0; i < 3; ++i) {
            if (i == j) continue;
            Rat ratio(model.ambient_weights[i], wj);
            ratio.canonicalize();
            d.tangent_weights[slot++] = assignment[j] * ratio - assignment[i];
        }
        Rat fiber_ratio(model.fiber_scale, wj);
        fiber_ratio.canonicalize();
        d.fiber_weight = assignment[j] * fiber_ratio * Poly::variable(kScaleK);
        d.orbifold_order = wj;
        out[j] = d;
    }
    return out;
}

Poly euler_class(const FixedPointDatum& d) {
    if (d.tangent_weights[0].is_zero() || d.tangent_weights[1].is_zero())
        throw domain_error("degenerate fixed point: zero tangent weight");
    return d.tangent_weights[0] * d.tangent_weights[1];
}

std::array<Poly, 3> chern_character(const FixedPointDatum& d) {
    const Poly& w = d.fiber_weight;
    return {Poly(Rat(1)), w, w * w * Rat(1, 2)};
}

std::array<Poly, 3> todd_class(const FixedPointDatum& d) {
    const Poly& x1 = d.tangent_weights[0];
    const Poly& x2 = d.tangent_weights[1];
    const Poly td2 = (x1 + x2) * Rat(1, 2);
    const Poly td4 = (x1 * x1 + x2 * x2 + x1 * x2 * Rat(3)) * Rat(1, 12);
    return {Poly(Rat(1)), td2, td4};
}

LocalizationResult localized_index(const WeightedModel& model) {
    const auto points = fixed_point_data(model);

    LocalizationResult result;
    std::array<Poly, 3> eulers;
    for (int p = 0; p < 3; ++p) {
        PointContribution contribution;
        contribution.datum = points[p];
        contribution.euler = euler_class(points[p]);
        contribution.ch = chern_character(points[p]);
        contribution.td = todd_class(points[p]);
        eulers[p] = contribution.euler;
        result.per_point.push_back(std::move(contribution));
    }

    const Poly common = eulers[0] * eulers[1] * eulers[2];
    const char* grade_names[3] = {"td4", "ch2*td2", "ch4"};
    for (int grade = 0; grade < 3; ++grade) {
        Poly numerator;
        for (int p = 0; p < 3; ++p) {
            const auto& c = result.per_point[p];
            Poly part;
            switch (grade) {
                case 0: part = c.td[2]; break;
                case 1: part = c.ch[1] * c.td[1]; break;
                case 2: part = c.ch[2]; break;
            }
            Poly cofactor(Rat(1));
            for (int q = 0; q < 3; ++q)
                if (q != p) cofactor *= eulers[q];
            numerator += part * cofactor * Rat(1, points[p].orbifold_order);
        }
        const auto quotient = numerator.divided_by(common);
        if (!quotient)
            throw consistency_error(std::string("localization sum for ") + grade_names[grade] +
                                    " is not polynomial: fixed point data inconsistent");
        if (quotient->degree(kAlpha1) > 0 || quotient->degree(kAlpha2) > 0)
            throw consistency_error(std::string("localization sum for ") + grade_names[grade] +
                                    " kept torus-weight dependence");
        result.graded[grade] = *quotient;
        result.total += *quotient;
    }
    return result;
}

std::map<int, Rat> localized_index_at(const WeightedModel& model, const Rat& a1, const Rat& a2) {
    const auto points = fixed_point_data(model);
    std::map<int, Rat> sum;
    for (const auto& point : points) {
        const Rat e = euler_class(point).evaluate(a1, a2, Rat(0));  // no k dependence
        if (e == 0)
            throw domain_error("torus weights hit a zero Euler class; pick different values");
        const auto ch = chern_character(point);
        const auto td = todd_class(point);
        const Poly numerator = td[2] + ch[1] * td[1] + ch[2];
        const Poly in_k = numerator.substitute_alphas(a1, a2);
        const Rat scale = Rat(1, point.orbifold_order) / e;
        for (const auto& [deg, coeff] : in_k.k_coefficients()) sum[deg] += coeff * scale;
    }
    for (auto it = sum.begin(); it != sum.end();)
        it = (it->second == 0) ? sum.erase(it) : std::next(it);
    return sum;
}

TruncatedClass cp1_index_symbolic() {
    // ch(L_k) = 1 + k h;  td(T P^1) = 1 + h  (the tangent line scales like
    // the square bundle, so its normalized curvature is 2h and td adds h).
    const TruncatedClass ch{Poly(Rat(1)), Poly::variable(kScaleK)};
    const TruncatedClass td{Poly(Rat(1)), Poly(Rat(1))};
    return ch.mul(td);
}

Int cp1_index(long k) {
    const TruncatedClass product = cp1_index_symbolic();
    const Rat value = product.c1.evaluate(Rat(0), Rat(0), Rat(k));
    if (value.get_den() != 1) throw consistency_error("projective line index is not integral");
    return value.get_num();
}

double curvature_quadrature(double radius, int steps) {
    if (!(radius > 0.0)) throw domain_error("radius must be positive");
    if (steps < 16) throw domain_error("need at least 16 quadrature steps");

    // pull the connection form back to the circle z = R e^{i t} and integrate
    // its imaginary part; the normalization -1/(2 pi) matches the unit-total
    // curvature convention
    const double two_pi = 2.0 * std::numbers::pi;
    const double h = two_pi / steps;
    double sum = 0.0;
    for (int i = 0; i < steps; ++i) {
        const double t = i * h;
        const std::complex<double> z = std::polar(radius, t);
        const std::complex<double> dz = std::complex<double>(0.0, 1.0) * z;  // dz/dt
        const double integrand = std::imag(-std::conj(z) * dz) / (std::norm(z) + 1.0);
        sum += integrand;  // periodic integrand: endpoint weights coincide
    }
    return -(sum * h) / two_pi;
}

}  // namespace chi::localization
