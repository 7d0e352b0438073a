#include "chi/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "chi/error.hpp"

namespace chi {

namespace {

double offdiag_sq(const SymMatrix& m) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.n; ++i)
        for (std::size_t j = i + 1; j < m.n; ++j) s += 2.0 * m.at(i, j) * m.at(i, j);
    return s;
}

double frobenius(const SymMatrix& m) {
    double s = 0.0;
    for (double v : m.a) s += v * v;
    return std::sqrt(s);
}

}  // namespace

std::vector<double> jacobi_eigenvalues(SymMatrix m) {
    const std::size_t n = m.n;
    if (n == 0) return {};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(m.at(i, j) - m.at(j, i)) > 1e-12 * (1.0 + std::abs(m.at(i, j))))
                throw numeric_error("jacobi: input matrix is not symmetric");

    const double scale = std::max(frobenius(m), 1.0);
    const double tol = 1e-12 * scale;
    const int max_sweeps = 100;

    int sweep = 0;
    while (std::sqrt(offdiag_sq(m)) > tol) {
        if (++sweep > max_sweeps)
            throw numeric_error("jacobi: no convergence after " + std::to_string(max_sweeps) +
                                " sweeps");
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = m.at(p, q);
                if (std::abs(apq) <= 1e-300) continue;
                const double tau = (m.at(q, q) - m.at(p, p)) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = m.at(k, p);
                    const double akq = m.at(k, q);
                    m.at(k, p) = c * akp - s * akq;
                    m.at(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = m.at(p, k);
                    const double aqk = m.at(q, k);
                    m.at(p, k) = c * apk - s * aqk;
                    m.at(q, k) = s * apk + c * aqk;
                }
            }
        }
    }

    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = m.at(i, i);
    std::sort(eig.begin(), eig.end());
    return eig;
}

}  // namespace chi
