#pragma once

#include <cstddef>
#include <vector>

namespace chi {

/// Dense symmetric matrix of doubles, row-major.
struct SymMatrix {
    std::size_t n = 0;
    std::vector<double> a;  // n*n entries

    SymMatrix() = default;
    explicit SymMatrix(std::size_t size) : n(size), a(size * size, 0.0) {}

    double& at(std::size_t r, std::size_t c) { return a[r * n + c]; }
    double at(std::size_t r, std::size_t c) const { return a[r * n + c]; }
};

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, sorted
/// ascending. Sweeps run until the off-diagonal Frobenius norm drops below
/// 1e-12 relative to the initial Frobenius norm; throws NumericError with the
/// sweep count if that never happens.
std::vector<double> jacobi_eigenvalues(SymMatrix m);

}  // namespace chi
