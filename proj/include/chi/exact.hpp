#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace chi {

using Int = mpz_class;
using Rat = mpq_class;

/// Dense matrix over exact rationals, row-major.
class RatMatrix {
  public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Rat(0)) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rat& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool is_symmetric() const;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rat> data_;
};

/// Dense integer matrix, row-major.
class IntMatrix {
  public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Int(0)) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Int& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    IntMatrix transposed() const;
    RatMatrix to_rational() const;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> data_;
};

/// Exact rank via fraction-free (Bareiss) elimination. The input is copied.
std::size_t exact_rank(const IntMatrix& m);

/// Exact determinant of a square integer matrix (Bareiss).
Int exact_determinant(const IntMatrix& m);

/// Basis of the right null space { x : m x = 0 } over the rationals.
/// Each basis vector has length m.cols().
std::vector<std::vector<Rat>> rational_nullspace(const IntMatrix& m);

struct SignatureCounts {
    std::size_t positive = 0;
    std::size_t negative = 0;
    std::size_t zero = 0;
    int signature() const { return static_cast<int>(positive) - static_cast<int>(negative); }
};

/// Inertia of a symmetric rational matrix by congruence diagonalization
/// (symmetric Gaussian elimination with pivot repair for zero diagonals).
/// Never touches floating point.
SignatureCounts congruence_inertia(RatMatrix m);

std::string to_string(const Rat& q);
std::string to_string(const Int& n);

}  // namespace chi
