#include "chi/exact.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace chi {

bool RatMatrix::is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
    return t;
}

RatMatrix IntMatrix::to_rational() const {
    RatMatrix q(rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) q.at(r, c) = Rat(at(r, c));
    return q;
}

namespace {

// One-step Bareiss elimination on a working copy. Returns the rank and, for
// square full-pivot runs, leaves the determinant in `det` (with sign fixed
// for row/column swaps). Pivots are chosen as the smallest nonzero entry in
// the remaining block to keep intermediate minors small.
std::size_t bareiss(IntMatrix& a, Int* det) {
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();
    Int prev(1);
    int sign = 1;
    std::size_t rank = 0;
    for (std::size_t k = 0; rank < rows && k < cols; ++k) {
        // pick pivot in column-major scan of the remaining block
        std::size_t pr = rows, pc = cols;
        for (std::size_t c = k; c < cols && pr == rows; ++c) {
            for (std::size_t r = rank; r < rows; ++r) {
                if (a.at(r, c) != 0 &&
                    (pr == rows || mpz_cmpabs(a.at(r, c).get_mpz_t(), a.at(pr, pc).get_mpz_t()) < 0)) {
                    pr = r;
                    pc = c;
                }
            }
        }
        if (pr == rows) break;  // remaining block is zero
        if (pr != rank) {
            for (std::size_t c = 0; c < cols; ++c) std::swap(a.at(pr, c), a.at(rank, c));
            sign = -sign;
        }
        if (pc != k) {
            for (std::size_t r = 0; r < rows; ++r) std::swap(a.at(r, pc), a.at(r, k));
            sign = -sign;
        }
        const Int pivot = a.at(rank, k);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            for (std::size_t c = k + 1; c < cols; ++c) {
                Int num = a.at(r, c) * pivot - a.at(r, k) * a.at(rank, c);
                // exact division by the previous pivot (Bareiss identity)
                Int q;
                mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
                a.at(r, c) = q;
            }
            a.at(r, k) = 0;
        }
        prev = pivot;
        ++rank;
    }
    if (det) {
        if (rank < std::min(a.rows(), a.cols()) || a.rows() != a.cols()) {
            *det = 0;
        } else {
            *det = sign > 0 ? prev : Int(-prev);
        }
    }
    return rank;
}

}  // namespace

std::size_t exact_rank(const IntMatrix& m) {
    IntMatrix work = m;
    return bareiss(work, nullptr);
}

Int exact_determinant(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    if (m.rows() == 0) return Int(1);
    IntMatrix work = m;
    Int det;
    bareiss(work, &det);
    return det;
}

std::vector<std::vector<Rat>> rational_nullspace(const IntMatrix& m) {
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    RatMatrix a = m.to_rational();

    // reduced row echelon form
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = rows;
        for (std::size_t i = r; i < rows; ++i)
            if (a.at(i, c) != 0) { p = i; break; }
        if (p == rows) continue;
        if (p != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(a.at(p, j), a.at(r, j));
        const Rat inv = 1 / a.at(r, c);
        for (std::size_t j = c; j < cols; ++j) a.at(r, j) *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a.at(i, c) == 0) continue;
            const Rat f = a.at(i, c);
            for (std::size_t j = c; j < cols; ++j) a.at(i, j) -= f * a.at(r, j);
        }
        pivot_col.push_back(c);
        ++r;
    }

    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivot_col) is_pivot[c] = true;

    std::vector<std::vector<Rat>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rat> v(cols, Rat(0));
        v[free] = 1;
        for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -a.at(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

SignatureCounts congruence_inertia(RatMatrix m) {
    if (!m.is_symmetric()) throw std::invalid_argument("inertia of non-symmetric matrix");
    const std::size_t n = m.rows();
    SignatureCounts counts;
    for (std::size_t k = 0; k < n; ++k) {
        if (m.at(k, k) == 0) {
            // try a diagonal swap first
            std::size_t j = n;
            for (std::size_t i = k + 1; i < n; ++i)
                if (m.at(i, i) != 0) { j = i; break; }
            if (j < n) {
                for (std::size_t c = 0; c < n; ++c) std::swap(m.at(k, c), m.at(j, c));
                for (std::size_t r = 0; r < n; ++r) std::swap(m.at(r, k), m.at(r, j));
            } else {
                // all remaining diagonal entries vanish; add a row/col pair
                std::size_t p = n, q = n;
                for (std::size_t i = k; i < n && p == n; ++i)
                    for (std::size_t l = i + 1; l < n; ++l)
                        if (m.at(i, l) != 0) { p = i; q = l; break; }
                if (p == n) break;  // remaining block is zero
                for (std::size_t c = 0; c < n; ++c) m.at(p, c) += m.at(q, c);
                for (std::size_t r = 0; r < n; ++r) m.at(r, p) += m.at(r, q);
                if (p != k) {
                    for (std::size_t c = 0; c < n; ++c) std::swap(m.at(k, c), m.at(p, c));
                    for (std::size_t r = 0; r < n; ++r) std::swap(m.at(r, k), m.at(r, p));
                }
            }
        }
        const Rat pivot = m.at(k, k);
        if (pivot == 0) break;
        if (pivot > 0)
            ++counts.positive;
        else
            ++counts.negative;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m.at(i, k) == 0) continue;
            const Rat f = m.at(i, k) / pivot;
            for (std::size_t j = k; j < n; ++j) m.at(i, j) -= f * m.at(k, j);
            for (std::size_t j = k; j < n; ++j) m.at(j, i) = m.at(i, j);
        }
    }
    counts.zero = n - counts.positive - counts.negative;
    return counts;
}

std::string to_string(const Rat& q) { return q.get_str(); }
std::string to_string(const Int& n) { return n.get_str(); }

}  // namespace chi
