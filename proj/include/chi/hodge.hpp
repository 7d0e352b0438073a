#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "chi/exact.hpp"
#include "chi/jacobi.hpp"
#include "chi/mesh.hpp"

namespace chi::hodge {

enum class BoundaryCondition {
    none,      // closed surfaces only
    absolute,  // full cochain complex (Neumann analog)
    relative,  // cochains vanishing on boundary simplices (Dirichlet analog)
};

/// Simplicial cochain complex C^0 -> C^1 -> C^2 with integer coboundaries and
/// positive diagonal inner-product weights per degree (all 1 by default).
/// d1 * d0 = 0 is asserted at construction.
class ChainComplex {
  public:
    ChainComplex(IntMatrix d0, IntMatrix d1);

    const IntMatrix& d0() const { return d0_; }
    const IntMatrix& d1() const { return d1_; }

    std::size_t dim(int degree) const;  // dim C^degree

    const std::vector<double>& weights(int degree) const;
    void set_weights(int degree, std::vector<double> w);

  private:
    IntMatrix d0_;  // (dim C^1) x (dim C^0)
    IntMatrix d1_;  // (dim C^2) x (dim C^1)
    std::array<std::vector<double>, 3> weights_;
};

ChainComplex build_complex(const mesh::SimplicialSurface& s, BoundaryCondition bc);

struct Betti {
    std::size_t b0;
    std::size_t b1;
    std::size_t b2;
    int alternating_sum() const {
        return static_cast<int>(b0) - static_cast<int>(b1) + static_cast<int>(b2);
    }
    bool operator==(const Betti&) const = default;
};

/// Betti numbers from exact ranks over the rationals (fraction-free integer
/// elimination; torsion is irrelevant in these degrees).
Betti betti_numbers(const ChainComplex& c);

/// Weighted Hodge Laplacian of the given degree in the symmetric gauge
/// W^{1/2} Delta W^{-1/2}; with unit weights this is the combinatorial
/// d^T d + d d^T. Positive semidefinite, kernel dimension b_k.
SymMatrix hodge_laplacian(const ChainComplex& c, int degree);

/// Eigenvalues of all three Laplacians (each sorted ascending).
std::array<std::vector<double>, 3> hodge_spectrum(const ChainComplex& c);

double heat_supertrace(const std::array<std::vector<double>, 3>& spectrum, double t);
double heat_supertrace(const ChainComplex& c, double t);

struct CollapsedIndex {
    std::size_t kernel_dim;
    std::size_t cokernel_dim;
    int index() const {
        return static_cast<int>(kernel_dim) - static_cast<int>(cokernel_dim);
    }
};

/// Kernel and cokernel of the collapsed operator D = d0 (+) d1^T mapping
/// C^0 + C^2 -> C^1, computed from one exact rank.
CollapsedIndex collapsed_index(const ChainComplex& c);

struct DoubledSurface {
    mesh::SimplicialSurface surface;     // closed double
    std::vector<int> involution;         // vertex permutation, tau^2 = id
    mesh::SimplicialSurface base;        // original surface with boundary
};

/// Glues two mirrored copies of a surface-with-boundary along the boundary.
/// chi(double) = 2 chi(base); the involution swaps the copies and fixes
/// exactly the boundary vertices.
DoubledSurface double_surface(const mesh::SimplicialSurface& base);

/// Planar vector field sampled along mesh edges.
using PlanarField = std::function<std::array<double, 2>(double x, double y)>;

struct PeriodReport {
    std::vector<std::vector<int>> hole_loops;     // CCW around each hole
    std::vector<std::array<double, 2>> hole_centers;
    RatMatrix harmonic_periods;                   // loop x basis-vector
    bool invertible;
};

/// Harmonic 1-cochain basis (exact rational kernel of the degree-1 Laplacian,
/// absolute conditions) summed along each inner boundary loop. The outer
/// boundary is the cycle of largest absolute signed area; holes are ordered
/// by center coordinates.
PeriodReport circulation_periods(const mesh::SimplicialSurface& s);

/// Edge cochain from a planar field by 4-point Gauss-Legendre quadrature of
/// the tangential component along each (canonically oriented) edge.
std::vector<double> sample_edge_cochain(const mesh::SimplicialSurface& s, const PlanarField& f);

/// Sum of a 1-cochain along a closed vertex loop.
double loop_circulation(const mesh::SimplicialSurface& s, const std::vector<double>& cochain,
                        const std::vector<int>& loop);

}  // namespace chi::hodge
