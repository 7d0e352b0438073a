#include "chi/hodge.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "chi/error.hpp"

namespace chi::hodge {

namespace {

// edges oriented from smaller to larger vertex index throughout
IntMatrix coboundary0(const mesh::SimplicialSurface& s, const std::vector<int>& vcol,
                      const std::vector<int>& erow, std::size_t nv, std::size_t ne) {
    IntMatrix d0(ne, nv);
    for (std::size_t e = 0; e < s.edges().size(); ++e) {
        if (erow[e] < 0) continue;
        const auto [a, b] = s.edges()[e];
        if (vcol[a] >= 0) d0.at(erow[e], vcol[a]) = -1;
        if (vcol[b] >= 0) d0.at(erow[e], vcol[b]) = 1;
    }
    return d0;
}

IntMatrix coboundary1(const mesh::SimplicialSurface& s, const std::vector<int>& erow,
                      std::size_t ne) {
    IntMatrix d1(s.face_count(), ne);
    for (std::size_t f = 0; f < s.triangles().size(); ++f) {
        const mesh::Triangle& t = s.triangles()[f];
        for (int i = 0; i < 3; ++i) {
            const int a = t[i];
            const int b = t[(i + 1) % 3];
            const int e = s.edge_index(a, b);
            if (erow[e] < 0) continue;  // relative cochains vanish on boundary edges
            d1.at(f, erow[e]) = (a < b) ? 1 : -1;
        }
    }
    return d1;
}

}  // namespace

ChainComplex::ChainComplex(IntMatrix d0, IntMatrix d1) : d0_(std::move(d0)), d1_(std::move(d1)) {
    if (d1_.cols() != d0_.rows())
        throw structural_error("coboundary shapes do not chain");
    for (std::size_t f = 0; f < d1_.rows(); ++f) {
        std::map<std::size_t, Int> row;  // sparse row of d1 * d0
        for (std::size_t e = 0; e < d1_.cols(); ++e) {
            if (d1_.at(f, e) == 0) continue;
            for (std::size_t v = 0; v < d0_.cols(); ++v)
                if (d0_.at(e, v) != 0) row[v] += d1_.at(f, e) * d0_.at(e, v);
        }
        for (const auto& [v, sum] : row)
            if (sum != 0) throw structural_error("d1 * d0 != 0: not a complex");
    }
    weights_[0].assign(d0_.cols(), 1.0);
    weights_[1].assign(d0_.rows(), 1.0);
    weights_[2].assign(d1_.rows(), 1.0);
}

std::size_t ChainComplex::dim(int degree) const {
    switch (degree) {
        case 0: return d0_.cols();
        case 1: return d0_.rows();
        case 2: return d1_.rows();
        default: throw domain_error("degree must be 0, 1 or 2");
    }
}

const std::vector<double>& ChainComplex::weights(int degree) const {
    if (degree < 0 || degree > 2) throw domain_error("degree must be 0, 1 or 2");
    return weights_[degree];
}

void ChainComplex::set_weights(int degree, std::vector<double> w) {
    if (degree < 0 || degree > 2) throw domain_error("degree must be 0, 1 or 2");
    if (w.size() != dim(degree)) throw domain_error("weight vector has wrong length");
    for (double x : w)
        if (!(x > 0.0)) throw domain_error("inner-product weights must be positive");
    weights_[degree] = std::move(w);
}

ChainComplex build_complex(const mesh::SimplicialSurface& s, BoundaryCondition bc) {
    if (bc == BoundaryCondition::none && !s.is_closed())
        throw domain_error("condition 'none' requires a closed surface");
    if (bc != BoundaryCondition::none && s.is_closed())
        throw domain_error("absolute/relative conditions require a surface with boundary");

    const bool relative = (bc == BoundaryCondition::relative);
    std::vector<int> vcol(s.vertex_count());
    std::vector<int> erow(s.edge_count());
    std::size_t nv = 0, ne = 0;
    for (std::size_t v = 0; v < s.vertex_count(); ++v)
        vcol[v] = (relative && s.is_boundary_vertex(static_cast<int>(v))) ? -1
                                                                          : static_cast<int>(nv++);
    for (std::size_t e = 0; e < s.edge_count(); ++e)
        erow[e] = (relative && s.edge_faces(e).size() == 1) ? -1 : static_cast<int>(ne++);

    return ChainComplex(coboundary0(s, vcol, erow, nv, ne), coboundary1(s, erow, ne));
}

Betti betti_numbers(const ChainComplex& c) {
    const std::size_t r0 = exact_rank(c.d0());
    const std::size_t r1 = exact_rank(c.d1());
    return Betti{c.dim(0) - r0, c.dim(1) - r0 - r1, c.dim(2) - r1};
}

SymMatrix hodge_laplacian(const ChainComplex& c, int degree) {
    const std::size_t n = c.dim(degree);
    SymMatrix lap(n);
    const auto& wk = c.weights(degree);
    std::vector<double> rs(n);  // 1/sqrt(w_k)
    for (std::size_t i = 0; i < n; ++i) rs[i] = 1.0 / std::sqrt(wk[i]);

    using Entry = std::pair<std::size_t, double>;
    auto add_up = [&](const IntMatrix& d, const std::vector<double>& w_up) {
        // W_k^{-1/2} d^T W_{k+1} d W_k^{-1/2}
        for (std::size_t r = 0; r < d.rows(); ++r) {
            std::vector<Entry> nz;
            for (std::size_t i = 0; i < n; ++i)
                if (d.at(r, i) != 0) nz.emplace_back(i, d.at(r, i).get_d());
            for (const auto& [i, di] : nz)
                for (const auto& [j, dj] : nz)
                    lap.at(i, j) += rs[i] * di * w_up[r] * dj * rs[j];
        }
    };
    auto add_down = [&](const IntMatrix& d, const std::vector<double>& w_down) {
        // W_k^{1/2} d W_{k-1}^{-1} d^T W_k^{1/2}
        std::vector<double> hs(n);
        for (std::size_t i = 0; i < n; ++i) hs[i] = std::sqrt(wk[i]);
        for (std::size_t col = 0; col < d.cols(); ++col) {
            std::vector<Entry> nz;
            for (std::size_t i = 0; i < n; ++i)
                if (d.at(i, col) != 0) nz.emplace_back(i, d.at(i, col).get_d());
            for (const auto& [i, di] : nz)
                for (const auto& [j, dj] : nz)
                    lap.at(i, j) += hs[i] * di / w_down[col] * dj * hs[j];
        }
    };

    switch (degree) {
        case 0:
            add_up(c.d0(), c.weights(1));
            break;
        case 1:
            add_up(c.d1(), c.weights(2));
            add_down(c.d0(), c.weights(0));
            break;
        case 2:
            add_down(c.d1(), c.weights(1));
            break;
        default:
            throw domain_error("degree must be 0, 1 or 2");
    }
    return lap;
}

std::array<std::vector<double>, 3> hodge_spectrum(const ChainComplex& c) {
    return {jacobi_eigenvalues(hodge_laplacian(c, 0)), jacobi_eigenvalues(hodge_laplacian(c, 1)),
            jacobi_eigenvalues(hodge_laplacian(c, 2))};
}

double heat_supertrace(const std::array<std::vector<double>, 3>& spectrum, double t) {
    if (!(t > 0.0)) throw domain_error("heat supertrace requires t > 0");
    double result = 0.0;
    for (int k = 0; k < 3; ++k) {
        double trace = 0.0;
        for (double lambda : spectrum[k]) trace += std::exp(-t * lambda);
        result += (k % 2 == 0) ? trace : -trace;
    }
    return result;
}

double heat_supertrace(const ChainComplex& c, double t) {
    return heat_supertrace(hodge_spectrum(c), t);
}

CollapsedIndex collapsed_index(const ChainComplex& c) {
    const std::size_t n0 = c.dim(0);
    const std::size_t n1 = c.dim(1);
    const std::size_t n2 = c.dim(2);
    IntMatrix d(n1, n0 + n2);  // [ d0 | d1^T ] : C^0 + C^2 -> C^1
    for (std::size_t r = 0; r < n1; ++r)
        for (std::size_t v = 0; v < n0; ++v) d.at(r, v) = c.d0().at(r, v);
    for (std::size_t f = 0; f < n2; ++f)
        for (std::size_t e = 0; e < n1; ++e) d.at(e, n0 + f) = c.d1().at(f, e);
    const std::size_t rank = exact_rank(d);
    return CollapsedIndex{n0 + n2 - rank, n1 - rank};
}

DoubledSurface double_surface(const mesh::SimplicialSurface& base) {
    if (base.is_closed()) throw domain_error("doubling requires a surface with boundary");

    const int nv = static_cast<int>(base.vertex_count());
    std::vector<int> mirror(nv);  // vertex id of the reflected copy
    std::vector<mesh::Vec3> verts = base.vertices();
    for (int v = 0; v < nv; ++v) {
        if (base.is_boundary_vertex(v)) {
            mirror[v] = v;
        } else {
            const mesh::Vec3& p = base.vertices()[v];
            verts.push_back({p[0], p[1], -p[2]});
            mirror[v] = static_cast<int>(verts.size()) - 1;
        }
    }

    std::vector<mesh::Triangle> tris = base.triangles();
    for (const mesh::Triangle& t : base.triangles())
        tris.push_back({mirror[t[0]], mirror[t[2]], mirror[t[1]]});  // reversed orientation

    std::vector<int> tau(verts.size());
    for (int v = 0; v < nv; ++v) {
        tau[v] = mirror[v];
        if (mirror[v] != v) tau[mirror[v]] = v;
    }

    return DoubledSurface{mesh::SimplicialSurface::create(std::move(verts), std::move(tris)),
                          std::move(tau), base};
}

namespace {

double loop_signed_area(const mesh::SimplicialSurface& s, const std::vector<int>& loop) {
    double a2 = 0.0;
    for (std::size_t i = 0; i < loop.size(); ++i) {
        const mesh::Vec3& p = s.vertices()[loop[i]];
        const mesh::Vec3& q = s.vertices()[loop[(i + 1) % loop.size()]];
        a2 += p[0] * q[1] - q[0] * p[1];
    }
    return a2 / 2.0;
}

}  // namespace

PeriodReport circulation_periods(const mesh::SimplicialSurface& s) {
    if (s.is_closed()) throw domain_error("circulation periods require a planar domain with boundary");
    for (const mesh::Vec3& p : s.vertices())
        if (std::abs(p[2]) > 1e-9) throw domain_error("circulation periods require a planar mesh");

    auto loops = s.boundary_loops();
    if (loops.empty()) throw domain_error("no boundary loops found");

    // outer boundary = largest absolute signed area
    std::size_t outer = 0;
    double best = -1.0;
    std::vector<double> areas(loops.size());
    for (std::size_t i = 0; i < loops.size(); ++i) {
        areas[i] = loop_signed_area(s, loops[i]);
        if (std::abs(areas[i]) > best) {
            best = std::abs(areas[i]);
            outer = i;
        }
    }

    PeriodReport report;
    for (std::size_t i = 0; i < loops.size(); ++i) {
        if (i == outer) continue;
        std::vector<int> loop = loops[i];
        if (areas[i] < 0.0) std::reverse(loop.begin(), loop.end());  // CCW around the hole
        double cx = 0.0, cy = 0.0;
        for (int v : loop) {
            cx += s.vertices()[v][0];
            cy += s.vertices()[v][1];
        }
        report.hole_loops.push_back(std::move(loop));
        report.hole_centers.push_back({cx / report.hole_loops.back().size(),
                                       cy / report.hole_loops.back().size()});
    }
    // deterministic hole order: by center coordinates
    std::vector<std::size_t> order(report.hole_loops.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return report.hole_centers[a] < report.hole_centers[b];
    });
    {
        std::vector<std::vector<int>> l2;
        std::vector<std::array<double, 2>> c2;
        for (std::size_t i : order) {
            l2.push_back(std::move(report.hole_loops[i]));
            c2.push_back(report.hole_centers[i]);
        }
        report.hole_loops = std::move(l2);
        report.hole_centers = std::move(c2);
    }

    const std::size_t g = report.hole_loops.size();
    if (g == 0) {
        report.harmonic_periods = RatMatrix(0, 0);
        report.invertible = true;
        return report;
    }

    // harmonic 1-cochains: kernel of the stacked [d0^T ; d1] over the
    // rationals, which is exactly the rational null space of Delta_1
    const ChainComplex c = build_complex(s, BoundaryCondition::absolute);
    const std::size_t nv = c.dim(0);
    const std::size_t ne = c.dim(1);
    const std::size_t nf = c.dim(2);
    IntMatrix stacked(nv + nf, ne);
    for (std::size_t e = 0; e < ne; ++e)
        for (std::size_t v = 0; v < nv; ++v) stacked.at(v, e) = c.d0().at(e, v);
    for (std::size_t f = 0; f < nf; ++f)
        for (std::size_t e = 0; e < ne; ++e) stacked.at(nv + f, e) = c.d1().at(f, e);
    const auto basis = rational_nullspace(stacked);

    RatMatrix periods(g, basis.size());
    for (std::size_t i = 0; i < g; ++i) {
        const auto& loop = report.hole_loops[i];
        for (std::size_t j = 0; j < basis.size(); ++j) {
            Rat sum(0);
            for (std::size_t kk = 0; kk < loop.size(); ++kk) {
                const int a = loop[kk];
                const int b = loop[(kk + 1) % loop.size()];
                const int e = s.edge_index(a, b);
                sum += (a < b) ? basis[j][e] : -basis[j][e];
            }
            periods.at(i, j) = sum;
        }
    }

    report.invertible = false;
    if (periods.rows() == periods.cols()) {
        // exact determinant after clearing denominators
        IntMatrix m(g, g);
        for (std::size_t j = 0; j < g; ++j) {
            Int lcm(1);
            for (std::size_t i = 0; i < g; ++i)
                mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(),
                        periods.at(i, j).get_den().get_mpz_t());
            for (std::size_t i = 0; i < g; ++i) {
                Rat scaled = periods.at(i, j) * Rat(lcm);
                m.at(i, j) = scaled.get_num();
            }
        }
        report.invertible = (exact_determinant(m) != 0);
    }
    report.harmonic_periods = std::move(periods);
    return report;
}

std::vector<double> sample_edge_cochain(const mesh::SimplicialSurface& s, const PlanarField& f) {
    // 4-point Gauss-Legendre nodes/weights on [-1, 1]
    static const double node[2] = {0.3399810435848563, 0.8611363115940526};
    static const double weight[2] = {0.6521451548625461, 0.3478548451374538};

    std::vector<double> cochain(s.edge_count(), 0.0);
    for (std::size_t e = 0; e < s.edge_count(); ++e) {
        const auto [a, b] = s.edges()[e];
        const mesh::Vec3& pa = s.vertices()[a];
        const mesh::Vec3& pb = s.vertices()[b];
        const double dx = pb[0] - pa[0];
        const double dy = pb[1] - pa[1];
        const double mx = (pa[0] + pb[0]) / 2.0;
        const double my = (pa[1] + pb[1]) / 2.0;
        double sum = 0.0;
        for (int i = 0; i < 2; ++i) {
            for (double sgn : {-1.0, 1.0}) {
                const double x = mx + sgn * node[i] * dx / 2.0;
                const double y = my + sgn * node[i] * dy / 2.0;
                const auto v = f(x, y);
                sum += weight[i] * (v[0] * dx + v[1] * dy);
            }
        }
        cochain[e] = sum / 2.0;
    }
    return cochain;
}

double loop_circulation(const mesh::SimplicialSurface& s, const std::vector<double>& cochain,
                        const std::vector<int>& loop) {
    double sum = 0.0;
    for (std::size_t i = 0; i < loop.size(); ++i) {
        const int a = loop[i];
        const int b = loop[(i + 1) % loop.size()];
        const int e = s.edge_index(a, b);
        if (e < 0) throw domain_error("loop uses a non-edge segment");
        sum += (a < b) ? cochain[e] : -cochain[e];
    }
    return sum;
}

}  // namespace chi::hodge
