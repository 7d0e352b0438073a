#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "chi/error.hpp"
#include "chi/hodge.hpp"
#include "chi/mesh.hpp"

using namespace chi;
using namespace chi::hodge;
using chi::mesh::SimplicialSurface;

namespace {

constexpr double kPi = std::numbers::pi;

int numeric_kernel_dim(const std::vector<double>& eigenvalues) {
    int count = 0;
    for (double x : eigenvalues)
        if (x < 1e-8) ++count;
    return count;
}

}  // namespace

TEST_CASE("build_complex honors boundary preconditions") {
    // a single triangle has boundary: 'none' is rejected, absolute is fine
    std::vector<mesh::Vec3> v = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
    const auto tri = SimplicialSurface::create(v, {{0, 1, 2}});
    CHECK_THROWS_AS(build_complex(tri, BoundaryCondition::none), Error);
    const auto complex = build_complex(tri, BoundaryCondition::absolute);
    CHECK(complex.dim(0) == 3);
    CHECK(complex.dim(1) == 3);
    CHECK(complex.dim(2) == 1);
    int nonzeros = 0;
    for (std::size_t e = 0; e < 3; ++e)
        if (complex.d1().at(0, e) != 0) ++nonzeros;
    CHECK(nonzeros == 3);

    const auto octa = mesh::make_octahedron();
    CHECK_THROWS_AS(build_complex(octa, BoundaryCondition::absolute), Error);
    CHECK_NOTHROW(build_complex(octa, BoundaryCondition::none));
}

TEST_CASE("absolute and relative complexes differ by the boundary simplices") {
    const auto annulus = mesh::make_holed_rectangle(1);
    const auto abs = build_complex(annulus, BoundaryCondition::absolute);
    const auto rel = build_complex(annulus, BoundaryCondition::relative);
    CHECK(abs.dim(1) == annulus.edge_count());
    CHECK(abs.dim(1) - rel.dim(1) == annulus.boundary_edge_count());
    CHECK(abs.dim(2) == rel.dim(2));
}

TEST_CASE("betti numbers of the standard menagerie") {
    CHECK(betti_numbers(build_complex(mesh::make_octahedron(), BoundaryCondition::none)) ==
          Betti{1, 0, 1});

    // flat domains with g holes, absolute conditions: (1, g, 0)
    for (int g = 0; g <= 3; ++g) {
        const auto domain = mesh::make_holed_rectangle(g);
        const auto betti = betti_numbers(build_complex(domain, BoundaryCondition::absolute));
        CHECK(betti == Betti{1, static_cast<std::size_t>(g), 0});
    }

    // torus = double of the annulus
    const auto torus = double_surface(mesh::make_holed_rectangle(1)).surface;
    CHECK(betti_numbers(build_complex(torus, BoundaryCondition::none)) == Betti{1, 2, 1});
}

TEST_CASE("betti alternating sum equals V - E + F on closed surfaces") {
    for (const auto& s : {mesh::make_octahedron(), mesh::make_icosphere(1),
                          double_surface(mesh::make_holed_rectangle(1)).surface,
                          double_surface(mesh::make_holed_rectangle(2)).surface}) {
        const auto betti = betti_numbers(build_complex(s, BoundaryCondition::none));
        CHECK(betti.alternating_sum() == mesh::euler_characteristic(s));
    }
}

TEST_CASE("two disjoint triangles have a two dimensional degree-0 kernel") {
    std::vector<mesh::Vec3> v = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0},
                                 {5, 0, 0}, {6, 0, 0}, {5, 1, 0}};
    const auto two = SimplicialSurface::create(v, {{0, 1, 2}, {3, 4, 5}});
    const auto complex = build_complex(two, BoundaryCondition::absolute);
    CHECK(betti_numbers(complex).b0 == 2);
    const auto spectrum = jacobi_eigenvalues(hodge_laplacian(complex, 0));
    CHECK(numeric_kernel_dim(spectrum) == 2);
}

TEST_CASE("laplacian kernels match betti numbers on sphere and torus") {
    const auto sphere = build_complex(mesh::make_octahedron(), BoundaryCondition::none);
    CHECK(numeric_kernel_dim(jacobi_eigenvalues(hodge_laplacian(sphere, 1))) == 0);

    const auto torus = build_complex(double_surface(mesh::make_holed_rectangle(1)).surface,
                                     BoundaryCondition::none);
    const auto betti = betti_numbers(torus);
    const auto spectrum = hodge_spectrum(torus);
    for (int k = 0; k < 3; ++k) {
        const std::size_t bk = (k == 0) ? betti.b0 : (k == 1 ? betti.b1 : betti.b2);
        CHECK(numeric_kernel_dim(spectrum[k]) == static_cast<int>(bk));
    }
}

TEST_CASE("heat supertrace equals chi for all t") {
    const auto sphere = build_complex(mesh::make_octahedron(), BoundaryCondition::none);
    CHECK(heat_supertrace(sphere, 1.0) == doctest::Approx(2.0).epsilon(1e-6));

    const auto torus = build_complex(double_surface(mesh::make_holed_rectangle(1)).surface,
                                     BoundaryCondition::none);
    const auto spectrum = hodge_spectrum(torus);
    const double s1 = heat_supertrace(spectrum, 0.1);
    const double s2 = heat_supertrace(spectrum, 1.0);
    const double s3 = heat_supertrace(spectrum, 10.0);
    CHECK(std::abs(s1) < 1e-6);
    CHECK(std::abs(s2) < 1e-6);
    CHECK(std::abs(s3) < 1e-6);
    CHECK(std::abs(s1 - s2) < 1e-8);
    CHECK(std::abs(s2 - s3) < 1e-8);

    const auto genus2 = build_complex(double_surface(mesh::make_holed_rectangle(2)).surface,
                                      BoundaryCondition::none);
    CHECK(heat_supertrace(genus2, 0.5) == doctest::Approx(-2.0).epsilon(1e-6));

    CHECK_THROWS_AS(heat_supertrace(sphere, 0.0), Error);
}

TEST_CASE("supertrace is stable under random positive weights") {
    auto complex = build_complex(mesh::make_octahedron(), BoundaryCondition::none);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(0.5, 2.0);
    for (int degree = 0; degree < 3; ++degree) {
        std::vector<double> w(complex.dim(degree));
        for (double& x : w) x = dist(rng);
        complex.set_weights(degree, w);
    }
    CHECK(heat_supertrace(complex, 0.7) == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("nonzero spectra of paired laplacians coincide") {
    // D = d0 (+) d1^T collapsed: D D* = Delta_1, D* D = Delta_0 (+) down-Delta_2
    for (const auto& surface :
         {mesh::make_octahedron(), double_surface(mesh::make_holed_rectangle(1)).surface}) {
        const auto complex = build_complex(surface, BoundaryCondition::none);
        const auto spectrum = hodge_spectrum(complex);
        std::vector<double> side_a;  // Delta_0 and Delta_2 nonzero eigenvalues
        for (int k : {0, 2})
            for (double x : spectrum[k])
                if (x > 1e-8) side_a.push_back(x);
        std::vector<double> side_b;
        for (double x : spectrum[1])
            if (x > 1e-8) side_b.push_back(x);
        std::sort(side_a.begin(), side_a.end());
        std::sort(side_b.begin(), side_b.end());
        REQUIRE(side_a.size() == side_b.size());
        for (std::size_t i = 0; i < side_a.size(); ++i)
            CHECK(side_a[i] == doctest::Approx(side_b[i]).epsilon(1e-8));
    }
}

TEST_CASE("collapsed index matches betti alternating sums") {
    // flat g-holed domains, absolute: ker 1, coker g, index 1 - g
    for (int g = 0; g <= 2; ++g) {
        const auto complex =
            build_complex(mesh::make_holed_rectangle(g), BoundaryCondition::absolute);
        const auto collapsed = collapsed_index(complex);
        CHECK(collapsed.kernel_dim == 1);
        CHECK(collapsed.cokernel_dim == static_cast<std::size_t>(g));
        CHECK(collapsed.index() == 1 - g);
        CHECK(collapsed.index() == betti_numbers(complex).alternating_sum());
    }

    // doubles: ker 2, coker 2g, index 2 - 2g
    for (int g = 0; g <= 2; ++g) {
        const auto doubled = double_surface(mesh::make_holed_rectangle(g)).surface;
        const auto complex = build_complex(doubled, BoundaryCondition::none);
        const auto collapsed = collapsed_index(complex);
        CHECK(collapsed.kernel_dim == 2);
        CHECK(collapsed.cokernel_dim == static_cast<std::size_t>(2 * g));
        CHECK(collapsed.index() == 2 - 2 * g);
    }
}

TEST_CASE("doubling glues along the boundary with an involution") {
    const auto base = mesh::make_holed_rectangle(1);
    const auto doubled = double_surface(base);
    CHECK(doubled.surface.is_closed());
    CHECK(mesh::euler_characteristic(doubled.surface) == 2 * mesh::euler_characteristic(base));

    // tau^2 = id and fixed points are exactly the base boundary vertices
    std::size_t fixed = 0;
    for (std::size_t v = 0; v < doubled.involution.size(); ++v) {
        const int image = doubled.involution[v];
        CHECK(doubled.involution[image] == static_cast<int>(v));
        if (image == static_cast<int>(v)) ++fixed;
    }
    std::size_t base_boundary = 0;
    for (std::size_t v = 0; v < base.vertex_count(); ++v)
        if (base.is_boundary_vertex(static_cast<int>(v))) ++base_boundary;
    CHECK(fixed == base_boundary);

    // face orbits under tau pair the two copies onto the base
    CHECK(doubled.surface.face_count() == 2 * base.face_count());

    CHECK(mesh::euler_characteristic(double_surface(mesh::make_holed_rectangle(0)).surface) == 2);
    CHECK(mesh::euler_characteristic(double_surface(mesh::make_holed_rectangle(2)).surface) == -2);
    CHECK_THROWS_AS(double_surface(mesh::make_octahedron()), Error);
}

TEST_CASE("circulation periods: disk has none, annulus sees the winding field") {
    const auto disk_report = circulation_periods(mesh::make_holed_rectangle(0));
    CHECK(disk_report.hole_loops.empty());
    CHECK(disk_report.harmonic_periods.rows() == 0);
    CHECK(disk_report.invertible);

    const auto annulus = mesh::make_holed_rectangle(1);
    const auto report = circulation_periods(annulus);
    REQUIRE(report.hole_loops.size() == 1);
    CHECK(report.invertible);
    CHECK(std::abs(report.hole_centers[0][0]) < 1e-12);

    // the unit angular field around the hole has winding number 1
    const auto cochain = sample_edge_cochain(annulus, [](double x, double y) {
        const double f = 1.0 / (2.0 * kPi * (x * x + y * y));
        return std::array<double, 2>{-y * f, x * f};
    });
    const double period = loop_circulation(annulus, cochain, report.hole_loops[0]);
    CHECK(std::abs(period - 1.0) < 0.05);
}

TEST_CASE("two-holed domain: winding numbers of the two pole fields") {
    const auto domain = mesh::make_holed_rectangle(2);
    const auto report = circulation_periods(domain);
    REQUIRE(report.hole_loops.size() == 2);
    CHECK(report.invertible);
    CHECK(report.hole_centers[0][0] == doctest::Approx(-1.0));
    CHECK(report.hole_centers[1][0] == doctest::Approx(1.0));

    // fields with poles at (-1, 0) and (+1, 0)
    for (int which = 0; which < 2; ++which) {
        const double cx = (which == 0) ? -1.0 : 1.0;
        const auto cochain = sample_edge_cochain(domain, [cx](double x, double y) {
            const double dx = x - cx;
            const double f = 1.0 / (2.0 * kPi * (dx * dx + y * y));
            return std::array<double, 2>{-y * f, dx * f};
        });
        for (int loop = 0; loop < 2; ++loop) {
            const double period = loop_circulation(domain, cochain, report.hole_loops[loop]);
            const double expected = (loop == which) ? 1.0 : 0.0;
            CHECK(std::abs(period - expected) < 0.05);
        }
    }
}
