#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace chi::mesh {

using Vec3 = std::array<double, 3>;
using Triangle = std::array<int, 3>;
using EdgeKey = std::pair<int, int>;  // vertex indices, smaller first

/// Oriented triangle mesh, closed or with boundary. Construction validates:
/// every edge borders one or two triangles, interior edges are traversed once
/// in each direction, no triangle is degenerate or geometrically collinear,
/// and boundary edges close up into disjoint simple cycles. Immutable after
/// construction.
class SimplicialSurface {
  public:
    static SimplicialSurface create(std::vector<Vec3> vertices, std::vector<Triangle> triangles);

    const std::vector<Vec3>& vertices() const { return vertices_; }
    const std::vector<Triangle>& triangles() const { return triangles_; }
    const std::vector<EdgeKey>& edges() const { return edges_; }

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    std::size_t face_count() const { return triangles_.size(); }

    bool is_closed() const { return boundary_edge_count_ == 0; }
    bool is_boundary_vertex(int v) const { return boundary_vertex_[static_cast<size_t>(v)]; }
    std::size_t boundary_edge_count() const { return boundary_edge_count_; }

    /// Edge index for an unordered vertex pair; -1 if absent.
    int edge_index(int a, int b) const;
    /// Faces incident to an edge (1 for boundary edges, 2 for interior ones).
    const std::vector<int>& edge_faces(std::size_t edge) const {
        return edge_faces_[edge];
    }

    /// Boundary cycles as vertex loops, each traversed once. Deterministic
    /// order: cycles sorted by smallest contained vertex index.
    std::vector<std::vector<int>> boundary_loops() const;

  private:
    SimplicialSurface() = default;
    void build_and_validate();

    std::vector<Vec3> vertices_;
    std::vector<Triangle> triangles_;
    std::vector<EdgeKey> edges_;
    std::vector<std::vector<int>> edge_faces_;
    std::vector<bool> boundary_vertex_;
    std::size_t boundary_edge_count_ = 0;
};

/// Spherical triangle given by its angles and the sphere radius.
struct GeodesicTriangle {
    double alpha;
    double beta;
    double gamma;
    double radius;
};

int euler_characteristic(const SimplicialSurface& s);

/// Area of a spherical triangle from the angle excess, A = R^2 (a+b+g - pi).
/// Rejects angle sums <= pi and angles outside (0, pi).
double spherical_excess(const GeodesicTriangle& t);

/// 2*pi minus the sum of Euclidean face angles at an interior vertex.
double angle_defect(const SimplicialSurface& s, int vertex);

struct DefectSumReport {
    double defect_sum;
    double two_pi_chi;
    double residual;
};

/// Total angle defect against 2*pi*chi on a closed surface.
DefectSumReport defect_sum_check(const SimplicialSurface& s);

/// Splits edge (a, b) at its midpoint and fans the incident triangles.
SimplicialSurface split_edge(const SimplicialSurface& s, int a, int b);

/// Splits a face into three at its centroid. (For triangle meshes the
/// paper-style "new edge between two vertices" move degenerates, since any
/// two vertices of a triangle already span an edge; the centroid split is the
/// triangle-preserving face division with the same Euler count.)
SimplicialSurface split_face(const SimplicialSurface& s, int face);

// Built-in generators. All are centered at the origin.
SimplicialSurface make_tetrahedron();
SimplicialSurface make_octahedron();
SimplicialSurface make_icosahedron();
/// Icosahedron with `level` rounds of 4-way subdivision, projected to the
/// unit sphere.
SimplicialSurface make_icosphere(int level);
/// Flat rectangle of (2g+1) x 3 unit cells with g unit square holes cut out,
/// triangulated by crossed quarter-cells so that doubling stays manifold.
/// Hole h is centered at (2h - g + ... ) -- concretely holes sit at
/// x = -(g-1), ..., (g-1) in steps of 2 on the line y = 0; for g = 1 the hole
/// is at the origin and for g = 2 at (-1, 0), (1, 0).
SimplicialSurface make_holed_rectangle(int holes);

// OFF file format: "OFF", then "V F E" (E may be 0), then vertex coordinate
// lines and "3 i j k" face lines.
SimplicialSurface read_off(std::istream& in);
SimplicialSurface read_off_file(const std::string& path);
void write_off(const SimplicialSurface& s, std::ostream& out);
void write_off_file(const SimplicialSurface& s, const std::string& path);

}  // namespace chi::mesh
