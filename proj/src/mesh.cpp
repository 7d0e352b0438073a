#include "chi/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>

#include "chi/error.hpp"

namespace chi::mesh {

namespace {

constexpr double kPi = std::numbers::pi;

Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

std::string edge_name(int a, int b) {
    return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

/// Interior angle at triangle corner `at`, from embedded positions.
double corner_angle(const Vec3& at, const Vec3& p, const Vec3& q) {
    const Vec3 u = sub(p, at);
    const Vec3 v = sub(q, at);
    const double nu = norm(u);
    const double nv = norm(v);
    if (nu == 0.0 || nv == 0.0) throw numeric_error("zero-length edge at angle computation");
    double c = dot(u, v) / (nu * nv);
    c = std::clamp(c, -1.0, 1.0);
    return std::acos(c);
}

}  // namespace

SimplicialSurface SimplicialSurface::create(std::vector<Vec3> vertices,
                                            std::vector<Triangle> triangles) {
    SimplicialSurface s;
    s.vertices_ = std::move(vertices);
    s.triangles_ = std::move(triangles);
    s.build_and_validate();
    return s;
}

void SimplicialSurface::build_and_validate() {
    const int nv = static_cast<int>(vertices_.size());
    if (nv < 3 || triangles_.empty()) throw structural_error("mesh needs vertices and triangles");

    std::map<EdgeKey, std::vector<int>> faces_of;
    std::map<EdgeKey, int> forward, backward;  // directed traversal counts

    for (std::size_t f = 0; f < triangles_.size(); ++f) {
        const Triangle& t = triangles_[f];
        for (int c : t)
            if (c < 0 || c >= nv)
                throw structural_error("triangle " + std::to_string(f) +
                                       " references vertex " + std::to_string(c));
        if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2])
            throw structural_error("degenerate triangle " + std::to_string(f));

        const Vec3 n = cross(sub(vertices_[t[1]], vertices_[t[0]]),
                             sub(vertices_[t[2]], vertices_[t[0]]));
        const double l1 = norm(sub(vertices_[t[1]], vertices_[t[0]]));
        const double l2 = norm(sub(vertices_[t[2]], vertices_[t[0]]));
        if (norm(n) <= 1e-12 * std::max(1.0, l1 * l2))
            throw structural_error("collinear vertex positions in triangle " + std::to_string(f));

        for (int i = 0; i < 3; ++i) {
            const int a = t[i];
            const int b = t[(i + 1) % 3];
            const EdgeKey key = std::minmax(a, b);
            faces_of[key].push_back(static_cast<int>(f));
            if (a < b)
                ++forward[key];
            else
                ++backward[key];
        }
    }

    boundary_vertex_.assign(vertices_.size(), false);
    boundary_edge_count_ = 0;
    edges_.clear();
    edge_faces_.clear();
    for (auto& [key, faces] : faces_of) {
        if (faces.size() > 2)
            throw structural_error("non-manifold edge " + edge_name(key.first, key.second) +
                                   " shared by " + std::to_string(faces.size()) + " triangles");
        const int fwd = forward.count(key) ? forward[key] : 0;
        const int bwd = backward.count(key) ? backward[key] : 0;
        if (faces.size() == 2 && (fwd != 1 || bwd != 1))
            throw structural_error("inconsistent orientation across edge " +
                                   edge_name(key.first, key.second));
        if (faces.size() == 1) {
            ++boundary_edge_count_;
            boundary_vertex_[key.first] = true;
            boundary_vertex_[key.second] = true;
        }
        edges_.push_back(key);
        edge_faces_.push_back(faces);
    }

    // boundary edges must close into disjoint simple cycles: every boundary
    // vertex sees exactly two boundary edges
    std::vector<int> boundary_degree(vertices_.size(), 0);
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        if (edge_faces_[e].size() == 1) {
            ++boundary_degree[edges_[e].first];
            ++boundary_degree[edges_[e].second];
        }
    }
    for (std::size_t v = 0; v < vertices_.size(); ++v) {
        if (boundary_degree[v] != 0 && boundary_degree[v] != 2)
            throw structural_error("boundary is not a disjoint union of simple cycles at vertex " +
                                   std::to_string(v));
    }
}

int SimplicialSurface::edge_index(int a, int b) const {
    const EdgeKey key = std::minmax(a, b);
    const auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
    if (it == edges_.end() || *it != key) return -1;
    return static_cast<int>(it - edges_.begin());
}

std::vector<std::vector<int>> SimplicialSurface::boundary_loops() const {
    std::map<int, std::vector<int>> next;  // boundary vertex -> neighbors
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        if (edge_faces_[e].size() != 1) continue;
        next[edges_[e].first].push_back(edges_[e].second);
        next[edges_[e].second].push_back(edges_[e].first);
    }
    std::set<int> seen;
    std::vector<std::vector<int>> loops;
    for (const auto& [start, nbrs] : next) {
        if (seen.count(start)) continue;
        std::vector<int> loop;
        int prev = -1;
        int cur = start;
        do {
            loop.push_back(cur);
            seen.insert(cur);
            const auto& n = next.at(cur);
            const int nxt = (n[0] != prev) ? n[0] : n[1];
            prev = cur;
            cur = nxt;
        } while (cur != start);
        loops.push_back(std::move(loop));
    }
    return loops;
}

int euler_characteristic(const SimplicialSurface& s) {
    return static_cast<int>(s.vertex_count()) - static_cast<int>(s.edge_count()) +
           static_cast<int>(s.face_count());
}

double spherical_excess(const GeodesicTriangle& t) {
    if (t.radius <= 0.0) throw domain_error("sphere radius must be positive");
    for (double a : {t.alpha, t.beta, t.gamma})
        if (!(a > 0.0 && a < kPi)) throw domain_error("spherical triangle angle outside (0, pi)");
    const double sum = t.alpha + t.beta + t.gamma;
    if (sum <= kPi)
        throw domain_error("angle sum " + std::to_string(sum) +
                           " <= pi: not a spherical triangle");
    return t.radius * t.radius * (sum - kPi);
}

double angle_defect(const SimplicialSurface& s, int vertex) {
    if (vertex < 0 || vertex >= static_cast<int>(s.vertex_count()))
        throw domain_error("vertex index out of range");
    if (s.is_boundary_vertex(vertex))
        throw domain_error("angle defect undefined at boundary vertex " + std::to_string(vertex));
    double sum = 0.0;
    for (const Triangle& t : s.triangles()) {
        for (int i = 0; i < 3; ++i) {
            if (t[i] != vertex) continue;
            sum += corner_angle(s.vertices()[t[i]], s.vertices()[t[(i + 1) % 3]],
                                s.vertices()[t[(i + 2) % 3]]);
        }
    }
    return 2.0 * kPi - sum;
}

DefectSumReport defect_sum_check(const SimplicialSurface& s) {
    if (!s.is_closed()) throw domain_error("defect sum check requires a closed surface");
    double defect_sum = 0.0;
    for (int v = 0; v < static_cast<int>(s.vertex_count()); ++v) defect_sum += angle_defect(s, v);
    const double two_pi_chi = 2.0 * kPi * euler_characteristic(s);
    return {defect_sum, two_pi_chi, std::abs(defect_sum - two_pi_chi)};
}

SimplicialSurface split_edge(const SimplicialSurface& s, int a, int b) {
    const int e = s.edge_index(a, b);
    if (e < 0) throw domain_error("no edge " + edge_name(a, b) + " to split");

    std::vector<Vec3> verts = s.vertices();
    const Vec3& pa = verts[a];
    const Vec3& pb = verts[b];
    verts.push_back({(pa[0] + pb[0]) / 2, (pa[1] + pb[1]) / 2, (pa[2] + pb[2]) / 2});
    const int m = static_cast<int>(verts.size()) - 1;

    std::vector<Triangle> tris;
    tris.reserve(s.triangles().size() + 2);
    const auto& incident = s.edge_faces(static_cast<std::size_t>(e));
    for (std::size_t f = 0; f < s.triangles().size(); ++f) {
        const Triangle t = s.triangles()[f];
        if (std::find(incident.begin(), incident.end(), static_cast<int>(f)) == incident.end()) {
            tris.push_back(t);
            continue;
        }
        // replace corner a (resp. b) with the midpoint in two copies
        for (int replaced : {a, b}) {
            Triangle t2 = t;
            for (int& c : t2)
                if (c == replaced) c = m;
            tris.push_back(t2);
        }
    }
    return SimplicialSurface::create(std::move(verts), std::move(tris));
}

SimplicialSurface split_face(const SimplicialSurface& s, int face) {
    if (face < 0 || face >= static_cast<int>(s.face_count()))
        throw domain_error("no face " + std::to_string(face) + " to split");
    std::vector<Vec3> verts = s.vertices();
    const Triangle t = s.triangles()[face];
    const Vec3& p0 = verts[t[0]];
    const Vec3& p1 = verts[t[1]];
    const Vec3& p2 = verts[t[2]];
    verts.push_back({(p0[0] + p1[0] + p2[0]) / 3, (p0[1] + p1[1] + p2[1]) / 3,
                     (p0[2] + p1[2] + p2[2]) / 3});
    const int c = static_cast<int>(verts.size()) - 1;

    std::vector<Triangle> tris;
    tris.reserve(s.triangles().size() + 2);
    for (std::size_t f = 0; f < s.triangles().size(); ++f) {
        if (static_cast<int>(f) != face) {
            tris.push_back(s.triangles()[f]);
            continue;
        }
        tris.push_back({t[0], t[1], c});
        tris.push_back({t[1], t[2], c});
        tris.push_back({t[2], t[0], c});
    }
    return SimplicialSurface::create(std::move(verts), std::move(tris));
}

SimplicialSurface make_tetrahedron() {
    std::vector<Vec3> v = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
    std::vector<Triangle> t = {{0, 1, 2}, {0, 2, 3}, {0, 3, 1}, {1, 3, 2}};
    return SimplicialSurface::create(std::move(v), std::move(t));
}

SimplicialSurface make_octahedron() {
    std::vector<Vec3> v = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
    std::vector<Triangle> t = {{0, 2, 4}, {2, 1, 4}, {1, 3, 4}, {3, 0, 4},
                               {2, 0, 5}, {1, 2, 5}, {3, 1, 5}, {0, 3, 5}};
    return SimplicialSurface::create(std::move(v), std::move(t));
}

SimplicialSurface make_icosahedron() {
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Vec3> v = {{-1, phi, 0}, {1, phi, 0},   {-1, -phi, 0}, {1, -phi, 0},
                           {0, -1, phi}, {0, 1, phi},   {0, -1, -phi}, {0, 1, -phi},
                           {phi, 0, -1}, {phi, 0, 1},   {-phi, 0, -1}, {-phi, 0, 1}};
    for (Vec3& p : v) {
        const double n = norm(p);
        for (double& c : p) c /= n;
    }
    std::vector<Triangle> t = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                               {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                               {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                               {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
    return SimplicialSurface::create(std::move(v), std::move(t));
}

SimplicialSurface make_icosphere(int level) {
    if (level < 0) throw domain_error("icosphere level must be non-negative");
    SimplicialSurface base = make_icosahedron();
    std::vector<Vec3> verts = base.vertices();
    std::vector<Triangle> tris = base.triangles();
    for (int l = 0; l < level; ++l) {
        std::map<EdgeKey, int> midpoint;
        auto mid = [&](int a, int b) {
            const EdgeKey key = std::minmax(a, b);
            auto it = midpoint.find(key);
            if (it != midpoint.end()) return it->second;
            Vec3 m = {(verts[a][0] + verts[b][0]) / 2, (verts[a][1] + verts[b][1]) / 2,
                      (verts[a][2] + verts[b][2]) / 2};
            const double n = norm(m);
            for (double& c : m) c /= n;
            verts.push_back(m);
            const int idx = static_cast<int>(verts.size()) - 1;
            midpoint.emplace(key, idx);
            return idx;
        };
        std::vector<Triangle> next;
        next.reserve(tris.size() * 4);
        for (const Triangle& t : tris) {
            const int ab = mid(t[0], t[1]);
            const int bc = mid(t[1], t[2]);
            const int ca = mid(t[2], t[0]);
            next.push_back({t[0], ab, ca});
            next.push_back({t[1], bc, ab});
            next.push_back({t[2], ca, bc});
            next.push_back({ab, bc, ca});
        }
        tris = std::move(next);
    }
    return SimplicialSurface::create(std::move(verts), std::move(tris));
}

SimplicialSurface make_holed_rectangle(int holes) {
    if (holes < 0) throw domain_error("hole count must be non-negative");
    const int g = holes;
    const int sub = 2;                  // quarter-cells per unit cell side
    const int w = (2 * g + 1) * sub;    // grid width in quarter-cells
    const int h = 3 * sub;              // grid height in quarter-cells
    const double step = 1.0 / sub;
    const double x0 = -(2.0 * g + 1.0) / 2.0;  // centers holes on y = 0
    const double y0 = -1.5;

    // hole occupies unit cell (2i+1, 1), i.e. quarter-cells [sub*(2i+1), sub*(2i+2)) x [sub, 2*sub)
    auto in_hole = [&](int cx, int cy) {
        if (cy < sub || cy >= 2 * sub) return false;
        for (int i = 0; i < g; ++i)
            if (cx >= sub * (2 * i + 1) && cx < sub * (2 * i + 2)) return true;
        return false;
    };

    std::map<std::pair<int, int>, int> corner;
    std::vector<Vec3> verts;
    auto corner_id = [&](int ix, int iy) {
        auto it = corner.find({ix, iy});
        if (it != corner.end()) return it->second;
        verts.push_back({x0 + ix * step, y0 + iy * step, 0.0});
        corner.emplace(std::make_pair(ix, iy), static_cast<int>(verts.size()) - 1);
        return static_cast<int>(verts.size()) - 1;
    };

    std::vector<Triangle> tris;
    for (int cy = 0; cy < h; ++cy) {
        for (int cx = 0; cx < w; ++cx) {
            if (in_hole(cx, cy)) continue;
            const int v00 = corner_id(cx, cy);
            const int v10 = corner_id(cx + 1, cy);
            const int v11 = corner_id(cx + 1, cy + 1);
            const int v01 = corner_id(cx, cy + 1);
            verts.push_back({x0 + (cx + 0.5) * step, y0 + (cy + 0.5) * step, 0.0});
            const int c = static_cast<int>(verts.size()) - 1;
            tris.push_back({v00, v10, c});
            tris.push_back({v10, v11, c});
            tris.push_back({v11, v01, c});
            tris.push_back({v01, v00, c});
        }
    }
    return SimplicialSurface::create(std::move(verts), std::move(tris));
}

SimplicialSurface read_off(std::istream& in) {
    std::string header;
    if (!(in >> header) || header != "OFF") throw parse_error("missing OFF header");
    long nv = 0, nf = 0, ne = 0;
    if (!(in >> nv >> nf >> ne)) throw parse_error("malformed OFF count line");
    if (nv <= 0 || nf <= 0) throw parse_error("OFF file must declare vertices and faces");
    std::vector<Vec3> verts(static_cast<std::size_t>(nv));
    for (auto& v : verts)
        if (!(in >> v[0] >> v[1] >> v[2])) throw parse_error("malformed OFF vertex line");
    std::vector<Triangle> tris(static_cast<std::size_t>(nf));
    for (auto& t : tris) {
        int arity = 0;
        if (!(in >> arity)) throw parse_error("malformed OFF face line");
        if (arity != 3) throw parse_error("only triangle faces supported, got arity " +
                                          std::to_string(arity));
        if (!(in >> t[0] >> t[1] >> t[2])) throw parse_error("malformed OFF face line");
    }
    return SimplicialSurface::create(std::move(verts), std::move(tris));
}

SimplicialSurface read_off_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open mesh file " + path);
    return read_off(in);
}

void write_off(const SimplicialSurface& s, std::ostream& out) {
    out << "OFF\n" << s.vertex_count() << ' ' << s.face_count() << ' ' << s.edge_count() << '\n';
    out.precision(17);
    for (const Vec3& v : s.vertices()) out << v[0] << ' ' << v[1] << ' ' << v[2] << '\n';
    for (const Triangle& t : s.triangles())
        out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

void write_off_file(const SimplicialSurface& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write mesh file " + path);
    write_off(s, out);
}

}  // namespace chi::mesh
