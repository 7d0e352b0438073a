#include "chi/resolution.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "chi/error.hpp"

namespace chi::resolution {

namespace {

std::string render_parts(const std::array<std::string, 2>& vars, int cx, int cy,
                         const std::vector<std::pair<Poly2, long>>& factors) {
    // a lone strict factor prints without parentheses: "y^3+z^5"
    if (cx == 0 && cy == 0 && factors.size() == 1 && factors[0].second == 1)
        return factors[0].first.str(vars[0], vars[1]);
    std::vector<std::string> parts;
    if (cx > 0) parts.push_back(vars[0] + (cx > 1 ? "^" + std::to_string(cx) : ""));
    if (cy > 0) parts.push_back(vars[1] + (cy > 1 ? "^" + std::to_string(cy) : ""));
    for (const auto& [poly, exp] : factors) {
        if (exp == 0) continue;
        const bool multi = poly.terms().size() > 1;
        std::string body = poly.str(vars[0], vars[1]);
        if (multi) body = "(" + body + ")";
        if (exp > 1) body += "^" + std::to_string(exp);
        parts.push_back(body);
    }
    if (parts.empty()) return "1";
    std::string out = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) out += "*" + parts[i];
    return out;
}

}  // namespace

std::string Germ::str() const {
    std::vector<std::pair<Poly2, long>> fs;
    if (!strict.is_constant() || strict.value_at_origin() != 1) fs.emplace_back(strict, 1);
    return render_parts(vars, content_x, content_y, fs);
}

Germ parse_germ(const std::string& text) {
    ParsedPoly parsed = parse_poly2(text);
    if (parsed.poly.is_zero()) throw parse_error("germ polynomial is zero");
    Germ g;
    if (!parsed.vars.empty()) g.vars[0] = parsed.vars[0];
    if (parsed.vars.size() > 1) g.vars[1] = parsed.vars[1];
    if (parsed.vars.size() == 1 && g.vars[0] == "y") g.vars[1] = "z";
    g.content_x = parsed.poly.content_x();
    g.content_y = parsed.poly.content_y();
    g.strict = parsed.poly.divided_by_monomial(g.content_x, g.content_y);
    return g;
}

int vanishing_order(const Germ& g) {
    return g.content_x + g.content_y + g.strict.order_at_origin();
}

int DivisorGraph::add_cycle(long multiplicity, long self_intersection, bool compact,
                            std::string name) {
    if (multiplicity < 1) throw domain_error("cycle multiplicity must be >= 1");
    const int id = static_cast<int>(cycles_.size());
    cycles_.push_back(Cycle{id, multiplicity, self_intersection, compact, std::move(name)});
    return id;
}

Cycle& DivisorGraph::cycle(int id) {
    if (id < 0 || id >= static_cast<int>(cycles_.size()))
        throw domain_error("unknown cycle id " + std::to_string(id));
    return cycles_[id];
}

const Cycle& DivisorGraph::cycle(int id) const {
    if (id < 0 || id >= static_cast<int>(cycles_.size()))
        throw domain_error("unknown cycle id " + std::to_string(id));
    return cycles_[id];
}

void DivisorGraph::add_edge(int a, int b) {
    cycle(a);
    cycle(b);
    if (a == b) throw domain_error("self-edges are tracked by self_intersection");
    ++edges_[std::minmax(a, b)];
}

void DivisorGraph::remove_edges_between(int a, int b) { edges_.erase(std::minmax(a, b)); }

int DivisorGraph::edge_count(int a, int b) const {
    const auto it = edges_.find(std::minmax(a, b));
    return it == edges_.end() ? 0 : it->second;
}

std::vector<std::pair<int, int>> DivisorGraph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (const auto& [pair, count] : edges_)
        if (count > 0) out.push_back(pair);
    return out;
}

std::vector<int> DivisorGraph::neighbors(int id) const {
    std::vector<int> out;
    for (const auto& [pair, count] : edges_) {
        if (count <= 0) continue;
        if (pair.first == id) out.push_back(pair.second);
        if (pair.second == id) out.push_back(pair.first);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Poly2 Chart::full_germ() const {
    Poly2 g = Poly2::term(Int(1), static_cast<int>(axis_exp[0]), static_cast<int>(axis_exp[1]));
    for (const auto& f : factors)
        for (long i = 0; i < f.exponent; ++i) g = g * f.poly;
    return g;
}

Germ Chart::to_germ() const {
    Germ g;
    g.vars = vars;
    g.content_x = static_cast<int>(axis_exp[0]);
    g.content_y = static_cast<int>(axis_exp[1]);
    g.strict = Poly2(Int(1));
    for (const auto& f : factors)
        for (long i = 0; i < f.exponent; ++i) g.strict = g.strict * f.poly;
    return g;
}

std::string Chart::str() const {
    std::vector<std::pair<Poly2, long>> fs;
    for (const auto& f : factors) fs.emplace_back(f.poly, f.exponent);
    return render_parts(vars, static_cast<int>(axis_exp[0]), static_cast<int>(axis_exp[1]), fs);
}

const char* target_kind_name(TargetKind k) {
    switch (k) {
        case TargetKind::singular: return "singular-branch";
        case TargetKind::tangency: return "tangency";
        case TargetKind::triple: return "triple-point";
        case TargetKind::odd_odd: return "odd-odd-intersection";
    }
    return "unknown";
}

namespace {

struct OriginView {
    std::vector<int> through;        // cycles through the chart origin
    std::vector<std::size_t> through_factors;  // indices into chart.factors
};

OriginView origin_view(const Chart& chart) {
    OriginView view;
    if (chart.axis_exp[0] > 0) view.through.push_back(chart.axis_cycle[0]);
    if (chart.axis_exp[1] > 0) view.through.push_back(chart.axis_cycle[1]);
    for (std::size_t i = 0; i < chart.factors.size(); ++i) {
        if (chart.factors[i].poly.value_at_origin() == 0) {
            view.through.push_back(chart.factors[i].cycle);
            view.through_factors.push_back(i);
        }
    }
    return view;
}

int restriction_order(const std::vector<Int>& coeffs) {
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        if (coeffs[i] != 0) return static_cast<int>(i);
    return -1;
}

std::optional<Target> realize_edge(const std::vector<Chart>& charts, int a, int b) {
    const auto want = std::minmax(a, b);
    for (std::size_t ci = 0; ci < charts.size(); ++ci) {
        const Chart& chart = charts[ci];
        const OriginView view = origin_view(chart);
        if (view.through.size() == 2 &&
            std::minmax(view.through[0], view.through[1]) == want) {
            Target t;
            t.kind = TargetKind::odd_odd;
            t.chart = ci;
            t.cycles = {want.first, want.second};
            return t;
        }
        // axis-and-factor intersections away from the origin
        for (int axis = 0; axis < 2; ++axis) {
            if (chart.axis_exp[axis] == 0) continue;
            const int axis_cycle = chart.axis_cycle[axis];
            for (const auto& f : chart.factors) {
                if (std::minmax(axis_cycle, f.cycle) != want) continue;
                const std::vector<Int> restriction =
                    (axis == 0) ? f.poly.restrict_to_x0() : f.poly.restrict_to_y0();
                const RootSearch roots = rational_roots(restriction);
                for (const auto& [root, mult] : roots.roots) {
                    if (root == 0) continue;
                    if (mult > 1)
                        throw consistency_error(
                            "tangential intersection away from a chart origin is outside the "
                            "supported input contract");
                    if (root.get_den() != 1) continue;  // cannot recenter to a non-integer point
                    Target t;
                    t.kind = TargetKind::odd_odd;
                    t.chart = ci;
                    t.cycles = {want.first, want.second};
                    if (axis == 0)
                        t.shift_y = root.get_num();
                    else
                        t.shift_x = root.get_num();
                    return t;
                }
            }
        }
    }
    return std::nullopt;
}

std::string cycles_label(const DivisorGraph& graph, const std::vector<int>& ids) {
    std::string out = "{";
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) out += ", ";
        const Cycle& c = graph.cycle(ids[i]);
        out += c.name + "(m=" + std::to_string(c.multiplicity) + ")";
    }
    return out + "}";
}

}  // namespace

std::vector<Target> detect_targets(const std::vector<Chart>& charts, const DivisorGraph& graph) {
    std::vector<Target> singular, tangency, triple;

    for (std::size_t ci = 0; ci < charts.size(); ++ci) {
        const Chart& chart = charts[ci];
        const OriginView view = origin_view(chart);

        for (std::size_t fi : view.through_factors) {
            const ChartFactor& f = chart.factors[fi];
            if (f.exponent != 1)
                throw consistency_error("non-reduced branch component through a chart origin is "
                                        "outside the supported input contract");
            const bool smooth =
                f.poly.coefficient(1, 0) != 0 || f.poly.coefficient(0, 1) != 0;
            if (!smooth) {
                Target t;
                t.kind = TargetKind::singular;
                t.chart = ci;
                t.cycles = view.through;
                t.description = "singular branch component in chart (" + chart.vars[0] + ", " +
                                chart.vars[1] + ")";
                singular.push_back(std::move(t));
                continue;
            }
            for (int axis = 0; axis < 2; ++axis) {
                if (chart.axis_exp[axis] == 0) continue;
                const std::vector<Int> restriction =
                    (axis == 0) ? f.poly.restrict_to_x0() : f.poly.restrict_to_y0();
                const int ord = restriction_order(restriction);
                if (ord >= 2) {
                    Target t;
                    t.kind = TargetKind::tangency;
                    t.chart = ci;
                    t.cycles = {chart.axis_cycle[axis], f.cycle};
                    t.description = "branch tangent to " + graph.cycle(chart.axis_cycle[axis]).name +
                                    " in chart (" + chart.vars[0] + ", " + chart.vars[1] + ")";
                    tangency.push_back(std::move(t));
                }
            }
        }
        if (view.through.size() >= 3) {
            Target t;
            t.kind = TargetKind::triple;
            t.chart = ci;
            t.cycles = view.through;
            t.description = "triple point " + cycles_label(graph, view.through) + " in chart (" +
                            chart.vars[0] + ", " + chart.vars[1] + ")";
            triple.push_back(std::move(t));
        }
    }

    if (!singular.empty()) return singular;
    if (!tangency.empty()) return tangency;
    if (!triple.empty()) return triple;

    std::vector<Target> odd;
    for (const auto& [a, b] : graph.edges()) {
        if (graph.cycle(a).multiplicity % 2 == 0 || graph.cycle(b).multiplicity % 2 == 0)
            continue;
        auto realized = realize_edge(charts, a, b);
        if (!realized)
            throw consistency_error("odd-odd intersection " + cycles_label(graph, {a, b}) +
                                    " cannot be located in any chart");
        realized->description = "odd multiplicities " + cycles_label(graph, {a, b});
        odd.push_back(std::move(*realized));
    }
    return odd;
}

namespace {

Chart shift_chart(const Chart& chart, const Int& dx, const Int& dy) {
    if ((dx != 0) == (dy != 0))
        throw consistency_error("chart recentering must move along exactly one axis");

    Chart out;
    out.vars = chart.vars;
    const int moved = (dy != 0) ? 1 : 0;  // index of the shifted variable
    out.vars[moved] += "'";

    const int fixed = 1 - moved;
    out.axis_cycle[fixed] = chart.axis_cycle[fixed];
    out.axis_exp[fixed] = chart.axis_exp[fixed];
    out.axis_cycle[moved] = -1;
    out.axis_exp[moved] = 0;

    // the old moved axis becomes an off-origin factor (var + t)
    if (chart.axis_exp[moved] > 0) {
        const Poly2 line = Poly2::variable(moved) + Poly2(moved == 1 ? dy : dx);
        out.factors.push_back({chart.axis_cycle[moved], line, chart.axis_exp[moved]});
    }
    for (const auto& f : chart.factors) {
        Poly2 shifted = (moved == 1) ? f.poly.shift_y(dy) : f.poly.shift_x(dx);
        const int content = (moved == 1) ? shifted.content_y() : shifted.content_x();
        if (content > 0) {
            if (out.axis_exp[moved] > 0)
                throw consistency_error("two branch components share a coordinate axis after "
                                        "recentering");
            out.axis_cycle[moved] = f.cycle;
            out.axis_exp[moved] = content * f.exponent;
            shifted = (moved == 1) ? shifted.divided_by_monomial(0, content)
                                   : shifted.divided_by_monomial(content, 0);
        }
        if (!shifted.is_constant()) out.factors.push_back({f.cycle, shifted, f.exponent});
    }
    return out;
}

}  // namespace

BlowUpResult blow_up_at_origin(const Chart& chart, DivisorGraph& graph, int index) {
    BlowUpResult result;
    long order = chart.axis_exp[0] + chart.axis_exp[1];
    for (const auto& f : chart.factors) {
        const int ord = f.poly.order_at_origin();
        if (ord > 0) order += f.exponent * ord;
    }
    if (order == 0) {
        result.was_unit = true;
        result.new_cycle = -1;
        result.chart_a = chart;
        result.chart_b = chart;
        return result;
    }
    result.was_unit = false;

    const OriginView view = origin_view(chart);
    const int new_id = graph.add_cycle(order, -1, true, "E" + std::to_string(index));
    result.new_cycle = new_id;

    for (int t : view.through) graph.cycle(t).self_intersection -= 1;
    for (std::size_t i = 0; i < view.through.size(); ++i)
        for (std::size_t j = i + 1; j < view.through.size(); ++j)
            graph.remove_edges_between(view.through[i], view.through[j]);
    for (int t : view.through) graph.add_edge(new_id, t);

    // chart A keeps the first variable; the exceptional cycle sits on {u = 0}
    Chart a;
    a.vars = {chart.vars[0], "q_" + std::to_string(index)};
    a.axis_cycle = {new_id, chart.axis_cycle[1]};
    a.axis_exp = {order, chart.axis_exp[1]};
    long check_a = chart.axis_exp[0] + chart.axis_exp[1];
    for (const auto& f : chart.factors) {
        Poly2 g = f.poly.substitute_y_to_xy();
        const int content = g.content_x();
        check_a += f.exponent * content;
        if (content > 0) g = g.divided_by_monomial(content, 0);
        if (!g.is_constant()) a.factors.push_back({f.cycle, g, f.exponent});
    }
    if (check_a != order)
        throw consistency_error("exceptional multiplicity mismatch in blow-up chart");

    // chart B keeps the second variable; the exceptional cycle sits on {v = 0}
    Chart b;
    b.vars = {"p_" + std::to_string(index), chart.vars[1]};
    b.axis_cycle = {chart.axis_cycle[0], new_id};
    b.axis_exp = {chart.axis_exp[0], order};
    for (const auto& f : chart.factors) {
        Poly2 g = f.poly.substitute_x_to_xy();
        const int content = g.content_y();
        if (content > 0) g = g.divided_by_monomial(0, content);
        if (!g.is_constant()) b.factors.push_back({f.cycle, g, f.exponent});
    }

    result.chart_a = std::move(a);
    result.chart_b = std::move(b);
    return result;
}

ResolutionOutcome resolve(const Germ& start, int max_steps) {
    if (start.content_x > 0 || start.content_y > 0)
        throw domain_error("resolution starts from a reduced germ without monomial content");
    if (start.strict.is_constant())
        throw domain_error("germ is a unit: nothing to resolve");

    ResolutionOutcome out;
    out.strict_cycle = out.graph.add_cycle(1, 0, false, "branch");

    Chart initial;
    initial.vars = start.vars;
    initial.factors.push_back({out.strict_cycle, start.strict, 1});
    out.charts.push_back(std::move(initial));

    int step = 0;
    while (true) {
        const auto targets = detect_targets(out.charts, out.graph);
        if (targets.empty()) break;
        if (++step > max_steps)
            throw consistency_error("resolution did not terminate within " +
                                    std::to_string(max_steps) + " blow-ups");
        const Target& target = targets.front();

        Chart working = out.charts[target.chart];
        bool replace_original = true;
        if (target.shift_x != 0 || target.shift_y != 0) {
            working = shift_chart(working, target.shift_x, target.shift_y);
            replace_original = false;  // the original chart still covers its own origin
        }
        BlowUpResult r = blow_up_at_origin(working, out.graph, step);
        if (r.was_unit)
            throw consistency_error("step " + std::to_string(step) +
                                    ": detected target but the germ is a unit there");
        if (replace_original)
            out.charts.erase(out.charts.begin() + static_cast<long>(target.chart));
        out.charts.push_back(r.chart_a);
        out.charts.push_back(r.chart_b);

        TraceStep ts;
        ts.step = step;
        ts.reason = std::string(target_kind_name(target.kind)) +
                    (target.description.empty() ? "" : ": " + target.description);
        ts.new_multiplicity = out.graph.cycle(r.new_cycle).multiplicity;
        ts.charts = {r.chart_a.str(), r.chart_b.str()};
        out.trace.push_back(std::move(ts));
    }
    return out;
}

ResolutionOutcome resolve_235() {
    ResolutionOutcome out = resolve(parse_germ("y^3+z^5"));

    const auto check = [](bool ok, const std::string& what) {
        if (!ok) throw consistency_error("(2,3,5) resolution diverged: " + what);
    };

    std::multiset<long> odd, even;
    for (const Cycle& c : out.graph.cycles()) {
        if (!c.compact) continue;
        if (c.multiplicity % 2 == 1) {
            odd.insert(c.multiplicity);
            check(c.self_intersection == -4,
                  "odd cycle " + c.name + " has self-intersection " +
                      std::to_string(c.self_intersection) + ", expected -4");
        } else {
            even.insert(c.multiplicity);
            check(c.self_intersection == -1,
                  "even cycle " + c.name + " has self-intersection " +
                      std::to_string(c.self_intersection) + ", expected -1");
        }
    }
    check(odd == std::multiset<long>({3, 5, 9, 15}), "odd multiplicity set is not {3,5,9,15}");
    check(even == std::multiset<long>({12, 16, 20, 24}),
          "even multiplicity set is not {12,16,20,24}");

    // compact intersection graph must be the E8 tree: identify edges by
    // multiplicity pairs
    std::multiset<std::pair<long, long>> mult_edges;
    for (const auto& [a, b] : out.graph.edges()) {
        const Cycle& ca = out.graph.cycle(a);
        const Cycle& cb = out.graph.cycle(b);
        if (!ca.compact || !cb.compact) continue;
        mult_edges.insert(std::minmax(ca.multiplicity, cb.multiplicity));
    }
    const std::multiset<std::pair<long, long>> expected = {
        {3, 12}, {9, 12}, {9, 24}, {15, 24}, {15, 20}, {5, 20}, {15, 16}};
    check(mult_edges == expected, "compact intersection graph is not the expected tree");
    return out;
}

DivisorGraph double_cover_transform(const DivisorGraph& graph) {
    for (const Cycle& c : graph.cycles()) {
        if (!c.compact) continue;
        if (c.multiplicity % 2 == 1 && c.self_intersection != -4)
            throw domain_error("cover rule needs odd cycles at self-intersection -4; " + c.name +
                               " sits at " + std::to_string(c.self_intersection));
        if (c.multiplicity % 2 == 0 && c.self_intersection != -1)
            throw domain_error("cover rule needs even cycles at self-intersection -1; " + c.name +
                               " sits at " + std::to_string(c.self_intersection));
    }
    DivisorGraph cover;
    std::map<int, int> remap;
    for (const Cycle& c : graph.cycles()) {
        if (!c.compact) continue;
        remap[c.id] = cover.add_cycle(1, -2, true, c.name);
    }
    for (const auto& [a, b] : graph.edges()) {
        if (!remap.count(a) || !remap.count(b)) continue;
        for (int i = 0; i < graph.edge_count(a, b); ++i) cover.add_edge(remap[a], remap[b]);
    }
    return cover;
}

namespace {

std::vector<int> canonical_order(const DivisorGraph& graph, const std::vector<int>& ids) {
    const std::size_t n = ids.size();
    if (n <= 2) return ids;

    std::map<int, std::vector<int>> adj;
    std::size_t edge_count = 0;
    for (int a : ids) adj[a] = {};
    for (const auto& [a, b] : graph.edges()) {
        if (!adj.count(a) || !adj.count(b)) continue;
        adj[a].push_back(b);
        adj[b].push_back(a);
        ++edge_count;
    }
    for (auto& [id, nbrs] : adj) std::sort(nbrs.begin(), nbrs.end());

    const auto bfs = [&](int from) {
        std::map<int, int> dist, parent;
        std::deque<int> queue{from};
        dist[from] = 0;
        parent[from] = -1;
        while (!queue.empty()) {
            const int v = queue.front();
            queue.pop_front();
            for (int w : adj[v]) {
                if (dist.count(w)) continue;
                dist[w] = dist[v] + 1;
                parent[w] = v;
                queue.push_back(w);
            }
        }
        return std::pair(dist, parent);
    };

    auto [dist0, parent0] = bfs(ids[0]);
    const bool tree = (edge_count == n - 1) && (dist0.size() == n);
    if (!tree) return ids;  // fallback: creation order

    const auto farthest = [&](const std::map<int, int>& dist) {
        int best = -1, best_d = -1;
        for (int id : ids) {
            const int d = dist.at(id);
            if (d > best_d || (d == best_d && id < best)) {
                best = id;
                best_d = d;
            }
        }
        return best;
    };

    const int end_a = farthest(dist0);
    auto [dist_a, parent_a] = bfs(end_a);
    const int end_b = farthest(dist_a);

    std::vector<int> path;
    for (int v = end_b; v != -1; v = parent_a.at(v)) path.push_back(v);
    // path now runs end_b .. end_a

    int branch = -1;
    for (int v : path)
        if (adj[v].size() >= 3) { branch = v; break; }
    if (branch != -1) {
        // start from the end farther from the branch node
        int from_front = 0;
        for (std::size_t i = 0; i < path.size(); ++i)
            if (path[i] == branch) from_front = static_cast<int>(i);
        const int from_back = static_cast<int>(path.size()) - 1 - from_front;
        if (from_back > from_front ||
            (from_back == from_front && path.back() < path.front()))
            std::reverse(path.begin(), path.end());
    } else if (path.front() > path.back()) {
        std::reverse(path.begin(), path.end());
    }

    std::set<int> on_path(path.begin(), path.end());
    std::vector<int> order = path;
    for (int v : path)
        for (int w : adj[v])
            if (!on_path.count(w)) {
                order.push_back(w);
                on_path.insert(w);
            }
    if (order.size() != n) return ids;  // deeper side branches: creation order
    return order;
}

}  // namespace

IntersectionMatrix intersection_matrix(const DivisorGraph& graph, Ordering ordering) {
    std::vector<int> ids;
    for (const Cycle& c : graph.cycles())
        if (c.compact) ids.push_back(c.id);
    if (ordering == Ordering::canonical) ids = canonical_order(graph, ids);
    return intersection_matrix(graph, ids);
}

IntersectionMatrix intersection_matrix(const DivisorGraph& graph,
                                       const std::vector<int>& explicit_ids) {
    for (int id : explicit_ids)
        if (!graph.cycle(id).compact)
            throw domain_error("intersection matrix includes non-compact cycle " +
                               graph.cycle(id).name);
    IntersectionMatrix out;
    out.cycle_ids = explicit_ids;
    const std::size_t n = explicit_ids.size();
    out.matrix = IntMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        out.matrix.at(i, i) = graph.cycle(explicit_ids[i]).self_intersection;
        for (std::size_t j = i + 1; j < n; ++j) {
            const Int count(graph.edge_count(explicit_ids[i], explicit_ids[j]));
            out.matrix.at(i, j) = count;
            out.matrix.at(j, i) = count;
        }
    }
    return out;
}

int signature(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw domain_error("signature requires a square matrix");
    RatMatrix q = m.to_rational();
    if (!q.is_symmetric()) throw domain_error("signature requires a symmetric matrix");
    return congruence_inertia(std::move(q)).signature();
}

RochlinReport rochlin_check(int sig) {
    const bool divisible = (sig % 16 == 0);
    return RochlinReport{divisible, !divisible};
}

}  // namespace chi::resolution
