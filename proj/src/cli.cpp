#include "chi/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include "chi/error.hpp"
#include "chi/hodge.hpp"
#include "chi/lattice.hpp"
#include "chi/localization.hpp"
#include "chi/mesh.hpp"
#include "chi/resolution.hpp"

namespace chi::cli {

namespace {

using json = nlohmann::ordered_json;

// --- mesh selection -------------------------------------------------------

mesh::SimplicialSurface mesh_from_shape(const std::string& shape) {
    const auto split = shape.find(':');
    const std::string head = shape.substr(0, split);
    const std::string tail = (split == std::string::npos) ? "" : shape.substr(split + 1);
    if (head == "tetrahedron") return mesh::make_tetrahedron();
    if (head == "octahedron") return mesh::make_octahedron();
    if (head == "icosahedron") return mesh::make_icosahedron();
    if (head == "icosphere") {
        if (tail.empty()) throw usage_error("icosphere needs a level, e.g. icosphere:2");
        return mesh::make_icosphere(std::stoi(tail));
    }
    if (head == "holed-rectangle") {
        if (tail.empty()) throw usage_error("holed-rectangle needs a count, e.g. holed-rectangle:2");
        return mesh::make_holed_rectangle(std::stoi(tail));
    }
    if (head == "double") {
        if (tail.empty()) throw usage_error("double needs an inner shape, e.g. double:holed-rectangle:1");
        return hodge::double_surface(mesh_from_shape(tail)).surface;
    }
    throw usage_error("unknown shape \"" + shape + "\"; known: tetrahedron, octahedron, "
                      "icosahedron, icosphere:N, holed-rectangle:G, double:<shape>");
}

mesh::SimplicialSurface load_mesh(const std::string& mesh_path, const std::string& shape) {
    if (mesh_path.empty() == shape.empty())
        throw usage_error("pass exactly one of --mesh <path> or --shape <name>");
    if (!mesh_path.empty()) return mesh::read_off_file(mesh_path);
    return mesh_from_shape(shape);
}

json mesh_summary(const mesh::SimplicialSurface& s) {
    return json{{"vertices", s.vertex_count()},
                {"edges", s.edge_count()},
                {"faces", s.face_count()},
                {"chi", mesh::euler_characteristic(s)},
                {"closed", s.is_closed()}};
}

// --- small converters -----------------------------------------------------

json rat_matrix_json(const RatMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m.at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

json int_matrix_json(const IntMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const Int& v = m.at(i, j);
            if (v.fits_slong_p())
                row.push_back(v.get_si());
            else
                row.push_back(v.get_str());
        }
        rows.push_back(row);
    }
    return rows;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    if (out.empty()) throw usage_error("empty number list \"" + text + "\"");
    return out;
}

hodge::BoundaryCondition auto_condition(const mesh::SimplicialSurface& s,
                                        const std::string& flag) {
    if (flag == "auto")
        return s.is_closed() ? hodge::BoundaryCondition::none : hodge::BoundaryCondition::absolute;
    if (flag == "none") return hodge::BoundaryCondition::none;
    if (flag == "absolute") return hodge::BoundaryCondition::absolute;
    if (flag == "relative") return hodge::BoundaryCondition::relative;
    throw usage_error("unknown boundary condition \"" + flag + "\"");
}

// --- subcommand bodies ----------------------------------------------------

json run_gauss_bonnet(const mesh::SimplicialSurface& s) {
    const auto report = mesh::defect_sum_check(s);
    return json{{"mesh", mesh_summary(s)},
                {"defect_sum", report.defect_sum},
                {"two_pi_chi", report.two_pi_chi},
                {"residual", report.residual}};
}

json run_betti(const mesh::SimplicialSurface& s, hodge::BoundaryCondition bc) {
    const auto complex = hodge::build_complex(s, bc);
    const auto betti = hodge::betti_numbers(complex);
    return json{{"mesh", mesh_summary(s)},
                {"betti", {betti.b0, betti.b1, betti.b2}},
                {"index", betti.alternating_sum()}};
}

json run_heat_index(const mesh::SimplicialSurface& s, hodge::BoundaryCondition bc,
                    const std::vector<double>& ts) {
    const auto complex = hodge::build_complex(s, bc);
    const auto betti = hodge::betti_numbers(complex);
    const auto collapsed = hodge::collapsed_index(complex);
    const auto spectrum = hodge::hodge_spectrum(complex);
    json traces = json::array();
    for (double t : ts)
        traces.push_back(json{{"t", t}, {"value", hodge::heat_supertrace(spectrum, t)}});
    return json{{"mesh", mesh_summary(s)},
                {"betti", {betti.b0, betti.b1, betti.b2}},
                {"index", collapsed.index()},
                {"kernel_dim", collapsed.kernel_dim},
                {"cokernel_dim", collapsed.cokernel_dim},
                {"supertrace", traces}};
}

json run_double(const mesh::SimplicialSurface& s, const std::string& out_path) {
    const auto doubled = hodge::double_surface(s);
    std::size_t fixed = 0;
    for (std::size_t v = 0; v < doubled.involution.size(); ++v)
        if (doubled.involution[v] == static_cast<int>(v)) ++fixed;
    if (!out_path.empty()) mesh::write_off_file(doubled.surface, out_path);
    json result{{"base", mesh_summary(doubled.base)},
                {"double", mesh_summary(doubled.surface)},
                {"fixed_vertices", fixed}};
    if (!out_path.empty()) result["written"] = out_path;
    return result;
}

json run_periods(const mesh::SimplicialSurface& s) {
    const auto report = hodge::circulation_periods(s);
    json centers = json::array();
    for (const auto& c : report.hole_centers) centers.push_back(json{c[0], c[1]});

    // winding numbers of the unit angular field around each hole center
    json winding = json::array();
    for (std::size_t field = 0; field < report.hole_centers.size(); ++field) {
        const auto [cx, cy] = report.hole_centers[field];
        const auto cochain = hodge::sample_edge_cochain(s, [cx, cy](double x, double y) {
            const double dx = x - cx;
            const double dy = y - cy;
            const double r2 = dx * dx + dy * dy;
            const double f = 1.0 / (2.0 * std::numbers::pi * r2);
            return std::array<double, 2>{-dy * f, dx * f};
        });
        json row = json::array();
        for (const auto& loop : report.hole_loops)
            row.push_back(hodge::loop_circulation(s, cochain, loop));
        winding.push_back(row);
    }

    return json{{"mesh", mesh_summary(s)},
                {"holes", report.hole_loops.size()},
                {"hole_centers", centers},
                {"period_matrix", rat_matrix_json(report.harmonic_periods)},
                {"invertible", report.invertible},
                {"winding", winding}};
}

json run_jackpot(long k, const std::string& mode) {
    const lattice::JackpotInstance inst{k};
    json result{{"k", k}};
    std::optional<Int> brute, formula;
    if (mode == "brute" || mode == "both")
        brute = lattice::count_jackpots(inst, lattice::CountMode::brute);
    if (mode == "formula" || mode == "both")
        formula = lattice::count_jackpots(inst, lattice::CountMode::formula);
    if (brute) result["brute"] = to_string(*brute);
    if (formula) result["formula"] = to_string(*formula);
    if (brute && formula) {
        result["match"] = (*brute == *formula);
        if (*brute != *formula)
            throw consistency_error("brute count " + to_string(*brute) +
                                    " disagrees with formula " + to_string(*formula));
    }
    return result;
}

json run_pick(const std::string& polygon_path) {
    std::ifstream in(polygon_path);
    if (!in) throw io_error("cannot open polygon file " + polygon_path);
    std::vector<lattice::LatticePoint> points;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string xs, ys;
        if (!std::getline(ss, xs, ',') || !std::getline(ss, ys))
            throw parse_error("polygon line \"" + line + "\" is not \"x,y\"");
        points.push_back({std::stoll(xs), std::stoll(ys)});
    }
    const auto poly = lattice::LatticePolygon::create(std::move(points));
    const auto report = lattice::pick_count(poly);
    json result{{"area", to_string(report.area)},
                {"boundary", to_string(report.boundary)},
                {"interior", to_string(report.interior)},
                {"total", to_string(report.total)}};
    result["enumerated"] = report.enumerated ? json(to_string(*report.enumerated)) : json(nullptr);
    return result;
}

json poly_array(const std::array<localization::Poly, 3>& ps) {
    return json{ps[0].str(), ps[1].str(), ps[2].str()};
}

json run_localize(const std::vector<long>& weights, long fiber_scale) {
    if (weights.size() != 3) throw usage_error("--weights needs three comma-separated integers");
    const localization::WeightedModel model{{weights[0], weights[1], weights[2]}, fiber_scale};
    const auto result = localization::localized_index(model);

    json coefficients = json::object();
    const auto coeffs = result.total.k_coefficients();
    for (int deg = 2; deg >= 0; --deg) {
        const auto it = coeffs.find(deg);
        coefficients["k^" + std::to_string(deg)] =
            (it == coeffs.end()) ? "0" : to_string(it->second);
    }

    json graded = json::object();
    for (int deg = 0; deg < 3; ++deg)
        graded["k^" + std::to_string(deg)] = result.graded[deg].str();

    json per_point = json::object();
    for (const auto& c : result.per_point) {
        std::string key = "[0,0,0]";
        key[1 + 2 * c.datum.label] = '1';
        per_point[key] = json{{"orbifold_order", c.datum.orbifold_order},
                              {"tangent", {c.datum.tangent_weights[0].str(),
                                           c.datum.tangent_weights[1].str()}},
                              {"fiber", c.datum.fiber_weight.str()},
                              {"euler", c.euler.str()},
                              {"ch", poly_array(c.ch)},
                              {"td", poly_array(c.td)}};
    }

    return json{{"weights", weights},
                {"fiber_scale", fiber_scale},
                {"coefficients", coefficients},
                {"graded", graded},
                {"per_point", per_point}};
}

json run_cp1_index(std::optional<long> k) {
    const auto symbolic = localization::cp1_index_symbolic();
    json result{{"c0", symbolic.c0.str()}, {"c1", symbolic.c1.str()},
                {"index_poly", symbolic.c1.str()}};
    if (k) {
        result["k"] = *k;
        result["index"] = to_string(localization::cp1_index(*k));
    }
    return result;
}

json run_curvature(double radius, int steps) {
    const double value = localization::curvature_quadrature(radius, steps);
    const double closed_form = radius * radius / (radius * radius + 1.0);
    return json{{"radius", radius},
                {"steps", steps},
                {"value", value},
                {"closed_form", closed_form},
                {"abs_error", std::abs(value - closed_form)}};
}

json run_resolve(const std::string& germ_text, bool trace) {
    const auto germ = resolution::parse_germ(germ_text);
    const auto outcome = resolution::resolve(germ);

    const auto base = resolution::intersection_matrix(outcome.graph,
                                                      resolution::Ordering::canonical);
    json cycles = json::array();
    for (int id : base.cycle_ids) {
        const auto& c = outcome.graph.cycle(id);
        cycles.push_back(json{{"mult", c.multiplicity}, {"self", c.self_intersection}});
    }
    json edges = json::array();
    for (std::size_t i = 0; i < base.cycle_ids.size(); ++i)
        for (std::size_t j = i + 1; j < base.cycle_ids.size(); ++j)
            if (outcome.graph.edge_count(base.cycle_ids[i], base.cycle_ids[j]) > 0)
                edges.push_back(json{i, j});

    json result{{"germ", germ.str()},
                {"cycles", cycles},
                {"edges", edges},
                {"resolution_matrix", int_matrix_json(base.matrix)}};

    try {
        const auto cover = resolution::double_cover_transform(outcome.graph);
        // cover ids follow the compact cycles in creation order; remap the
        // canonical ordering so rows line up with "cycles"
        std::map<int, int> remap;
        int next = 0;
        for (const auto& c : outcome.graph.cycles())
            if (c.compact) remap[c.id] = next++;
        std::vector<int> cover_ids;
        for (int id : base.cycle_ids) cover_ids.push_back(remap.at(id));
        const auto form = resolution::intersection_matrix(cover, cover_ids);
        const int sig = resolution::signature(form.matrix);
        const auto rochlin = resolution::rochlin_check(sig);
        result["cover_applicable"] = true;
        result["matrix"] = int_matrix_json(form.matrix);
        result["determinant"] = to_string(exact_determinant(form.matrix));
        result["signature"] = sig;
        result["rochlin_contradiction"] = rochlin.contradiction;
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::domain) throw;
        result["cover_applicable"] = false;
        result["cover_error"] = e.what();
        result["matrix"] = nullptr;
        result["signature"] = nullptr;
        result["rochlin_contradiction"] = nullptr;
    }

    if (trace) {
        json steps = json::array();
        for (const auto& t : outcome.trace)
            steps.push_back(json{{"step", t.step},
                                 {"reason", t.reason},
                                 {"mult", t.new_multiplicity},
                                 {"charts", t.charts}});
        result["trace"] = steps;
    }
    return result;
}

// --- dispatcher -----------------------------------------------------------

struct Flags {
    std::string mesh_path;
    std::string shape;
    std::string condition = "auto";
    std::string mode = "both";
    std::string t_list = "0.05,0.5,5,50";
    std::string polygon;
    std::string germ;
    std::string out_path;
    std::string weights = "5,1,1";
    std::string ordering = "canonical";
    long k = 0;
    long fiber_scale = 5;
    double radius = 1.0;
    int steps = 1024;
    bool trace = false;
    bool k_set = false;
};

std::vector<long> parse_long_list(const std::string& text) {
    std::vector<long> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stol(item));
    }
    return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"desk-scale computations in geometry and topology"};
    app.require_subcommand(1);

    Flags flags;

    const auto add_mesh_flags = [&](CLI::App* cmd) {
        cmd->add_option("--mesh", flags.mesh_path, "OFF mesh file");
        cmd->add_option("--shape", flags.shape,
                        "builtin mesh: tetrahedron|octahedron|icosahedron|icosphere:N|"
                        "holed-rectangle:G|double:<shape>");
    };

    auto* gauss = app.add_subcommand("gauss-bonnet", "total angle defect against 2*pi*chi");
    add_mesh_flags(gauss);

    auto* betti = app.add_subcommand("betti", "Betti numbers from exact ranks");
    add_mesh_flags(betti);
    betti->add_option("--condition", flags.condition, "none|absolute|relative|auto")
        ->default_str("auto");

    auto* heat = app.add_subcommand("heat-index",
                                    "heat supertrace and the collapsed-operator index");
    add_mesh_flags(heat);
    heat->add_option("--condition", flags.condition, "none|absolute|relative|auto")
        ->default_str("auto");
    heat->add_option("--t", flags.t_list, "comma list of heat times")->default_str("0.05,0.5,5,50");

    auto* dbl = app.add_subcommand("double", "glue two mirrored copies along the boundary");
    add_mesh_flags(dbl);
    dbl->add_option("--out", flags.out_path, "write the doubled mesh as OFF");

    auto* periods = app.add_subcommand("periods", "harmonic circulation periods around holes");
    add_mesh_flags(periods);

    auto* jackpot = app.add_subcommand("jackpot", "count coin combinations 5q+n+c = 5k");
    jackpot->add_option("--k", flags.k, "maximum number of quarters")
        ->required()
        ->check(CLI::NonNegativeNumber);
    jackpot->add_option("--mode", flags.mode, "brute|formula|both")->default_str("both");

    auto* pick = app.add_subcommand("pick", "lattice points of a polygon via Pick's theorem");
    pick->add_option("--polygon", flags.polygon, "CSV file, one \"x,y\" per line, CCW")
        ->required();

    auto* localize = app.add_subcommand("localize", "equivariant fixed-point count");
    localize->add_option("--weights", flags.weights, "ambient weights w0,w1,w2")
        ->default_str("5,1,1");
    localize->add_option("--fiber-scale", flags.fiber_scale, "fiber weight per unit k")
        ->default_str("5");

    auto* cp1 = app.add_subcommand("cp1-index", "degree-k section count on the projective line");
    auto* cp1_k = cp1->add_option("--k", flags.k, "evaluate at this k")
                      ->check(CLI::NonNegativeNumber);

    auto* curvature = app.add_subcommand("curvature", "normalized curvature circulation");
    curvature->add_option("--radius", flags.radius, "circle radius")->required();
    curvature->add_option("--steps", flags.steps, "trapezoid steps")->default_str("1024");

    auto* resolve = app.add_subcommand("resolve", "blow up a plane-curve germ");
    resolve->add_option("--germ", flags.germ, "polynomial, e.g. \"y^3+z^5\"")->required();
    resolve->add_flag("--trace", flags.trace, "include per-step chart polynomials");
    resolve->add_option("--ordering", flags.ordering, "cycle ordering (canonical)")
        ->default_str("canonical");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    std::string command = "?";
    json report;
    report["schema_version"] = 1;

    const auto emit = [&](int code) {
        out << report.dump() << '\n';
        return code;
    };

    try {
        try {
            app.parse(reversed);
        } catch (const CLI::CallForHelp& e) {
            return app.exit(e, out, err);  // prints the help of the parsed subcommand
        } catch (const CLI::ParseError& e) {
            throw usage_error(e.what());
        }
        const auto chosen = app.get_subcommands();
        command = chosen.empty() ? "?" : chosen.front()->get_name();
        report["command"] = command;

        json inputs = json::object();
        json result;
        if (gauss->parsed()) {
            inputs = json{{"mesh", flags.mesh_path}, {"shape", flags.shape}};
            result = run_gauss_bonnet(load_mesh(flags.mesh_path, flags.shape));
        } else if (betti->parsed()) {
            inputs = json{{"mesh", flags.mesh_path}, {"shape", flags.shape},
                          {"condition", flags.condition}};
            const auto m = load_mesh(flags.mesh_path, flags.shape);
            result = run_betti(m, auto_condition(m, flags.condition));
        } else if (heat->parsed()) {
            inputs = json{{"mesh", flags.mesh_path}, {"shape", flags.shape},
                          {"condition", flags.condition}, {"t", flags.t_list}};
            const auto m = load_mesh(flags.mesh_path, flags.shape);
            result = run_heat_index(m, auto_condition(m, flags.condition),
                                    parse_double_list(flags.t_list));
        } else if (dbl->parsed()) {
            inputs = json{{"mesh", flags.mesh_path}, {"shape", flags.shape},
                          {"out", flags.out_path}};
            result = run_double(load_mesh(flags.mesh_path, flags.shape), flags.out_path);
        } else if (periods->parsed()) {
            inputs = json{{"mesh", flags.mesh_path}, {"shape", flags.shape}};
            result = run_periods(load_mesh(flags.mesh_path, flags.shape));
        } else if (jackpot->parsed()) {
            if (flags.mode != "brute" && flags.mode != "formula" && flags.mode != "both")
                throw usage_error("--mode must be brute, formula or both");
            inputs = json{{"k", flags.k}, {"mode", flags.mode}};
            result = run_jackpot(flags.k, flags.mode);
        } else if (pick->parsed()) {
            inputs = json{{"polygon", flags.polygon}};
            result = run_pick(flags.polygon);
        } else if (localize->parsed()) {
            inputs = json{{"weights", flags.weights}, {"fiber_scale", flags.fiber_scale}};
            result = run_localize(parse_long_list(flags.weights), flags.fiber_scale);
        } else if (cp1->parsed()) {
            const bool has_k = cp1_k->count() > 0;
            inputs = has_k ? json{{"k", flags.k}} : json::object();
            result = run_cp1_index(has_k ? std::optional<long>(flags.k) : std::nullopt);
        } else if (curvature->parsed()) {
            inputs = json{{"radius", flags.radius}, {"steps", flags.steps}};
            result = run_curvature(flags.radius, flags.steps);
        } else if (resolve->parsed()) {
            if (flags.ordering != "canonical")
                throw usage_error("--ordering supports only \"canonical\"");
            inputs = json{{"germ", flags.germ}, {"trace", flags.trace},
                          {"ordering", flags.ordering}};
            result = run_resolve(flags.germ, flags.trace);
        } else {
            throw usage_error("no subcommand chosen");
        }

        report["inputs"] = inputs;
        report["status"] = "ok";
        report["result"] = result;
        err << command << ": ok\n";
        return emit(0);
    } catch (const Error& e) {
        report["command"] = command;
        report["status"] = "error";
        report["error"] = json{{"kind", e.kind_name()}, {"message", e.what()}};
        err << command << ": " << e.kind_name() << " error: " << e.what() << '\n';
        switch (e.kind()) {
            case ErrorKind::usage: return emit(1);
            case ErrorKind::resource: return emit(3);
            default: return emit(2);
        }
    } catch (const std::exception& e) {
        report["command"] = command;
        report["status"] = "error";
        report["error"] = json{{"kind", "internal"}, {"message", e.what()}};
        err << command << ": internal error: " << e.what() << '\n';
        return emit(2);
    }
}

}  // namespace chi::cli
