#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chi/bipoly.hpp"
#include "chi/exact.hpp"

namespace chi::resolution {

/// Plane-curve germ in monomial-times-strict form: x^a y^b * strict, with the
/// strict part divisible by neither variable.
struct Germ {
    std::array<std::string, 2> vars{"x", "y"};
    int content_x = 0;
    int content_y = 0;
    Poly2 strict;  // nonzero, not divisible by either variable

    Poly2 full() const {
        return strict * Poly2::term(Int(1), content_x, content_y);
    }
    std::string str() const;
};

/// Canonical germ from polynomial text; monomial content factored out.
Germ parse_germ(const std::string& text);

/// Minimal total degree of any monomial of the full germ.
int vanishing_order(const Germ& g);

// --- divisor bookkeeping ---

struct Cycle {
    int id;
    long multiplicity;       // >= 1
    long self_intersection;  // exceptional cycles start at -1
    bool compact;
    std::string name;        // stable label for traces
};

class DivisorGraph {
  public:
    int add_cycle(long multiplicity, long self_intersection, bool compact, std::string name);
    const std::vector<Cycle>& cycles() const { return cycles_; }
    Cycle& cycle(int id);
    const Cycle& cycle(int id) const;

    void add_edge(int a, int b);
    void remove_edges_between(int a, int b);
    int edge_count(int a, int b) const;
    /// Unordered id pairs with positive count, deterministic order.
    std::vector<std::pair<int, int>> edges() const;
    std::vector<int> neighbors(int id) const;

  private:
    std::vector<Cycle> cycles_;
    std::map<std::pair<int, int>, int> edges_;
};

/// One coordinate chart of the blown-up surface: axis cycles with their
/// exponents plus the non-axis factors of the total transform, each tied to
/// the divisor cycle it locally describes.
struct ChartFactor {
    int cycle;
    Poly2 poly;  // not divisible by either chart variable
    long exponent;
};

struct Chart {
    std::array<std::string, 2> vars;
    std::array<int, 2> axis_cycle{-1, -1};  // cycle on {x=0} resp. {y=0}; -1 none
    std::array<long, 2> axis_exp{0, 0};
    std::vector<ChartFactor> factors;

    Poly2 full_germ() const;
    Germ to_germ() const;
    std::string str() const;
};

enum class TargetKind { singular, tangency, triple, odd_odd };

struct Target {
    TargetKind kind;
    std::size_t chart;          // realization chart (index into the chart list)
    Int shift_x{0};             // chart recentering before the blow-up
    Int shift_y{0};
    std::vector<int> cycles;    // cycles meeting at the point
    std::string description;
};

const char* target_kind_name(TargetKind k);

/// Chart-level origin inspection plus graph-driven odd-odd pairs, filtered to
/// the highest-priority nonempty category (singularities, then tangencies,
/// then triple points, then odd-odd intersections) to mirror the order in
/// which the resolution removes them.
std::vector<Target> detect_targets(const std::vector<Chart>& charts, const DivisorGraph& graph);

struct BlowUpResult {
    Chart chart_a;  // (u, q_n): exceptional on {u = 0}... see implementation
    Chart chart_b;  // (p_n, v): exceptional on {v = 0}
    int new_cycle;
    bool was_unit;  // germ was a unit at the point: nothing happened
};

/// Blows up the origin of a chart, updating the graph: a new compact cycle of
/// multiplicity = vanishing order appears at self-intersection -1, every
/// cycle through the point is decremented and separated, and the new cycle
/// meets each of them once. `index` numbers the blow-up for chart naming.
BlowUpResult blow_up_at_origin(const Chart& chart, DivisorGraph& graph, int index);

struct TraceStep {
    int step;
    std::string reason;
    long new_multiplicity;
    std::vector<std::string> charts;  // canonical germ strings of the children
};

struct ResolutionOutcome {
    DivisorGraph graph;
    int strict_cycle;  // id of the non-compact branch cycle
    std::vector<Chart> charts;
    std::vector<TraceStep> trace;
};

/// Repeated blow-ups from a reduced germ until no targets remain.
ResolutionOutcome resolve(const Germ& start, int max_steps = 64);

/// The (2,3,5) run from y^3 + z^5, with the expected invariants asserted:
/// 8 compact cycles, odd multiplicities {3,5,9,15} at self-intersection -4
/// and even multiplicities {12,16,20,24} at -1.
ResolutionOutcome resolve_235();

/// Double-cover rewrite: requires odd compact cycles at -4 and even compact
/// cycles at -1; produces the same graph shape on the compact cycles with
/// every self-intersection -2 and multiplicities dropped.
DivisorGraph double_cover_transform(const DivisorGraph& graph);

struct IntersectionMatrix {
    IntMatrix matrix;
    std::vector<int> cycle_ids;  // row/column order
};

enum class Ordering { canonical, by_id };

/// Symmetric intersection matrix of the compact cycles. Canonical ordering
/// walks the longest path of the intersection graph starting from the end
/// farther from the branch node, then appends off-path cycles; for the
/// (2,3,5) output this is the E8 chain with the eighth node hung on the
/// fifth. An explicit id list may be passed instead.
IntersectionMatrix intersection_matrix(const DivisorGraph& graph, Ordering ordering);
IntersectionMatrix intersection_matrix(const DivisorGraph& graph,
                                       const std::vector<int>& explicit_ids);

/// Signature by exact congruence diagonalization.
int signature(const IntMatrix& m);

struct RochlinReport {
    bool divisible_by_16;
    bool contradiction;
};

/// Divisibility-by-16 test for the signature of a would-be spin 4-manifold.
RochlinReport rochlin_check(int sig);

}  // namespace chi::resolution
