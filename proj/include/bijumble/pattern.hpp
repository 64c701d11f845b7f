#pragma once

#include <bijumble/graph.hpp>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bijumble
{
    /// An exponent held in integer thousandths (2501 means 2.501). All
    /// exponent arithmetic and comparison is exact.
    struct MilliValue
    {
        std::int64_t thousandths = 0;

        static constexpr auto from_halves(std::int64_t halves) -> MilliValue { return MilliValue{500 * halves}; }

        auto to_double() const -> double { return double(thousandths) / 1000.0; }

        friend auto operator<=> (const MilliValue &, const MilliValue &) = default;
        friend auto operator+ (MilliValue a, MilliValue b) -> MilliValue { return MilliValue{a.thousandths + b.thousandths}; }
    };

    /// Formats as a decimal with exactly three fractional digits.
    auto to_string(MilliValue v) -> std::string;

    /// A pattern graph H together with a vertex order. order()[k] is the
    /// vertex at position k; position(v) is its inverse.
    class Pattern
    {
        public:
            /// Throws ParameterError unless order is a permutation of the
            /// graph's vertices.
            Pattern(Graph graph, std::vector<int> order);

            static auto identity(Graph graph) -> Pattern;

            auto graph() const -> const Graph & { return _graph; }
            auto order() const -> const std::vector<int> & { return _order; }
            auto position(int v) const -> int { return _position[v]; }
            auto size() const -> int { return _graph.vertex_count(); }

            /// The same graph under a different order.
            auto reordered(std::vector<int> order) const -> Pattern;

        private:
            Graph _graph;
            std::vector<int> _order, _position;
    };

    /// Edge-list text plus an optional "order: v1 v2 ... vm" line; the
    /// identity order is used when it is absent.
    auto load_pattern(std::string_view text) -> Pattern;
    auto load_pattern_file(const std::string & path) -> Pattern;
    auto serialize_pattern(const Pattern & pattern) -> std::string;

    struct NeighborhoodSplit
    {
        VertexSet forward;       ///< N⁺(v): neighbours after v
        VertexSet backward;      ///< N⁻(v): neighbours before v
        VertexSet before_other;  ///< N^{<u}(v): neighbours of v before u
    };

    auto neighborhood_split(const Pattern & pattern, int v, int u) -> NeighborhoodSplit;

    /// Contributions of one vertex to k_reg and d̃, given the set of vertices
    /// placed before it. Both depend only on that set, not on its internal
    /// order, which is what makes prefix-based search exact.
    struct VertexTerms
    {
        MilliValue k_reg;   ///< 0 when v has no later neighbour
        int d_tilde = 0;
    };

    auto vertex_terms(const Graph & graph, const BitRow & before, int v) -> VertexTerms;

    /// Smallest value satisfying every k_reg inequality under the pattern's
    /// order. Edgeless patterns give 0.
    auto k_reg(const Pattern & pattern) -> MilliValue;

    auto d_tilde(const Pattern & pattern) -> int;

    /// max(k_reg, 1/2 + d̃/2).
    auto two_sided_exponent(const Pattern & pattern) -> MilliValue;

    struct Degeneracy
    {
        int value = 0;
        /// Each vertex has at most `value` neighbours earlier in this order.
        std::vector<int> order;
    };

    /// Repeated minimum-degree removal (ties to the lowest index).
    auto degeneracy(const Graph & graph) -> Degeneracy;

    /// One vertex per edge (in Graph::edges() order), adjacent when the
    /// edges share an endpoint. Throws ParameterError on an edgeless graph.
    auto line_graph(const Graph & graph) -> Graph;

    /// min((Δ(L(H)) + 4)/2, (degen(L(H)) + 6)/2), the prior-work two-sided
    /// exponent. Throws ParameterError on an edgeless graph.
    auto cfz_two_sided_exponent(const Graph & graph) -> MilliValue;

    enum class Objective { one_sided, two_sided };
    enum class Strategy { exhaustive, branch_and_bound, heuristic };

    auto to_string(Objective o) -> std::string;
    auto to_string(Strategy s) -> std::string;
    auto parse_objective(std::string_view s) -> Objective;
    auto parse_strategy(std::string_view s) -> Strategy;

    constexpr int exhaustive_vertex_limit = 9;
    constexpr int branch_and_bound_vertex_limit = 12;

    struct ExponentReport
    {
        MilliValue k_reg;
        int d_tilde = 0;
        MilliValue one_sided_exponent;
        MilliValue two_sided_exponent;
        int max_degree = 0;
        int degeneracy = 0;
        std::optional<MilliValue> cfz_two_sided;
        std::vector<int> order;
        std::vector<std::string> warnings;
    };

    auto exponent_report(const Pattern & pattern) -> ExponentReport;

    /// The per-vertex objective term: k_reg term for one_sided, max of the
    /// k_reg term and 1/2 + d̃-term/2 for two_sided.
    auto objective_term(const VertexTerms & terms, Objective objective) -> MilliValue;

    /// Objective value of a pattern under its own order.
    auto objective_value(const Pattern & pattern, Objective objective) -> MilliValue;

    struct OptimizedOrder
    {
        std::vector<int> order;
        MilliValue value;
        ExponentReport report;
        std::uint64_t nodes = 0;   ///< search nodes (or orders) visited
    };

    /// Order minimising the chosen exponent. Exhaustive and branch-and-bound
    /// are exact (ties go to the lexicographically first order for
    /// exhaustive); heuristic returns the best of a fixed candidate family.
    /// Throws CapacityError above the strategy's vertex limit.
    auto optimize_order(const Graph & graph, Objective objective, Strategy strategy, unsigned workers = 0)
        -> OptimizedOrder;

    /// Candidate orders tried by the heuristic strategy.
    auto heuristic_orders(const Graph & graph) -> std::vector<std::vector<int>>;

    /// m triangles sharing one vertex (vertex 0), centre first in the
    /// identity order.
    auto triangle_book(int triangles) -> Graph;
    auto complete_graph(int n) -> Graph;
    auto cycle_graph(int n) -> Graph;
    auto path_graph(int n) -> Graph;
}
