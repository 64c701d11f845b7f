#include <bijumble/pattern.hpp>
#include <bijumble/error.hpp>
#include <bijumble/parallel.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

namespace bijumble
{
    auto to_string(MilliValue v) -> std::string
    {
        auto t = v.thousandths;
        std::string sign = t < 0 ? "-" : "";
        if (t < 0)
            t = -t;
        auto frac = std::to_string(t % 1000);
        return sign + std::to_string(t / 1000) + "." + std::string(3 - frac.size(), '0') + frac;
    }

    Pattern::Pattern(Graph graph, std::vector<int> order) :
        _graph(std::move(graph)),
        _order(std::move(order)),
        _position(_graph.vertex_count(), -1)
    {
        if (int(_order.size()) != _graph.vertex_count())
            throw ParameterError("order must list every pattern vertex exactly once");
        for (int k = 0 ; k < int(_order.size()) ; ++k) {
            int v = _order[k];
            if (v < 0 || v >= _graph.vertex_count() || _position[v] != -1)
                throw ParameterError("order is not a permutation of the pattern vertices");
            _position[v] = k;
        }
    }

    auto Pattern::identity(Graph graph) -> Pattern
    {
        std::vector<int> order(graph.vertex_count());
        std::iota(order.begin(), order.end(), 0);
        return Pattern(std::move(graph), std::move(order));
    }

    auto Pattern::reordered(std::vector<int> order) const -> Pattern
    {
        return Pattern(_graph, std::move(order));
    }

    auto load_pattern(std::string_view text) -> Pattern
    {
        std::string graph_text;
        std::optional<std::vector<int>> order;
        std::size_t line_no = 0;
        std::size_t order_line = 0;
        while (! text.empty()) {
            auto nl = text.find('\n');
            auto line = text.substr(0, nl);
            text = (nl == std::string_view::npos) ? std::string_view{} : text.substr(nl + 1);
            ++line_no;

            auto stripped = line.substr(0, line.find('#'));
            auto first = stripped.find_first_not_of(" \t");
            if (first != std::string_view::npos && stripped.substr(first).starts_with("order:")) {
                order_line = line_no;
                std::istringstream in{std::string(stripped.substr(first + 6))};
                std::vector<int> o;
                std::string token;
                while (in >> token) {
                    try {
                        std::size_t used = 0;
                        o.push_back(std::stoi(token, &used));
                        if (used != token.size())
                            throw std::invalid_argument(token);
                    }
                    catch (const std::logic_error &) {
                        throw ParseError(line_no, "bad order entry \"" + token + "\"");
                    }
                }
                order = std::move(o);
                graph_text += '\n';
            }
            else {
                graph_text += line;
                graph_text += '\n';
            }
        }

        auto graph = load_graph(graph_text);
        if (! order)
            return Pattern::identity(std::move(graph));
        try {
            return Pattern(std::move(graph), std::move(*order));
        }
        catch (const ParameterError & e) {
            throw ParseError(order_line, e.what());
        }
    }

    auto load_pattern_file(const std::string & path) -> Pattern
    {
        std::ifstream in(path);
        if (! in)
            throw IoError("cannot read " + path);
        std::stringstream buffer;
        buffer << in.rdbuf();
        return load_pattern(buffer.str());
    }

    auto serialize_pattern(const Pattern & pattern) -> std::string
    {
        auto out = serialize_graph(pattern.graph());
        out += "order:";
        for (int v : pattern.order())
            out += " " + std::to_string(v);
        out += "\n";
        return out;
    }

    auto neighborhood_split(const Pattern & pattern, int v, int u) -> NeighborhoodSplit
    {
        const auto & g = pattern.graph();
        if (v < 0 || v >= g.vertex_count() || u < 0 || u >= g.vertex_count())
            throw RangeError("pattern vertex out of range");

        std::vector<int> forward, backward, before_other;
        g.row(v).for_each([&] (std::size_t w_) {
            int w = int(w_);
            if (pattern.position(w) > pattern.position(v))
                forward.push_back(w);
            else
                backward.push_back(w);
            if (pattern.position(w) < pattern.position(u))
                before_other.push_back(w);
        });
        int n = g.vertex_count();
        return NeighborhoodSplit{VertexSet(n, forward), VertexSet(n, backward), VertexSet(n, before_other)};
    }

    auto vertex_terms(const Graph & graph, const BitRow & before, int v) -> VertexTerms
    {
        BitRow after(graph.vertex_count());
        for (int w = 0 ; w < graph.vertex_count() ; ++w)
            if (w != v && ! before.test(w))
                after.set(w);

        // half-units throughout: 500 per neighbour counted
        const std::int64_t backward = std::int64_t(graph.row(v).intersect_count(before));
        std::int64_t k_term = 0;
        std::vector<int> forward_counts;

        graph.row(v).for_each([&] (std::size_t j_) {
            int j = int(j_);
            if (! after.test(j))
                return;

            const auto cj = std::int64_t(graph.row(j).intersect_count(before));
            forward_counts.push_back(int(cj));

            std::int64_t case_value = 1000;
            graph.row(j).for_each([&] (std::size_t k_) {
                int k = int(k_);
                if (! after.test(k))
                    return;
                case_value = std::max<std::int64_t>(case_value, 1500);
                if (graph.adjacent(v, k)) {
                    case_value = std::max<std::int64_t>(case_value, 2000);
                    if (std::int64_t(graph.row(k).intersect_count(before)) <= cj)
                        case_value = 3000;
                }

                // second family with j' = k
                const auto cjp = std::int64_t(graph.row(k).intersect_count(before));
                const std::int64_t second = 500 * cj + 500 * cjp + (graph.adjacent(v, k) ? 2501 : 2001);
                k_term = std::max(k_term, second);
            });

            k_term = std::max(k_term, 500 * backward + 500 * cj + case_value);
        });

        int d_term = int(backward);
        if (! forward_counts.empty()) {
            std::sort(forward_counts.begin(), forward_counts.end(), std::greater<int>());
            int best = 0;
            for (int r = 0 ; r < int(forward_counts.size()) ; ++r)
                best = std::max(best, r + 1 + forward_counts[r]);
            d_term += best;
        }

        return VertexTerms{MilliValue{k_term}, d_term};
    }

    namespace
    {
        template <typename F_>
        auto for_each_prefix(const Pattern & pattern, F_ && f) -> void
        {
            BitRow before(pattern.size());
            for (int v : pattern.order()) {
                f(vertex_terms(pattern.graph(), before, v));
                before.set(v);
            }
        }
    }

    auto k_reg(const Pattern & pattern) -> MilliValue
    {
        MilliValue result{0};
        for_each_prefix(pattern, [&] (const VertexTerms & t) { result = std::max(result, t.k_reg); });
        return result;
    }

    auto d_tilde(const Pattern & pattern) -> int
    {
        int result = 0;
        for_each_prefix(pattern, [&] (const VertexTerms & t) { result = std::max(result, t.d_tilde); });
        return result;
    }

    auto two_sided_exponent(const Pattern & pattern) -> MilliValue
    {
        return std::max(k_reg(pattern), MilliValue{500 + 500 * std::int64_t(d_tilde(pattern))});
    }

    auto degeneracy(const Graph & graph) -> Degeneracy
    {
        const int n = graph.vertex_count();
        std::vector<int> deg(n);
        std::vector<bool> removed(n, false);
        for (int v = 0 ; v < n ; ++v)
            deg[v] = graph.degree(v);

        Degeneracy result;
        std::vector<int> removal;
        for (int step = 0 ; step < n ; ++step) {
            int best = -1;
            for (int v = 0 ; v < n ; ++v)
                if (! removed[v] && (best == -1 || deg[v] < deg[best]))
                    best = v;
            result.value = std::max(result.value, deg[best]);
            removed[best] = true;
            removal.push_back(best);
            graph.row(best).for_each([&] (std::size_t w) {
                if (! removed[w])
                    --deg[w];
            });
        }
        result.order.assign(removal.rbegin(), removal.rend());
        return result;
    }

    auto line_graph(const Graph & graph) -> Graph
    {
        auto edges = graph.edges();
        if (edges.empty())
            throw ParameterError("line graph of an edgeless graph");
        std::vector<Edge> incidences;
        for (std::size_t a = 0 ; a < edges.size() ; ++a)
            for (std::size_t b = a + 1 ; b < edges.size() ; ++b) {
                auto [u1, v1] = edges[a];
                auto [u2, v2] = edges[b];
                if (u1 == u2 || u1 == v2 || v1 == u2 || v1 == v2)
                    incidences.emplace_back(int(a), int(b));
            }
        return Graph(int(edges.size()), incidences);
    }

    auto cfz_two_sided_exponent(const Graph & graph) -> MilliValue
    {
        auto line = line_graph(graph);
        std::int64_t by_degree = 500 * (std::int64_t(line.max_degree()) + 4);
        std::int64_t by_degeneracy = 500 * (std::int64_t(degeneracy(line).value) + 6);
        return MilliValue{std::min(by_degree, by_degeneracy)};
    }

    auto to_string(Objective o) -> std::string
    {
        return o == Objective::one_sided ? "one_sided" : "two_sided";
    }

    auto to_string(Strategy s) -> std::string
    {
        switch (s) {
            case Strategy::exhaustive:       return "exhaustive";
            case Strategy::branch_and_bound: return "branch_and_bound";
            case Strategy::heuristic:        return "heuristic";
        }
        return "?";
    }

    auto parse_objective(std::string_view s) -> Objective
    {
        if (s == "one_sided")
            return Objective::one_sided;
        if (s == "two_sided")
            return Objective::two_sided;
        throw ParameterError("unknown objective \"" + std::string(s) + "\"");
    }

    auto parse_strategy(std::string_view s) -> Strategy
    {
        if (s == "exhaustive")
            return Strategy::exhaustive;
        if (s == "branch_and_bound" || s == "bnb")
            return Strategy::branch_and_bound;
        if (s == "heuristic")
            return Strategy::heuristic;
        throw ParameterError("unknown strategy \"" + std::string(s) + "\"");
    }

    auto exponent_report(const Pattern & pattern) -> ExponentReport
    {
        ExponentReport r;
        r.k_reg = k_reg(pattern);
        r.d_tilde = d_tilde(pattern);
        r.one_sided_exponent = r.k_reg;
        r.two_sided_exponent = std::max(r.k_reg, MilliValue{500 + 500 * std::int64_t(r.d_tilde)});
        r.max_degree = pattern.graph().max_degree();
        r.degeneracy = degeneracy(pattern.graph()).value;
        r.order = pattern.order();
        if (pattern.graph().edge_count() == 0)
            r.warnings.push_back("pattern has no edges; k_reg is 0 by convention");
        else
            r.cfz_two_sided = cfz_two_sided_exponent(pattern.graph());
        return r;
    }

    auto objective_term(const VertexTerms & terms, Objective objective) -> MilliValue
    {
        if (objective == Objective::one_sided)
            return terms.k_reg;
        return std::max(terms.k_reg, MilliValue{500 + 500 * std::int64_t(terms.d_tilde)});
    }

    auto objective_value(const Pattern & pattern, Objective objective) -> MilliValue
    {
        MilliValue result{0};
        if (objective == Objective::two_sided)
            result = MilliValue{500};
        for_each_prefix(pattern, [&] (const VertexTerms & t) {
            result = std::max(result, objective_term(t, objective));
        });
        return result;
    }

    namespace
    {
        // Evaluates the objective of a full order from scratch.
        auto evaluate(const Graph & graph, const std::vector<int> & order, Objective objective) -> MilliValue
        {
            return objective_value(Pattern(graph, order), objective);
        }

        struct ExhaustiveChunk
        {
            MilliValue best{std::numeric_limits<std::int64_t>::max()};
            std::vector<int> order;
            std::uint64_t nodes = 0;
        };

        // Enumerates every order beginning with `first`, in lexicographic
        // order of the remaining positions.
        auto exhaustive_from(const Graph & graph, int first, Objective objective) -> ExhaustiveChunk
        {
            const int n = graph.vertex_count();
            ExhaustiveChunk chunk;
            std::vector<int> order{first};
            BitRow placed(n);
            std::vector<MilliValue> running{objective_term(vertex_terms(graph, placed, first), objective)};
            placed.set(first);

            std::function<void ()> recurse = [&] {
                ++chunk.nodes;
                if (int(order.size()) == n) {
                    if (running.back() < chunk.best) {
                        chunk.best = running.back();
                        chunk.order = order;
                    }
                    return;
                }
                for (int v = 0 ; v < n ; ++v) {
                    if (placed.test(v))
                        continue;
                    auto term = objective_term(vertex_terms(graph, placed, v), objective);
                    running.push_back(std::max(running.back(), term));
                    order.push_back(v);
                    placed.set(v);
                    recurse();
                    placed.reset(v);
                    order.pop_back();
                    running.pop_back();
                }
            };
            recurse();
            return chunk;
        }

        class BranchAndBound
        {
            public:
                BranchAndBound(const Graph & graph, Objective objective, std::vector<int> incumbent) :
                    _graph(graph),
                    _objective(objective),
                    _n(graph.vertex_count()),
                    _memo(std::size_t{1} << _n, MilliValue{std::numeric_limits<std::int64_t>::max()}),
                    _best_order(std::move(incumbent)),
                    _best(evaluate(graph, _best_order, objective)),
                    _placed(_n)
                {
                    _floor = _objective == Objective::two_sided ? MilliValue{500} : MilliValue{0};
                }

                auto run() -> void
                {
                    search(0, _floor);
                }

                auto best() const -> MilliValue { return _best; }
                auto best_order() const -> const std::vector<int> & { return _best_order; }
                auto nodes() const -> std::uint64_t { return _nodes; }

            private:
                auto lower_bound(std::uint32_t mask, MilliValue current) const -> MilliValue
                {
                    auto bound = current;
                    for (int v = 0 ; v < _n ; ++v) {
                        if (mask & (1u << v))
                            continue;
                        // every unplaced vertex still contributes at least its
                        // degree to d̃, and an edge between two unplaced
                        // vertices forces a k_reg term of at least 1
                        if (_objective == Objective::two_sided)
                            bound = std::max(bound, MilliValue{500 + 500 * std::int64_t(_graph.degree(v))});
                        bool open_edge = false;
                        _graph.row(v).for_each([&] (std::size_t w) {
                            if (! (mask & (1u << w)))
                                open_edge = true;
                        });
                        if (open_edge)
                            bound = std::max(bound, MilliValue{1000});
                    }
                    return bound;
                }

                auto search(std::uint32_t mask, MilliValue current) -> void
                {
                    ++_nodes;
                    if (current >= _best)
                        return;
                    if (_memo[mask] <= current)
                        return;
                    _memo[mask] = current;

                    if (int(_order.size()) == _n) {
                        _best = current;
                        _best_order = _order;
                        return;
                    }
                    if (lower_bound(mask, current) >= _best)
                        return;

                    std::vector<std::pair<MilliValue, int>> children;
                    for (int v = 0 ; v < _n ; ++v)
                        if (! (mask & (1u << v)))
                            children.emplace_back(objective_term(vertex_terms(_graph, _placed, v), _objective), v);
                    std::stable_sort(children.begin(), children.end(),
                            [] (const auto & a, const auto & b) { return a.first < b.first; });

                    for (auto & [term, v] : children) {
                        auto next = std::max(current, term);
                        if (next >= _best)
                            continue;
                        _order.push_back(v);
                        _placed.set(v);
                        search(mask | (1u << v), next);
                        _placed.reset(v);
                        _order.pop_back();
                    }
                }

                const Graph & _graph;
                Objective _objective;
                int _n;
                std::vector<MilliValue> _memo;
                std::vector<int> _best_order;
                MilliValue _best;
                MilliValue _floor;
                BitRow _placed;
                std::vector<int> _order;
                std::uint64_t _nodes = 0;
        };

        // Minimum-degree removal with a caller-chosen tie-break; returns
        // the removal sequence.
        auto removal_sequence(const Graph & graph, const std::function<bool (int, int)> & prefer, int forced_last)
            -> std::vector<int>
        {
            const int n = graph.vertex_count();
            std::vector<int> deg(n);
            std::vector<bool> removed(n, false);
            for (int v = 0 ; v < n ; ++v)
                deg[v] = graph.degree(v);

            std::vector<int> sequence;
            for (int step = 0 ; step < n ; ++step) {
                int best = -1;
                for (int v = 0 ; v < n ; ++v) {
                    if (removed[v] || (v == forced_last && step != n - 1))
                        continue;
                    if (best == -1 || deg[v] < deg[best] || (deg[v] == deg[best] && prefer(v, best)))
                        best = v;
                }
                removed[best] = true;
                sequence.push_back(best);
                graph.row(best).for_each([&] (std::size_t w) {
                    if (! removed[w])
                        --deg[w];
                });
            }
            return sequence;
        }
    }

    auto heuristic_orders(const Graph & graph) -> std::vector<std::vector<int>>
    {
        const int n = graph.vertex_count();
        std::vector<std::vector<int>> candidates;
        auto add_both = [&] (std::vector<int> seq) {
            candidates.emplace_back(seq.rbegin(), seq.rend());
            candidates.push_back(std::move(seq));
        };

        std::vector<std::function<bool (int, int)>> tie_breaks{
            [] (int a, int b) { return a < b; },
            [] (int a, int b) { return a > b; },
            [&] (int a, int b) { return graph.degree(a) > graph.degree(b) || (graph.degree(a) == graph.degree(b) && a < b); },
            [&] (int a, int b) { return graph.degree(a) < graph.degree(b) || (graph.degree(a) == graph.degree(b) && a < b); }
        };
        for (auto & tb : tie_breaks)
            add_both(removal_sequence(graph, tb, -1));

        // degeneracy orders starting from each vertex
        for (int v = 0 ; v < n ; ++v)
            add_both(removal_sequence(graph, tie_breaks[0], v));

        std::vector<int> by_degree(n);
        std::iota(by_degree.begin(), by_degree.end(), 0);
        std::stable_sort(by_degree.begin(), by_degree.end(),
                [&] (int a, int b) { return graph.degree(a) > graph.degree(b); });
        add_both(by_degree);

        return candidates;
    }

    auto optimize_order(const Graph & graph, Objective objective, Strategy strategy, unsigned workers)
        -> OptimizedOrder
    {
        const int n = graph.vertex_count();
        OptimizedOrder result;

        auto finish = [&] (std::vector<int> order) {
            Pattern pattern(graph, order);
            result.order = std::move(order);
            result.value = objective_value(pattern, objective);
            result.report = exponent_report(pattern);
            return result;
        };

        if (n == 0)
            return finish({});

        auto heuristic_best = [&] {
            std::vector<int> best;
            MilliValue best_value{std::numeric_limits<std::int64_t>::max()};
            for (auto & candidate : heuristic_orders(graph)) {
                ++result.nodes;
                auto value = evaluate(graph, candidate, objective);
                if (value < best_value) {
                    best_value = value;
                    best = candidate;
                }
            }
            return best;
        };

        switch (strategy) {
            case Strategy::exhaustive: {
                if (n > exhaustive_vertex_limit)
                    throw CapacityError("exhaustive order search on " + std::to_string(n) + " vertices",
                            exhaustive_vertex_limit);
                auto chunks = run_chunks<ExhaustiveChunk>(std::size_t(n), workers,
                        [&] (std::size_t first) { return exhaustive_from(graph, int(first), objective); });
                ExhaustiveChunk best;
                for (auto & c : chunks) {
                    result.nodes += c.nodes;
                    if (c.best < best.best)
                        best = c;
                }
                return finish(best.order);
            }

            case Strategy::branch_and_bound: {
                if (n > branch_and_bound_vertex_limit)
                    throw CapacityError("branch-and-bound order search on " + std::to_string(n) + " vertices",
                            branch_and_bound_vertex_limit);
                BranchAndBound search(graph, objective, heuristic_best());
                search.run();
                result.nodes += search.nodes();
                return finish(search.best_order());
            }

            case Strategy::heuristic:
                return finish(heuristic_best());
        }
        return result;
    }

    auto triangle_book(int triangles) -> Graph
    {
        std::vector<Edge> edges;
        for (int t = 0 ; t < triangles ; ++t) {
            int a = 1 + 2 * t, b = 2 + 2 * t;
            edges.emplace_back(0, a);
            edges.emplace_back(0, b);
            edges.emplace_back(a, b);
        }
        return Graph(1 + 2 * triangles, edges);
    }

    auto complete_graph(int n) -> Graph
    {
        std::vector<Edge> edges;
        for (int u = 0 ; u < n ; ++u)
            for (int v = u + 1 ; v < n ; ++v)
                edges.emplace_back(u, v);
        return Graph(n, edges);
    }

    auto cycle_graph(int n) -> Graph
    {
        std::vector<Edge> edges;
        for (int v = 0 ; v < n ; ++v)
            edges.emplace_back(v, (v + 1) % n);
        return Graph(n, edges);
    }

    auto path_graph(int n) -> Graph
    {
        std::vector<Edge> edges;
        for (int v = 0 ; v + 1 < n ; ++v)
            edges.emplace_back(v, v + 1);
        return Graph(n, edges);
    }
}
