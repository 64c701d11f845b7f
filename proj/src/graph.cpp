#include <bijumble/graph.hpp>
#include <bijumble/error.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>

namespace bijumble
{
    namespace
    {
        auto trim(std::string_view s) -> std::string_view
        {
            while (! s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
                s.remove_prefix(1);
            while (! s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
                s.remove_suffix(1);
            return s;
        }

        auto parse_int(std::string_view s, long long & out) -> bool
        {
            s = trim(s);
            if (s.empty())
                return false;
            auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
            return ec == std::errc() && ptr == s.data() + s.size();
        }
    }

    Graph::Graph(int vertex_count, std::span<const Edge> edges)
    {
        if (vertex_count < 0)
            throw RangeError("negative vertex count");

        _rows.assign(vertex_count, BitRow(vertex_count));
        for (auto [u, v] : edges) {
            if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count)
                throw RangeError("edge " + std::to_string(u) + " " + std::to_string(v) + " out of range for "
                        + std::to_string(vertex_count) + " vertices");
            if (u == v)
                throw InvariantError("self-loop at vertex " + std::to_string(u));
            if (! _rows[u].test(v)) {
                _rows[u].set(v);
                _rows[v].set(u);
                ++_edge_count;
            }
        }
    }

    auto Graph::max_degree() const -> int
    {
        int result = 0;
        for (int v = 0 ; v < vertex_count() ; ++v)
            result = std::max(result, degree(v));
        return result;
    }

    auto Graph::edges() const -> std::vector<Edge>
    {
        std::vector<Edge> result;
        result.reserve(_edge_count);
        for (int u = 0 ; u < vertex_count() ; ++u)
            _rows[u].for_each([&] (std::size_t v) {
                if (int(v) > u)
                    result.emplace_back(u, int(v));
            });
        return result;
    }

    auto Graph::induced(std::span<const int> vertices) const -> Graph
    {
        std::vector<Edge> sub_edges;
        for (std::size_t a = 0 ; a < vertices.size() ; ++a)
            for (std::size_t b = a + 1 ; b < vertices.size() ; ++b)
                if (adjacent(vertices[a], vertices[b]))
                    sub_edges.emplace_back(int(a), int(b));
        return Graph(int(vertices.size()), sub_edges);
    }

    VertexSet::VertexSet(int universe, std::vector<int> members) :
        _universe(universe),
        _members(std::move(members)),
        _mask(universe)
    {
        std::sort(_members.begin(), _members.end());
        _members.erase(std::unique(_members.begin(), _members.end()), _members.end());
        for (int v : _members) {
            if (v < 0 || v >= universe)
                throw RangeError("vertex " + std::to_string(v) + " out of range for universe "
                        + std::to_string(universe));
            _mask.set(v);
        }
    }

    auto VertexSet::range(int universe, int first, int last_exclusive) -> VertexSet
    {
        std::vector<int> m(std::max(0, last_exclusive - first));
        std::iota(m.begin(), m.end(), first);
        return VertexSet(universe, std::move(m));
    }

    auto VertexSet::disjoint_from(const VertexSet & other) const -> bool
    {
        if (other._universe != _universe)
            return std::none_of(_members.begin(), _members.end(), [&] (int v) { return other.contains(v); });
        return _mask.intersect_count(other._mask) == 0;
    }

    auto VertexSet::subset_of(const VertexSet & other) const -> bool
    {
        return std::all_of(_members.begin(), _members.end(), [&] (int v) { return other.contains(v); });
    }

    BipartitePairView::BipartitePairView(const Graph & graph, VertexSet left, VertexSet right) :
        _graph(&graph),
        _left(std::move(left)),
        _right(std::move(right))
    {
        if (_left.universe() != graph.vertex_count() || _right.universe() != graph.vertex_count())
            throw RangeError("pair sides must live in the graph's vertex universe");
        if (! _left.disjoint_from(_right))
            throw InvariantError("pair sides must be disjoint");
    }

    auto BipartitePairView::edge_count() const -> std::int64_t
    {
        std::int64_t result = 0;
        for (int u : _left)
            result += _graph->row(u).intersect_count(_right.mask());
        return result;
    }

    auto BipartitePairView::swapped() const -> BipartitePairView
    {
        return BipartitePairView(*_graph, _right, _left);
    }

    auto TripartiteSystem::validate() const -> void
    {
        if (host.vertex_count() != sub.vertex_count())
            throw InvariantError("host and subgraph must share a vertex universe");
        for (int v = 0 ; v < sub.vertex_count() ; ++v) {
            BitRow extra = sub.row(v);
            extra.subtract(host.row(v));
            if (! extra.empty())
                throw InvariantError("subgraph edge at vertex " + std::to_string(v) + " missing from host");
        }
        if (! x.disjoint_from(y) || ! x.disjoint_from(z) || ! y.disjoint_from(z))
            throw InvariantError("parts X, Y, Z must be pairwise disjoint");
    }

    auto Rational::make(std::int64_t num, std::int64_t den) -> Rational
    {
        if (den == 0)
            throw ParameterError("zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        auto g = std::gcd(num < 0 ? -num : num, den);
        if (g == 0)
            g = 1;
        return Rational{num / g, den / g};
    }

    auto to_string(const Rational & r) -> std::string
    {
        if (r.den == 1)
            return std::to_string(r.num);
        return std::to_string(r.num) + "/" + std::to_string(r.den);
    }

    auto load_graph(std::string_view text) -> Graph
    {
        long long n = -1;
        std::vector<Edge> edges;
        std::size_t line_no = 0;

        while (! text.empty()) {
            auto nl = text.find('\n');
            auto line = text.substr(0, nl);
            text = (nl == std::string_view::npos) ? std::string_view{} : text.substr(nl + 1);
            ++line_no;

            if (auto hash = line.find('#') ; hash != std::string_view::npos)
                line = line.substr(0, hash);
            line = trim(line);
            if (line.empty())
                continue;

            if (n < 0) {
                auto header = line;
                if (header.starts_with("n="))
                    header.remove_prefix(2);
                if (! parse_int(header, n) || n < 0)
                    throw ParseError(line_no, "expected header \"n=<vertex_count>\"");
                continue;
            }

            auto space = line.find_first_of(" \t");
            long long u, v;
            if (space == std::string_view::npos || ! parse_int(line.substr(0, space), u)
                    || ! parse_int(line.substr(space + 1), v))
                throw ParseError(line_no, "expected \"u v\"");
            if (u == v)
                throw InvariantError("line " + std::to_string(line_no) + ": self-loop at vertex " + std::to_string(u));
            if (u < 0 || v < 0 || u >= n || v >= n)
                throw RangeError("line " + std::to_string(line_no) + ": vertex index out of range for n="
                        + std::to_string(n));
            edges.emplace_back(int(u), int(v));
        }

        if (n < 0)
            throw ParseError(line_no, "missing header line");
        return Graph(int(n), edges);
    }

    auto load_graph_file(const std::string & path) -> Graph
    {
        std::ifstream in(path);
        if (! in)
            throw IoError("cannot read " + path);
        std::stringstream buffer;
        buffer << in.rdbuf();
        return load_graph(buffer.str());
    }

    auto serialize_graph(const Graph & graph) -> std::string
    {
        std::string out = "n=" + std::to_string(graph.vertex_count()) + "\n";
        for (auto [u, v] : graph.edges()) {
            out += std::to_string(u);
            out += ' ';
            out += std::to_string(v);
            out += '\n';
        }
        return out;
    }

    auto parse_vertex_list(std::string_view text, int universe) -> VertexSet
    {
        std::vector<int> members;
        std::size_t pos = 0;
        while (pos < text.size()) {
            auto end = text.find_first_of(", \t", pos);
            if (end == std::string_view::npos)
                end = text.size();
            auto token = trim(text.substr(pos, end - pos));
            pos = end + 1;
            if (token.empty())
                continue;

            long long a, b;
            if (auto dots = token.find("..") ; dots != std::string_view::npos) {
                if (! parse_int(token.substr(0, dots), a) || ! parse_int(token.substr(dots + 2), b))
                    throw ParseError(1, "bad vertex range \"" + std::string(token) + "\"");
                for (long long v = a ; v <= b ; ++v)
                    members.push_back(int(v));
            }
            else {
                if (! parse_int(token, a))
                    throw ParseError(1, "bad vertex \"" + std::string(token) + "\"");
                members.push_back(int(a));
            }
        }
        return VertexSet(universe, std::move(members));
    }

    auto density(const BipartitePairView & pair) -> Rational
    {
        if (pair.left().empty() || pair.right().empty())
            throw ParameterError("density undefined for an empty side");
        return Rational::make(pair.edge_count(), std::int64_t(pair.left().size()) * pair.right().size());
    }

    auto p_density(const BipartitePairView & pair, double p) -> double
    {
        if (! (p > 0.0))
            throw ParameterError("p must be positive");
        return density(pair).to_double() / p;
    }

    auto degree_into(const Graph & graph, int v, const VertexSet & target) -> int
    {
        return int(graph.row(v).intersect_count(target.mask()));
    }

    auto codegree(int u, int u_prime, const VertexSet & target, const Graph & graph) -> int
    {
        if (u == u_prime)
            throw ParameterError("codegree needs two distinct vertices");
        return int(graph.row(u).intersect_count(graph.row(u_prime), target.mask()));
    }

    auto complete_bipartite(int left, int right) -> Graph
    {
        std::vector<Edge> edges;
        for (int u = 0 ; u < left ; ++u)
            for (int v = 0 ; v < right ; ++v)
                edges.emplace_back(u, left + v);
        return Graph(left + right, edges);
    }

    auto perfect_matching(int half) -> Graph
    {
        std::vector<Edge> edges;
        for (int i = 0 ; i < half ; ++i)
            edges.emplace_back(i, half + i);
        return Graph(2 * half, edges);
    }
}
