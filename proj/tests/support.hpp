#pragma once

#include <bijumble/embed.hpp>
#include <bijumble/graph.hpp>
#include <bijumble/pattern.hpp>
#include <bijumble/rng.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

/// Hand-rolled generators and brute-force oracles shared by the tests.
/// Oracles deliberately avoid the library's bit rows and tricks.
namespace support
{
    using namespace bijumble;

    inline auto random_graph(int n, double p, Rng & rng) -> Graph
    {
        std::vector<Edge> edges;
        for (int u = 0 ; u < n ; ++u)
            for (int v = u + 1 ; v < n ; ++v)
                if (rng.bernoulli(p))
                    edges.emplace_back(u, v);
        return Graph(n, edges);
    }

    /// Bipartite graph on [0,a) ∪ [a,a+b) with Bernoulli(p) cross edges.
    inline auto random_bipartite(int a, int b, double p, Rng & rng) -> Graph
    {
        std::vector<Edge> edges;
        for (int u = 0 ; u < a ; ++u)
            for (int v = 0 ; v < b ; ++v)
                if (rng.bernoulli(p))
                    edges.emplace_back(u, a + v);
        return Graph(a + b, edges);
    }

    inline auto left_of(const Graph & g, int a) -> VertexSet { return VertexSet::range(g.vertex_count(), 0, a); }
    inline auto right_of(const Graph & g, int a) -> VertexSet
    {
        return VertexSet::range(g.vertex_count(), a, g.vertex_count());
    }

    inline auto edges_between(const Graph & g, const std::vector<int> & s, const std::vector<int> & t) -> std::int64_t
    {
        std::int64_t e = 0;
        for (int u : s)
            for (int v : t)
                e += g.adjacent(u, v) ? 1 : 0;
        return e;
    }

    /// Every nonempty subset of `items`, as member lists.
    inline auto subsets(const std::vector<int> & items) -> std::vector<std::vector<int>>
    {
        std::vector<std::vector<int>> out;
        const std::uint64_t total = std::uint64_t{1} << items.size();
        for (std::uint64_t m = 1 ; m < total ; ++m) {
            std::vector<int> s;
            for (std::size_t i = 0 ; i < items.size() ; ++i)
                if ((m >> i) & 1u)
                    s.push_back(items[i]);
            out.push_back(std::move(s));
        }
        return out;
    }

    /// Unlabelled C4 with two vertices on each side, by 4-tuple enumeration.
    inline auto c4_oracle(const Graph & g, const std::vector<int> & left, const std::vector<int> & right)
        -> std::int64_t
    {
        std::int64_t c = 0;
        for (std::size_t a = 0 ; a < left.size() ; ++a)
            for (std::size_t b = a + 1 ; b < left.size() ; ++b)
                for (std::size_t x = 0 ; x < right.size() ; ++x)
                    for (std::size_t y = x + 1 ; y < right.size() ; ++y)
                        if (g.adjacent(left[a], right[x]) && g.adjacent(left[a], right[y])
                                && g.adjacent(left[b], right[x]) && g.adjacent(left[b], right[y]))
                            ++c;
        return c;
    }

    /// Smallest valid γ: the largest normalised discrepancy over all
    /// nonempty subset pairs.
    inline auto gamma_oracle(const Graph & g, const std::vector<int> & left, const std::vector<int> & right,
            double p) -> double
    {
        double best = 0.0;
        auto ls = subsets(left), rs = subsets(right);
        for (auto & s : ls)
            for (auto & t : rs) {
                double e = double(edges_between(g, s, t));
                double size = double(s.size()) * double(t.size());
                best = std::max(best, std::fabs(e - p * size) / std::sqrt(size));
            }
        return best;
    }

    /// Largest |d_p(U',W') - d_p(U,W)| over admissible subset pairs.
    inline auto regularity_oracle(const Graph & g, const std::vector<int> & left, const std::vector<int> & right,
            double eps, double p) -> double
    {
        const double base = double(edges_between(g, left, right)) / (p * double(left.size()) * double(right.size()));
        double best = 0.0;
        auto ls = subsets(left), rs = subsets(right);
        for (auto & s : ls) {
            if (double(s.size()) < eps * double(left.size()) - 1e-9)
                continue;
            for (auto & t : rs) {
                if (double(t.size()) < eps * double(right.size()) - 1e-9)
                    continue;
                double dp = double(edges_between(g, s, t)) / (p * double(s.size()) * double(t.size()));
                best = std::max(best, std::fabs(dp - base));
            }
        }
        return best;
    }

    /// Injective part-respecting maps sending pattern edges to host edges,
    /// by enumerating the full product of the parts.
    inline auto partite_oracle(const Graph & pattern, const Graph & host, const std::vector<std::vector<int>> & parts)
        -> std::int64_t
    {
        const int m = pattern.vertex_count();
        std::vector<int> image(m, 0);
        std::int64_t count = 0;
        std::function<void (int)> rec = [&] (int i) {
            if (i == m) {
                for (int a = 0 ; a < m ; ++a)
                    for (int b = a + 1 ; b < m ; ++b) {
                        if (image[a] == image[b])
                            return;
                        if (pattern.adjacent(a, b) && ! host.adjacent(image[a], image[b]))
                            return;
                    }
                ++count;
                return;
            }
            for (int v : parts[i]) {
                image[i] = v;
                rec(i + 1);
            }
        };
        rec(0);
        return count;
    }

    /// k_reg in thousandths, straight from the two displayed families, with
    /// vertices compared by their position in `order`.
    inline auto k_reg_oracle(const Graph & h, const std::vector<int> & order) -> std::int64_t
    {
        const int m = h.vertex_count();
        std::vector<int> pos(m);
        for (int k = 0 ; k < m ; ++k)
            pos[order[k]] = k;
        auto below = [&] (int v, int u) {   // |N^{<u}(v)|
            int c = 0;
            for (int w = 0 ; w < m ; ++w)
                if (h.adjacent(v, w) && pos[w] < pos[u])
                    ++c;
            return c;
        };
        std::int64_t best = 0;
        for (int i = 0 ; i < m ; ++i)
            for (int j = 0 ; j < m ; ++j) {
                if (! h.adjacent(i, j) || pos[j] < pos[i])
                    continue;
                std::int64_t extra = 1000;
                for (int k = 0 ; k < m ; ++k) {
                    if (pos[k] <= pos[i] || ! h.adjacent(j, k))
                        continue;
                    extra = std::max<std::int64_t>(extra, 1500);
                    if (h.adjacent(i, k)) {
                        extra = std::max<std::int64_t>(extra, 2000);
                        if (below(k, i) <= below(j, i))
                            extra = std::max<std::int64_t>(extra, 3000);
                    }
                }
                best = std::max<std::int64_t>(best, 500 * below(i, i) + 500 * below(j, i) + extra);
                for (int jp = 0 ; jp < m ; ++jp) {
                    if (jp == i || pos[jp] < pos[i] || ! h.adjacent(j, jp))
                        continue;
                    std::int64_t tail = h.adjacent(i, jp) ? 2501 : 2001;
                    best = std::max<std::int64_t>(best, 500 * below(j, i) + 500 * below(jp, i) + tail);
                }
            }
        return best;
    }

    inline auto d_tilde_oracle(const Graph & h, const std::vector<int> & order) -> int
    {
        const int m = h.vertex_count();
        std::vector<int> pos(m);
        for (int k = 0 ; k < m ; ++k)
            pos[order[k]] = k;
        int best = 0;
        for (int v = 0 ; v < m ; ++v) {
            int minus = 0;
            std::vector<int> plus_scores;
            for (int w = 0 ; w < m ; ++w) {
                if (! h.adjacent(v, w))
                    continue;
                if (pos[w] < pos[v])
                    ++minus;
                else {
                    int c = 0;
                    for (int z = 0 ; z < m ; ++z)
                        if (h.adjacent(w, z) && pos[z] < pos[v])
                            ++c;
                    plus_scores.push_back(c);
                }
            }
            std::sort(plus_scores.rbegin(), plus_scores.rend());
            int inner = 0;
            for (std::size_t t = 0 ; t < plus_scores.size() ; ++t)
                inner = std::max(inner, int(t) + 1 + plus_scores[t]);
            best = std::max(best, minus + inner);
        }
        return best;
    }

    /// Every graph on n vertices, one per edge subset.
    inline auto all_graphs(int n) -> std::vector<Graph>
    {
        std::vector<Edge> slots;
        for (int u = 0 ; u < n ; ++u)
            for (int v = u + 1 ; v < n ; ++v)
                slots.emplace_back(u, v);
        std::vector<Graph> out;
        for (std::uint64_t m = 0 ; m < (std::uint64_t{1} << slots.size()) ; ++m) {
            std::vector<Edge> e;
            for (std::size_t k = 0 ; k < slots.size() ; ++k)
                if ((m >> k) & 1u)
                    e.push_back(slots[k]);
            out.emplace_back(n, e);
        }
        return out;
    }

    inline auto all_orders(int n) -> std::vector<std::vector<int>>
    {
        std::vector<int> o(n);
        for (int i = 0 ; i < n ; ++i)
            o[i] = i;
        std::vector<std::vector<int>> out;
        do
            out.push_back(o);
        while (std::next_permutation(o.begin(), o.end()));
        return out;
    }

    /// Degeneracy by checking every induced subgraph's minimum degree.
    inline auto degeneracy_oracle(const Graph & g) -> int
    {
        const int n = g.vertex_count();
        int best = 0;
        for (std::uint64_t m = 1 ; m < (std::uint64_t{1} << n) ; ++m) {
            int low = n;
            for (int v = 0 ; v < n ; ++v) {
                if (! ((m >> v) & 1u))
                    continue;
                int d = 0;
                for (int w = 0 ; w < n ; ++w)
                    if (((m >> w) & 1u) && g.adjacent(v, w))
                        ++d;
                low = std::min(low, d);
            }
            best = std::max(best, low);
        }
        return best;
    }
}
