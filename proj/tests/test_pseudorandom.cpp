#include "support.hpp"

#include <bijumble/error.hpp>
#include <bijumble/pseudorandom.hpp>

#include <Eigen/Dense>
#include <doctest.h>

using namespace bijumble;

namespace
{
    /// σ_max of the centred biadjacency array via a full SVD.
    auto svd_oracle(const Graph & g, const std::vector<int> & left, const std::vector<int> & right, double p)
        -> double
    {
        Eigen::MatrixXd m(left.size(), right.size());
        for (std::size_t i = 0 ; i < left.size() ; ++i)
            for (std::size_t j = 0 ; j < right.size() ; ++j)
                m(i, j) = (g.adjacent(left[i], right[j]) ? 1.0 : 0.0) - p;
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
        return svd.singularValues()(0);
    }

    auto pair_of(const Graph & g, int a) -> BipartitePairView
    {
        return BipartitePairView(g, support::left_of(g, a), support::right_of(g, a));
    }
}

TEST_CASE("exact gamma on the matching, the complete pair and the empty pair")
{
    auto m = perfect_matching(3);
    auto c = exact_jumble_gamma(pair_of(m, 3), 1.0 / 3.0);
    CHECK(c.gamma == doctest::Approx(2.0 / 3.0));
    CHECK(c.sound_upper);
    REQUIRE(c.witness);
    CHECK(c.witness->first.size() == 1);
    CHECK(c.witness->second.size() == 1);
    CHECK(m.adjacent(c.witness->first[0], c.witness->second[0]));

    auto k33 = complete_bipartite(3, 3);
    CHECK(exact_jumble_gamma(pair_of(k33, 3), 1.0).gamma == doctest::Approx(0.0));

    Graph none(6, {});
    auto e = exact_jumble_gamma(pair_of(none, 3), 0.5);
    CHECK(e.gamma == doctest::Approx(1.5));
    CHECK(e.witness->first.size() == 3);
    CHECK(e.witness->second.size() == 3);
}

TEST_CASE("exact gamma refuses sides above the limit")
{
    Graph none(50, {});
    BipartitePairView big(none, VertexSet::range(50, 0, 25), VertexSet::range(50, 25, 50));
    CHECK_THROWS_AS(exact_jumble_gamma(big, 0.5), CapacityError);
}

TEST_CASE("spectral bound on small arrays")
{
    auto k = complete_bipartite(3, 5);
    CHECK(spectral_jumble_bound(pair_of(k, 3), 1.0).gamma == doctest::Approx(0.0).epsilon(1e-9));

    auto m = perfect_matching(3);
    auto c = spectral_jumble_bound(pair_of(m, 3), 1.0 / 3.0);
    CHECK(c.gamma == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(c.method == CertificateMethod::spectral);
    CHECK(c.sound_upper);

    Graph none(6, {});
    CHECK(spectral_jumble_bound(pair_of(none, 3), 0.5).gamma == doctest::Approx(1.5).epsilon(1e-6));
}

TEST_CASE("spectral bound reports non-convergence")
{
    Rng rng(2);
    auto g = support::random_bipartite(30, 30, 0.5, rng);
    SpectralOptions tight{1e-15, 2, 1};
    CHECK_THROWS_AS(spectral_jumble_bound(pair_of(g, 30), 0.5, tight), ConvergenceError);
}

TEST_CASE("search finds violations only where they exist")
{
    auto k = complete_bipartite(4, 4);
    CHECK_FALSE(search_jumble_violation(pair_of(k, 4), 1.0, 0.1, 20, 1));

    auto m = perfect_matching(3);
    auto v = search_jumble_violation(pair_of(m, 3), 1.0 / 3.0, 0.5, 50, 1);
    REQUIRE(v);
    CHECK(v->gamma >= 2.0 / 3.0 - 1e-12);

    Rng rng(4);
    auto g = support::random_bipartite(6, 7, 0.4, rng);
    CHECK_FALSE(search_jumble_violation(pair_of(g, 6), 0.4, std::sqrt(42.0), 30, 3));
}

TEST_CASE("degree outliers and the minimum size")
{
    auto k = complete_bipartite(5, 6);
    auto none = degree_outlier_census(pair_of(k, 5), 1.0, 0.1, 1.0, 0.3);
    CHECK(none.outliers == 0);
    CHECK_THROWS_AS(degree_outlier_census(pair_of(k, 5), 1.0, 0.1, 1.0, 0.0), ParameterError);

    CHECK(min_size_bound(0.25, 0.25, 1.0) == doctest::Approx(8.0));
    CHECK(min_size_bound(0.25, 0.25, 1.5) == doctest::Approx(32.0));
    CHECK(min_size_bound(0.01, 0.1, 2.0) == doctest::Approx(1250000.0));
    CHECK_THROWS_AS(min_size_bound(0.3, 0.25, 1.0), ParameterError);
    CHECK_THROWS_AS(min_size_bound(0.25, 0.3, 1.0), ParameterError);
    CHECK_THROWS_AS(min_size_bound(0.25, 0.25, 0.5), ParameterError);
}

TEST_CASE("degree outliers on a seeded random pair stay within the bound")
{
    Rng rng(200);
    auto g = support::random_bipartite(200, 200, 0.2, rng);
    auto pair = pair_of(g, 200);
    auto cert = spectral_jumble_bound(pair, 0.2);
    double c_prime = bijumble_constant(cert.gamma, 0.2, 1.0, 200, 200);
    auto census = degree_outlier_census(pair, 0.2, c_prime, 1.0, 0.25);
    int recount = 0;
    for (int u = 0 ; u < 200 ; ++u) {
        int d = degree_into(g, u, support::right_of(g, 200));
        if (std::fabs(d - 0.2 * 200) > 0.25 * 0.2 * 200)
            ++recount;
    }
    CHECK(census.outliers == recount);
    CHECK(census.within_bound);
}

TEST_CASE("property: exact gamma equals the all-pairs oracle and sits between search and spectral")
{
    Rng rng(21);
    for (int round = 0 ; round < 150 ; ++round) {
        const int a = 1 + int(rng.below(5)), b = 1 + int(rng.below(5));
        const double q = rng.uniform();
        const double p = 0.05 + 0.9 * rng.uniform();
        auto g = support::random_bipartite(a, b, q, rng);
        auto pair = pair_of(g, a);
        auto left = support::left_of(g, a).members(), right = support::right_of(g, a).members();

        auto exact = exact_jumble_gamma(pair, p);
        CHECK(exact.gamma == doctest::Approx(support::gamma_oracle(g, left, right, p)).epsilon(1e-12));
        REQUIRE(exact.witness);
        auto & [wu, wv] = *exact.witness;
        double attained = normalized_discrepancy(
                support::edges_between(g, wu.members(), wv.members()), wu.size(), wv.size(), p);
        CHECK(attained == doctest::Approx(exact.gamma).epsilon(1e-12));

        auto found = search_jumble_best(pair, p, 8, rng.next());
        auto spectral = spectral_jumble_bound(pair, p);
        CHECK(found.gamma <= exact.gamma + 1e-9);
        CHECK(exact.gamma <= spectral.gamma + 1e-6);
        CHECK(spectral.gamma == doctest::Approx(svd_oracle(g, left, right, p)).epsilon(1e-6));
    }
}

TEST_CASE("property: spectral bound ignores vertex relabelling")
{
    Rng rng(8);
    for (int round = 0 ; round < 20 ; ++round) {
        const int a = 3 + int(rng.below(10)), b = 3 + int(rng.below(10));
        auto g = support::random_bipartite(a, b, 0.4, rng);
        std::vector<int> perm(a + b);
        for (int i = 0 ; i < a + b ; ++i)
            perm[i] = i;
        for (int i = a - 1 ; i > 0 ; --i)
            std::swap(perm[i], perm[rng.below(i + 1)]);
        for (int i = b - 1 ; i > 0 ; --i)
            std::swap(perm[a + i], perm[a + rng.below(i + 1)]);
        std::vector<Edge> moved;
        for (auto [u, v] : g.edges())
            moved.emplace_back(perm[u], perm[v]);
        Graph h(a + b, moved);
        double x = spectral_jumble_bound(pair_of(g, a), 0.4).gamma;
        double y = spectral_jumble_bound(pair_of(h, a), 0.4).gamma;
        CHECK(x == doctest::Approx(y).epsilon(1e-7));
    }
}

TEST_CASE("property: exact-certified pairs respect the degree-outlier bound")
{
    Rng rng(31);
    for (int round = 0 ; round < 100 ; ++round) {
        const int a = 2 + int(rng.below(7)), b = 2 + int(rng.below(7));
        const double p = 0.1 + 0.8 * rng.uniform();
        auto g = support::random_bipartite(a, b, p, rng);
        auto pair = pair_of(g, a);
        const double k = 1.0 + rng.below(3) * 0.5;
        auto exact = exact_jumble_gamma(pair, p);
        double c_prime = bijumble_constant(exact.gamma, p, k, a, b);
        const double gamma_dev = 0.1 + rng.uniform();
        auto census = degree_outlier_census(pair, p, c_prime, k, gamma_dev);
        CHECK(census.within_bound);
    }
}

TEST_CASE("certificates serialise their method and witness")
{
    auto m = perfect_matching(3);
    auto j = to_json(exact_jumble_gamma(pair_of(m, 3), 1.0 / 3.0));
    CHECK(j["method"] == "exact");
    CHECK(j["witness_left"].size() == 1);
}
