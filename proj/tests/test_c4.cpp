#include "support.hpp"

#include <bijumble/c4.hpp>
#include <bijumble/error.hpp>

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace bijumble;

namespace
{
    auto pair_of(const Graph & g, int a) -> BipartitePairView
    {
        return BipartitePairView(g, support::left_of(g, a), support::right_of(g, a));
    }

    auto choose2(std::int64_t n) -> std::int64_t { return n * (n - 1) / 2; }

    auto sampled(std::uint64_t seed) -> RegularityOptions
    {
        RegularityOptions o;
        o.method = RegularityMethod::sampled;
        o.trials = 100;
        o.seed = seed;
        return o;
    }
}

TEST_CASE("C4 counts of complete, matching and cycle pairs")
{
    for (int m = 1 ; m <= 6 ; ++m)
        for (int n = 1 ; n <= 6 ; ++n) {
            auto k = complete_bipartite(m, n);
            CHECK(count_c4(pair_of(k, m)) == choose2(m) * choose2(n));
        }
    auto mt = perfect_matching(5);
    CHECK(count_c4(pair_of(mt, 5)) == 0);

    // an 8-cycle alternating between the sides has girth 8
    std::vector<Edge> e;
    for (int i = 0 ; i < 4 ; ++i) {
        e.emplace_back(i, 4 + i);
        e.emplace_back((i + 1) % 4, 4 + i);
    }
    Graph c8(8, e);
    CHECK(count_c4(pair_of(c8, 4)) == support::c4_oracle(c8, {0, 1, 2, 3}, {4, 5, 6, 7}));
    CHECK(count_c4(pair_of(c8, 4)) == 0);
}

TEST_CASE("pair classification thresholds")
{
    auto mt = perfect_matching(3);
    auto m = classify_pairs(pair_of(mt, 3), 1.0 / 3.0, 0.5);
    CHECK(m.typical == 3);
    CHECK(m.bad + m.heavy == 0);

    auto k = complete_bipartite(3, 3);
    auto h = classify_pairs(pair_of(k, 3), 1.0 / 3.0, 0.5, true);
    CHECK(h.heavy == 3);
    CHECK(h.labels == std::vector<PairClass>(3, PairClass::heavy));
    CHECK(classify_pairs(pair_of(k, 3), 1.0, 0.5).typical == 3);

    // codegree 3 sits between (1+δ)q²|V| = 1.5 and 4q²|V| = 3.0 ... at q² = 1/3 · 1/√2
    auto b = classify_pairs(pair_of(k, 3), std::sqrt(1.0 / 3.0) * 0.9, 0.1);
    CHECK(b.bad == 3);
}

TEST_CASE("C4 partition by class")
{
    auto mt = perfect_matching(4);
    auto z = c4_partition_by_class(pair_of(mt, 4), 0.25, 0.5);
    CHECK(z.total == 0);
    CHECK(z.through_heavy + z.through_bad + z.through_typical == 0);

    auto k = complete_bipartite(3, 3);
    auto c = c4_partition_by_class(pair_of(k, 3), 1.0 / 3.0, 0.5);
    CHECK(c.total == 9);
    CHECK(c.through_heavy == 9);
    CHECK_FALSE(c.heavy_bound);
}

TEST_CASE("heavy-pair bound on a seeded G(300,300,0.1)")
{
    Rng rng(300);
    auto g = support::random_bipartite(300, 300, 0.1, rng);
    auto pair = pair_of(g, 300);
    auto cert = spectral_jumble_bound(pair, 0.1);
    const double c_prime = heavy_lemma_constant(cert.gamma, 0.1, 300, 300);
    auto census = c4_partition_by_class(pair, 0.1, 0.5, HeavyParameters{0.1, c_prime});
    REQUIRE(census.heavy_bound);
    CHECK(census.degree_hypothesis);
    CHECK(census.heavy_within_bound);
    CHECK(double(census.through_heavy) <= *census.heavy_bound);
    CHECK(census.total == count_c4(pair));
}

TEST_CASE("defect Cauchy-Schwarz examples")
{
    std::vector<double> v{1, 1, 3, 3};
    auto r = cs_defect_check(v, 2.0, 0.5, 0.5);
    CHECK(r.lhs == doctest::Approx(20.0));
    CHECK(r.rhs == doctest::Approx(20.0));
    CHECK(r.holds);
    CHECK(r.hypotheses_met);

    std::vector<double> flat(7, 2.5);
    auto f = cs_defect_check(flat, 2.5, 0.0, 0.0);
    CHECK(f.lhs == doctest::Approx(7 * 6.25));
    CHECK(f.rhs == doctest::Approx(7 * 6.25));
    CHECK(f.holds);

    CHECK_THROWS_AS(cs_defect_check(std::vector<double>{}, 1.0, 0.1, 0.1), ParameterError);
    CHECK_THROWS_AS(cs_defect_check(v, 1.0, 0.1, 1.0), ParameterError);
    CHECK_THROWS_AS(cs_defect_check(v, 1.0, -0.1, 0.5), ParameterError);
}

TEST_CASE("dense/irregular audit: strict hypotheses are out of reach")
{
    auto k = complete_bipartite(20, 20);
    auto r = c4_dense_irregular_audit(pair_of(k, 20), 1e-3, Mode::strict, {}, {});
    CHECK(r.verdict == Verdict::hypotheses_not_met);
    CHECK(r.lemma == "c4_dense_irregular");
}

TEST_CASE("dense/irregular audit in relaxed mode")
{
    Rng rng(500);
    auto g = support::random_bipartite(500, 500, 0.3, rng);
    auto r = c4_dense_irregular_audit(pair_of(g, 500), 0.3, Mode::relaxed, C4Slack{0.1, 0.0}, sampled(1));
    CHECK(r.verdict == Verdict::pass);
    const double q = r.parameters["q"].get<double>();
    CHECK(r.measured >= 0.9 * std::pow(q, 4) * std::pow(500.0, 4) / 4.0);

    // a 32×32 complete block inside a 64×64 pair
    std::vector<Edge> e;
    for (int u = 0 ; u < 32 ; ++u)
        for (int v = 0 ; v < 32 ; ++v)
            e.emplace_back(u, 64 + v);
    Graph block(128, e);
    auto b = c4_dense_irregular_audit(pair_of(block, 64), 0.25, Mode::relaxed, C4Slack{0.1, 0.0}, sampled(2));
    const double qb = 0.25;
    CHECK(b.measured > std::pow(qb, 4) * std::pow(64.0, 4) / 4.0);
    CHECK(b.details["part"] == "irregular");
    CHECK(b.verdict == Verdict::pass);
}

TEST_CASE("regular/bijumbled window audit")
{
    Graph host = complete_bipartite(30, 30);
    auto r = c4_regular_bijumbled_audit(host, pair_of(host, 30), 0.01, 1.0, 1.0, -1.0, Mode::strict,
            sampled(3));
    CHECK(r.parameters["c"].get<double>() == doctest::Approx(0.0));
    CHECK(r.bound_low <= r.measured);
    CHECK(r.measured <= r.bound_high);
    CHECK(r.measured == double(choose2(30) * choose2(30)));

    Graph none(20, {});
    Graph full = complete_bipartite(10, 10);
    auto z = c4_regular_bijumbled_audit(full, pair_of(none, 10), 0.1, 0.0, 0.5, -1.0, Mode::relaxed, {});
    CHECK(z.measured == 0.0);
    CHECK(z.bound_low <= 0.0);
    CHECK(z.bound_high >= 0.0);
    CHECK(z.verdict == Verdict::pass);

    Rng rng(400);
    auto g = support::random_bipartite(400, 400, 0.2, rng);
    Graph big = complete_bipartite(400, 400);
    auto w = c4_regular_bijumbled_audit(big, pair_of(g, 400), 0.3, -1.0, 0.2, -1.0, Mode::relaxed, sampled(4));
    CHECK(w.verdict == Verdict::pass);
}

TEST_CASE("property: C4 count equals the 4-tuple oracle")
{
    Rng rng(61);
    for (int round = 0 ; round < 300 ; ++round) {
        const int a = 1 + int(rng.below(8)), b = 1 + int(rng.below(8));
        auto g = support::random_bipartite(a, b, rng.uniform(), rng);
        CHECK(count_c4(pair_of(g, a)) == support::c4_oracle(g, support::left_of(g, a).members(),
                support::right_of(g, a).members()));
    }
}

TEST_CASE("property: class partition is exhaustive and monotone in its thresholds")
{
    Rng rng(67);
    for (int round = 0 ; round < 200 ; ++round) {
        const int a = 2 + int(rng.below(30)), b = 1 + int(rng.below(30));
        auto g = support::random_bipartite(a, b, rng.uniform(), rng);
        auto pair = pair_of(g, a);
        const double q = 0.05 + 0.95 * rng.uniform(), delta = 0.01 + rng.uniform();
        auto c = classify_pairs(pair, q, delta, true);
        CHECK(c.typical + c.bad + c.heavy == choose2(a));
        CHECK(std::int64_t(c.labels.size()) == choose2(a));

        auto census = c4_partition_by_class(pair, q, delta);
        CHECK(census.through_heavy + census.through_bad + census.through_typical == count_c4(pair));
        CHECK(census.total == count_c4(pair));

        CHECK(classify_pairs(pair, q, delta * 1.5).typical >= c.typical);
        CHECK(classify_pairs(pair, std::min(1.0, q * 1.3), delta).typical >= c.typical);

        // labels agree with direct codegree thresholds
        auto left = support::left_of(g, a).members();
        auto right = support::right_of(g, a).members();
        std::size_t k = 0;
        for (int i = 0 ; i < a ; ++i)
            for (int j = i + 1 ; j < a ; ++j, ++k) {
                int codeg = 0;
                for (int v : right)
                    codeg += g.adjacent(left[i], v) && g.adjacent(left[j], v);
                PairClass expect = PairClass::typical;
                if (codeg >= 4 * q * q * b - 1e-9)
                    expect = PairClass::heavy;
                else if (codeg >= (1 + delta) * q * q * b - 1e-9)
                    expect = PairClass::bad;
                CHECK(c.labels[k] == expect);
            }
    }
}

TEST_CASE("property: defect Cauchy-Schwarz holds whenever its hypotheses do")
{
    Rng rng(71);
    int met = 0;
    for (int round = 0 ; round < 10000 ; ++round) {
        const int k = 1 + int(rng.below(20));
        std::vector<double> v(k);
        for (auto & x : v)
            x = 10.0 * rng.uniform();
        double mean = 0.0;
        for (double x : v)
            mean += x;
        mean /= k;
        const double a = mean * rng.uniform();
        const double mu = 0.99 * rng.uniform();
        const double delta = rng.uniform();
        auto r = cs_defect_check(v, a, delta, mu);
        if (r.hypotheses_met) {
            ++met;
            CHECK(r.holds);
        }
    }
    CHECK(met >= 1000);
}
