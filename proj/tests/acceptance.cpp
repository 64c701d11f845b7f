#include "support.hpp"

#include <bijumble/c4.hpp>
#include <bijumble/embed.hpp>
#include <bijumble/inherit.hpp>
#include <bijumble/parallel.hpp>
#include <bijumble/pattern.hpp>
#include <bijumble/pseudorandom.hpp>
#include <bijumble/regularity.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

using namespace bijumble;

namespace
{
    /// Pinned pilot calibration for the inheritance experiments.
    namespace pilot
    {
        constexpr int n = 1500;
        constexpr double one_p = 0.15, one_eps = 0.25, one_ceiling = 0.10;
        constexpr double two_p = 0.20, two_eps = 0.30, two_ceiling = 0.15;
        constexpr double d = 0.5;
        constexpr int trials = 200;
        constexpr int sizes[] = {500, 1000, 1500};
        constexpr std::uint64_t seeds[] = {1, 2, 3};

        // negative control, exact method
        constexpr int control_nx = 20, control_ny = 26, control_nz = 200;
        constexpr double control_p = 0.6, control_eps = 0.4;
        constexpr double plant_fraction = 0.5, plant_boost = 1.0;
    }

    struct Outcome
    {
        bool pass = true;
        std::string detail;
        std::string digest;   ///< everything the criterion computed, for the determinism rerun
    };

    using Criterion = std::function<Outcome (unsigned workers)>;

    auto seconds_since(std::chrono::steady_clock::time_point t) -> double
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
    }

    auto pair_of(const Graph & g, int a) -> BipartitePairView
    {
        return BipartitePairView(g, support::left_of(g, a), support::right_of(g, a));
    }

    auto bipartite_from_mask(int a, int b, std::uint64_t mask) -> Graph
    {
        std::vector<Edge> e;
        for (int i = 0 ; i < a ; ++i)
            for (int j = 0 ; j < b ; ++j)
                if ((mask >> (i * b + j)) & 1u)
                    e.emplace_back(i, a + j);
        return Graph(a + b, e);
    }

    auto sets_of(int universe, const std::vector<std::vector<int>> & parts) -> std::vector<VertexSet>
    {
        std::vector<VertexSet> out;
        for (auto & p : parts)
            out.emplace_back(universe, p);
        return out;
    }

    auto c1_book(unsigned workers) -> Outcome
    {
        Outcome o;
        auto book = triangle_book(10);
        auto one = optimize_order(book, Objective::one_sided, Strategy::heuristic, workers);
        auto two = optimize_order(book, Objective::two_sided, Strategy::heuristic, workers);
        auto cfz = cfz_two_sided_exponent(book);
        // ½ + ½Δ is a lower bound for the two-sided exponent under any order
        const std::int64_t floor_two = 500 + 500 * book.max_degree();
        o.pass = one.value.thousandths == 3000 && two.value.thousandths == 10500 && cfz.thousandths == 12000
            && two.value.thousandths == floor_two;
        o.detail = "one_sided " + to_string(one.value) + ", two_sided " + to_string(two.value) + ", prior work "
            + to_string(cfz);
        o.digest = o.detail;
        return o;
    }

    auto c2_triangle(unsigned) -> Outcome
    {
        Outcome o;
        auto k3 = complete_graph(3);
        std::ostringstream d;
        for (auto & order : support::all_orders(3)) {
            Pattern p(k3, order);
            auto one = k_reg(p), two = two_sided_exponent(p);
            o.pass = o.pass && one.thousandths == 3000 && two.thousandths == 3000;
            d << to_string(one) << "/" << to_string(two) << " ";
        }
        auto cfz = cfz_two_sided_exponent(k3);
        o.pass = o.pass && cfz.thousandths == 3000;
        d << "prior " << to_string(cfz);
        o.detail = "6 orders: " + d.str();
        o.digest = d.str();
        return o;
    }

    auto c3_invariants(unsigned) -> Outcome
    {
        Outcome o;
        std::int64_t checked = 0, lower = 0, upper = 0, upper_checked = 0;
        auto check_graph = [&] (const Graph & g, const std::vector<std::vector<int>> & orders) {
            const int delta = g.max_degree();
            const int degen = degeneracy(g).value;
            const bool has_edges = g.edge_count() > 0;
            for (auto & order : orders) {
                Pattern p(g, order);
                const int dt = d_tilde(p);
                ++checked;
                lower += dt < delta;
                // degeneracy orders: every vertex has at most degen earlier neighbours
                bool degeneracy_order = true;
                for (int k = 0 ; k < g.vertex_count() && degeneracy_order ; ++k) {
                    int back = 0;
                    for (int l = 0 ; l < k ; ++l)
                        back += g.adjacent(order[k], order[l]);
                    degeneracy_order = back <= degen;
                }
                if (degeneracy_order && has_edges) {
                    ++upper_checked;
                    upper += dt > delta + degen - 1;
                }
            }
        };
        for (int n = 1 ; n <= 6 ; ++n) {
            auto orders = support::all_orders(n);
            for (auto & g : support::all_graphs(n))
                check_graph(g, orders);
        }
        Rng rng(7007);
        for (int round = 0 ; round < 200 ; ++round) {
            auto g = support::random_graph(7, 0.2 + 0.6 * rng.uniform(), rng);
            check_graph(g, support::all_orders(7));
        }
        o.pass = lower == 0 && upper == 0;
        o.detail = std::to_string(checked) + " (graph, order) pairs; d~ < Delta: " + std::to_string(lower)
            + "; degeneracy orders " + std::to_string(upper_checked) + ", d~ > Delta + degen - 1: "
            + std::to_string(upper);
        o.digest = o.detail;
        return o;
    }

    auto c4_oracles(unsigned workers) -> Outcome
    {
        Outcome o;
        std::int64_t c4_cases = 0, c4_bad = 0, gamma_cases = 0, gamma_bad = 0, reg_cases = 0, reg_bad = 0;
        std::int64_t partite_cases = 0, partite_bad = 0;
        std::uint64_t sum = 0;

        auto check_pair = [&] (const Graph & g, int a, bool heavy) {
            auto pair = pair_of(g, a);
            auto left = support::left_of(g, a).members(), right = support::right_of(g, a).members();
            auto c4 = count_c4(pair, workers);
            ++c4_cases;
            c4_bad += c4 != support::c4_oracle(g, left, right);
            sum += std::uint64_t(c4);
            if (! heavy)
                return;
            auto gamma = exact_jumble_gamma(pair, 0.5, exact_side_limit, workers).gamma;
            ++gamma_cases;
            gamma_bad += std::fabs(gamma - support::gamma_oracle(g, left, right, 0.5)) > 1e-9;
            for (double eps : {0.3, 0.6}) {
                if (pair.edge_count() == 0)
                    continue;
                auto v = exact_regularity(pair, eps, 0.5, exact_side_limit, workers);
                ++reg_cases;
                reg_bad += std::fabs(v.deviation - support::regularity_oracle(g, left, right, eps, 0.5)) > 1e-9;
            }
        };

        // every bipartite graph with at most 16 cross slots, sides up to 4 (and 5 where it fits)
        for (int a = 1 ; a <= 5 ; ++a)
            for (int b = 1 ; b <= 5 ; ++b) {
                if (a * b > 16)
                    continue;
                for (std::uint64_t mask = 0 ; mask < (std::uint64_t{1} << (a * b)) ; ++mask)
                    check_pair(bipartite_from_mask(a, b, mask), a, a * b <= 12);
            }
        // seeded 5×5 corpus
        Rng rng(4004);
        for (int round = 0 ; round < 300 ; ++round) {
            auto g = support::random_bipartite(5, 5, rng.uniform(), rng);
            check_pair(g, 5, true);
        }

        // every pattern on at most 4 vertices against seeded hosts
        for (int m = 1 ; m <= 4 ; ++m)
            for (auto & h : support::all_graphs(m))
                for (int round = 0 ; round < 12 ; ++round) {
                    auto host = support::random_graph(10, 0.3 + 0.5 * rng.uniform(), rng);
                    std::vector<std::vector<int>> parts(m);
                    for (int i = 0 ; i < m ; ++i)
                        parts[i] = rng.sample(10, 1 + int(rng.below(4)));
                    bool valid = true;
                    for (auto [x, y] : h.edges())
                        for (int v : parts[x])
                            valid = valid && std::find(parts[y].begin(), parts[y].end(), v) == parts[y].end();
                    if (! valid)
                        continue;
                    PartiteInstance inst{Pattern::identity(h), host, sets_of(10, parts)};
                    auto c = count_partite_copies(inst, workers);
                    ++partite_cases;
                    partite_bad += c != support::partite_oracle(h, host, parts);
                    sum += std::uint64_t(c);
                }

        o.pass = c4_bad + gamma_bad + reg_bad + partite_bad == 0;
        std::ostringstream d;
        d << "c4 " << c4_bad << "/" << c4_cases << ", gamma " << gamma_bad << "/" << gamma_cases << ", regularity "
          << reg_bad << "/" << reg_cases << ", partite " << partite_bad << "/" << partite_cases << " mismatches";
        o.detail = d.str();
        o.digest = o.detail + " sum " + std::to_string(sum);
        return o;
    }

    auto c5_theorems(unsigned workers) -> Outcome
    {
        Outcome o;
        std::ostringstream digest;

        // defect Cauchy-Schwarz: 10^4 instances whose hypotheses hold
        Rng rng(5005);
        int cs_met = 0, cs_fail = 0;
        while (cs_met < 10000) {
            const int k = 1 + int(rng.below(30));
            std::vector<double> v(k);
            for (auto & x : v)
                x = 10.0 * rng.uniform();
            double mean = 0.0;
            for (double x : v)
                mean += x;
            mean /= k;
            auto r = cs_defect_check(v, mean * (0.5 + 0.5 * rng.uniform()), rng.uniform(), 0.9 * rng.uniform());
            if (! r.hypotheses_met)
                continue;
            ++cs_met;
            cs_fail += ! r.holds;
        }

        // optialpha sweep
        int opt_cases = 0, opt_fail = 0;
        for (int q = 1 ; q <= 3 ; ++q) {
            std::vector<int> b(q, 4);
            while (true) {
                for (int k = 4 ; k <= 6 ; ++k) {
                    auto r = optialpha_check(std::ldexp(1.0, -k), b, workers);
                    ++opt_cases;
                    opt_fail += ! r.holds;
                    digest << r.sum << ";";
                }
                int i = q - 1;
                while (i >= 0 && b[i] == 0)
                    --i;
                if (i < 0)
                    break;
                --b[i];
                for (int j = i + 1 ; j < q ; ++j)
                    b[j] = b[i];
            }
        }

        // suffix bound on seeded instances satisfying p < 1/10 and the W-set floors
        int suffix_cases = 0, suffix_fail = 0;
        for (std::uint64_t seed = 1 ; suffix_cases < 100 ; ++seed) {
            Rng r(seed);
            auto g = support::random_graph(300, 0.05, r);
            PartiteInstance tri{Pattern::identity(complete_graph(3)), g,
                sets_of(300, {VertexSet::range(300, 0, 100).members(), VertexSet::range(300, 100, 200).members(),
                        VertexSet::range(300, 200, 300).members()})};
            std::vector<VertexSet> ws{VertexSet(300, {})};
            for (int y = 1 ; y < 3 ; ++y) {
                auto pick = r.sample(100, 20 + int(r.below(81)));
                for (int & v : pick)
                    v += 100 * y;
                ws.emplace_back(300, pick);
            }
            auto rep = suffix_bound_audit(SuffixInstance{tri, 1, ws}, 0.05, 0.5, 0.0, Mode::strict, 20.0, seed,
                    workers);
            bool gated = true;
            for (auto & h : rep.hypotheses)
                if (h.name != "beta_bound")
                    gated = gated && h.status == HypothesisStatus::pass;
            if (! gated)
                continue;
            ++suffix_cases;
            suffix_fail += ! rep.bound_holds();
            digest << canonical_text(rep).size() << ":" << rep.measured << ";";
        }

        o.pass = cs_fail + opt_fail + suffix_fail == 0;
        o.detail = "defect CS " + std::to_string(cs_fail) + "/" + std::to_string(cs_met) + ", optialpha "
            + std::to_string(opt_fail) + "/" + std::to_string(opt_cases) + ", suffix bound "
            + std::to_string(suffix_fail) + "/" + std::to_string(suffix_cases) + " failures";
        o.digest = o.detail + digest.str();
        return o;
    }

    auto c6_c4_concentration(unsigned workers) -> Outcome
    {
        Outcome o;
        constexpr double q = 0.2, n = 400, window = 0.1;
        const double expected = std::pow(q, 4) * std::pow(n, 4) / 4.0;
        std::ostringstream d;
        for (std::uint64_t seed = 1 ; seed <= 5 ; ++seed) {
            Rng rng(seed);
            auto g = support::random_bipartite(400, 400, q, rng);
            auto c4 = count_c4(pair_of(g, 400), workers);
            double ratio = double(c4) / expected;
            o.pass = o.pass && std::fabs(ratio - 1.0) <= window;
            d << (seed > 1 ? ", " : "") << std::fixed;
            d.precision(4);
            d << ratio;
        }
        o.detail = "C4 / (q^4 n^4 / 4) = " + d.str();
        o.digest = d.str();
        return o;
    }

    auto c7_counting(unsigned workers) -> Outcome
    {
        Outcome o;
        constexpr int n = 300;
        constexpr double d = 0.5, p = 0.2, window = 0.1;
        std::ostringstream detail, digest;
        for (std::uint64_t seed = 1 ; seed <= 5 ; ++seed) {
            auto system = sparsify(gen_tripartite(n, n, n, p, seed), d, derive_seed(seed, 1));
            PartiteInstance tri{Pattern::identity(complete_graph(3)), system.sub, {system.x, system.y, system.z}};
            auto pred = predicted_count(tri, p);
            auto rep = counting_window_audit(tri, p, window * pred.density_product, WindowSide::two_sided, {},
                    Mode::relaxed, seed, workers);
            const double ratio = rep.measured / pred.prediction;
            o.pass = o.pass && std::fabs(ratio - 1.0) <= window && rep.verdict == Verdict::pass;
            detail << (seed > 1 ? ", " : "");
            detail.precision(4);
            detail << std::fixed << ratio;
            digest << canonical_text(rep);
        }
        o.detail = "copies / prediction = " + detail.str();
        o.digest = digest.str();
        return o;
    }

    auto plan_for(InheritanceSide side, int n, std::uint64_t seed, unsigned workers, bool certificates)
        -> ExperimentPlan
    {
        ExperimentPlan plan;
        plan.side = side;
        plan.nx = plan.ny = plan.nz = n;
        const bool one = side == InheritanceSide::one_sided;
        plan.p = one ? pilot::one_p : pilot::two_p;
        plan.d = pilot::d;
        plan.eps_prime = one ? pilot::one_eps : pilot::two_eps;
        plan.ceiling = one ? pilot::one_ceiling : pilot::two_ceiling;
        plan.seed = seed;
        plan.mode = Mode::relaxed;
        plan.regularity.method = RegularityMethod::sampled;
        plan.regularity.trials = pilot::trials;
        plan.regularity.refine = ! one;
        plan.regularity.workers = workers;
        plan.certificates = certificates;
        return plan;
    }

    auto c8_inheritance(unsigned workers) -> Outcome
    {
        Outcome o;
        std::ostringstream detail, digest;
        bool ceilings = true, trend = true, control = true;

        for (auto side : {InheritanceSide::one_sided, InheritanceSide::two_sided}) {
            detail << to_string(side) << " [";
            for (std::uint64_t seed : pilot::seeds) {
                double last = 2.0;
                detail << (seed > 1 ? "; " : "") << "seed " << seed << ":";
                for (int n : pilot::sizes) {
                    auto rep = run_plan(plan_for(side, n, seed, workers, n == pilot::n)).front();
                    digest << canonical_text(rep);
                    detail << " " << rep.measured;
                    trend = trend && rep.measured <= last;
                    last = rep.measured;
                    if (n == pilot::n)
                        ceilings = ceilings && rep.verdict == Verdict::pass && rep.bound_holds();
                }
            }
            detail << "] ";
        }

        detail << "control [";
        for (std::uint64_t seed : pilot::seeds) {
            ExperimentPlan plan;
            plan.side = InheritanceSide::one_sided;
            plan.nx = pilot::control_nx;
            plan.ny = pilot::control_ny;
            plan.nz = pilot::control_nz;
            plan.p = pilot::control_p;
            plan.d = pilot::d;
            plan.eps_prime = pilot::control_eps;
            plan.seed = seed;
            plan.regularity.method = RegularityMethod::exact;
            plan.regularity.workers = workers;
            plan.certificates = false;
            auto base = run_plan(plan).front();
            plan.plant_fraction = pilot::plant_fraction;
            plan.plant_boost = pilot::plant_boost;
            auto planted = run_plan(plan).front();
            digest << canonical_text(base) << canonical_text(planted);
            control = control && planted.measured > base.measured;
            detail << (seed > 1 ? "; " : "") << base.measured << " -> " << planted.measured;
        }
        detail << "]";

        o.pass = ceilings && trend && control;
        o.detail = std::string(ceilings ? "" : "CEILING ") + (trend ? "" : "TREND ") + (control ? "" : "CONTROL ")
            + detail.str();
        o.digest = digest.str();
        return o;
    }

    auto c9_honesty(unsigned workers) -> Outcome
    {
        Outcome o;
        int cases = 0, honest = 0;
        std::ostringstream digest;
        auto note = [&] (const AuditReport & r) {
            ++cases;
            honest += r.verdict == Verdict::hypotheses_not_met;
            digest << canonical_text(r);
        };
        for (int n : {40, 80, 160})
            for (std::uint64_t seed : {1u, 2u}) {
                RegularityOptions ro;
                ro.method = RegularityMethod::sampled;
                ro.trials = 30;
                ro.seed = seed;
                ro.workers = workers;
                auto system = sparsify(gen_tripartite(n, n, n, 0.3, seed), 0.5, derive_seed(seed, 9));
                BipartitePairView yz(system.sub, system.y, system.z);

                note(c4_dense_irregular_audit(yz, 1e-3, Mode::strict, {}, ro));
                note(c4_dense_irregular_audit(yz, 0.1, Mode::strict, {}, ro));
                note(c4_regular_bijumbled_audit(system.host, yz, 0.1, 0.5, 0.3, -1.0, Mode::strict, ro));
                BadPairParameters bp;
                bp.p = 0.3;
                bp.d = 0.5;
                note(bad_pair_bounds_audit(system, bp, BadPairDirection::many, Mode::strict, ro));
                note(bad_pair_bounds_audit(system, bp, BadPairDirection::few, Mode::strict, ro));

                ExperimentOptions eo;
                eo.regularity = ro;
                eo.base_eps = 0.2;
                auto one = one_sided_experiment(system, 0.25, 0.5, 0.3, eo);
                note(inheritance_report(one, Mode::strict, -1.0, seed));
                auto two = two_sided_experiment(system, 0.3, 0.5, 0.3, eo);
                note(inheritance_report(two, Mode::strict, -1.0, seed));
            }
        o.pass = honest == cases;
        o.detail = std::to_string(honest) + "/" + std::to_string(cases) + " strict audits report hypotheses-not-met";
        o.digest = digest.str();
        return o;
    }

    struct Entry
    {
        int id;
        const char * name;
        double limit_seconds;
        Criterion run;
    };
}

int main()
{
    const std::vector<Entry> entries{
        {1, "ten-triangle book exponents", 5, c1_book},
        {2, "triangle exponents", 1, c2_triangle},
        {3, "d~ invariants", 120, c3_invariants},
        {4, "oracle equivalences", 300, c4_oracles},
        {5, "theorem suites", 300, c5_theorems},
        {6, "C4 concentration", 30, c6_c4_concentration},
        {7, "triangle counting window", 60, c7_counting},
        {8, "inheritance experiments", 600, c8_inheritance},
        {9, "strict hypothesis honesty", 10, c9_honesty},
    };
    constexpr unsigned first_workers = 1, second_workers = 3;

    bool all = true;
    std::vector<std::string> digests;
    for (auto & e : entries) {
        set_default_workers(first_workers);
        auto start = std::chrono::steady_clock::now();
        auto out = e.run(first_workers);
        const double took = seconds_since(start);
        const bool pass = out.pass && took <= e.limit_seconds;
        all = all && pass;
        digests.push_back(out.digest);
        std::printf("criterion %2d %-28s %s  (%.1f s, limit %.0f s)  %s\n", e.id, e.name, pass ? "PASS" : "FAIL",
                took, e.limit_seconds, out.detail.c_str());
        std::fflush(stdout);
    }

    int mismatched = 0;
    std::string which;
    for (std::size_t i = 0 ; i < entries.size() ; ++i) {
        set_default_workers(second_workers);
        auto again = entries[i].run(second_workers);
        if (again.digest != digests[i]) {
            ++mismatched;
            which += " " + std::to_string(entries[i].id);
        }
    }
    const bool deterministic = mismatched == 0;
    all = all && deterministic;
    std::printf("criterion 10 %-28s %s  rerun with %u workers: %d of %zu criteria differ%s\n", "determinism",
            deterministic ? "PASS" : "FAIL", second_workers, mismatched, entries.size(), which.c_str());
    return all ? 0 : 1;
}
