#include <bijumble/regularity.hpp>
#include <bijumble/error.hpp>
#include <bijumble/pair_matrix.hpp>
#include <bijumble/parallel.hpp>
#include <bijumble/rng.hpp>
#include <bijumble/tolerance.hpp>

#include "subset_scan.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bijumble
{
    auto to_string(RegularityMethod m) -> std::string
    {
        return m == RegularityMethod::exact ? "exact" : "sampled";
    }

    auto to_string(FailureReason r) -> std::string
    {
        switch (r) {
            case FailureReason::none:                 return "none";
            case FailureReason::density_floor:        return "density floor";
            case FailureReason::irregularity_witness: return "irregularity witness";
        }
        return "?";
    }

    auto parse_regularity_method(const std::string & s) -> RegularityMethod
    {
        if (s == "exact")
            return RegularityMethod::exact;
        if (s == "sampled")
            return RegularityMethod::sampled;
        throw ParameterError("unknown regularity method \"" + s + "\"");
    }

    auto to_json(const RegularityVerdict & v) -> Json
    {
        Json j;
        j["method"] = to_string(v.method);
        j["regular"] = v.regular;
        j["reason"] = to_string(v.reason);
        j["epsilon"] = v.epsilon;
        j["p"] = v.p;
        j["base_p_density"] = v.base_p_density;
        j["deviation"] = v.deviation;
        if (v.density_floor)
            j["density_floor"] = *v.density_floor;
        if (v.worst_witness) {
            j["witness_left"] = v.worst_witness->left.members();
            j["witness_right"] = v.worst_witness->right.members();
            j["witness_p_density"] = v.worst_witness->p_density;
        }
        return j;
    }

    auto min_subset_size(double eps, int n) -> int
    {
        return std::max(1, int(std::ceil(eps * n - 1e-9)));
    }

    namespace
    {
        auto check_eps(double eps) -> void
        {
            if (! (eps > 0.0 && eps < 1.0))
                throw ParameterError("epsilon must lie in (0,1)");
        }

        auto check_pair(const BipartitePairView & pair, double p) -> void
        {
            if (! (p > 0.0))
                throw ParameterError("p must be positive");
            if (pair.left().empty() || pair.right().empty())
                throw ParameterError("both sides must be nonempty");
        }

        auto local_set(const std::vector<int> & ids, const std::vector<int> & local, int universe) -> VertexSet
        {
            std::vector<int> members;
            for (int i : local)
                members.push_back(ids[i]);
            return VertexSet(universe, std::move(members));
        }

        struct DeviationBest
        {
            double value = -1.0;
            std::uint64_t mask = 0;
            bool largest = true;
            double p_density = 0.0;
        };

        auto finish(RegularityVerdict v) -> RegularityVerdict
        {
            v.regular = ! Tolerance{}.exceeds(v.deviation, v.epsilon);
            v.reason = v.regular ? FailureReason::none : FailureReason::irregularity_witness;
            return v;
        }
    }

    auto exact_regularity(const BipartitePairView & pair, double eps, double p, int limit, unsigned workers)
        -> RegularityVerdict
    {
        check_eps(eps);
        check_pair(pair, p);

        PairMatrix matrix(pair);
        bool swapped = matrix.left_size() > matrix.right_size();
        if (swapped)
            matrix.transpose();
        const int cap = std::min(limit, 63);
        if (matrix.left_size() > cap)
            throw CapacityError("exact regularity enumerates a side of size " + std::to_string(matrix.left_size()),
                    std::size_t(cap));

        const int a = matrix.left_size(), b = matrix.right_size();
        const int k_min = min_subset_size(eps, a), t_min = min_subset_size(eps, b);
        const double base = double(matrix.edge_count()) / (p * a * b);

        // Top-t averages fall and bottom-t averages rise with t, so for each
        // U' only |W'| = t_min matters.
        auto results = detail::scan_subsets<DeviationBest>(matrix, workers,
                [&] (const detail::SubsetScan & scan, DeviationBest & best) {
            const int s = scan.size();
            if (s < k_min)
                return;
            const double scale = p * s * t_min;
            for (bool largest : {true, false}) {
                double dp = double(scan.extreme_sum(t_min, largest)) / scale;
                double dev = std::fabs(dp - base);
                if (dev > best.value)
                    best = DeviationBest{dev, scan.mask(), largest, dp};
            }
        });

        DeviationBest best;
        for (auto & r : results)
            if (r.value > best.value)
                best = r;

        RegularityVerdict v;
        v.method = RegularityMethod::exact;
        v.epsilon = eps;
        v.p = p;
        v.base_p_density = base;
        v.deviation = std::max(best.value, 0.0);

        std::vector<int> left_local;
        for (int i = 0 ; i < a ; ++i)
            if ((best.mask >> i) & 1u)
                left_local.push_back(i);
        auto right_local = detail::extreme_prefix(matrix, best.mask, t_min, best.largest);
        const int universe = pair.graph().vertex_count();
        RegularityWitness w{local_set(matrix.left_ids(), left_local, universe),
            local_set(matrix.right_ids(), right_local, universe), best.p_density};
        if (swapped)
            std::swap(w.left, w.right);
        v.worst_witness = std::move(w);
        return finish(std::move(v));
    }

    namespace
    {
        struct TrialBest
        {
            double value = -1.0;
            std::vector<int> left, right;
            double p_density = 0.0;
        };
    }

    auto sampled_regularity(const BipartitePairView & pair, double eps, double p, int trials, std::uint64_t seed,
            bool refine, unsigned workers, bool alternate) -> RegularityVerdict
    {
        check_eps(eps);
        check_pair(pair, p);
        if (trials < 1)
            throw ParameterError("trials must be at least 1");

        PairMatrix matrix(pair);
        const int a = matrix.left_size(), b = matrix.right_size();
        const int k = min_subset_size(eps, a), t = min_subset_size(eps, b);
        const double base = double(matrix.edge_count()) / (p * a * b);
        const double scale = p * k * t;

        auto results = run_chunks<TrialBest>(std::size_t(trials), workers, [&] (std::size_t trial) {
            Rng rng(derive_seed(seed, trial));
            auto left = rng.sample(a, k);
            auto right = rng.sample(b, t);

            auto degrees_into = [&] (const std::vector<int> & u) {
                std::vector<int> degree(b, 0);
                for (int i : u)
                    matrix.left_row(i).for_each([&] (std::size_t j) { ++degree[j]; });
                return degree;
            };
            /// The `count` indices with the largest (or smallest) values, sorted.
            auto extreme = [] (const std::vector<int> & value, int count, bool largest) {
                std::vector<int> order(value.size());
                std::iota(order.begin(), order.end(), 0);
                std::stable_sort(order.begin(), order.end(), [&] (int x, int y) {
                    return largest ? value[x] > value[y] : value[x] < value[y];
                });
                order.resize(count);
                std::sort(order.begin(), order.end());
                return order;
            };

            TrialBest best;
            auto consider = [&] (const std::vector<int> & u, const std::vector<int> & degree,
                    const std::vector<int> & w) {
                std::int64_t e = 0;
                for (int j : w)
                    e += degree[j];
                double dp = double(e) / scale;
                double dev = std::fabs(dp - base);
                if (dev > best.value) {
                    best.value = dev;
                    best.left = u;
                    best.right = w;
                    best.p_density = dp;
                }
            };
            auto degree = degrees_into(left);
            consider(left, degree, right);

            if (refine) {
                for (bool largest : {true, false}) {
                    auto w = extreme(degree, t, largest);
                    consider(left, degree, w);
                    if (! alternate)
                        continue;
                    // one alternating step: U' by degree into W', then W' again
                    std::vector<int> back(a, 0);
                    for (int i = 0 ; i < a ; ++i)
                        for (int j : w)
                            back[i] += matrix.adjacent(i, j);
                    auto u2 = extreme(back, k, largest);
                    auto degree2 = degrees_into(u2);
                    consider(u2, degree2, extreme(degree2, t, largest));
                }
            }
            return best;
        });

        std::size_t best = 0;
        for (std::size_t r = 1 ; r < results.size() ; ++r)
            if (results[r].value > results[best].value)
                best = r;

        const int universe = pair.graph().vertex_count();
        RegularityVerdict v;
        v.method = RegularityMethod::sampled;
        v.epsilon = eps;
        v.p = p;
        v.base_p_density = base;
        v.deviation = results[best].value;
        v.worst_witness = RegularityWitness{local_set(matrix.left_ids(), results[best].left, universe),
            local_set(matrix.right_ids(), results[best].right, universe), results[best].p_density};
        return finish(std::move(v));
    }

    auto check_regularity(const BipartitePairView & pair, double eps, double p, const RegularityOptions & options)
        -> RegularityVerdict
    {
        if (options.method == RegularityMethod::exact)
            return exact_regularity(pair, eps, p, options.limit, options.workers);
        return sampled_regularity(pair, eps, p, options.trials, options.seed, options.refine, options.workers,
                options.alternate);
    }

    auto check_eps_d_p(const BipartitePairView & pair, double eps, double d, double p,
            const RegularityOptions & options) -> RegularityVerdict
    {
        auto v = check_regularity(pair, eps, p, options);
        v.density_floor = d - eps;
        if (! Tolerance{}.geq(v.base_p_density, d - eps)) {
            v.regular = false;
            v.reason = FailureReason::density_floor;
        }
        return v;
    }

    auto check_eps_regular(const BipartitePairView & pair, double eps, const RegularityOptions & options)
        -> RegularityVerdict
    {
        double q = density(pair).to_double();
        if (q <= 0.0)
            throw ParameterError("(eps)-regularity needs a pair with at least one edge");
        return check_regularity(pair, eps, q, options);
    }

    auto slice_and_check(const BipartitePairView & pair, const VertexSet & left_slice, const VertexSet & right_slice,
            double eps, double gamma, double p, const RegularityOptions & options) -> SliceCheck
    {
        if (! (eps > 0.0 && eps < gamma && gamma <= 1.0))
            throw ParameterError("slicing needs 0 < eps < gamma <= 1");
        if (! left_slice.subset_of(pair.left()) || ! right_slice.subset_of(pair.right()))
            throw ParameterError("slice must lie inside the pair");
        if (left_slice.size() < min_subset_size(gamma, pair.left().size())
                || right_slice.size() < min_subset_size(gamma, pair.right().size()))
            throw ParameterError("slice sides must be at least gamma times the pair sides");

        BipartitePairView slice(pair.graph(), left_slice, right_slice);
        SliceCheck result;
        result.base_p_density = p_density(pair, p);
        result.slice_p_density = p_density(slice, p);

        const double slice_eps = eps / gamma;
        if (slice_eps >= 1.0) {
            // Only the slice itself is admissible.
            RegularityVerdict v;
            v.method = options.method;
            v.epsilon = slice_eps;
            v.p = p;
            v.base_p_density = result.slice_p_density;
            v.worst_witness = RegularityWitness{left_slice, right_slice, result.slice_p_density};
            result.slice = std::move(v);
        }
        else
            result.slice = check_regularity(slice, slice_eps, p, options);

        result.density_within = Tolerance{}.leq(std::fabs(result.slice_p_density - result.base_p_density), eps);
        result.holds = result.slice.regular && result.density_within;
        return result;
    }

    auto extend_and_check(const Graph & host, const BipartitePairView & base, const BipartitePairView & extended,
            double eps, double d, double p, double c, const RegularityOptions & options) -> ExtensionCheck
    {
        std::vector<std::string> failed;
        if (! (eps > 0.0 && eps < 0.1))
            failed.push_back("0 < eps < 1/10");
        if (! (c >= 0.0 && Tolerance{}.leq(c, eps * eps * eps / 10.0)))
            failed.push_back("c <= eps^3/10");
        if (! base.left().subset_of(extended.left()) || ! base.right().subset_of(extended.right()))
            failed.push_back("U subset of U', V subset of V'");
        const double growth = 1.0 + eps * eps * eps / 10.0;
        if (! Tolerance{}.leq(extended.left().size(), growth * base.left().size()))
            failed.push_back("|U'| <= (1 + eps^3/10)|U|");
        if (! Tolerance{}.leq(extended.right().size(), growth * base.right().size()))
            failed.push_back("|V'| <= (1 + eps^3/10)|V|");
        if (host.vertex_count() != base.graph().vertex_count())
            failed.push_back("host and G share a vertex universe");
        if (! failed.empty()) {
            std::string what = "extension hypotheses violated:";
            for (auto & f : failed)
                what += " [" + f + "]";
            throw ParameterError(what);
        }

        ExtensionCheck result;
        result.base = check_eps_d_p(base, eps, d, p, options);
        result.base_regular = result.base.regular;

        BipartitePairView host_pair(host, extended.left(), extended.right());
        if (std::min(extended.left().size(), extended.right().size()) <= options.limit)
            result.host_certificate = exact_jumble_gamma(host_pair, p, options.limit, options.workers);
        else
            result.host_certificate = spectral_jumble_bound(host_pair, p);
        result.required_gamma = c * p * std::sqrt(double(base.left().size()) * double(base.right().size()));
        result.host_bijumbled = Tolerance{}.leq(result.host_certificate.gamma, result.required_gamma);

        result.hypotheses_met = result.base_regular && result.host_bijumbled;
        result.extended = check_eps_d_p(extended, 2.0 * eps, d, p, options);
        result.conclusion_holds = result.extended.regular;
        return result;
    }
}
