#include <bijumble/pseudorandom.hpp>
#include <bijumble/error.hpp>
#include <bijumble/pair_matrix.hpp>
#include <bijumble/parallel.hpp>
#include <bijumble/rng.hpp>
#include <bijumble/tolerance.hpp>

#include "subset_scan.hpp"

#include <algorithm>
#include <cmath>

namespace bijumble
{
    auto to_string(CertificateMethod m) -> std::string
    {
        switch (m) {
            case CertificateMethod::spectral: return "spectral";
            case CertificateMethod::exact:    return "exact";
            case CertificateMethod::search:   return "search";
        }
        return "?";
    }

    auto to_json(const JumbleCertificate & c) -> Json
    {
        Json j;
        j["method"] = to_string(c.method);
        j["p"] = c.p;
        j["gamma"] = c.gamma;
        j["sound_upper"] = c.sound_upper;
        if (c.witness) {
            j["witness_left"] = c.witness->first.members();
            j["witness_right"] = c.witness->second.members();
            j["discrepancy"] = c.discrepancy;
        }
        else
            j["witness_left"] = nullptr;
        if (c.method == CertificateMethod::spectral)
            j["iterations"] = c.iterations;
        return j;
    }

    auto normalized_discrepancy(std::int64_t edges, std::int64_t a, std::int64_t b, double p) -> double
    {
        double size = double(a) * double(b);
        return std::fabs(double(edges) - p * size) / std::sqrt(size);
    }

    namespace
    {
        auto check_p(double p) -> void
        {
            if (! (p > 0.0 && p <= 1.0))
                throw ParameterError("p must lie in (0,1]");
        }

        auto check_sides(const BipartitePairView & pair) -> void
        {
            if (pair.left().empty() || pair.right().empty())
                throw ParameterError("both sides must be nonempty");
        }

        auto local_to_set(const std::vector<int> & ids, const std::vector<int> & local, int universe) -> VertexSet
        {
            std::vector<int> members;
            members.reserve(local.size());
            for (int i : local)
                members.push_back(ids[i]);
            return VertexSet(universe, std::move(members));
        }

        auto mask_to_local(std::uint64_t mask) -> std::vector<int>
        {
            std::vector<int> result;
            for (int i = 0 ; mask ; ++i, mask >>= 1)
                if (mask & 1u)
                    result.push_back(i);
            return result;
        }

        struct GammaBest
        {
            double value = -1.0;
            std::uint64_t mask = 0;
            int t = 0;
            bool largest = true;
            std::int64_t sum = 0;
        };
    }

    auto exact_jumble_gamma(const BipartitePairView & pair, double p, int limit, unsigned workers) -> JumbleCertificate
    {
        check_p(p);
        check_sides(pair);

        PairMatrix matrix(pair);
        bool swapped = matrix.left_size() > matrix.right_size();
        if (swapped)
            matrix.transpose();
        if (matrix.left_size() > std::min(limit, 63))
            throw CapacityError("exact bijumbledness enumerates a side of size " + std::to_string(matrix.left_size()),
                    std::size_t(std::min(limit, 63)));


        // For fixed U' and a run of equal degrees, |a + bt|/sqrt(t) peaks at
        // an end of the run, so only run endpoints are evaluated.
        auto results = detail::scan_subsets<GammaBest>(matrix, workers, [&] (const detail::SubsetScan & scan, GammaBest & best) {
            const int s = scan.size();
            const auto & hist = scan.histogram();
            for (bool largest : {true, false}) {
                int taken = 0;
                std::int64_t sum = 0;
                for (int step = 0 ; step <= s ; ++step) {
                    int k = largest ? s - step : step;
                    int count = hist[k];
                    if (count == 0)
                        continue;
                    for (int t : {taken + 1, taken + count}) {
                        std::int64_t edges = sum + std::int64_t(k) * (t - taken);
                        double v = normalized_discrepancy(edges, s, t, p);
                        if (v > best.value)
                            best = GammaBest{v, scan.mask(), t, largest, edges};
                    }
                    taken += count;
                    sum += std::int64_t(k) * count;
                }
            }
        });

        GammaBest best;
        for (auto & r : results)
            if (r.value > best.value)
                best = r;

        auto left_local = mask_to_local(best.mask);
        auto right_local = detail::extreme_prefix(matrix, best.mask, best.t, best.largest);

        const int universe = pair.graph().vertex_count();
        auto u_set = local_to_set(matrix.left_ids(), left_local, universe);
        auto v_set = local_to_set(matrix.right_ids(), right_local, universe);
        if (swapped)
            std::swap(u_set, v_set);

        JumbleCertificate cert;
        cert.method = CertificateMethod::exact;
        cert.p = p;
        cert.gamma = best.value;
        cert.discrepancy = double(best.sum) - p * double(left_local.size()) * double(right_local.size());
        cert.witness = std::make_pair(std::move(u_set), std::move(v_set));
        cert.sound_upper = true;
        return cert;
    }

    auto spectral_jumble_bound(const BipartitePairView & pair, double p, const SpectralOptions & options)
        -> JumbleCertificate
    {
        check_p(p);
        check_sides(pair);
        if (! (options.tolerance > 0.0) || options.max_iterations < 1)
            throw ParameterError("spectral tolerance and iteration cap must be positive");

        PairMatrix matrix(pair);
        const int a = matrix.left_size(), b = matrix.right_size();

        // M = A - pJ; M v and M^T w through the bit rows.
        auto apply = [&] (const std::vector<double> & v, std::vector<double> & out) {
            double total = 0.0;
            for (double x : v)
                total += x;
            for (int i = 0 ; i < a ; ++i) {
                double s = 0.0;
                matrix.left_row(i).for_each([&] (std::size_t j) { s += v[j]; });
                out[i] = s - p * total;
            }
        };
        auto apply_t = [&] (const std::vector<double> & w, std::vector<double> & out) {
            double total = 0.0;
            for (double x : w)
                total += x;
            for (int j = 0 ; j < b ; ++j) {
                double s = 0.0;
                matrix.right_row(j).for_each([&] (std::size_t i) { s += w[i]; });
                out[j] = s - p * total;
            }
        };
        auto norm = [] (const std::vector<double> & v) {
            double s = 0.0;
            for (double x : v)
                s += x * x;
            return std::sqrt(s);
        };

        Rng rng(options.seed);
        std::vector<double> v(b), w(a);
        for (auto & x : v)
            x = 2.0 * rng.uniform() - 1.0;
        double nv = norm(v);
        for (auto & x : v)
            x /= nv;

        JumbleCertificate cert;
        cert.method = CertificateMethod::spectral;
        cert.p = p;
        cert.sound_upper = true;

        double estimate = 0.0;
        for (int it = 1 ; it <= options.max_iterations ; ++it) {
            apply(v, w);
            double current = norm(w);
            cert.iterations = std::uint64_t(it);
            if (current <= 1e-300) {
                cert.gamma = 0.0;
                return cert;
            }
            if (it > 1 && std::fabs(current - estimate) <= options.tolerance * current) {
                cert.gamma = current;
                return cert;
            }
            estimate = current;
            apply_t(w, v);
            double n = norm(v);
            if (n <= 1e-300) {
                cert.gamma = 0.0;
                return cert;
            }
            for (auto & x : v)
                x /= n;
        }
        throw ConvergenceError("power iteration did not converge within " + std::to_string(options.max_iterations)
                + " iterations", estimate);
    }

    namespace
    {
        struct ClimbResult
        {
            double value = -1.0;
            std::vector<int> left, right;   // local indices
            std::int64_t edges = 0;
        };

        auto climb(const PairMatrix & m, double p, std::uint64_t seed) -> ClimbResult
        {
            const int a = m.left_size(), b = m.right_size();
            Rng rng(seed);
            int s0 = 1 + int(rng.below(std::uint64_t(a)));
            int t0 = 1 + int(rng.below(std::uint64_t(b)));
            std::vector<char> in_left(a, 0), in_right(b, 0);
            for (int i : rng.sample(a, s0))
                in_left[i] = 1;
            for (int j : rng.sample(b, t0))
                in_right[j] = 1;

            // deg_left[i] = |N(i) ∩ V'|, deg_right[j] = |N(j) ∩ U'|.
            std::vector<int> deg_left(a, 0), deg_right(b, 0);
            std::int64_t edges = 0;
            for (int i = 0 ; i < a ; ++i)
                if (in_left[i])
                    m.left_row(i).for_each([&] (std::size_t j) { ++deg_right[j]; });
            for (int j = 0 ; j < b ; ++j)
                if (in_right[j]) {
                    m.right_row(j).for_each([&] (std::size_t i) { ++deg_left[i]; });
                    edges += deg_right[j];
                }
            std::int64_t s = s0, t = t0;
            double value = normalized_discrepancy(edges, s, t, p);

            const int max_steps = 4 * (a + b) + 16;
            for (int step = 0 ; step < max_steps ; ++step) {
                double best = value;
                int move = -1;
                for (int i = 0 ; i < a ; ++i) {
                    std::int64_t ns = in_left[i] ? s - 1 : s + 1;
                    if (ns == 0)
                        continue;
                    std::int64_t ne = in_left[i] ? edges - deg_left[i] : edges + deg_left[i];
                    double v = normalized_discrepancy(ne, ns, t, p);
                    if (v > best * (1.0 + 1e-12)) {
                        best = v;
                        move = i;
                    }
                }
                for (int j = 0 ; j < b ; ++j) {
                    std::int64_t nt = in_right[j] ? t - 1 : t + 1;
                    if (nt == 0)
                        continue;
                    std::int64_t ne = in_right[j] ? edges - deg_right[j] : edges + deg_right[j];
                    double v = normalized_discrepancy(ne, s, nt, p);
                    if (v > best * (1.0 + 1e-12)) {
                        best = v;
                        move = a + j;
                    }
                }
                if (move < 0)
                    break;
                if (move < a) {
                    int i = move;
                    int delta = in_left[i] ? -1 : 1;
                    edges += delta * deg_left[i];
                    s += delta;
                    in_left[i] ^= 1;
                    m.left_row(i).for_each([&] (std::size_t j) { deg_right[j] += delta; });
                }
                else {
                    int j = move - a;
                    int delta = in_right[j] ? -1 : 1;
                    edges += delta * deg_right[j];
                    t += delta;
                    in_right[j] ^= 1;
                    m.right_row(j).for_each([&] (std::size_t i) { deg_left[i] += delta; });
                }
                value = best;
            }

            ClimbResult result;
            result.value = normalized_discrepancy(edges, s, t, p);
            result.edges = edges;
            for (int i = 0 ; i < a ; ++i)
                if (in_left[i])
                    result.left.push_back(i);
            for (int j = 0 ; j < b ; ++j)
                if (in_right[j])
                    result.right.push_back(j);
            return result;
        }
    }

    auto search_jumble_best(const BipartitePairView & pair, double p, int trials, std::uint64_t seed, unsigned workers)
        -> JumbleCertificate
    {
        check_p(p);
        check_sides(pair);
        if (trials < 1)
            throw ParameterError("trials must be at least 1");

        PairMatrix matrix(pair);
        auto results = run_chunks<ClimbResult>(std::size_t(trials), workers, [&] (std::size_t r) {
            return climb(matrix, p, derive_seed(seed, r));
        });

        std::size_t best = 0;
        for (std::size_t r = 1 ; r < results.size() ; ++r)
            if (results[r].value > results[best].value)
                best = r;

        const int universe = pair.graph().vertex_count();
        const auto & r = results[best];
        JumbleCertificate cert;
        cert.method = CertificateMethod::search;
        cert.p = p;
        cert.gamma = r.value;
        cert.discrepancy = double(r.edges) - p * double(r.left.size()) * double(r.right.size());
        cert.witness = std::make_pair(local_to_set(matrix.left_ids(), r.left, universe),
                local_to_set(matrix.right_ids(), r.right, universe));
        cert.sound_upper = false;
        return cert;
    }

    auto search_jumble_violation(const BipartitePairView & pair, double p, double gamma, int trials,
            std::uint64_t seed, unsigned workers) -> std::optional<JumbleCertificate>
    {
        auto cert = search_jumble_best(pair, p, trials, seed, workers);
        if (Tolerance{}.exceeds(cert.gamma, gamma))
            return cert;
        return std::nullopt;
    }

    auto degree_outlier_census(const BipartitePairView & pair, double p, double c_prime, double k, double gamma_dev)
        -> DegreeOutliers
    {
        check_p(p);
        if (! (gamma_dev > 0.0))
            throw ParameterError("gamma_dev must be positive");
        if (pair.right().empty())
            throw ParameterError("right side must be nonempty");

        const double expected = p * pair.right().size();
        Tolerance tol;
        DegreeOutliers result;
        for (int u : pair.left())
            if (tol.exceeds(std::fabs(degree_into(pair.graph(), u, pair.right()) - expected), gamma_dev * expected))
                ++result.outliers;
        result.bound = 2.0 * c_prime * c_prime * std::pow(p, 2.0 * k - 2.0) / (gamma_dev * gamma_dev)
            * pair.left().size();
        result.within_bound = tol.leq(result.outliers, result.bound);
        return result;
    }

    auto min_size_bound(double c_prime, double p, double k) -> double
    {
        if (! (c_prime > 0.0 && c_prime <= 0.25))
            throw ParameterError("c' must lie in (0, 1/4]");
        if (! (p > 0.0 && p <= 0.25))
            throw ParameterError("p must lie in (0, 1/4]");
        if (! (k >= 1.0))
            throw ParameterError("k must be at least 1");
        return 0.125 / (c_prime * c_prime) * std::pow(p, 1.0 - 2.0 * k);
    }

    auto bijumble_constant(double gamma, double p, double k, std::int64_t left_size, std::int64_t right_size) -> double
    {
        check_p(p);
        if (left_size <= 0 || right_size <= 0)
            throw ParameterError("both sides must be nonempty");
        return gamma / (std::pow(p, k) * std::sqrt(double(left_size) * double(right_size)));
    }
}
