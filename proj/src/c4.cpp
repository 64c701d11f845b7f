#include <bijumble/c4.hpp>
#include <bijumble/error.hpp>
#include <bijumble/pair_matrix.hpp>
#include <bijumble/parallel.hpp>
#include <bijumble/tolerance.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>

namespace bijumble
{
    auto to_string(PairClass c) -> std::string
    {
        switch (c) {
            case PairClass::typical: return "typical";
            case PairClass::bad:     return "bad";
            case PairClass::heavy:   return "heavy";
        }
        return "?";
    }

    namespace
    {
        constexpr std::size_t pair_chunks = 64;

        auto choose2(std::int64_t x) -> std::int64_t { return x * (x - 1) / 2; }

        struct ClassTally
        {
            std::int64_t count[3] = {0, 0, 0};
            std::int64_t c4[3] = {0, 0, 0};
            std::vector<PairClass> labels;
        };

        /// Visits every left pair (i<j) with its codegree, chunked by i.
        auto tally_pairs(const PairMatrix & m, unsigned workers, bool with_labels,
                const std::function<PairClass (int)> & classify) -> ClassTally
        {
            const int a = m.left_size();
            const std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(pair_chunks, std::size_t(a)));
            auto parts = run_chunks<ClassTally>(chunks, workers, [&] (std::size_t c) {
                ClassTally t;
                for (int i = int(chunk_bound(a, chunks, c)) ; i < int(chunk_bound(a, chunks, c + 1)) ; ++i)
                    for (int j = i + 1 ; j < a ; ++j) {
                        int codeg = int(m.left_row(i).intersect_count(m.left_row(j)));
                        auto cls = classify(codeg);
                        ++t.count[int(cls)];
                        t.c4[int(cls)] += choose2(codeg);
                        if (with_labels)
                            t.labels.push_back(cls);
                    }
                return t;
            });
            ClassTally total;
            for (auto & part : parts) {
                for (int k = 0 ; k < 3 ; ++k) {
                    total.count[k] += part.count[k];
                    total.c4[k] += part.c4[k];
                }
                total.labels.insert(total.labels.end(), part.labels.begin(), part.labels.end());
            }
            return total;
        }

        auto classifier(double q, double delta, int right_size) -> std::function<PairClass (int)>
        {
            const double heavy = 4.0 * q * q * right_size;
            const double bad = (1.0 + delta) * q * q * right_size;
            return [heavy, bad] (int codeg) {
                Tolerance tol;
                if (tol.geq(codeg, heavy))
                    return PairClass::heavy;
                if (tol.geq(codeg, bad))
                    return PairClass::bad;
                return PairClass::typical;
            };
        }

        auto check_class_params(double q, double delta) -> void
        {
            if (! (q > 0.0 && q <= 1.0))
                throw ParameterError("q must lie in (0,1]");
            if (! (delta > 0.0))
                throw ParameterError("delta must be positive");
        }

        auto now_ms() -> double
        {
            using namespace std::chrono;
            return duration<double, std::milli>(steady_clock::now().time_since_epoch()).count();
        }
    }

    auto count_c4(const BipartitePairView & pair, unsigned workers) -> std::int64_t
    {
        PairMatrix m(pair);
        auto t = tally_pairs(m, workers, false, [] (int) { return PairClass::typical; });
        return t.c4[0];
    }

    auto classify_pairs(const BipartitePairView & pair, double q, double delta, bool with_labels, unsigned workers)
        -> PairClassCensus
    {
        check_class_params(q, delta);
        PairMatrix m(pair);
        auto t = tally_pairs(m, workers, with_labels, classifier(q, delta, m.right_size()));
        PairClassCensus census;
        census.q = q;
        census.delta = delta;
        census.typical = t.count[int(PairClass::typical)];
        census.bad = t.count[int(PairClass::bad)];
        census.heavy = t.count[int(PairClass::heavy)];
        census.labels = std::move(t.labels);
        return census;
    }

    auto c4_partition_by_class(const BipartitePairView & pair, double q, double delta,
            std::optional<HeavyParameters> heavy, unsigned workers) -> C4Census
    {
        check_class_params(q, delta);
        PairMatrix m(pair);
        auto t = tally_pairs(m, workers, false, classifier(q, delta, m.right_size()));

        C4Census census;
        census.classes.q = q;
        census.classes.delta = delta;
        census.classes.typical = t.count[int(PairClass::typical)];
        census.classes.bad = t.count[int(PairClass::bad)];
        census.classes.heavy = t.count[int(PairClass::heavy)];
        census.through_typical = t.c4[int(PairClass::typical)];
        census.through_bad = t.c4[int(PairClass::bad)];
        census.through_heavy = t.c4[int(PairClass::heavy)];
        census.total = census.through_typical + census.through_bad + census.through_heavy;

        if (heavy) {
            const double a = m.left_size(), b = m.right_size();
            const double p = heavy->p;
            census.c_prime = heavy->c_prime;
            census.heavy_bound = 64.0 * heavy->c_prime * heavy->c_prime * std::pow(p, 4) * a * a * b * b;
            census.degree_hypothesis = true;
            for (int i = 0 ; i < m.left_size() ; ++i)
                if (Tolerance{}.exceeds(double(m.left_row(i).count()), 2.0 * p * b))
                    census.degree_hypothesis = false;
            census.heavy_within_bound = Tolerance{}.leq(double(census.through_heavy), *census.heavy_bound);
        }
        return census;
    }

    auto heavy_lemma_constant(double gamma, double p, std::int64_t left_size, std::int64_t right_size) -> double
    {
        if (! (p > 0.0 && p < 1.0))
            throw ParameterError("p must lie in (0,1)");
        return gamma * std::sqrt(std::log2(1.0 / p))
            / (std::pow(p, 1.5) * std::sqrt(double(left_size) * double(right_size)));
    }

    auto cs_defect_check(std::span<const double> values, double a, double delta, double mu) -> CsDefect
    {
        if (values.empty())
            throw ParameterError("cs_defect_check needs a nonempty list");
        if (! (mu >= 0.0 && mu < 1.0))
            throw ParameterError("mu must lie in [0,1)");
        if (! (delta >= 0.0))
            throw ParameterError("delta must be nonnegative");

        const double k = double(values.size());
        std::vector<double> sorted(values.begin(), values.end());
        std::sort(sorted.begin(), sorted.end());

        CsDefect r;
        double sum = 0.0;
        for (double x : values) {
            sum += x;
            r.lhs += x * x;
        }
        r.average = sum / k;
        r.block = std::min(int(values.size()), int(std::ceil(mu * k - 1e-9)));
        if (r.block > 0) {
            double top = 0.0, bottom = 0.0;
            for (int i = 0 ; i < r.block ; ++i) {
                bottom += sorted[std::size_t(i)];
                top += sorted[sorted.size() - 1 - std::size_t(i)];
            }
            r.top_average = top / r.block;
            r.bottom_average = bottom / r.block;
        }
        r.rhs = k * a * a * (1.0 + mu * delta * delta / (1.0 - mu));

        Tolerance tol;
        bool spread = r.block == 0
            || (tol.geq(r.top_average, (1.0 + delta) * a) && tol.leq(mu * (1.0 + delta), 1.0))
            || tol.leq(r.bottom_average, (1.0 - delta) * a);
        r.hypotheses_met = a >= 0.0 && tol.geq(r.average, a) && spread;
        r.holds = tol.geq(r.lhs, r.rhs);
        return r;
    }

    namespace
    {
        auto regularity_status(const RegularityVerdict & v) -> HypothesisStatus
        {
            if (! v.regular)
                return HypothesisStatus::fail;
            return v.method == RegularityMethod::exact ? HypothesisStatus::pass : HypothesisStatus::unverified;
        }

        auto host_certificate(const BipartitePairView & host_pair, double p, const RegularityOptions & options)
            -> JumbleCertificate
        {
            if (std::min(host_pair.left().size(), host_pair.right().size()) <= options.limit)
                return exact_jumble_gamma(host_pair, p, options.limit, options.workers);
            return spectral_jumble_bound(host_pair, p);
        }
    }

    auto c4_dense_irregular_audit(const BipartitePairView & pair, double eps, Mode mode, const C4Slack & slack,
            const RegularityOptions & regularity) -> AuditReport
    {
        const double start = now_ms();
        AuditReport r;
        r.lemma = "c4_dense_irregular";
        r.mode = mode;
        r.seed = regularity.seed;
        r.measured_name = "c4";
        r.bound_kind = BoundKind::lower;

        const double m = std::max(pair.left().size(), pair.right().size());
        const double n = std::min(pair.left().size(), pair.right().size());
        const double q = density(pair).to_double();
        const double baseline = std::pow(q, 4) * m * m * n * n / 4.0;
        const std::int64_t c4 = count_c4(pair, regularity.workers);

        r.parameters = Json{{"eps", eps}, {"m", m}, {"n", n}, {"q", q}};
        if (mode == Mode::relaxed)
            r.parameters["slack"] = Json{{"dense", slack.dense}, {"irregular", slack.irregular}};

        auto status = [&] (bool ok) {
            if (mode == Mode::relaxed)
                return HypothesisStatus::waived;
            return ok ? HypothesisStatus::pass : HypothesisStatus::fail;
        };
        const double size_floor = 2.0 * std::pow(eps, -9.0);
        const double density_floor = std::pow(eps, -10.0) / std::sqrt(n);
        r.add_hypothesis("eps_range", status(eps > 0.0 && eps <= 1e-3), "0 < eps <= 1e-3", Json{{"eps", eps}});
        r.add_hypothesis("side_sizes", status(n >= size_floor), "m >= n >= 2 eps^-9",
                Json{{"n", n}, {"required", size_floor}});
        r.add_hypothesis("density_floor", status(q >= density_floor), "q >= eps^-10 n^-1/2",
                Json{{"q", q}, {"required", density_floor}});

        r.measured = double(c4);
        const double dense_factor = mode == Mode::strict ? 1.0 - std::pow(eps, 8) : 1.0 - slack.dense;
        const double irregular_factor = mode == Mode::strict ? 1.0 + std::pow(eps, 13) : 1.0 + slack.irregular;
        r.bound_low = dense_factor * baseline;
        r.details = Json{{"c4", c4}, {"baseline", baseline}, {"ratio", baseline > 0 ? double(c4) / baseline : 0.0},
            {"dense_bound", dense_factor * baseline}, {"irregular_bound", irregular_factor * baseline},
            {"part", "dense"}};

        if (r.hypotheses_met() && q > 0.0) {
            auto verdict = check_eps_regular(pair, eps, regularity);
            r.details["regularity"] = to_json(verdict);
            if (! verdict.regular) {
                r.bound_low = irregular_factor * baseline;
                r.details["part"] = "irregular";
            }
        }
        r.decide();
        r.wall_clock_ms = now_ms() - start;
        return r;
    }

    auto c4_regular_bijumbled_audit(const Graph & host, const BipartitePairView & pair, double eps, double d,
            double p, double c, Mode mode, const RegularityOptions & regularity) -> AuditReport
    {
        const double start = now_ms();
        AuditReport r;
        r.lemma = "c4_regular_bijumbled";
        r.mode = mode;
        r.seed = regularity.seed;
        r.measured_name = "c4";
        r.bound_kind = BoundKind::window;

        const double a = pair.left().size(), b = pair.right().size();
        const bool d_measured = d < 0.0;
        if (d_measured)
            d = p_density(pair, p);

        BipartitePairView host_pair(host, pair.left(), pair.right());
        auto cert = host_certificate(host_pair, p, regularity);
        const double scale = p * p * std::sqrt(a * b);
        const bool c_measured = c < 0.0;
        if (c_measured)
            c = cert.gamma / scale;

        r.parameters = Json{{"eps", eps}, {"d", d}, {"p", p}, {"c", c}, {"d_measured", d_measured},
            {"c_measured", c_measured}};

        auto verdict = check_eps_d_p(pair, eps, d, p, regularity);
        r.add_hypothesis("regular_in_G", regularity_status(verdict), "(eps,d,p)-regular", to_json(verdict));

        const double required = c * scale;
        HypothesisStatus bij;
        if (Tolerance{}.leq(cert.gamma, required))
            bij = HypothesisStatus::pass;
        else
            bij = cert.method == CertificateMethod::exact ? HypothesisStatus::fail : HypothesisStatus::unverified;
        auto cert_json = to_json(cert);
        cert_json["required_gamma"] = required;
        r.add_hypothesis("bijumbled_in_host", bij, "(p, c p^2 sqrt(|U||V|))-bijumbled", cert_json);

        const std::int64_t c4 = count_c4(pair, regularity.workers);
        const double unit = std::pow(p, 4) * a * a * b * b / 4.0;
        const double spread = 100.0 * std::sqrt(c + eps);
        r.measured = double(c4);
        r.bound_low = (std::pow(d, 4) - spread) * unit;
        r.bound_high = (std::pow(d, 4) + spread) * unit;
        r.details = Json{{"c4", c4}, {"unit", unit}, {"ratio", unit > 0 ? double(c4) / unit : 0.0}};
        r.decide();
        r.wall_clock_ms = now_ms() - start;
        return r;
    }
}
