#include <bijumble/c4.hpp>
#include <bijumble/error.hpp>
#include <bijumble/inherit.hpp>
#include <bijumble/parallel.hpp>
#include <bijumble/rng.hpp>
#include <bijumble/tolerance.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

namespace bijumble
{
    namespace
    {
        auto now_ms() -> double
        {
            using namespace std::chrono;
            return duration<double, std::milli>(steady_clock::now().time_since_epoch()).count();
        }

        auto fmt(double v) -> std::string
        {
            std::ostringstream out;
            out.precision(6);
            out << v;
            return out.str();
        }

        auto add_bipartite(std::vector<Edge> & edges, const VertexSet & a, const VertexSet & b, double p,
                std::uint64_t seed) -> void
        {
            Rng rng(seed);
            for (int u : a)
                for (int v : b)
                    if (rng.bernoulli(p))
                        edges.emplace_back(std::min(u, v), std::max(u, v));
        }

        auto neighbours_in(const Graph & graph, int v, const VertexSet & target) -> VertexSet
        {
            BitRow row = graph.row(v);
            row &= target.mask();
            return VertexSet(graph.vertex_count(), row.members());
        }
    }

    auto gen_tripartite(int nx, int ny, int nz, double p, std::uint64_t seed) -> TripartiteSystem
    {
        if (nx < 1 || ny < 1 || nz < 1)
            throw ParameterError("part sizes must be at least 1");
        if (! (p > 0.0 && p <= 1.0))
            throw ParameterError("p must lie in (0,1]");
        const int n = nx + ny + nz;
        TripartiteSystem s;
        s.x = VertexSet::range(n, 0, nx);
        s.y = VertexSet::range(n, nx, nx + ny);
        s.z = VertexSet::range(n, nx + ny, n);
        std::vector<Edge> edges;
        add_bipartite(edges, s.x, s.y, p, derive_seed(seed, 0));
        add_bipartite(edges, s.x, s.z, p, derive_seed(seed, 1));
        add_bipartite(edges, s.y, s.z, p, derive_seed(seed, 2));
        s.host = Graph(n, edges);
        s.sub = s.host;
        return s;
    }

    auto sparsify(const TripartiteSystem & system, double d, std::uint64_t seed) -> TripartiteSystem
    {
        if (! (d > 0.0 && d <= 1.0))
            throw ParameterError("d must lie in (0,1]");
        Rng rng(seed);
        std::vector<Edge> kept;
        for (auto & e : system.host.edges())
            if (rng.bernoulli(d))
                kept.push_back(e);
        TripartiteSystem s = system;
        s.sub = Graph(system.host.vertex_count(), kept);
        return s;
    }

    auto plant_irregular_block(const TripartiteSystem & system, double fraction, double boost, std::uint64_t seed,
            VertexSet * block_y, VertexSet * block_z) -> TripartiteSystem
    {
        if (! (fraction > 0.0 && fraction <= 1.0))
            throw ParameterError("block fraction must lie in (0,1]");
        if (! (boost >= 0.0 && boost <= 1.0))
            throw ParameterError("boost must lie in [0,1]");
        const int n = system.host.vertex_count();
        Rng rng(seed);
        auto pick = [&] (const VertexSet & part) {
            int k = std::min(part.size(), int(std::ceil(fraction * part.size() - 1e-9)));
            std::vector<int> members;
            for (int i : rng.sample(part.size(), k))
                members.push_back(part[i]);
            return VertexSet(n, std::move(members));
        };
        VertexSet by = pick(system.y), bz = pick(system.z);

        auto edges = system.sub.edges();
        for (int u : by)
            for (int w : bz)
                if (system.host.adjacent(u, w) && ! system.sub.adjacent(u, w) && rng.bernoulli(boost))
                    edges.emplace_back(std::min(u, w), std::max(u, w));
        TripartiteSystem s = system;
        s.sub = Graph(n, edges);
        if (block_y)
            *block_y = by;
        if (block_z)
            *block_z = bz;
        return s;
    }

    auto to_string(InheritanceSide s) -> std::string
    {
        return s == InheritanceSide::one_sided ? "one_sided" : "two_sided";
    }

    auto parse_inheritance_side(const std::string & s) -> InheritanceSide
    {
        if (s == "one_sided" || s == "one-sided")
            return InheritanceSide::one_sided;
        if (s == "two_sided" || s == "two-sided")
            return InheritanceSide::two_sided;
        throw ParameterError("unknown inheritance side '" + s + "'");
    }

    namespace
    {
        struct Scaling
        {
            const char * pair;
            double k;
            bool log_factor;
            const char * label;
        };

        auto log_term(double p) -> double { return p < 1.0 ? std::log2(1.0 / p) : 0.0; }

        auto certify(const BipartitePairView & pair, double p, const SpectralOptions & options,
                std::vector<std::string> & warnings, const std::string & name) -> JumbleCertificate
        {
            try {
                return spectral_jumble_bound(pair, p, options);
            }
            catch (const ConvergenceError & e) {
                JumbleCertificate c;
                c.method = CertificateMethod::spectral;
                c.p = p;
                c.gamma = e.last_estimate();
                c.sound_upper = false;
                c.iterations = std::uint64_t(options.max_iterations);
                warnings.push_back(name + ": spectral bound did not converge; estimate " + fmt(c.gamma)
                        + " is not a certified upper bound");
                return c;
            }
        }

        auto gather_evidence(const TripartiteSystem & system, double p, const std::vector<Scaling> & scalings,
                const ExperimentOptions & options, InheritanceOutcome & out) -> void
        {
            auto part = [&] (char c) -> const VertexSet & {
                return c == 'X' ? system.x : c == 'Y' ? system.y : system.z;
            };
            for (auto & s : scalings) {
                const VertexSet & a = part(s.pair[0]);
                const VertexSet & b = part(s.pair[1]);
                if (options.certificates) {
                    BijumbleEvidence ev;
                    ev.pair = s.pair;
                    ev.scaling = s.label;
                    ev.certificate = certify(BipartitePairView(system.host, a, b), p, options.spectral,
                            out.warnings, s.pair);
                    ev.c = bijumble_constant(ev.certificate.gamma, p, s.k, a.size(), b.size())
                        * (s.log_factor ? std::sqrt(log_term(p)) : 1.0);
                    if (ev.c > 0.25)
                        out.warnings.push_back(std::string(s.pair) + ": measured constant " + fmt(ev.c)
                                + " exceeds 1/4");
                    out.bijumbledness.push_back(std::move(ev));
                }
                // Below the least size of any (p, c p^k)-bijumbled pair with
                // c = 1/4 the hypothesis cannot hold for any admissible c.
                if (p <= 0.25) {
                    double c_eff = s.log_factor ? 0.25 / std::sqrt(log_term(p)) : 0.25;
                    double floor = min_size_bound(c_eff, p, s.k);
                    int smallest = std::min(a.size(), b.size());
                    if (smallest < floor)
                        out.warnings.push_back(std::string(s.pair) + ": part size " + std::to_string(smallest)
                                + " is below " + fmt(floor) + ", the least size of a (p, c " + s.label
                                + ")-bijumbled pair for c <= 1/4; the hypothesis is vacuous here");
                }
            }
        }

        auto reason_text(FailureReason r) -> std::string
        {
            switch (r) {
                case FailureReason::none:                 return "";
                case FailureReason::density_floor:        return "density floor";
                case FailureReason::irregularity_witness: return "irregularity witness";
            }
            return "";
        }

        auto experiment(const TripartiteSystem & system, double eps_prime, double d, double p,
                const ExperimentOptions & options, InheritanceSide side) -> InheritanceOutcome
        {
            const double start = now_ms();
            system.validate();
            if (! (eps_prime > 0.0 && eps_prime < 1.0))
                throw ParameterError("eps' must lie in (0,1)");
            if (! (d > 0.0) || ! (p > 0.0 && p <= 1.0))
                throw ParameterError("need d > 0 and p in (0,1]");

            InheritanceOutcome out;
            out.side = side;
            out.eps_prime = eps_prime;
            out.d = d;
            out.p = p;
            out.threshold = eps_prime * system.x.size();

            if (options.base_eps > 0.0)
                out.base = check_eps_d_p(BipartitePairView(system.sub, system.y, system.z), options.base_eps, d, p,
                        options.regularity);

            if (side == InheritanceSide::one_sided)
                gather_evidence(system, p, {{"XY", 1.5, false, "p^{3/2}"}, {"YZ", 2.0, true, "p^2 (log2 1/p)^{-1/2}"}},
                        options, out);
            else
                gather_evidence(system, p, {{"XY", 2.0, false, "p^2"}, {"XZ", 3.0, false, "p^3"},
                        {"YZ", 2.5, true, "p^{5/2} (log2 1/p)^{-1/2}"}}, options, out);

            const int nx = system.x.size();
            const std::size_t chunks = std::size_t(std::min(nx, 64));
            auto parts = run_chunks<std::vector<VertexVerdict>>(chunks, options.regularity.workers,
                    [&] (std::size_t c) {
                std::vector<VertexVerdict> verdicts;
                RegularityOptions inner = options.regularity;
                inner.workers = 1;
                for (std::size_t i = chunk_bound(nx, chunks, c) ; i < chunk_bound(nx, chunks, c + 1) ; ++i) {
                    VertexVerdict v;
                    v.x = system.x[int(i)];
                    VertexSet ny = neighbours_in(system.host, v.x, system.y);
                    VertexSet right = side == InheritanceSide::one_sided ? system.z
                        : neighbours_in(system.host, v.x, system.z);
                    v.degree_y = ny.size();
                    v.degree_z = side == InheritanceSide::one_sided ? degree_into(system.host, v.x, system.z)
                        : right.size();
                    if (ny.empty() || right.empty()) {
                        v.exceptional = true;
                        v.reason = "empty neighborhood";
                    }
                    else {
                        inner.seed = derive_seed(options.regularity.seed, std::uint64_t(v.x));
                        auto verdict = check_eps_d_p(BipartitePairView(system.sub, ny, right), eps_prime, d, p,
                                inner);
                        v.exceptional = ! verdict.regular;
                        v.reason = reason_text(verdict.reason);
                        v.deviation = verdict.deviation;
                        v.p_density = verdict.base_p_density;
                    }
                    verdicts.push_back(std::move(v));
                }
                return verdicts;
            });

            for (auto & chunk : parts)
                for (auto & v : chunk) {
                    out.exceptional += v.exceptional ? 1 : 0;
                    out.vertices.push_back(std::move(v));
                }
            out.fraction = nx > 0 ? double(out.exceptional) / nx : 0.0;
            if (options.regularity.method == RegularityMethod::sampled)
                out.warnings.push_back("sampled method: exceptional counts are lower bounds");
            out.wall_clock_ms = now_ms() - start;
            return out;
        }
    }

    auto one_sided_experiment(const TripartiteSystem & system, double eps_prime, double d, double p,
            const ExperimentOptions & options) -> InheritanceOutcome
    {
        return experiment(system, eps_prime, d, p, options, InheritanceSide::one_sided);
    }

    auto two_sided_experiment(const TripartiteSystem & system, double eps_prime, double d, double p,
            const ExperimentOptions & options) -> InheritanceOutcome
    {
        return experiment(system, eps_prime, d, p, options, InheritanceSide::two_sided);
    }

    auto to_json(const InheritanceOutcome & o, bool per_vertex) -> Json
    {
        Json j;
        j["side"] = to_string(o.side);
        j["eps_prime"] = o.eps_prime;
        j["d"] = o.d;
        j["p"] = o.p;
        j["vertices"] = o.vertices.size();
        j["exceptional"] = o.exceptional;
        j["fraction"] = o.fraction;
        j["threshold"] = o.threshold;
        j["base"] = o.base ? to_json(*o.base) : Json();
        Json ev = Json::array();
        for (auto & b : o.bijumbledness)
            ev.push_back({{"pair", b.pair}, {"scaling", b.scaling}, {"c", b.c},
                    {"certificate", to_json(b.certificate)}});
        j["bijumbledness"] = ev;
        j["warnings"] = o.warnings;
        if (per_vertex) {
            Json vs = Json::array();
            for (auto & v : o.vertices)
                vs.push_back({{"x", v.x}, {"degree_y", v.degree_y}, {"degree_z", v.degree_z},
                        {"exceptional", v.exceptional}, {"reason", v.reason}, {"deviation", v.deviation},
                        {"p_density", v.p_density}});
            j["per_vertex"] = vs;
        }
        return j;
    }

    auto inheritance_report(const InheritanceOutcome & o, Mode mode, double ceiling, std::uint64_t seed)
        -> AuditReport
    {
        AuditReport r;
        r.lemma = o.side == InheritanceSide::one_sided ? "one_sided_inheritance" : "two_sided_inheritance";
        r.mode = mode;
        r.seed = seed;
        r.measured_name = "exceptional_fraction";
        r.measured = o.fraction;
        r.bound_kind = BoundKind::upper;
        r.bound_low = 0.0;
        r.bound_high = ceiling < 0.0 ? o.eps_prime : ceiling;
        r.parameters = {{"eps_prime", o.eps_prime}, {"d", o.d}, {"p", o.p},
            {"vertices", o.vertices.size()}, {"ceiling_source", ceiling < 0.0 ? "eps_prime" : "calibrated"}};

        for (auto & b : o.bijumbledness) {
            HypothesisStatus status = ! b.certificate.sound_upper ? HypothesisStatus::unverified
                : mode == Mode::strict ? HypothesisStatus::unverified : HypothesisStatus::waived;
            r.add_hypothesis(b.pair + "_bijumbled_in_host", status,
                    "the statement's constant c is existential; measured c = " + fmt(b.c) + " at scaling "
                    + b.scaling, {{"c", b.c}, {"gamma", b.certificate.gamma}, {"scaling", b.scaling}});
        }
        if (o.base) {
            HypothesisStatus status = ! o.base->regular ? HypothesisStatus::fail
                : o.base->method == RegularityMethod::exact ? HypothesisStatus::pass : HypothesisStatus::unverified;
            r.add_hypothesis("YZ_regular_in_G", status, to_string(o.base->method) + " check at eps = "
                    + fmt(o.base->epsilon), {{"eps", o.base->epsilon}, {"deviation", o.base->deviation}});
        }
        else
            r.add_hypothesis("YZ_regular_in_G", HypothesisStatus::unverified, "not evaluated");

        r.details = to_json(o);
        r.wall_clock_ms = o.wall_clock_ms;
        r.decide();
        return r;
    }

    auto to_string(BadPairDirection d) -> std::string
    {
        return d == BadPairDirection::many ? "many" : "few";
    }

    auto parse_bad_pair_direction(const std::string & s) -> BadPairDirection
    {
        if (s == "many")
            return BadPairDirection::many;
        if (s == "few")
            return BadPairDirection::few;
        throw ParameterError("unknown bad-pair direction '" + s + "'");
    }

    namespace
    {
        auto constant_status(bool ok, Mode mode) -> HypothesisStatus
        {
            if (ok)
                return HypothesisStatus::pass;
            return mode == Mode::strict ? HypothesisStatus::fail : HypothesisStatus::waived;
        }

        auto certified_status(const JumbleCertificate & cert, double measured, double requested) -> HypothesisStatus
        {
            if (! cert.sound_upper)
                return HypothesisStatus::unverified;
            if (requested < 0.0)
                return HypothesisStatus::pass;
            return Tolerance{}.leq(measured, requested) ? HypothesisStatus::pass : HypothesisStatus::unverified;
        }
    }

    auto bad_pair_bounds_audit(const TripartiteSystem & system, const BadPairParameters & bp,
            BadPairDirection direction, Mode mode, const RegularityOptions & regularity) -> AuditReport
    {
        const double start = now_ms();
        system.validate();
        if (! (bp.p > 0.0 && bp.p < 1.0) || ! (bp.d > 0.0 && bp.d <= 1.0) || ! (bp.delta > 0.0)
                || ! (bp.eps > 0.0 && bp.eps < 1.0) || ! (bp.eps_star > 0.0 && bp.eps_star < 1.0))
            throw ParameterError("need p in (0,1), d in (0,1], delta > 0, eps and eps* in (0,1)");

        const Tolerance tol;
        const double p = bp.p, d = bp.d, q = d * p;
        std::vector<std::string> warnings;
        SpectralOptions spectral{1e-7, 5000, 0x5eed};

        AuditReport r;
        r.mode = mode;
        r.seed = regularity.seed;
        r.parameters = {{"d", d}, {"p", p}, {"q", q}, {"eps_star", bp.eps_star}, {"delta", bp.delta},
            {"eps", bp.eps}, {"c_prime", bp.c_prime}, {"direction", to_string(direction)}};

        if (direction == BadPairDirection::many) {
            r.lemma = "many_bad_pairs";
            const VertexSet & u = system.y;
            const VertexSet & v = system.z;
            BipartitePairView g_pair(system.sub, u, v);
            auto census = classify_pairs(g_pair, q, bp.delta, false, regularity.workers);
            const std::int64_t bad = census.bad + census.heavy;

            auto cert = certify(BipartitePairView(system.host, u, v), p, spectral, warnings, "YZ");
            double measured_c = heavy_lemma_constant(cert.gamma, p, u.size(), v.size());
            double c_prime = bp.c_prime < 0.0 ? measured_c : bp.c_prime;

            const double es = bp.eps_star, es9 = std::pow(es, 9);
            bool constants = d < 1.0 && es <= 1e-3 && bp.delta <= es9 / 10 && bp.eps <= es9 * d / 100
                && c_prime <= d * d * std::pow(bp.eps, 10) / 100;
            r.add_hypothesis("constants", constant_status(constants, mode),
                    "eps* <= 1e-3, delta <= eps*^9/10, eps <= eps*^9 d/100, c' <= d^2 eps^10/100",
                    {{"c_prime", c_prime}});
            r.add_hypothesis("host_bijumbled", certified_status(cert, measured_c, bp.c_prime),
                    "scaling p^{3/2} (log2 1/p)^{-1/2}; measured c' = " + fmt(measured_c),
                    {{"gamma", cert.gamma}, {"measured_c", measured_c}});

            int max_deg = 0;
            for (int y : u)
                max_deg = std::max(max_deg, degree_into(system.host, y, v));
            r.add_hypothesis("degree_condition",
                    tol.leq(max_deg, 2 * p * v.size()) ? HypothesisStatus::pass : HypothesisStatus::fail,
                    "max host degree into V <= 2p|V|", {{"max_degree", max_deg}, {"limit", 2 * p * v.size()}});

            double dens = density(g_pair).to_double();
            bool dense = tol.geq(dens, (d + es) * p);
            bool irregular = false;
            std::optional<RegularityVerdict> verdict;
            if (! dense && tol.geq(dens, (d - bp.eps) * p)) {
                verdict = check_regularity(g_pair, es, p, regularity);
                irregular = ! verdict->regular;
            }
            r.add_hypothesis("premise", dense || irregular ? HypothesisStatus::pass : HypothesisStatus::fail,
                    dense ? "density at least (d+eps*)p" : irregular ? "irregularity witness at eps*"
                    : "neither dense nor shown irregular", {{"density", dens}});

            double factor = mode == Mode::strict ? std::pow(es, 10) : bp.many_constant;
            r.measured_name = "bad_pairs";
            r.measured = double(bad);
            r.bound_kind = BoundKind::lower;
            r.bound_low = factor * std::pow(d, 4) * double(u.size()) * u.size();
            r.details = {{"typical", census.typical}, {"bad", census.bad}, {"heavy", census.heavy},
                {"bound_factor", factor}, {"certificate", to_json(cert)},
                {"regularity", verdict ? to_json(*verdict) : Json()}, {"warnings", warnings}};
        }
        else {
            r.lemma = "few_bad_pairs";
            const VertexSet & u = system.x;
            const VertexSet & v = system.y;
            const VertexSet & w = system.z;
            auto census = classify_pairs(BipartitePairView(system.sub, v, w), q, bp.delta, true, regularity.workers);

            double sum = 0.0;
            std::size_t idx = 0;
            for (int i = 0 ; i < v.size() ; ++i)
                for (int j = i + 1 ; j < v.size() ; ++j, ++idx)
                    if (census.labels[idx] != PairClass::typical)
                        sum += system.host.row(v[i]).intersect_count(system.host.row(v[j]), u.mask());

            auto cert_uv = certify(BipartitePairView(system.host, u, v), p, spectral, warnings, "XY");
            auto cert_vw = certify(BipartitePairView(system.host, v, w), p, spectral, warnings, "YZ");
            double c_uv = bijumble_constant(cert_uv.gamma, p, 1.5, u.size(), v.size());
            double c_vw = bijumble_constant(cert_vw.gamma, p, 2.0, v.size(), w.size());
            double c_prime = bp.c_prime < 0.0 ? std::max(c_uv, c_vw) : bp.c_prime;

            bool constants = c_prime <= bp.eps && bp.eps <= 1e-10 * std::pow(bp.delta, 6) * std::pow(d, 8);
            r.add_hypothesis("constants", constant_status(constants, mode), "c' <= eps <= 1e-10 delta^6 d^8",
                    {{"c_prime", c_prime}});
            r.add_hypothesis("XY_bijumbled", certified_status(cert_uv, c_uv, bp.c_prime),
                    "scaling p^{3/2}; measured c' = " + fmt(c_uv), {{"gamma", cert_uv.gamma}, {"measured_c", c_uv}});
            r.add_hypothesis("YZ_bijumbled", certified_status(cert_vw, c_vw, bp.c_prime),
                    "scaling p^2; measured c' = " + fmt(c_vw), {{"gamma", cert_vw.gamma}, {"measured_c", c_vw}});

            auto verdict = check_eps_d_p(BipartitePairView(system.sub, v, w), bp.eps, d, p, regularity);
            r.add_hypothesis("YZ_regular_in_G", ! verdict.regular ? HypothesisStatus::fail
                    : verdict.method == RegularityMethod::exact ? HypothesisStatus::pass : HypothesisStatus::unverified,
                    to_string(verdict.method) + " check at eps", {{"deviation", verdict.deviation}});

            int outside = 0;
            for (int y : v) {
                double deg = degree_into(system.host, y, u);
                if (! (tol.geq(deg, (1 - bp.eps) * p * u.size()) && tol.leq(deg, (1 + bp.eps) * p * u.size())))
                    ++outside;
            }
            r.add_hypothesis("degree_condition", constant_status(outside == 0, mode),
                    "every y has host degree (1 +- eps)p|X| into X", {{"outside", outside}});

            r.measured_name = "bad_pair_incidences";
            r.measured = sum;
            r.bound_kind = BoundKind::upper;
            r.bound_high = bp.delta * p * p * double(u.size()) * v.size() * v.size();
            r.details = {{"typical", census.typical}, {"bad", census.bad}, {"heavy", census.heavy},
                {"certificates", {to_json(cert_uv), to_json(cert_vw)}}, {"regularity", to_json(verdict)},
                {"warnings", warnings}};
        }
        r.wall_clock_ms = now_ms() - start;
        r.decide();
        return r;
    }

    auto run_plan(const ExperimentPlan & plan) -> std::vector<AuditReport>
    {
        if (plan.repetitions < 1)
            throw ParameterError("repetitions must be at least 1");
        if (! (plan.p > 0.0 && plan.p < 1.0) || ! (plan.d > 0.0 && plan.d <= 1.0))
            throw ParameterError("plan needs p in (0,1) and d in (0,1]");
        std::vector<AuditReport> reports;
        for (int rep = 0 ; rep < plan.repetitions ; ++rep) {
            const std::uint64_t seed = rep == 0 ? plan.seed : derive_seed(plan.seed, std::uint64_t(rep));
            auto system = gen_tripartite(plan.nx, plan.ny, plan.nz, plan.p, derive_seed(seed, 1));
            system = sparsify(system, plan.d, derive_seed(seed, 2));
            if (plan.plant_fraction)
                system = plant_irregular_block(system, *plan.plant_fraction, plan.plant_boost, derive_seed(seed, 3));

            ExperimentOptions options;
            options.regularity = plan.regularity;
            options.regularity.seed = derive_seed(seed, 4);
            options.base_eps = plan.base_eps;
            options.certificates = plan.certificates;
            auto outcome = plan.side == InheritanceSide::one_sided
                ? one_sided_experiment(system, plan.eps_prime, plan.d, plan.p, options)
                : two_sided_experiment(system, plan.eps_prime, plan.d, plan.p, options);
            auto report = inheritance_report(outcome, plan.mode, plan.ceiling, seed);
            report.parameters["sizes"] = {plan.nx, plan.ny, plan.nz};
            report.parameters["method"] = to_string(plan.regularity.method);
            report.parameters["trials"] = plan.regularity.trials;
            report.parameters["refine"] = plan.regularity.refine;
            report.parameters["alternate"] = plan.regularity.alternate;
            report.parameters["plant_fraction"] = plan.plant_fraction ? Json(*plan.plant_fraction) : Json();
            report.parameters["plant_boost"] = plan.plant_boost;
            reports.push_back(std::move(report));
        }
        return reports;
    }
}
