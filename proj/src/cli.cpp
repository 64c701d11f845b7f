#include <bijumble/c4.hpp>
#include <bijumble/cli.hpp>
#include <bijumble/embed.hpp>
#include <bijumble/error.hpp>
#include <bijumble/parallel.hpp>
#include <bijumble/pattern.hpp>
#include <bijumble/pseudorandom.hpp>
#include <bijumble/regularity.hpp>
#include <bijumble/rng.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

namespace bijumble
{
    auto RunConfig::validate() const -> void
    {
        if (! (tolerance > 0.0) || ! (spectral_tolerance > 0.0))
            throw ParameterError("tolerances must be positive");
        if (exact_limit < 1 || exact_limit > 63)
            throw ParameterError("exact_limit must lie in [1,63]");
    }

    namespace
    {
        auto trim(std::string_view s) -> std::string_view
        {
            auto b = s.find_first_not_of(" \t\r");
            if (b == std::string_view::npos)
                return {};
            auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        }

        template <typename T_>
        auto convert(const std::string & key, const std::string & value) -> T_
        {
            std::istringstream in(value);
            T_ result{};
            in >> result;
            if (in.fail() || ! (in >> std::ws).eof())
                throw ParameterError("bad value '" + value + "' for " + key);
            return result;
        }

        auto convert_bool(const std::string & key, const std::string & value) -> bool
        {
            if (value == "true" || value == "1" || value == "yes" || value == "on")
                return true;
            if (value == "false" || value == "0" || value == "no" || value == "off")
                return false;
            throw ParameterError("bad value '" + value + "' for " + key);
        }

        auto parse_seed(const std::string & key, const std::string & value) -> std::uint64_t
        {
            try {
                std::size_t used = 0;
                auto s = std::stoull(value, &used, 0);
                if (used == value.size())
                    return s;
            }
            catch (const std::logic_error &) {
            }
            throw ParameterError("bad value '" + value + "' for " + key);
        }
    }

    auto parse_key_values(std::string_view text) -> KeyValues
    {
        KeyValues values;
        std::size_t line_no = 0;
        while (! text.empty()) {
            auto nl = text.find('\n');
            auto line = text.substr(0, nl);
            text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
            ++line_no;
            line = trim(line.substr(0, line.find('#')));
            if (line.empty())
                continue;
            auto eq = line.find('=');
            if (eq == std::string_view::npos)
                throw ParseError(line_no, "expected 'key = value'");
            std::string key(trim(line.substr(0, eq)));
            std::string value(trim(line.substr(eq + 1)));
            if (key.empty())
                throw ParseError(line_no, "empty key");
            if (! values.emplace(key, value).second)
                throw ParseError(line_no, "repeated key '" + key + "'");
        }
        return values;
    }

    auto read_key_values_file(const std::string & path) -> KeyValues
    {
        std::ifstream in(path);
        if (! in)
            throw IoError("cannot read " + path);
        std::stringstream buffer;
        buffer << in.rdbuf();
        return parse_key_values(buffer.str());
    }

    auto apply_run_config(const KeyValues & values, RunConfig c) -> RunConfig
    {
        for (auto & [key, value] : values) {
            if (key == "seed")
                c.seed = parse_seed(key, value);
            else if (key == "tolerance")
                c.tolerance = convert<double>(key, value);
            else if (key == "spectral_tolerance")
                c.spectral_tolerance = convert<double>(key, value);
            else if (key == "workers")
                c.workers = convert<unsigned>(key, value);
            else if (key == "exact_limit")
                c.exact_limit = convert<int>(key, value);
            else if (key == "out")
                c.out = value;
            else if (key == "mode")
                c.mode = parse_mode(value);
        }
        c.validate();
        return c;
    }

    auto plan_from_config(const KeyValues & values, ExperimentPlan plan) -> ExperimentPlan
    {
        for (auto & [key, value] : values) {
            if (key == "side" || key == "lemma")
                plan.side = parse_inheritance_side(value == "one_sided_inheritance" ? "one_sided"
                        : value == "two_sided_inheritance" ? "two_sided" : value);
            else if (key == "n")
                plan.nx = plan.ny = plan.nz = convert<int>(key, value);
            else if (key == "nx")
                plan.nx = convert<int>(key, value);
            else if (key == "ny")
                plan.ny = convert<int>(key, value);
            else if (key == "nz")
                plan.nz = convert<int>(key, value);
            else if (key == "p")
                plan.p = convert<double>(key, value);
            else if (key == "d")
                plan.d = convert<double>(key, value);
            else if (key == "eps_prime")
                plan.eps_prime = convert<double>(key, value);
            else if (key == "seed")
                plan.seed = parse_seed(key, value);
            else if (key == "repetitions")
                plan.repetitions = convert<int>(key, value);
            else if (key == "mode")
                plan.mode = parse_mode(value);
            else if (key == "ceiling")
                plan.ceiling = convert<double>(key, value);
            else if (key == "method")
                plan.regularity.method = parse_regularity_method(value);
            else if (key == "trials")
                plan.regularity.trials = convert<int>(key, value);
            else if (key == "refine")
                plan.regularity.refine = convert_bool(key, value);
            else if (key == "alternate")
                plan.regularity.alternate = convert_bool(key, value);
            else if (key == "base_eps")
                plan.base_eps = convert<double>(key, value);
            else if (key == "certificates")
                plan.certificates = convert_bool(key, value);
            else if (key == "plant_fraction")
                plan.plant_fraction = convert<double>(key, value);
            else if (key == "plant_boost")
                plan.plant_boost = convert<double>(key, value);
        }
        if (plan.nx < 1 || plan.ny < 1 || plan.nz < 1)
            throw ParameterError("plan sizes must be positive");
        if (! (plan.p > 0.0 && plan.p < 1.0) || ! (plan.d > 0.0 && plan.d <= 1.0))
            throw ParameterError("plan needs p in (0,1) and d in (0,1]");
        if (! (plan.eps_prime > 0.0 && plan.eps_prime < 1.0))
            throw ParameterError("plan needs eps_prime in (0,1)");
        if (plan.repetitions < 1)
            throw ParameterError("plan needs at least one repetition");
        return plan;
    }

    namespace
    {
        auto num(double v, int precision = 6) -> std::string
        {
            std::ostringstream out;
            out << std::setprecision(precision) << v;
            return out.str();
        }

        /// Left-aligned text table.
        auto print_table(std::ostream & out, const std::vector<std::vector<std::string>> & rows) -> void
        {
            std::vector<std::size_t> width;
            for (auto & row : rows)
                for (std::size_t c = 0 ; c < row.size() ; ++c) {
                    if (width.size() <= c)
                        width.push_back(0);
                    width[c] = std::max(width[c], row[c].size());
                }
            for (auto & row : rows) {
                for (std::size_t c = 0 ; c < row.size() ; ++c) {
                    out << row[c];
                    if (c + 1 < row.size())
                        out << std::string(width[c] - row[c].size() + 2, ' ');
                }
                out << '\n';
            }
        }

        auto order_text(const std::vector<int> & order) -> std::string
        {
            std::string s;
            for (std::size_t i = 0 ; i < order.size() ; ++i)
                s += (i ? " " : "") + std::to_string(order[i]);
            return s;
        }

        /// Everything a subcommand needs once options are parsed.
        struct Session
        {
            RunConfig config;
            std::ostream * out;
            std::ostream * err;
            std::vector<AuditReport> reports;
            std::vector<std::string> files;

            auto regularity(RegularityMethod method, int trials, bool refine) const -> RegularityOptions
            {
                RegularityOptions o;
                o.method = method;
                o.trials = trials;
                o.refine = refine;
                o.seed = config.seed;
                o.limit = config.exact_limit;
                o.workers = config.workers;
                return o;
            }

            auto spectral() const -> SpectralOptions
            {
                SpectralOptions s;
                s.tolerance = config.spectral_tolerance;
                return s;
            }

            auto record(AuditReport report) -> void
            {
                report.tolerance.rel = config.tolerance;
                report.decide();
                reports.push_back(std::move(report));
            }

            auto finish() -> int
            {
                if (reports.empty())
                    return exit_pass;
                ReportWriter writer(config.out);
                for (auto & r : reports)
                    files.push_back(writer.write(r).filename().string());
                std::vector<std::vector<std::string>> rows{
                    {"lemma", "mode", "verdict", "measured", "bound", "file"}};
                bool failed = false;
                for (std::size_t i = 0 ; i < reports.size() ; ++i) {
                    auto & r = reports[i];
                    std::string bound = r.bound_kind == BoundKind::lower ? ">= " + num(r.bound_low)
                        : r.bound_kind == BoundKind::upper ? "<= " + num(r.bound_high)
                        : r.bound_kind == BoundKind::window ? "[" + num(r.bound_low) + ", " + num(r.bound_high) + "]"
                        : "-";
                    std::string verdict = r.verdict == Verdict::pass ? "PASS"
                        : r.verdict == Verdict::fail ? "FAIL" : "HYPOTHESES-NOT-MET";
                    rows.push_back({r.lemma, to_string(r.mode), verdict, num(r.measured, 10), bound, files[i]});
                    failed = failed || r.verdict == Verdict::fail;
                }
                *out << '\n';
                print_table(*out, rows);
                *out << "reports written to " << config.out.string() << '\n';
                return failed ? exit_fail : exit_pass;
            }
        };

        struct PairArgs
        {
            std::string graph, left, right;

            auto add(CLI::App * app) -> void
            {
                app->add_option("--graph", graph, "edge-list file")->required();
                app->add_option("--left", left, "left side, e.g. 0..9")->required();
                app->add_option("--right", right, "right side")->required();
            }
        };

        struct LoadedPair
        {
            Graph graph;
            VertexSet left, right;

            auto view() const -> BipartitePairView { return BipartitePairView(graph, left, right); }
        };

        auto load_pair(const PairArgs & a) -> LoadedPair
        {
            LoadedPair p;
            p.graph = load_graph_file(a.graph);
            p.left = parse_vertex_list(a.left, p.graph.vertex_count());
            p.right = parse_vertex_list(a.right, p.graph.vertex_count());
            return p;
        }

        auto print_certificate(std::ostream & out, const std::string & label, const JumbleCertificate & c) -> void
        {
            std::vector<std::vector<std::string>> rows{{"pair", "method", "p", "gamma", "sound_upper", "iterations"},
                {label, to_string(c.method), num(c.p), num(c.gamma, 10), c.sound_upper ? "yes" : "no",
                    std::to_string(c.iterations)}};
            print_table(out, rows);
            if (c.witness)
                out << "witness: |U'| = " << c.witness->first.size() << ", |V'| = " << c.witness->second.size()
                    << ", discrepancy " << num(c.discrepancy) << '\n';
        }

        auto print_verdict(std::ostream & out, const RegularityVerdict & v) -> void
        {
            std::vector<std::vector<std::string>> rows{
                {"method", "eps", "p", "base_p_density", "deviation", "regular", "reason"},
                {to_string(v.method), num(v.epsilon), num(v.p), num(v.base_p_density, 10), num(v.deviation, 10),
                    v.regular ? "yes" : "no", to_string(v.reason)}};
            print_table(out, rows);
            if (v.regular && v.method == RegularityMethod::sampled)
                out << "note: sampled verdicts only report that no violation was found\n";
        }
    }

    auto run_cli(const std::vector<std::string> & args, std::ostream & out, std::ostream & err) -> int
    {
        CLI::App app{"Audits for regularity inheritance in bijumbled graphs", "bijumble"};
        app.require_subcommand(1);
        app.fallthrough();

        std::string config_file;
        std::optional<std::uint64_t> seed;
        std::optional<double> tolerance, spectral_tolerance;
        std::optional<unsigned> workers;
        std::optional<int> exact_limit;
        std::optional<std::string> out_dir, mode_text;
        app.add_option("--config", config_file,
                "key = value file; keys: seed, tolerance, spectral_tolerance, workers, exact_limit, out, mode");
        app.add_option("--seed", seed, "global seed (default 1)");
        app.add_option("--tolerance", tolerance, "relative tolerance for bound comparisons (default 1e-9)");
        app.add_option("--spectral-tolerance", spectral_tolerance, "power-iteration tolerance (default 1e-9)");
        app.add_option("--workers", workers, "worker threads (default 1)");
        app.add_option("--exact-limit", exact_limit, "largest side enumerated by exact methods (default 22)");
        app.add_option("--out", out_dir, "report directory (env BIJUMBLE_OUT; default bijumble-runs)");
        app.add_option("--mode", mode_text, "strict | relaxed (default strict)");

        // params
        auto * params = app.add_subcommand("params", "exponents of a pattern and its best orders");
        std::string pattern_file, objective_text = "both", strategy_text = "branch_and_bound";
        params->add_option("--pattern", pattern_file, "pattern file")->required();
        params->add_option("--objective", objective_text, "one_sided | two_sided | both");
        params->add_option("--strategy", strategy_text, "exhaustive | branch_and_bound | heuristic");

        // certify
        auto * certify = app.add_subcommand("certify", "bijumbledness certificate for a pair");
        PairArgs certify_pair;
        certify_pair.add(certify);
        double certify_p = 0.0, search_gamma = -1.0;
        std::string certify_method = "spectral";
        int search_trials = 16;
        certify->add_option("--p", certify_p, "edge probability")->required();
        certify->add_option("--method", certify_method, "spectral | exact | search");
        certify->add_option("--trials", search_trials, "search restarts");
        certify->add_option("--gamma", search_gamma, "search: report a violation of this gamma");

        // regularity
        auto * regularity = app.add_subcommand("regularity", "regularity verdict for a pair");
        PairArgs reg_pair;
        reg_pair.add(regularity);
        double reg_eps = 0.0;
        std::optional<double> reg_p, reg_d;
        std::string reg_method = "exact";
        int reg_trials = 200;
        bool no_refine = false;
        regularity->add_option("--eps", reg_eps, "epsilon")->required();
        regularity->add_option("--p", reg_p, "p (default: the measured density)");
        regularity->add_option("--d", reg_d, "density floor parameter for (eps,d,p)-regularity");
        regularity->add_option("--method", reg_method, "exact | sampled");
        regularity->add_option("--trials", reg_trials, "sampled trials");
        regularity->add_flag("--no-refine", no_refine, "sampled: skip degree-sorted refinement");
        bool reg_alternate = false;
        regularity->add_flag("--alternate", reg_alternate, "sampled: add one alternating refinement step");

        // census
        auto * census = app.add_subcommand("census", "C4 count and pair classes");
        PairArgs census_pair;
        census_pair.add(census);
        bool want_c4 = false;
        std::optional<double> census_q;
        double census_delta = 0.5;
        census->add_flag("--c4", want_c4, "count C4s");
        census->add_option("--q", census_q, "classify left pairs at this density");
        census->add_option("--delta", census_delta, "bad-pair excess");

        // count
        auto * count = app.add_subcommand("count", "partite copies of a pattern");
        std::string instance_file;
        std::optional<double> count_p;
        double count_gamma = 0.1;
        std::string window_text = "two_sided";
        count->add_option("--instance", instance_file, "partite instance file")->required();
        count->add_option("--p", count_p, "audit against the counting window at this p");
        count->add_option("--gamma", count_gamma, "window half-width in units of p^e(H) prod|V_i|");
        count->add_option("--side", window_text, "lower | two_sided");

        // suffix
        auto * suffix = app.add_subcommand("suffix", "suffix-count bound audit");
        std::string suffix_instance;
        int suffix_x = 0;
        std::vector<std::string> w_texts;
        double suffix_p = 0.0, suffix_eps = 0.5, suffix_beta = -1.0, beta_constant = 20.0;
        suffix->add_option("--instance", suffix_instance, "partite instance file")->required();
        suffix->add_option("--x", suffix_x, "start vertex of the suffix")->required();
        suffix->add_option("--w", w_texts, "W-set 'y: list' (default: the whole part)");
        suffix->add_option("--p", suffix_p, "edge probability")->required();
        suffix->add_option("--eps", suffix_eps, "epsilon of the statement");
        suffix->add_option("--beta", suffix_beta, "beta (default: measured)");
        suffix->add_option("--beta-constant", beta_constant, "relaxed replacement of the beta constant");

        // optialpha
        auto * optialpha = app.add_subcommand("optialpha", "optimization-lemma sum against its bound");
        double opt_p = 0.0;
        std::vector<int> opt_b;
        optialpha->add_option("--p", opt_p, "p in (0,1)")->required();
        optialpha->add_option("--b", opt_b, "nonincreasing exponents b_1 .. b_q")->required()->delimiter(',');

        // inherit
        auto * inherit = app.add_subcommand("inherit", "inheritance experiments");
        std::string plan_file;
        std::optional<std::string> side_text, inherit_method;
        std::optional<int> inherit_n, inherit_trials, repetitions;
        std::optional<double> inherit_p, inherit_d, eps_prime, ceiling;
        inherit->add_option("--plan", plan_file, "experiment plan (key = value)");
        inherit->add_option("--side", side_text, "one_sided | two_sided");
        inherit->add_option("--n", inherit_n, "size of every part");
        inherit->add_option("--p", inherit_p, "host edge probability");
        inherit->add_option("--d", inherit_d, "fraction of host edges kept in G");
        inherit->add_option("--eps-prime", eps_prime, "regularity parameter of the derived pairs");
        inherit->add_option("--method", inherit_method, "exact | sampled");
        inherit->add_option("--trials", inherit_trials, "sampled trials per vertex");
        inherit->add_option("--repetitions", repetitions, "independent repetitions");
        inherit->add_option("--ceiling", ceiling, "ceiling on the exceptional fraction (default eps')");

        // audit
        auto * audit = app.add_subcommand("audit", "audit one lemma on an instance");
        std::string lemma;
        audit->add_option("--lemma", lemma,
                "c4_dense_irregular | c4_regular_bijumbled | many_bad_pairs | few_bad_pairs")->required();
        std::string audit_graph, audit_host, audit_left, audit_right;
        double audit_eps = 0.1, audit_d = -1.0, audit_p = 0.1, audit_c = -1.0;
        double slack_dense = 0.1, slack_irregular = 0.0;
        int audit_n = 200;
        double audit_subd = 0.5, eps_star = 1e-3, audit_delta = 0.5, c_prime = -1.0, many_constant = 1e-3;
        std::optional<double> plant_fraction;
        double plant_boost = 1.0;
        std::string audit_method = "sampled";
        int audit_trials = 200;
        audit->add_option("--graph", audit_graph, "c4 audits: the graph G");
        audit->add_option("--host", audit_host, "c4_regular_bijumbled: the host graph");
        audit->add_option("--left", audit_left, "c4 audits: left side");
        audit->add_option("--right", audit_right, "c4 audits: right side");
        audit->add_option("--eps", audit_eps, "epsilon");
        audit->add_option("--d", audit_d, "density parameter (negative: measured)");
        audit->add_option("--p", audit_p, "edge probability");
        audit->add_option("--c", audit_c, "bijumbledness constant (negative: measured)");
        audit->add_option("--slack-dense", slack_dense, "relaxed factor for the dense bound");
        audit->add_option("--slack-irregular", slack_irregular, "relaxed factor for the irregular bound");
        audit->add_option("--n", audit_n, "bad-pair audits: part size of the generated system");
        audit->add_option("--keep", audit_subd, "bad-pair audits: fraction of host edges kept in G");
        audit->add_option("--eps-star", eps_star, "many_bad_pairs: irregularity parameter");
        audit->add_option("--delta", audit_delta, "bad-pair excess");
        audit->add_option("--c-prime", c_prime, "bijumbledness constant (negative: measured)");
        audit->add_option("--many-constant", many_constant, "relaxed replacement of (eps*)^10");
        audit->add_option("--plant-fraction", plant_fraction, "plant an irregular block in (Y,Z)");
        audit->add_option("--plant-boost", plant_boost, "probability of adding host edges in the block");
        audit->add_option("--method", audit_method, "regularity method: exact | sampled");
        audit->add_option("--trials", audit_trials, "sampled trials");

        std::vector<std::string> reversed(args.rbegin(), args.rend());
        try {
            app.parse(reversed);
        }
        catch (const CLI::ParseError & e) {
            int code = app.exit(e, out, err);
            return code == 0 ? exit_pass : exit_usage;
        }

        Session s;
        s.out = &out;
        s.err = &err;
        try {
            KeyValues config_values;
            if (! config_file.empty())
                config_values = read_key_values_file(config_file);
            s.config = apply_run_config(config_values);
            if (const char * env = std::getenv("BIJUMBLE_OUT"); env && *env)
                s.config.out = env;
            if (seed)
                s.config.seed = *seed;
            if (tolerance)
                s.config.tolerance = *tolerance;
            if (spectral_tolerance)
                s.config.spectral_tolerance = *spectral_tolerance;
            if (workers)
                s.config.workers = *workers;
            if (exact_limit)
                s.config.exact_limit = *exact_limit;
            if (out_dir)
                s.config.out = *out_dir;
            if (mode_text)
                s.config.mode = parse_mode(*mode_text);
            s.config.validate();
            set_default_workers(std::max(1u, s.config.workers));
            const auto & config = s.config;

            if (params->parsed()) {
                auto pattern = load_pattern_file(pattern_file);
                auto rep = exponent_report(pattern);
                std::vector<std::vector<std::string>> rows{
                    {"order", "k_reg", "d~", "one_sided", "two_sided", "max_degree", "degeneracy", "prior_work"}};
                auto cfz = rep.cfz_two_sided ? to_string(*rep.cfz_two_sided) : std::string("-");
                rows.push_back({"given: " + order_text(rep.order), to_string(rep.k_reg), std::to_string(rep.d_tilde),
                        to_string(rep.one_sided_exponent), to_string(rep.two_sided_exponent),
                        std::to_string(rep.max_degree), std::to_string(rep.degeneracy), cfz});
                std::vector<Objective> objectives;
                if (objective_text == "both")
                    objectives = {Objective::one_sided, Objective::two_sided};
                else
                    objectives = {parse_objective(objective_text)};
                auto strategy = parse_strategy(strategy_text);
                for (auto o : objectives) {
                    auto best = optimize_order(pattern.graph(), o, strategy, config.workers);
                    auto & r = best.report;
                    rows.push_back({"best " + to_string(o) + " (" + to_string(strategy) + "): " + order_text(best.order),
                            to_string(r.k_reg), std::to_string(r.d_tilde), to_string(r.one_sided_exponent),
                            to_string(r.two_sided_exponent), std::to_string(r.max_degree),
                            std::to_string(r.degeneracy), cfz});
                }
                print_table(out, rows);
                for (auto & w : rep.warnings)
                    out << "warning: " << w << '\n';
                return exit_pass;
            }

            if (certify->parsed()) {
                auto pair = load_pair(certify_pair);
                auto view = pair.view();
                JumbleCertificate c;
                if (certify_method == "spectral")
                    c = spectral_jumble_bound(view, certify_p, s.spectral());
                else if (certify_method == "exact")
                    c = exact_jumble_gamma(view, certify_p, config.exact_limit, config.workers);
                else if (certify_method == "search") {
                    if (search_gamma >= 0.0) {
                        auto v = search_jumble_violation(view, certify_p, search_gamma, search_trials, config.seed,
                                config.workers);
                        if (! v) {
                            out << "no violation of gamma = " << num(search_gamma) << " found\n";
                            return exit_pass;
                        }
                        c = *v;
                    }
                    else
                        c = search_jumble_best(view, certify_p, search_trials, config.seed, config.workers);
                }
                else
                    throw ParameterError("unknown certificate method '" + certify_method + "'");
                print_certificate(out, "(" + certify_pair.left + ", " + certify_pair.right + ")", c);
                return exit_pass;
            }

            if (regularity->parsed()) {
                auto pair = load_pair(reg_pair);
                auto options = s.regularity(parse_regularity_method(reg_method), reg_trials, ! no_refine);
                options.alternate = reg_alternate;
                RegularityVerdict v;
                if (reg_d) {
                    if (! reg_p)
                        throw ParameterError("--d needs --p");
                    v = check_eps_d_p(pair.view(), reg_eps, *reg_d, *reg_p, options);
                }
                else if (reg_p)
                    v = check_regularity(pair.view(), reg_eps, *reg_p, options);
                else
                    v = check_eps_regular(pair.view(), reg_eps, options);
                print_verdict(out, v);
                return exit_pass;
            }

            if (census->parsed()) {
                auto pair = load_pair(census_pair);
                std::vector<std::vector<std::string>> rows{{"quantity", "value"}};
                rows.push_back({"edges", std::to_string(pair.view().edge_count())});
                if (want_c4)
                    rows.push_back({"c4", std::to_string(count_c4(pair.view(), config.workers))});
                if (census_q) {
                    auto c = c4_partition_by_class(pair.view(), *census_q, census_delta, std::nullopt, config.workers);
                    rows.push_back({"typical pairs", std::to_string(c.classes.typical)});
                    rows.push_back({"bad pairs", std::to_string(c.classes.bad)});
                    rows.push_back({"heavy pairs", std::to_string(c.classes.heavy)});
                    rows.push_back({"c4 through typical", std::to_string(c.through_typical)});
                    rows.push_back({"c4 through bad", std::to_string(c.through_bad)});
                    rows.push_back({"c4 through heavy", std::to_string(c.through_heavy)});
                }
                print_table(out, rows);
                return exit_pass;
            }

            if (count->parsed()) {
                auto instance = load_partite_instance_file(instance_file);
                if (! count_p) {
                    out << "copies " << count_partite_copies(instance, config.workers) << '\n';
                    return exit_pass;
                }
                s.record(counting_window_audit(instance, *count_p, count_gamma, parse_window_side(window_text), {},
                        config.mode, config.seed, config.workers));
                out << "copies " << num(s.reports.back().measured, 15) << '\n';
                return s.finish();
            }

            if (suffix->parsed()) {
                SuffixInstance instance{load_partite_instance_file(suffix_instance), suffix_x, {}};
                instance.w_sets = instance.base.parts;
                const int universe = instance.base.host.vertex_count();
                for (auto & text : w_texts) {
                    auto colon = text.find(':');
                    if (colon == std::string::npos)
                        throw ParameterError("--w expects 'y: list'");
                    int y = convert<int>("--w", std::string(trim(std::string_view(text).substr(0, colon))));
                    if (y < 0 || y >= instance.base.pattern.size())
                        throw RangeError("--w names vertex " + std::to_string(y) + " outside the pattern");
                    instance.w_sets[y] = parse_vertex_list(std::string_view(text).substr(colon + 1), universe);
                }
                s.record(suffix_bound_audit(instance, suffix_p, suffix_eps, suffix_beta, config.mode, beta_constant,
                        config.seed, config.workers));
                out << "suffix copies " << num(s.reports.back().measured, 15) << '\n';
                return s.finish();
            }

            if (optialpha->parsed()) {
                auto r = optialpha_check(opt_p, opt_b, config.workers);
                AuditReport report;
                report.lemma = "optialpha";
                report.mode = config.mode;
                report.seed = config.seed;
                report.measured_name = "sum";
                report.measured = r.sum;
                report.bound_kind = BoundKind::upper;
                report.bound_high = r.bound;
                report.parameters = {{"p", opt_p}, {"b", opt_b}, {"P", r.P}, {"C", r.C}};
                report.details = {{"vectors", r.vectors}, {"p_in_lemma_range", r.p_in_lemma_range}};
                report.add_hypothesis("b_nonincreasing", HypothesisStatus::pass);
                report.add_hypothesis("p_range", r.p_in_lemma_range ? HypothesisStatus::pass
                        : config.mode == Mode::strict ? HypothesisStatus::fail : HypothesisStatus::waived,
                        "p <= 1/10", {{"p", opt_p}});
                s.record(std::move(report));
                print_table(out, {{"P", "C", "vectors", "sum", "bound", "result"},
                        {std::to_string(r.P), std::to_string(r.C), std::to_string(r.vectors), num(r.sum, 10),
                            num(r.bound, 10), r.holds ? "PASS" : "FAIL"}});
                if (! r.p_in_lemma_range)
                    out << "note: p is outside the lemma's range p <= 1/10\n";
                int code = s.finish();
                return r.holds ? code : exit_fail;
            }

            if (inherit->parsed()) {
                KeyValues plan_values = config_values;
                if (! plan_file.empty())
                    for (auto & [k, v] : read_key_values_file(plan_file))
                        plan_values[k] = v;
                ExperimentPlan plan;
                plan.seed = config.seed;
                plan.mode = config.mode;
                plan = plan_from_config(plan_values, plan);
                if (seed)
                    plan.seed = *seed;
                if (mode_text)
                    plan.mode = config.mode;
                if (side_text)
                    plan.side = parse_inheritance_side(*side_text);
                if (inherit_n)
                    plan.nx = plan.ny = plan.nz = *inherit_n;
                if (inherit_p)
                    plan.p = *inherit_p;
                if (inherit_d)
                    plan.d = *inherit_d;
                if (eps_prime)
                    plan.eps_prime = *eps_prime;
                if (inherit_method)
                    plan.regularity.method = parse_regularity_method(*inherit_method);
                if (inherit_trials)
                    plan.regularity.trials = *inherit_trials;
                if (repetitions)
                    plan.repetitions = *repetitions;
                if (ceiling)
                    plan.ceiling = *ceiling;
                plan.regularity.limit = config.exact_limit;
                plan.regularity.workers = config.workers;
                plan = plan_from_config({}, plan);
                for (auto & r : run_plan(plan)) {
                    out << r.lemma << " seed " << r.seed << ": " << r.details["exceptional"].get<int>() << " of "
                        << r.details["vertices"].get<int>() << " vertices exceptional\n";
                    for (auto & w : r.details["warnings"])
                        out << "  warning: " << w.get<std::string>() << '\n';
                    s.record(std::move(r));
                }
                return s.finish();
            }

            if (audit->parsed()) {
                auto options = s.regularity(parse_regularity_method(audit_method), audit_trials, true);
                if (lemma == "c4_dense_irregular" || lemma == "c4_regular_bijumbled") {
                    if (audit_graph.empty() || audit_left.empty() || audit_right.empty())
                        throw ParameterError(lemma + " needs --graph, --left and --right");
                    auto pair = load_pair(PairArgs{audit_graph, audit_left, audit_right});
                    if (lemma == "c4_dense_irregular")
                        s.record(c4_dense_irregular_audit(pair.view(), audit_eps, config.mode,
                                C4Slack{slack_dense, slack_irregular}, options));
                    else {
                        Graph host = audit_host.empty() ? pair.graph : load_graph_file(audit_host);
                        s.record(c4_regular_bijumbled_audit(host, pair.view(), audit_eps, audit_d, audit_p, audit_c,
                                config.mode, options));
                    }
                    s.reports.back().seed = config.seed;
                }
                else if (lemma == "many_bad_pairs" || lemma == "few_bad_pairs") {
                    auto system = gen_tripartite(audit_n, audit_n, audit_n, audit_p, derive_seed(config.seed, 1));
                    system = sparsify(system, audit_subd, derive_seed(config.seed, 2));
                    if (plant_fraction)
                        system = plant_irregular_block(system, *plant_fraction, plant_boost,
                                derive_seed(config.seed, 3));
                    BadPairParameters bp;
                    bp.d = audit_subd;
                    bp.p = audit_p;
                    bp.eps = audit_eps;
                    bp.eps_star = eps_star;
                    bp.delta = audit_delta;
                    bp.c_prime = c_prime;
                    bp.many_constant = many_constant;
                    s.record(bad_pair_bounds_audit(system, bp, parse_bad_pair_direction(
                            lemma == "many_bad_pairs" ? "many" : "few"), config.mode, options));
                    s.reports.back().seed = config.seed;
                }
                else
                    throw ParameterError("unknown lemma '" + lemma + "'");
                return s.finish();
            }
        }
        catch (const CapacityError & e) {
            err << "capacity error: " << e.what() << '\n';
            return exit_capacity;
        }
        catch (const ConvergenceError & e) {
            err << "convergence error: " << e.what() << " (last estimate " << e.last_estimate() << ")\n";
            return exit_capacity;
        }
        catch (const IoError & e) {
            err << "io error: " << e.what() << '\n';
            return exit_io;
        }
        catch (const ParseError & e) {
            err << "parse error: " << e.what() << '\n';
            return exit_usage;
        }
        catch (const Error & e) {
            err << "error: " << e.what() << '\n';
            return exit_usage;
        }
        catch (const std::exception & e) {
            err << "error: " << e.what() << '\n';
            return exit_fail;
        }
        return exit_usage;
    }

    auto run_cli(int argc, char ** argv) -> int
    {
        std::vector<std::string> args(argv + 1, argv + argc);
        return run_cli(args, std::cout, std::cerr);
    }
}
