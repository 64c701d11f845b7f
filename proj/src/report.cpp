#include <bijumble/report.hpp>
#include <bijumble/error.hpp>

#include <fstream>
#include <sstream>

namespace bijumble
{
    auto to_string(Mode m) -> std::string
    {
        return m == Mode::strict ? "strict" : "relaxed";
    }

    auto to_string(Verdict v) -> std::string
    {
        switch (v) {
            case Verdict::pass:               return "pass";
            case Verdict::fail:               return "fail";
            case Verdict::hypotheses_not_met: return "hypotheses-not-met";
        }
        return "?";
    }

    auto to_string(HypothesisStatus s) -> std::string
    {
        switch (s) {
            case HypothesisStatus::pass:       return "pass";
            case HypothesisStatus::fail:       return "fail";
            case HypothesisStatus::unverified: return "unverified";
            case HypothesisStatus::waived:     return "waived";
        }
        return "?";
    }

    auto to_string(BoundKind b) -> std::string
    {
        switch (b) {
            case BoundKind::lower:  return "lower";
            case BoundKind::upper:  return "upper";
            case BoundKind::window: return "window";
            case BoundKind::none:   return "none";
        }
        return "?";
    }

    auto parse_mode(const std::string & s) -> Mode
    {
        if (s == "strict")
            return Mode::strict;
        if (s == "relaxed")
            return Mode::relaxed;
        throw ParameterError("unknown mode \"" + s + "\"");
    }

    namespace
    {
        template <typename E_, std::size_t N_>
        auto parse_enum(const std::string & s, const E_ (&values)[N_], const char * what) -> E_
        {
            for (auto v : values)
                if (to_string(v) == s)
                    return v;
            throw ParseError(1, std::string("unknown ") + what + " \"" + s + "\"");
        }

        constexpr Verdict all_verdicts[] = {Verdict::pass, Verdict::fail, Verdict::hypotheses_not_met};
        constexpr HypothesisStatus all_statuses[] = {HypothesisStatus::pass, HypothesisStatus::fail,
            HypothesisStatus::unverified, HypothesisStatus::waived};
        constexpr BoundKind all_bounds[] = {BoundKind::lower, BoundKind::upper, BoundKind::window, BoundKind::none};
    }

    auto AuditReport::add_hypothesis(std::string name, HypothesisStatus status, std::string detail, Json params) -> void
    {
        hypotheses.push_back(HypothesisRecord{std::move(name), status, std::move(detail), std::move(params)});
    }

    auto AuditReport::hypotheses_met() const -> bool
    {
        for (auto & h : hypotheses) {
            if (h.status == HypothesisStatus::fail)
                return false;
            if (mode == Mode::strict && h.status != HypothesisStatus::pass)
                return false;
        }
        return true;
    }

    auto AuditReport::bound_holds() const -> bool
    {
        switch (bound_kind) {
            case BoundKind::lower:  return tolerance.geq(measured, bound_low);
            case BoundKind::upper:  return tolerance.leq(measured, bound_high);
            case BoundKind::window: return tolerance.geq(measured, bound_low) && tolerance.leq(measured, bound_high);
            case BoundKind::none:   return true;
        }
        return false;
    }

    auto AuditReport::decide() -> Verdict
    {
        if (! hypotheses_met())
            verdict = Verdict::hypotheses_not_met;
        else
            verdict = bound_holds() ? Verdict::pass : Verdict::fail;
        return verdict;
    }

    auto to_json(const AuditReport & r) -> Json
    {
        Json hyps = Json::array();
        for (auto & h : r.hypotheses) {
            Json j;
            j["name"] = h.name;
            j["status"] = to_string(h.status);
            j["detail"] = h.detail;
            j["parameters"] = h.parameters;
            hyps.push_back(std::move(j));
        }

        Json j;
        j["lemma"] = r.lemma;
        j["mode"] = to_string(r.mode);
        j["verdict"] = to_string(r.verdict);
        j["measured_name"] = r.measured_name;
        j["measured"] = r.measured;
        j["bound_kind"] = to_string(r.bound_kind);
        j["bound_low"] = r.bound_low;
        j["bound_high"] = r.bound_high;
        j["hypotheses"] = std::move(hyps);
        j["parameters"] = r.parameters;
        j["details"] = r.details;
        j["seed"] = r.seed;
        j["tolerance"] = Json{{"rel", r.tolerance.rel}, {"abs", r.tolerance.abs}};
        j["version"] = r.version;
        j["wall_clock_ms"] = r.wall_clock_ms;
        return j;
    }

    auto report_from_json(const Json & j) -> AuditReport
    {
        try {
            AuditReport r;
            r.lemma = j.at("lemma").get<std::string>();
            r.mode = parse_mode(j.at("mode").get<std::string>());
            r.verdict = parse_enum(j.at("verdict").get<std::string>(), all_verdicts, "verdict");
            r.measured_name = j.at("measured_name").get<std::string>();
            r.measured = j.at("measured").get<double>();
            r.bound_kind = parse_enum(j.at("bound_kind").get<std::string>(), all_bounds, "bound kind");
            r.bound_low = j.at("bound_low").get<double>();
            r.bound_high = j.at("bound_high").get<double>();
            for (auto & h : j.at("hypotheses"))
                r.hypotheses.push_back(HypothesisRecord{h.at("name").get<std::string>(),
                        parse_enum(h.at("status").get<std::string>(), all_statuses, "hypothesis status"),
                        h.at("detail").get<std::string>(), h.at("parameters")});
            r.parameters = j.at("parameters");
            r.details = j.at("details");
            r.seed = j.at("seed").get<std::uint64_t>();
            r.tolerance.rel = j.at("tolerance").at("rel").get<double>();
            r.tolerance.abs = j.at("tolerance").at("abs").get<double>();
            r.version = j.at("version").get<std::string>();
            r.wall_clock_ms = j.at("wall_clock_ms").get<double>();
            return r;
        }
        catch (const nlohmann::json::exception & e) {
            throw ParseError(1, std::string("malformed report: ") + e.what());
        }
    }

    auto canonical_text(const AuditReport & report) -> std::string
    {
        auto copy = report;
        copy.wall_clock_ms = 0.0;
        return to_json(copy).dump(2);
    }

    ReportWriter::ReportWriter(std::filesystem::path directory) :
        _directory(std::move(directory))
    {
        std::error_code ec;
        std::filesystem::create_directories(_directory, ec);
        if (ec)
            throw IoError("cannot create report directory " + _directory.string() + ": " + ec.message());

        std::ifstream index(_directory / "index.csv");
        std::string line;
        bool header = true;
        while (std::getline(index, line)) {
            if (header)
                header = false;
            else if (! line.empty())
                ++_counter;
        }
    }

    auto ReportWriter::write(const AuditReport & report) -> std::filesystem::path
    {
        auto name = report.lemma + "-" + std::to_string(report.seed) + "-" + std::to_string(_counter) + ".json";
        auto file = _directory / name;
        {
            std::ofstream out(file, std::ios::binary);
            out << to_json(report).dump(2) << '\n';
            if (! out)
                throw IoError("cannot write " + file.string());
        }

        auto index_path = _directory / "index.csv";
        bool fresh = ! std::filesystem::exists(index_path);
        std::ofstream index(index_path, std::ios::app | std::ios::binary);
        if (fresh)
            index << "lemma,mode,verdict,measured,bound_low,bound_high,seed\n";
        std::ostringstream row;
        row.precision(17);
        row << report.lemma << ',' << to_string(report.mode) << ',' << to_string(report.verdict) << ','
            << report.measured << ',' << report.bound_low << ',' << report.bound_high << ',' << report.seed << '\n';
        index << row.str();
        if (! index)
            throw IoError("cannot append to " + index_path.string());

        ++_counter;
        return file;
    }

    auto read_report(const std::filesystem::path & file) -> AuditReport
    {
        std::ifstream in(file, std::ios::binary);
        if (! in)
            throw IoError("cannot read " + file.string());
        try {
            return report_from_json(Json::parse(in));
        }
        catch (const nlohmann::json::parse_error & e) {
            throw ParseError(1, std::string("malformed report: ") + e.what());
        }
    }
}
