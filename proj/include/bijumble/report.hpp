#pragma once

#include <bijumble/tolerance.hpp>

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace bijumble
{
    using Json = nlohmann::ordered_json;

    inline constexpr const char * toolkit_version = "1.0.0";

    enum class Mode { strict, relaxed };
    enum class Verdict { pass, fail, hypotheses_not_met };

    /// pass / fail are verified outcomes; unverified means only
    /// non-certifying evidence exists; waived marks a hypothesis whose
    /// constants were replaced by declared slack (relaxed mode only).
    enum class HypothesisStatus { pass, fail, unverified, waived };

    enum class BoundKind { lower, upper, window, none };

    auto to_string(Mode m) -> std::string;
    auto to_string(Verdict v) -> std::string;
    auto to_string(HypothesisStatus s) -> std::string;
    auto to_string(BoundKind b) -> std::string;
    auto parse_mode(const std::string & s) -> Mode;

    struct HypothesisRecord
    {
        std::string name;
        HypothesisStatus status = HypothesisStatus::unverified;
        std::string detail;
        Json parameters = Json::object();

        friend auto operator== (const HypothesisRecord &, const HypothesisRecord &) -> bool = default;
    };

    /// Machine-readable record of one lemma audit.
    struct AuditReport
    {
        std::string lemma;
        Mode mode = Mode::strict;
        std::vector<HypothesisRecord> hypotheses;
        std::string measured_name;
        double measured = 0.0;
        BoundKind bound_kind = BoundKind::none;
        double bound_low = 0.0;
        double bound_high = 0.0;
        Json parameters = Json::object();
        Json details = Json::object();
        Verdict verdict = Verdict::hypotheses_not_met;
        std::uint64_t seed = 0;
        Tolerance tolerance;
        std::string version = toolkit_version;
        double wall_clock_ms = 0.0;

        auto add_hypothesis(std::string name, HypothesisStatus status, std::string detail = "",
                Json parameters = Json::object()) -> void;

        /// True when every hypothesis allows a pass/fail verdict in the
        /// report's mode: strict needs all pass; relaxed accepts
        /// unverified and waived but not fail.
        auto hypotheses_met() const -> bool;

        /// Does the measured value satisfy the bound (within tolerance)?
        auto bound_holds() const -> bool;

        /// Sets the verdict from the hypotheses and the bound comparison.
        auto decide() -> Verdict;

        friend auto operator== (const AuditReport &, const AuditReport &) -> bool = default;
    };

    auto to_json(const AuditReport & report) -> Json;
    auto report_from_json(const Json & j) -> AuditReport;

    /// The report with wall-clock zeroed, serialised; equal for equal runs.
    auto canonical_text(const AuditReport & report) -> std::string;

    /// Writes one JSON file per report plus index.csv rows into a run
    /// directory. Writes are serialised through this object.
    class ReportWriter
    {
        public:
            explicit ReportWriter(std::filesystem::path directory);

            /// Returns the file written; throws IoError on failure.
            auto write(const AuditReport & report) -> std::filesystem::path;

            auto directory() const -> const std::filesystem::path & { return _directory; }
            auto written() const -> std::size_t { return _counter; }

        private:
            std::filesystem::path _directory;
            std::size_t _counter = 0;
    };

    auto read_report(const std::filesystem::path & file) -> AuditReport;
}
