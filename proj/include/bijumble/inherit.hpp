#pragma once

#include <bijumble/graph.hpp>
#include <bijumble/pseudorandom.hpp>
#include <bijumble/regularity.hpp>
#include <bijumble/report.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bijumble
{
    /// Random host: X = [0,nx), Y = [nx,nx+ny), Z after that; every
    /// cross-part pair an independent Bernoulli(p) edge, no edges inside a
    /// part. The subgraph starts equal to the host.
    auto gen_tripartite(int nx, int ny, int nz, double p, std::uint64_t seed) -> TripartiteSystem;

    /// Keeps each host edge in the subgraph independently with probability d.
    auto sparsify(const TripartiteSystem & system, double d, std::uint64_t seed) -> TripartiteSystem;

    /// Inside a seeded ⌈fraction|Y|⌉ × ⌈fraction|Z|⌉ block of (Y,Z), adds
    /// each host edge missing from the subgraph with probability boost.
    /// Returns the block chosen through the optional out-parameters.
    auto plant_irregular_block(const TripartiteSystem & system, double fraction, double boost, std::uint64_t seed,
            VertexSet * block_y = nullptr, VertexSet * block_z = nullptr) -> TripartiteSystem;

    enum class InheritanceSide { one_sided, two_sided };

    auto to_string(InheritanceSide s) -> std::string;
    auto parse_inheritance_side(const std::string & s) -> InheritanceSide;

    struct VertexVerdict
    {
        int x = 0;
        int degree_y = 0;       ///< |N_Γ(x) ∩ Y|
        int degree_z = 0;       ///< |N_Γ(x) ∩ Z| (two-sided only)
        bool exceptional = false;
        std::string reason;     ///< "", "empty neighborhood", "density floor", "irregularity witness"
        double deviation = 0.0;
        double p_density = 0.0;
    };

    /// One measured bijumbledness hypothesis: the constant c with
    /// γ = c·scale·sqrt(|A||B|) for the scaling the lemma asks for.
    struct BijumbleEvidence
    {
        std::string pair;       ///< "XY", "XZ" or "YZ"
        std::string scaling;    ///< human-readable p-power
        JumbleCertificate certificate;
        double c = 0.0;
    };

    struct InheritanceOutcome
    {
        InheritanceSide side = InheritanceSide::one_sided;
        double eps_prime = 0.0, d = 0.0, p = 0.0;
        std::vector<VertexVerdict> vertices;
        int exceptional = 0;
        double fraction = 0.0;
        double threshold = 0.0;                     ///< ε'|X|
        std::optional<RegularityVerdict> base;      ///< (Y,Z) in G
        std::vector<BijumbleEvidence> bijumbledness;
        std::vector<std::string> warnings;
        double wall_clock_ms = 0.0;
    };

    struct ExperimentOptions
    {
        RegularityOptions regularity;
        /// (Y,Z) is checked at this ε; no check when nonpositive.
        double base_eps = 0.0;
        bool certificates = true;
        SpectralOptions spectral{1e-7, 5000, 0x5eed};
    };

    auto one_sided_experiment(const TripartiteSystem & system, double eps_prime, double d, double p,
            const ExperimentOptions & options) -> InheritanceOutcome;

    auto two_sided_experiment(const TripartiteSystem & system, double eps_prime, double d, double p,
            const ExperimentOptions & options) -> InheritanceOutcome;

    auto to_json(const InheritanceOutcome & outcome, bool per_vertex = false) -> Json;

    /// Report for an outcome: measured exceptional fraction against
    /// `ceiling` (ε' when negative). Bijumbledness constants are never
    /// specified by the statements, so they are unverified in strict mode
    /// and waived in relaxed mode.
    auto inheritance_report(const InheritanceOutcome & outcome, Mode mode, double ceiling, std::uint64_t seed)
        -> AuditReport;

    enum class BadPairDirection { many, few };

    auto to_string(BadPairDirection d) -> std::string;
    auto parse_bad_pair_direction(const std::string & s) -> BadPairDirection;

    struct BadPairParameters
    {
        double d = 0.5;
        double eps_star = 1e-3;
        double delta = 0.5;
        double eps = 1e-3;
        /// Negative: measured from certificates.
        double c_prime = -1.0;
        double p = 0.1;
        /// Relaxed-mode replacement for (ε*)^{10} in the many-direction bound.
        double many_constant = 1e-3;
    };

    /// many: (V,dp,δ)-bad pairs of (Y,Z) in G against (ε*)^{10}d⁴|Y|².
    /// few: Σ_x |P_b(x)| over pairs in N_Γ(x;Y) bad towards Z, against
    /// δp²|X||Y|².
    auto bad_pair_bounds_audit(const TripartiteSystem & system, const BadPairParameters & params,
            BadPairDirection direction, Mode mode, const RegularityOptions & regularity) -> AuditReport;

    /// One batch of inheritance experiments, as read from configuration.
    struct ExperimentPlan
    {
        InheritanceSide side = InheritanceSide::one_sided;
        int nx = 500, ny = 500, nz = 500;
        double p = 0.15;
        double d = 0.5;
        double eps_prime = 0.25;
        std::uint64_t seed = 1;
        int repetitions = 1;
        Mode mode = Mode::relaxed;
        /// Ceiling on the exceptional fraction; ε' when negative.
        double ceiling = -1.0;
        RegularityOptions regularity;
        double base_eps = 0.0;
        bool certificates = true;
        std::optional<double> plant_fraction;
        double plant_boost = 0.0;
    };

    /// Runs every repetition (seed derived per repetition) and returns one
    /// report per repetition.
    auto run_plan(const ExperimentPlan & plan) -> std::vector<AuditReport>;
}
