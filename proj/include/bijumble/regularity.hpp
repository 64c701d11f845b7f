#pragma once

#include <bijumble/graph.hpp>
#include <bijumble/pseudorandom.hpp>
#include <bijumble/report.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace bijumble
{
    enum class RegularityMethod { exact, sampled };
    enum class FailureReason { none, density_floor, irregularity_witness };

    auto to_string(RegularityMethod m) -> std::string;
    auto to_string(FailureReason r) -> std::string;
    auto parse_regularity_method(const std::string & s) -> RegularityMethod;

    struct RegularityWitness
    {
        VertexSet left, right;
        double p_density = 0.0;
    };

    /// Outcome of a regularity evaluation. deviation is the largest
    /// |d_p(U',W') - d_p(U,W)| found over admissible subpairs, attained by
    /// worst_witness. A sampled verdict of regular only means no violation
    /// was found.
    struct RegularityVerdict
    {
        bool regular = true;
        double epsilon = 0.0;
        double p = 0.0;
        double base_p_density = 0.0;
        double deviation = 0.0;
        std::optional<RegularityWitness> worst_witness;
        RegularityMethod method = RegularityMethod::exact;
        FailureReason reason = FailureReason::none;
        /// Set by the (ε,d,p) check only.
        std::optional<double> density_floor;
    };

    auto to_json(const RegularityVerdict & v) -> Json;

    /// Smallest integer size that is at least eps·n (and at least 1).
    auto min_subset_size(double eps, int n) -> int;

    /// How to decide regularity; trials, seed and refine apply to the
    /// sampled method, limit to the exact one.
    struct RegularityOptions
    {
        RegularityMethod method = RegularityMethod::exact;
        int trials = 200;
        std::uint64_t seed = 0;
        /// Also try degree-sorted prefixes of W' against each drawn U'.
        bool refine = true;
        /// One alternating U'/W' step on top of refine.
        bool alternate = false;
        int limit = exact_side_limit;
        unsigned workers = 0;
    };

    /// Enumerates every admissible U' on the smaller side; for each, the
    /// extreme W' of the minimum admissible size is a degree-sorted prefix.
    /// Throws CapacityError above `limit`, ParameterError unless ε ∈ (0,1).
    auto exact_regularity(const BipartitePairView & pair, double eps, double p, int limit = exact_side_limit,
            unsigned workers = 0) -> RegularityVerdict;

    /// `trials` seeded uniform subpairs of the minimum admissible sizes,
    /// optionally refined per trial: degree-sorted prefixes of W', then
    /// (with `alternate`) U' re-picked by degree into that prefix and W'
    /// re-picked against the new U'.
    auto sampled_regularity(const BipartitePairView & pair, double eps, double p, int trials, std::uint64_t seed,
            bool refine = true, unsigned workers = 0, bool alternate = false) -> RegularityVerdict;

    auto check_regularity(const BipartitePairView & pair, double eps, double p, const RegularityOptions & options)
        -> RegularityVerdict;

    /// (ε,d,p)-regularity: the method's verdict and d_p(U,W) ≥ d - ε.
    /// A failing floor is reported in preference to a witness.
    auto check_eps_d_p(const BipartitePairView & pair, double eps, double d, double p,
            const RegularityOptions & options) -> RegularityVerdict;

    /// (ε)-regularity, read as (ε,p)-regularity with p the measured density.
    auto check_eps_regular(const BipartitePairView & pair, double eps, const RegularityOptions & options)
        -> RegularityVerdict;

    struct SliceCheck
    {
        RegularityVerdict slice;     ///< regularity of (U',W') at ε/γ
        double base_p_density = 0.0;
        double slice_p_density = 0.0;
        bool density_within = true;  ///< slice p-density within base ± ε
        bool holds = true;
    };

    /// Audits the slicing conclusion on a concrete subpair. Throws
    /// ParameterError when |U'| < γ|U|, |W'| < γ|W|, ε ≥ γ, or the slice is
    /// not inside the pair.
    auto slice_and_check(const BipartitePairView & pair, const VertexSet & left_slice, const VertexSet & right_slice,
            double eps, double gamma, double p, const RegularityOptions & options) -> SliceCheck;

    struct ExtensionCheck
    {
        RegularityVerdict base;           ///< (ε,d,p) on (U,V)
        JumbleCertificate host_certificate;
        double required_gamma = 0.0;      ///< c·p·sqrt(|U||V|)
        bool base_regular = false;
        bool host_bijumbled = false;
        bool hypotheses_met = false;
        RegularityVerdict extended;       ///< (2ε,d,p) on (U',V')
        bool conclusion_holds = false;
    };

    /// Audits the extension statement: (U,V) (ε,d,p)-regular in G and
    /// (U',V') (p, cp·sqrt(|U||V|))-bijumbled in the host give (U',V')
    /// (2ε,d,p)-regular. The host certificate is exact when it fits, else
    /// spectral. Throws ParameterError listing any violated size or
    /// parameter hypothesis.
    auto extend_and_check(const Graph & host, const BipartitePairView & base, const BipartitePairView & extended,
            double eps, double d, double p, double c, const RegularityOptions & options) -> ExtensionCheck;
}
