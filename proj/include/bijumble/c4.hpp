#pragma once

#include <bijumble/graph.hpp>
#include <bijumble/pseudorandom.hpp>
#include <bijumble/regularity.hpp>
#include <bijumble/report.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace bijumble
{
    enum class PairClass : std::uint8_t { typical, bad, heavy };

    auto to_string(PairClass c) -> std::string;

    /// Left pairs classified by codegree into the right side: heavy when
    /// ≥ 4q²|V|, bad when ≥ (1+δ)q²|V| and not heavy, typical otherwise.
    /// labels (when requested) list pairs (i,j), i<j, of left positions in
    /// row-major order.
    struct PairClassCensus
    {
        double q = 0.0;
        double delta = 0.0;
        std::int64_t typical = 0, bad = 0, heavy = 0;
        std::vector<PairClass> labels;
    };

    struct C4Census
    {
        std::int64_t total = 0;
        std::int64_t through_heavy = 0, through_bad = 0, through_typical = 0;
        PairClassCensus classes;
        /// Present when heavy-pair hypothesis parameters were supplied.
        std::optional<double> heavy_bound;
        std::optional<double> c_prime;
        bool degree_hypothesis = false;   ///< deg(u;V) ≤ 2p|V| for all u
        bool heavy_within_bound = true;
    };

    /// Unlabelled C4 count, Σ over left pairs of C(codegree, 2).
    auto count_c4(const BipartitePairView & pair, unsigned workers = 0) -> std::int64_t;

    auto classify_pairs(const BipartitePairView & pair, double q, double delta, bool with_labels = false,
            unsigned workers = 0) -> PairClassCensus;

    struct HeavyParameters
    {
        double p = 0.0;
        double c_prime = 0.0;
    };

    /// C4 totals split by the class of their left pair. With `heavy`, the
    /// heavy part is compared against 64(c')²p⁴|U|²|V|² and the degree
    /// hypothesis is checked.
    auto c4_partition_by_class(const BipartitePairView & pair, double q, double delta,
            std::optional<HeavyParameters> heavy = std::nullopt, unsigned workers = 0) -> C4Census;

    /// The c' for which gamma = c'p^{3/2}(log₂ 1/p)^{-1/2} sqrt(|U||V|).
    auto heavy_lemma_constant(double gamma, double p, std::int64_t left_size, std::int64_t right_size) -> double;

    struct CsDefect
    {
        double lhs = 0.0;           ///< Σ aᵢ²
        double rhs = 0.0;           ///< k a² (1 + μδ²/(1-μ))
        bool holds = false;
        bool hypotheses_met = false;
        double average = 0.0;
        double top_average = 0.0;   ///< mean of the ⌈μk⌉ largest values
        double bottom_average = 0.0;
        int block = 0;              ///< ⌈μk⌉
    };

    /// The upper-block hypothesis also needs μ(1+δ) ≤ 1. Throws
    /// ParameterError on an empty list or μ ∉ [0,1), δ < 0.
    auto cs_defect_check(std::span<const double> values, double a, double delta, double mu) -> CsDefect;

    /// Relaxed-mode slack replacing the ε⁸ and ε¹³ factors.
    struct C4Slack
    {
        double dense = 0.1;
        double irregular = 0.0;
    };

    /// Lower bounds on C4 for dense and (ε)-irregular pairs. Strict mode
    /// checks the size and density hypotheses with the stated constants;
    /// relaxed mode waives them and uses `slack`.
    auto c4_dense_irregular_audit(const BipartitePairView & pair, double eps, Mode mode, const C4Slack & slack,
            const RegularityOptions & regularity) -> AuditReport;

    /// The C4 window ¼(d⁴ ± 100(c+ε)^{1/2})p⁴|U|²|V|² for a pair of G inside
    /// the host. A negative c is replaced by the measured constant.
    auto c4_regular_bijumbled_audit(const Graph & host, const BipartitePairView & pair, double eps, double d,
            double p, double c, Mode mode, const RegularityOptions & regularity) -> AuditReport;
}
