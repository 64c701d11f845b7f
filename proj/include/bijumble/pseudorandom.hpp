#pragma once

#include <bijumble/graph.hpp>
#include <bijumble/report.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

namespace bijumble
{
    enum class CertificateMethod { spectral, exact, search };

    auto to_string(CertificateMethod m) -> std::string;

    /// Evidence about the smallest γ for which a pair is (p,γ)-bijumbled.
    /// exact: gamma is that minimum and the witness attains it. spectral:
    /// gamma is an upper bound. search: gamma is a lower bound attained by
    /// the witness.
    struct JumbleCertificate
    {
        CertificateMethod method = CertificateMethod::exact;
        double p = 0.0;
        double gamma = 0.0;
        std::optional<std::pair<VertexSet, VertexSet>> witness;
        /// e(U',V') - p|U'||V'| on the witness.
        double discrepancy = 0.0;
        bool sound_upper = false;
        std::uint64_t iterations = 0;
    };

    auto to_json(const JumbleCertificate & c) -> Json;

    constexpr int exact_side_limit = 22;

    /// |e(U',V') - p|U'||V'|| / sqrt(|U'||V'|).
    auto normalized_discrepancy(std::int64_t edges, std::int64_t a, std::int64_t b, double p) -> double;

    /// Minimum γ over all nonempty subset pairs, enumerating subsets of the
    /// smaller side. Throws CapacityError when that side exceeds `limit`.
    auto exact_jumble_gamma(const BipartitePairView & pair, double p, int limit = exact_side_limit,
            unsigned workers = 0) -> JumbleCertificate;

    struct SpectralOptions
    {
        double tolerance = 1e-9;
        int max_iterations = 10000;
        std::uint64_t seed = 0x5eed;
    };

    /// σ_max(A - pJ) by power iteration on the centred biadjacency array.
    /// Throws ConvergenceError at the iteration cap.
    auto spectral_jumble_bound(const BipartitePairView & pair, double p, const SpectralOptions & options = {})
        -> JumbleCertificate;

    /// Seeded hill-climbing over single-vertex toggles. Returns a witness
    /// only when some local optimum exceeds gamma.
    auto search_jumble_violation(const BipartitePairView & pair, double p, double gamma, int trials,
            std::uint64_t seed, unsigned workers = 0) -> std::optional<JumbleCertificate>;

    /// The best local optimum found, whether or not it exceeds anything.
    auto search_jumble_best(const BipartitePairView & pair, double p, int trials, std::uint64_t seed,
            unsigned workers = 0) -> JumbleCertificate;

    struct DegreeOutliers
    {
        int outliers = 0;
        double bound = 0.0;
        bool within_bound = true;
    };

    /// Left vertices whose right-degree is off p|V| by more than
    /// gamma_dev·p|V|, against 2c'²p^{2k-2}gamma_dev⁻²|U|.
    auto degree_outlier_census(const BipartitePairView & pair, double p, double c_prime, double k, double gamma_dev)
        -> DegreeOutliers;

    /// ⅛(c')⁻²p^{1-2k}; requires c' ∈ (0,¼], p ∈ (0,¼], k ≥ 1.
    auto min_size_bound(double c_prime, double p, double k) -> double;

    /// The c' with gamma = c'p^k sqrt(|U||V|).
    auto bijumble_constant(double gamma, double p, double k, std::int64_t left_size, std::int64_t right_size) -> double;
}
