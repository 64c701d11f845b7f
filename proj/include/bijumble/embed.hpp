#pragma once

#include <bijumble/graph.hpp>
#include <bijumble/pattern.hpp>
#include <bijumble/report.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bijumble
{
    /// A pattern, a host graph, and one candidate part per pattern vertex
    /// (indexed by pattern vertex).
    struct PartiteInstance
    {
        Pattern pattern;
        Graph host;
        std::vector<VertexSet> parts;

        /// Throws InvariantError if parts of adjacent pattern vertices
        /// overlap, RangeError on a size or universe mismatch.
        auto validate() const -> void;
    };

    /// Pattern file reference, host file reference and "part i: v ..."
    /// lines; relative paths resolve against `base_dir`.
    auto load_partite_instance(std::string_view text, const std::string & base_dir = ".") -> PartiteInstance;
    auto load_partite_instance_file(const std::string & path) -> PartiteInstance;

    /// Labelled copies: injective maps sending each pattern vertex into its
    /// part and each pattern edge onto a host edge.
    auto count_partite_copies(const PartiteInstance & instance, unsigned workers = 0) -> std::int64_t;

    struct Prediction
    {
        double density_product = 0.0;   ///< Π over pattern edges of d_p(V_i,V_j)
        double prediction = 0.0;         ///< density_product · p^{e(H)} · Π|V_i|
    };

    /// Throws ParameterError on an empty part or p <= 0.
    auto predicted_count(const PartiteInstance & instance, double p) -> Prediction;

    enum class WindowSide { lower, two_sided };

    auto to_string(WindowSide s) -> std::string;
    auto parse_window_side(const std::string & s) -> WindowSide;

    /// Compares the exact count with (d(H;G) - γ)p^{e(H)}Π|V_i| (lower) or
    /// the window (d(H;G) ± γ)p^{e(H)}Π|V_i|. Caller evidence is embedded
    /// as the report's hypotheses.
    auto counting_window_audit(const PartiteInstance & instance, double p, double gamma, WindowSide side,
            std::vector<HypothesisRecord> evidence, Mode mode, std::uint64_t seed, unsigned workers = 0)
        -> AuditReport;

    /// A partite instance with a start vertex x and sets W_y ⊆ V_y for
    /// every y at or after x in the pattern's order (entries before x are
    /// ignored).
    struct SuffixInstance
    {
        PartiteInstance base;
        int x = 0;
        std::vector<VertexSet> w_sets;

        auto validate() const -> void;
    };

    /// The pattern induced on vertices at or after x, keeping their order.
    auto suffix_pattern(const Pattern & pattern, int x) -> Pattern;

    /// Copies of the suffix pattern with each y in W_y.
    auto suffix_count(const SuffixInstance & instance, unsigned workers = 0) -> std::int64_t;

    /// Audits the suffix-count bound (4p)^{e(H^{≥x})} Π|W_y|. beta < 0
    /// means measure it: the largest γ/sqrt(|V_i||V_j|) over pattern edges,
    /// from exact certificates when a side fits and spectral ones
    /// otherwise. In relaxed mode `beta_constant` replaces ½ε(50Δ)^{-Δ}.
    auto suffix_bound_audit(const SuffixInstance & instance, double p, double eps, double beta, Mode mode,
            double beta_constant, std::uint64_t seed, unsigned workers = 0) -> AuditReport;

    struct OptialphaResult
    {
        double sum = 0.0;
        double bound = 0.0;
        bool holds = false;
        int P = 0;
        int C = 0;
        bool p_in_lemma_range = false;   ///< p ≤ 1/10
        std::uint64_t vectors = 0;
    };

    constexpr std::uint64_t optialpha_capacity = 100000000;

    /// Evaluates Σ_{α ∈ [0,P]^q \ 0} 2^{Σα} / max_{α_i≠0} 2^{2α_i} p^{b_i}
    /// against (50q)^q p^{1-C}, with P = ⌊log₂ 1/p⌋ and C = max(b_i + i).
    /// Throws ParameterError if b is empty, negative or increasing, or
    /// p ∉ (0,1); CapacityError if (P+1)^q exceeds the capacity.
    auto optialpha_check(double p, std::span<const int> b, unsigned workers = 0) -> OptialphaResult;
}
