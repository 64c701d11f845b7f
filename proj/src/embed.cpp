#include <bijumble/embed.hpp>
#include <bijumble/error.hpp>
#include <bijumble/parallel.hpp>
#include <bijumble/pseudorandom.hpp>
#include <bijumble/tolerance.hpp>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace bijumble
{
    namespace
    {
        constexpr std::size_t embed_chunks = 64;
        constexpr int exact_certificate_side = 12;

        auto now_ms() -> double
        {
            using namespace std::chrono;
            return duration<double, std::milli>(steady_clock::now().time_since_epoch()).count();
        }

        auto trim(std::string_view s) -> std::string_view
        {
            while (! s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
                s.remove_prefix(1);
            while (! s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
                s.remove_suffix(1);
            return s;
        }
    }

    auto PartiteInstance::validate() const -> void
    {
        const int m = pattern.size();
        if (int(parts.size()) != m)
            throw RangeError("expected " + std::to_string(m) + " parts, got " + std::to_string(parts.size()));
        for (auto & part : parts)
            if (part.universe() != host.vertex_count())
                throw RangeError("part universe does not match the host");
        for (auto [i, j] : pattern.graph().edges())
            if (! parts[i].disjoint_from(parts[j]))
                throw InvariantError("parts " + std::to_string(i) + " and " + std::to_string(j)
                        + " overlap across a pattern edge");
    }

    auto load_partite_instance(std::string_view text, const std::string & base_dir) -> PartiteInstance
    {
        std::optional<Pattern> pattern;
        std::optional<Graph> host;
        std::vector<std::pair<int, std::string>> part_lines;
        std::size_t line_no = 0;

        auto resolve = [&] (std::string_view path) {
            std::filesystem::path p{std::string(path)};
            if (p.is_relative())
                p = std::filesystem::path(base_dir) / p;
            return p.string();
        };

        while (! text.empty()) {
            auto nl = text.find('\n');
            auto line = text.substr(0, nl);
            text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
            ++line_no;
            if (auto hash = line.find('#') ; hash != std::string_view::npos)
                line = line.substr(0, hash);
            line = trim(line);
            if (line.empty())
                continue;

            auto colon = line.find(':');
            if (colon == std::string_view::npos)
                throw ParseError(line_no, "expected \"key: value\"");
            auto key = trim(line.substr(0, colon));
            auto value = trim(line.substr(colon + 1));
            if (key == "pattern")
                pattern = load_pattern_file(resolve(value));
            else if (key == "host")
                host = load_graph_file(resolve(value));
            else if (key.starts_with("part")) {
                auto index = trim(key.substr(4));
                int i = 0;
                try {
                    std::size_t used = 0;
                    i = std::stoi(std::string(index), &used);
                    if (used != index.size())
                        throw std::invalid_argument("trailing");
                }
                catch (const std::exception &) {
                    throw ParseError(line_no, "bad part index");
                }
                part_lines.emplace_back(i, std::string(value));
            }
            else
                throw ParseError(line_no, "unknown key \"" + std::string(key) + "\"");
        }

        if (! pattern || ! host)
            throw ParseError(line_no, "instance needs both \"pattern:\" and \"host:\" lines");

        std::vector<VertexSet> parts(pattern->size(), VertexSet(host->vertex_count(), {}));
        std::vector<bool> seen(pattern->size(), false);
        for (auto & [i, list] : part_lines) {
            if (i < 0 || i >= pattern->size())
                throw RangeError("part index " + std::to_string(i) + " out of range");
            parts[i] = parse_vertex_list(list, host->vertex_count());
            seen[i] = true;
        }
        for (int i = 0 ; i < pattern->size() ; ++i)
            if (! seen[i])
                throw ParseError(line_no, "missing part " + std::to_string(i));

        PartiteInstance instance{std::move(*pattern), std::move(*host), std::move(parts)};
        instance.validate();
        return instance;
    }

    auto load_partite_instance_file(const std::string & path) -> PartiteInstance
    {
        std::ifstream in(path);
        if (! in)
            throw IoError("cannot read " + path);
        std::stringstream buffer;
        buffer << in.rdbuf();
        return load_partite_instance(buffer.str(), std::filesystem::path(path).parent_path().string());
    }

    namespace
    {
        /// Backtracking embedder in the pattern's order.
        class Embedder
        {
            public:
                explicit Embedder(const PartiteInstance & instance) :
                    _instance(instance),
                    _m(instance.pattern.size()),
                    _image(_m, -1),
                    _back(_m),
                    _buffers(_m, BitRow(instance.host.vertex_count()))
                {
                    const auto & order = instance.pattern.order();
                    for (int k = 0 ; k < _m ; ++k)
                        for (int l = 0 ; l < k ; ++l)
                            if (instance.pattern.graph().adjacent(order[k], order[l]))
                                _back[k].push_back(order[l]);
                }

                auto count_from(int first_image) -> std::int64_t
                {
                    _image[_instance.pattern.order()[0]] = first_image;
                    return _m == 1 ? 1 : descend(1);
                }

            private:
                auto descend(int level) -> std::int64_t
                {
                    const auto & order = _instance.pattern.order();
                    const int v = order[level];
                    auto & cand = _buffers[level];
                    cand = _instance.parts[v].mask();
                    for (int w : _back[level])
                        cand &= _instance.host.row(_image[w]);
                    for (int l = 0 ; l < level ; ++l)
                        cand.reset(_image[order[l]]);

                    if (level == _m - 1)
                        return std::int64_t(cand.count());

                    std::int64_t total = 0;
                    cand.for_each([&] (std::size_t c) {
                        _image[v] = int(c);
                        total += descend(level + 1);
                    });
                    return total;
                }

                const PartiteInstance & _instance;
                int _m;
                std::vector<int> _image;
                std::vector<std::vector<int>> _back;
                std::vector<BitRow> _buffers;
        };
    }

    auto count_partite_copies(const PartiteInstance & instance, unsigned workers) -> std::int64_t
    {
        instance.validate();
        if (instance.pattern.size() == 0)
            return 1;

        const auto & first = instance.parts[instance.pattern.order()[0]].members();
        const std::size_t n = first.size();
        if (n == 0)
            return 0;
        const std::size_t chunks = std::min(embed_chunks, n);
        auto parts = run_chunks<std::int64_t>(chunks, workers, [&] (std::size_t c) {
            Embedder embedder(instance);
            std::int64_t total = 0;
            for (std::size_t k = chunk_bound(n, chunks, c) ; k < chunk_bound(n, chunks, c + 1) ; ++k)
                total += embedder.count_from(first[k]);
            return total;
        });
        std::int64_t total = 0;
        for (auto t : parts)
            total += t;
        return total;
    }

    auto predicted_count(const PartiteInstance & instance, double p) -> Prediction
    {
        instance.validate();
        if (! (p > 0.0))
            throw ParameterError("p must be positive");
        for (auto & part : instance.parts)
            if (part.empty())
                throw ParameterError("prediction needs nonempty parts");

        Prediction result;
        result.density_product = 1.0;
        for (auto [i, j] : instance.pattern.graph().edges())
            result.density_product *= p_density(BipartitePairView(instance.host, instance.parts[i], instance.parts[j]), p);
        double volume = 1.0;
        for (auto & part : instance.parts)
            volume *= part.size();
        result.prediction = result.density_product * std::pow(p, double(instance.pattern.graph().edge_count())) * volume;
        return result;
    }

    auto to_string(WindowSide s) -> std::string
    {
        return s == WindowSide::lower ? "lower" : "two_sided";
    }

    auto parse_window_side(const std::string & s) -> WindowSide
    {
        if (s == "lower")
            return WindowSide::lower;
        if (s == "two_sided")
            return WindowSide::two_sided;
        throw ParameterError("unknown window side \"" + s + "\"");
    }

    auto counting_window_audit(const PartiteInstance & instance, double p, double gamma, WindowSide side,
            std::vector<HypothesisRecord> evidence, Mode mode, std::uint64_t seed, unsigned workers) -> AuditReport
    {
        const double start = now_ms();
        AuditReport r;
        r.lemma = side == WindowSide::lower ? "one_sided_counting" : "two_sided_counting";
        r.mode = mode;
        r.seed = seed;
        r.hypotheses = std::move(evidence);
        r.measured_name = "copies";

        auto pred = predicted_count(instance, p);
        double volume = 1.0;
        for (auto & part : instance.parts)
            volume *= part.size();
        const double unit = std::pow(p, double(instance.pattern.graph().edge_count())) * volume;
        const auto count = count_partite_copies(instance, workers);

        r.parameters = Json{{"p", p}, {"gamma", gamma}, {"side", to_string(side)},
            {"pattern", serialize_pattern(instance.pattern)}};
        r.measured = double(count);
        r.bound_low = (pred.density_product - gamma) * unit;
        if (side == WindowSide::lower)
            r.bound_kind = BoundKind::lower;
        else {
            r.bound_kind = BoundKind::window;
            r.bound_high = (pred.density_product + gamma) * unit;
        }
        r.details = Json{{"copies", count}, {"density_product", pred.density_product},
            {"prediction", pred.prediction}, {"ratio", pred.prediction > 0 ? double(count) / pred.prediction : 0.0}};
        r.decide();
        r.wall_clock_ms = now_ms() - start;
        return r;
    }

    auto SuffixInstance::validate() const -> void
    {
        base.validate();
        const int m = base.pattern.size();
        if (x < 0 || x >= m)
            throw RangeError("suffix start vertex out of range");
        if (int(w_sets.size()) != m)
            throw RangeError("expected one W-set per pattern vertex");
        const int start = base.pattern.position(x);
        for (int k = start ; k < m ; ++k) {
            int y = base.pattern.order()[k];
            if (! w_sets[y].subset_of(base.parts[y]))
                throw InvariantError("W-set of vertex " + std::to_string(y) + " is not inside its part");
        }
    }

    auto suffix_pattern(const Pattern & pattern, int x) -> Pattern
    {
        const int start = pattern.position(x);
        std::vector<int> vertices(pattern.order().begin() + start, pattern.order().end());
        return Pattern::identity(pattern.graph().induced(vertices));
    }

    namespace
    {
        auto suffix_partite(const SuffixInstance & instance) -> PartiteInstance
        {
            const int start = instance.base.pattern.position(instance.x);
            std::vector<VertexSet> parts;
            for (int k = start ; k < instance.base.pattern.size() ; ++k)
                parts.push_back(instance.w_sets[instance.base.pattern.order()[k]]);
            return PartiteInstance{suffix_pattern(instance.base.pattern, instance.x), instance.base.host,
                std::move(parts)};
        }
    }

    auto suffix_count(const SuffixInstance & instance, unsigned workers) -> std::int64_t
    {
        instance.validate();
        return count_partite_copies(suffix_partite(instance), workers);
    }

    auto suffix_bound_audit(const SuffixInstance & instance, double p, double eps, double beta, Mode mode,
            double beta_constant, std::uint64_t seed, unsigned workers) -> AuditReport
    {
        const double start_ms = now_ms();
        instance.validate();
        const auto & pattern = instance.base.pattern;
        const auto & graph = pattern.graph();
        const int start = pattern.position(instance.x);

        AuditReport r;
        r.lemma = "suffix_bound";
        r.mode = mode;
        r.seed = seed;
        r.measured_name = "suffix_copies";
        r.bound_kind = BoundKind::upper;

        const int delta = graph.max_degree();
        const int dt = d_tilde(pattern);
        r.parameters = Json{{"p", p}, {"eps", eps}, {"x", instance.x}, {"max_degree", delta}, {"d_tilde", dt},
            {"pattern", serialize_pattern(pattern)}};

        r.add_hypothesis("p_range", p > 0.0 && p < 0.1 ? HypothesisStatus::pass : HypothesisStatus::fail,
                "0 < p < 1/10", Json{{"p", p}});

        bool floors = true;
        Json floor_detail = Json::array();
        for (int k = start ; k < pattern.size() ; ++k) {
            int y = pattern.order()[k];
            int before = 0;
            for (int l = 0 ; l < start ; ++l)
                if (graph.adjacent(y, pattern.order()[l]))
                    ++before;
            double need = eps * std::pow(p, before) * instance.base.parts[y].size();
            bool ok = Tolerance{}.geq(instance.w_sets[y].size(), need);
            floors = floors && ok;
            floor_detail.push_back(Json{{"y", y}, {"size", instance.w_sets[y].size()}, {"required", need}});
        }
        r.add_hypothesis("w_set_floors", floors ? HypothesisStatus::pass : HypothesisStatus::fail,
                "|W_y| >= eps p^{|N^{<x}(y)|} |V_y|", Json{{"sets", floor_detail}});

        Json beta_detail;
        const bool measured = beta < 0.0;
        if (measured) {
            beta = 0.0;
            Json pairs = Json::array();
            for (auto [i, j] : graph.edges()) {
                BipartitePairView view(instance.base.host, instance.base.parts[i], instance.base.parts[j]);
                auto cert = std::min(view.left().size(), view.right().size()) <= exact_certificate_side
                    ? exact_jumble_gamma(view, p, exact_side_limit, workers)
                    : spectral_jumble_bound(view, p);
                double b = cert.gamma / std::sqrt(double(view.left().size()) * double(view.right().size()));
                beta = std::max(beta, b);
                pairs.push_back(Json{{"i", i}, {"j", j}, {"method", to_string(cert.method)}, {"gamma", cert.gamma},
                        {"beta", b}});
            }
            beta_detail["pairs"] = pairs;
        }
        const double exponent = 0.5 + 0.5 * dt;
        const double strict_threshold = 0.5 * eps * std::pow(50.0 * delta, -double(delta)) * std::pow(p, exponent);
        const double relaxed_threshold = beta_constant * std::pow(p, exponent);
        beta_detail["beta"] = beta;
        beta_detail["measured"] = measured;
        beta_detail["strict_threshold"] = strict_threshold;
        if (mode == Mode::relaxed)
            beta_detail["relaxed_threshold"] = relaxed_threshold;

        HypothesisStatus beta_status = HypothesisStatus::fail;
        if (Tolerance{}.leq(beta, strict_threshold))
            beta_status = HypothesisStatus::pass;
        else if (mode == Mode::relaxed && Tolerance{}.leq(beta, relaxed_threshold))
            beta_status = HypothesisStatus::waived;
        r.add_hypothesis("beta_bound", beta_status, "beta <= 1/2 eps (50 Delta)^-Delta p^{1/2 + d~/2}", beta_detail);

        auto sub = suffix_partite(instance);
        const auto count = count_partite_copies(sub, workers);
        double volume = 1.0;
        for (auto & w : sub.parts)
            volume *= w.size();
        const auto suffix_edges = sub.pattern.graph().edge_count();
        r.measured = double(count);
        r.bound_high = std::pow(4.0 * p, double(suffix_edges)) * volume;
        r.details = Json{{"suffix_copies", count}, {"suffix_edges", suffix_edges}, {"w_volume", volume},
            {"ratio", r.bound_high > 0 ? double(count) / r.bound_high : 0.0}};
        r.decide();
        r.wall_clock_ms = now_ms() - start_ms;
        return r;
    }

    auto optialpha_check(double p, std::span<const int> b, unsigned workers) -> OptialphaResult
    {
        if (b.empty())
            throw ParameterError("b must have at least one entry");
        if (! (p > 0.0 && p < 1.0))
            throw ParameterError("p must lie in (0,1)");
        for (std::size_t i = 0 ; i < b.size() ; ++i) {
            if (b[i] < 0)
                throw ParameterError("b entries must be nonnegative");
            if (i > 0 && b[i] > b[i - 1])
                throw ParameterError("b must be nonincreasing");
        }

        const int q = int(b.size());
        OptialphaResult r;
        r.P = int(std::floor(std::log2(1.0 / p) + 1e-12));
        r.p_in_lemma_range = p <= 0.1;
        r.C = 0;
        for (int i = 0 ; i < q ; ++i)
            r.C = std::max(r.C, b[i] + i + 1);

        const std::uint64_t radix = std::uint64_t(r.P) + 1;
        std::uint64_t total = 1;
        for (int i = 0 ; i < q ; ++i) {
            total *= radix;
            if (total > optialpha_capacity)
                throw CapacityError("optialpha enumeration of (P+1)^q vectors", optialpha_capacity);
        }
        r.vectors = total - 1;

        std::vector<double> p_pow(q);
        for (int i = 0 ; i < q ; ++i)
            p_pow[i] = std::pow(p, b[i]);

        // Slices by the first coordinate; the remaining coordinates count
        // in mixed radix within each slice.
        const std::uint64_t per_slice = total / radix;
        auto slices = run_chunks<double>(std::size_t(radix), workers, [&] (std::size_t first) {
            std::vector<int> alpha(q, 0);
            alpha[0] = int(first);
            double sum = 0.0;
            for (std::uint64_t n = 0 ; n < per_slice ; ++n) {
                std::uint64_t rest = n;
                for (int i = q - 1 ; i >= 1 ; --i) {
                    alpha[i] = int(rest % radix);
                    rest /= radix;
                }
                int exponent = 0;
                double denominator = 0.0;
                for (int i = 0 ; i < q ; ++i) {
                    exponent += alpha[i];
                    if (alpha[i] != 0)
                        denominator = std::max(denominator, std::ldexp(p_pow[i], 2 * alpha[i]));
                }
                if (exponent == 0)
                    continue;
                sum += std::ldexp(1.0, exponent) / denominator;
            }
            return sum;
        });
        for (double s : slices)
            r.sum += s;

        r.bound = std::pow(50.0 * q, q) * std::pow(p, 1.0 - r.C);
        r.holds = Tolerance{}.leq(r.sum, r.bound);
        return r;
    }
}
