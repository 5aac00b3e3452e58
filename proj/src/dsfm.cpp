#include "sparsecard/dsfm.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>
#include <thread>
#include <type_traits>

#include "sparsecard/plcover.hpp"

namespace sparsecard {

namespace {

double sym_arg(std::int64_t k, std::int64_t i) { return static_cast<double>(std::min(i, k - i)); }

void check_cardinality(std::int64_t k, std::int64_t i) {
    if (i < 0 || i > k)
        throw std::domain_error("evaluate_penalty: cardinality " + std::to_string(i) +
                                " outside [0," + std::to_string(k) + "]");
}

// Run fn(i) for i in [0, count) over a few worker threads; each index writes
// only its own output slot, so results are deterministic.
template <typename Fn>
void parallel_for_index(std::int64_t count, int threads, Fn&& fn) {
    int hw = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    if (count < 16 || hw == 1) {
        for (std::int64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<std::int64_t> next{0};
    for (int w = 0; w < hw; ++w)
        pool.emplace_back([&]() {
            for (std::int64_t i; (i = next.fetch_add(1)) < count;) fn(i);
        });
    for (auto& th : pool) th.join();
}

}  // namespace

double evaluate_penalty(const PenaltySpec& p, std::int64_t k, std::int64_t i) {
    check_cardinality(k, i);
    return std::visit(
        [&](const auto& spec) -> double {
            using T = std::decay_t<decltype(spec)>;
            if constexpr (std::is_same_v<T, DeltaLinear>)
                return std::min(sym_arg(k, i), spec.delta);
            else if constexpr (std::is_same_v<T, CliquePenalty>)
                return k < 2 ? 0.0
                             : static_cast<double>(i) * static_cast<double>(k - i) /
                                   static_cast<double>(k - 1);
            else if constexpr (std::is_same_v<T, SqrtPenalty>)
                return std::sqrt(sym_arg(k, i));
            else if constexpr (std::is_same_v<T, PowPenalty>)
                return std::pow(sym_arg(k, i), spec.p);
            else if constexpr (std::is_same_v<T, ExplicitAsym>)
                return spec.values.at(static_cast<std::size_t>(i));
            else
                return spec.values.at(static_cast<std::size_t>(std::min(i, k - i)));
        },
        p);
}

bool penalty_is_symmetric(const PenaltySpec& p, std::int64_t k) {
    if (std::holds_alternative<DeltaLinear>(p) || std::holds_alternative<CliquePenalty>(p) ||
        std::holds_alternative<SqrtPenalty>(p) || std::holds_alternative<PowPenalty>(p) ||
        std::holds_alternative<ExplicitSym>(p)) {
        return detail::approx_le(std::abs(evaluate_penalty(p, k, 0)), 0.0);
    }
    const auto& vals = std::get<ExplicitAsym>(p).values;
    if (static_cast<std::int64_t>(vals.size()) != k + 1)
        throw validation_error("penalty_is_symmetric: vals(...) length does not match support size");
    if (!detail::approx_le(std::abs(vals.front()), 0.0)) return false;
    for (std::int64_t i = 0; i <= k; ++i) {
        double a = vals[static_cast<std::size_t>(i)];
        double b = vals[static_cast<std::size_t>(k - i)];
        if (std::abs(a - b) > 1e-12 * std::max({std::abs(a), std::abs(b), 1.0})) return false;
    }
    return true;
}

std::pair<PenaltySpec, double> shift_to_nonnegative(const PenaltySpec& p) {
    auto shifted = [](std::vector<double> vals) -> std::pair<std::vector<double>, double> {
        double lo = *std::min_element(vals.begin(), vals.end());
        if (lo >= 0.0) return {std::move(vals), 0.0};
        for (double& v : vals) v -= lo;
        return {std::move(vals), -lo};
    };
    if (const auto* ea = std::get_if<ExplicitAsym>(&p)) {
        auto [vals, shift] = shifted(ea->values);
        return {ExplicitAsym{std::move(vals)}, shift};
    }
    if (const auto* es = std::get_if<ExplicitSym>(&p)) {
        auto [vals, shift] = shifted(es->values);
        return {ExplicitSym{std::move(vals)}, shift};
    }
    return {p, 0.0};  // closed forms are nonnegative already
}

void DSFMInstance::validate(bool require_nonnegative) const {
    if (n < 1) throw validation_error("instance: n must be >= 1");
    for (std::size_t c = 0; c < components.size(); ++c) {
        const Component& comp = components[c];
        const std::string where = "component " + std::to_string(c + 1);
        if (comp.support.empty()) throw validation_error(where + ": empty support");
        for (std::size_t i = 0; i < comp.support.size(); ++i) {
            if (comp.support[i] < 0 || comp.support[i] >= n)
                throw validation_error(where + ": node id out of range");
            if (i > 0 && comp.support[i] <= comp.support[i - 1])
                throw validation_error(where + ": support must be sorted and unique");
        }
        const std::int64_t k = static_cast<std::int64_t>(comp.support.size());
        std::visit(
            [&](const auto& spec) {
                using T = std::decay_t<decltype(spec)>;
                if constexpr (std::is_same_v<T, DeltaLinear>) {
                    if (!(spec.delta > 0.0)) throw validation_error(where + ": dlin delta must be > 0");
                } else if constexpr (std::is_same_v<T, PowPenalty>) {
                    if (!(spec.p > 0.0) || !(spec.p <= 1.0))
                        throw validation_error(where + ": pow exponent must lie in (0,1]");
                } else if constexpr (std::is_same_v<T, ExplicitAsym>) {
                    if (static_cast<std::int64_t>(spec.values.size()) != k + 1)
                        throw validation_error(where + ": vals(...) needs k+1 values");
                    for (std::size_t i = 2; i < spec.values.size(); ++i) {
                        double d1 = spec.values[i - 1] - spec.values[i - 2];
                        double d2 = spec.values[i] - spec.values[i - 1];
                        if (!detail::approx_le(d2, d1))
                            throw validation_error(where + ": vals(...) must be concave");
                    }
                } else if constexpr (std::is_same_v<T, ExplicitSym>) {
                    if (static_cast<std::int64_t>(spec.values.size()) != k / 2 + 1)
                        throw validation_error(where + ": symvals(...) needs floor(k/2)+1 values");
                    if (std::abs(spec.values.front()) > 1e-12)
                        throw validation_error(where + ": symvals(...) must start at 0");
                    for (std::size_t i = 1; i < spec.values.size(); ++i) {
                        if (!detail::approx_le(spec.values[i - 1], spec.values[i]))
                            throw validation_error(where + ": symvals(...) must be nondecreasing");
                        if (i >= 2) {
                            double d1 = spec.values[i - 1] - spec.values[i - 2];
                            double d2 = spec.values[i] - spec.values[i - 1];
                            if (!detail::approx_le(d2, d1))
                                throw validation_error(where + ": symvals(...) must be concave");
                        }
                    }
                }
            },
            comp.penalty);
        if (require_nonnegative) {
            for (std::int64_t i = 0; i <= k; ++i)
                if (evaluate_penalty(comp.penalty, k, i) < 0.0)
                    throw validation_error(where +
                                           ": penalty takes negative values; apply "
                                           "shift_to_nonnegative first");
        }
    }
}

double evaluate_objective(const DSFMInstance& inst, const std::vector<bool>& members) {
    double total = 0.0;
    for (const Component& comp : inst.components) {
        std::int64_t inside = 0;
        for (std::int64_t v : comp.support)
            if (members[static_cast<std::size_t>(v)]) ++inside;
        total += evaluate_penalty(comp.penalty, static_cast<std::int64_t>(comp.support.size()), inside);
    }
    return total;
}

namespace {

struct ComponentReduction {
    GadgetGraph gadget;
    std::int64_t pieces = 0;
};

ComponentReduction reduce_component(const Component& comp, double eps, bool force_asymmetric) {
    const std::int64_t k = static_cast<std::int64_t>(comp.support.size());
    ComponentReduction out;
    if (k == 1) {
        out.gadget = unary_gadget(evaluate_penalty(comp.penalty, 1, 0),
                                  evaluate_penalty(comp.penalty, 1, 1));
        out.pieces = 1;
        return out;
    }
    const bool symmetric = !force_asymmetric && penalty_is_symmetric(comp.penalty, k);
    if (symmetric) {
        auto h = MonotoneConcaveSeq::from_generator(
            k / 2, [&](std::int64_t i) { return evaluate_penalty(comp.penalty, k, i); });
        PLFunction cover = symmetric_pl_cover(h, eps);
        out.pieces = static_cast<std::int64_t>(cover.piece_count());
        out.gadget = sym_cgf_to_gadget(sym_pl_to_cgf(cover), k);
    } else {
        auto g = ConcaveSeq::from_generator(
            k, [&](std::int64_t i) { return evaluate_penalty(comp.penalty, k, i); });
        PLFunction cover = greedy_pl_cover(g, eps);
        out.pieces = static_cast<std::int64_t>(cover.piece_count());
        out.gadget = cgf_to_gadget(pl_to_cgf(cover));
    }
    return out;
}

}  // namespace

Reduction build_reduction(const DSFMInstance& inst, double eps, const SolveOptions& options) {
    inst.validate(/*require_nonnegative=*/true);
    if (eps < 0.0) throw std::domain_error("build_reduction: eps must be >= 0");

    const std::int64_t R = static_cast<std::int64_t>(inst.components.size());
    std::vector<ComponentReduction> reduced(static_cast<std::size_t>(R));
    parallel_for_index(R, options.threads, [&](std::int64_t c) {
        reduced[static_cast<std::size_t>(c)] =
            reduce_component(inst.components[static_cast<std::size_t>(c)], eps,
                             options.force_asymmetric);
    });

    std::vector<PlacedGadget> placed;
    placed.reserve(static_cast<std::size_t>(R));
    SolveStats stats;
    stats.eps = eps;
    stats.scale = options.scale;
    for (std::int64_t c = 0; c < R; ++c) {
        stats.pieces_per_component.push_back(reduced[static_cast<std::size_t>(c)].pieces);
        placed.push_back({std::move(reduced[static_cast<std::size_t>(c)].gadget),
                          inst.components[static_cast<std::size_t>(c)].support});
    }

    BuildStats build_stats;
    Reduction red;
    red.network = build_network(placed, inst.n, options.scale, &build_stats);
    stats.nodes = red.network.node_count;
    stats.edges = red.network.arc_pair_count();
    stats.arcs_rounded_to_zero = build_stats.arcs_rounded_to_zero;
    const std::int64_t rounded_arcs =
        stats.edges + static_cast<std::int64_t>(build_stats.arcs_rounded_to_zero);
    stats.quantization_bound =
        0.5 * static_cast<double>(rounded_arcs) / static_cast<double>(options.scale);
    red.stats = stats;
    return red;
}

Solution sparse_card(const DSFMInstance& inst, double eps, const SolveOptions& options) {
    auto start = std::chrono::steady_clock::now();
    Reduction red = build_reduction(inst, eps, options);
    CutResult cut = min_st_cut(red.network);

    Solution sol;
    sol.members.assign(static_cast<std::size_t>(inst.n), false);
    for (std::int64_t v = 0; v < inst.n; ++v)
        sol.members[static_cast<std::size_t>(v)] = cut.source_side[static_cast<std::size_t>(v)];
    sol.objective = evaluate_objective(inst, sol.members);
    sol.reduced_cut_value = cut.cut_value;
    sol.stats = red.stats;

    // Certified bound: the exact reduced min cut is at least the computed one
    // minus the quantization slack, and upper-bounds (1+eps) * OPT from below:
    // OPT >= (cut - q) / (1+eps).
    double lower = cut.cut_value - red.stats.quantization_bound;
    if (sol.objective <= 0.0) {
        sol.a_posteriori_ratio = 1.0;
    } else if (lower <= 0.0) {
        sol.a_posteriori_ratio = std::numeric_limits<double>::infinity();
    } else {
        sol.a_posteriori_ratio = std::max(1.0, (1.0 + eps) * sol.objective / lower);
    }
    sol.stats.wall_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    return sol;
}

BruteForceResult brute_force(const DSFMInstance& inst) {
    inst.validate(/*require_nonnegative=*/false);
    if (inst.n > 24)
        throw size_error("brute_force: n=" + std::to_string(inst.n) + " exceeds guard 24");

    // Per-component penalty tables and support masks.
    const std::size_t R = inst.components.size();
    std::vector<std::uint32_t> masks(R, 0);
    std::vector<std::vector<double>> tables(R);
    for (std::size_t c = 0; c < R; ++c) {
        const Component& comp = inst.components[c];
        for (std::int64_t v : comp.support) masks[c] |= (std::uint32_t{1} << v);
        const std::int64_t k = static_cast<std::int64_t>(comp.support.size());
        tables[c].resize(static_cast<std::size_t>(k) + 1);
        for (std::int64_t i = 0; i <= k; ++i)
            tables[c][static_cast<std::size_t>(i)] = evaluate_penalty(comp.penalty, k, i);
    }

    std::uint32_t best_mask = 0;
    double best = std::numeric_limits<double>::infinity();
    const std::uint32_t limit = std::uint32_t{1} << inst.n;
    for (std::uint32_t mask = 0; mask < limit; ++mask) {
        double value = 0.0;
        for (std::size_t c = 0; c < R; ++c)
            value += tables[c][static_cast<std::size_t>(__builtin_popcount(mask & masks[c]))];
        if (value < best) {
            best = value;
            best_mask = mask;
        }
    }
    BruteForceResult out;
    out.value = best;
    out.minimizer.assign(static_cast<std::size_t>(inst.n), false);
    for (std::int64_t v = 0; v < inst.n; ++v)
        out.minimizer[static_cast<std::size_t>(v)] = (best_mask >> v) & 1u;
    return out;
}

}  // namespace sparsecard
