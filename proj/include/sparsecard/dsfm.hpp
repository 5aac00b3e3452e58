#ifndef SPARSECARD_DSFM_HPP
#define SPARSECARD_DSFM_HPP

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "sparsecard/flow.hpp"

namespace sparsecard {

// g_e(i) = min{i, k-i, delta}
struct DeltaLinear {
    double delta = 1.0;
};
// g_e(i) = i*(k-i)/(k-1)
struct CliquePenalty {};
// g_e(i) = sqrt(min{i, k-i})
struct SqrtPenalty {};
// g_e(i) = min{i, k-i}^p, p in (0,1]
struct PowPenalty {
    double p = 0.9;
};
// g_e(i) = values[i], one value per cardinality 0..k
struct ExplicitAsym {
    std::vector<double> values;
};
// g_e(i) = values[min{i, k-i}], one value per cardinality 0..floor(k/2)
struct ExplicitSym {
    std::vector<double> values;
};

using PenaltySpec =
    std::variant<DeltaLinear, CliquePenalty, SqrtPenalty, PowPenalty, ExplicitAsym, ExplicitSym>;

double evaluate_penalty(const PenaltySpec& p, std::int64_t k, std::int64_t i);

// True when g(i) = g(k-i) for all i and g(0) = 0 (within 1e-12 relative), the
// conditions under which the cheaper symmetric gadget applies.
bool penalty_is_symmetric(const PenaltySpec& p, std::int64_t k);

// For explicit penalties with negative values: add -min uniformly. Returns
// the shifted spec and the shift applied (0 when already nonnegative).
std::pair<PenaltySpec, double> shift_to_nonnegative(const PenaltySpec& p);

struct Component {
    std::vector<std::int64_t> support;  // sorted unique global node ids
    PenaltySpec penalty;
};

struct DSFMInstance {
    std::int64_t n = 0;
    std::vector<Component> components;

    // Structural validity (supports, sizes, concavity). Nonnegativity of all
    // penalty values is additionally required by the reduction, but not by
    // brute_force / evaluate_objective, so it is gated by the flag.
    void validate(bool require_nonnegative) const;
};

double evaluate_objective(const DSFMInstance& inst, const std::vector<bool>& members);

struct SolveOptions {
    std::int64_t scale = 1000000;
    bool force_asymmetric = false;
    int threads = 0;  // 0 = hardware default
};

struct SolveStats {
    std::int64_t nodes = 0;
    std::int64_t edges = 0;
    std::vector<std::int64_t> pieces_per_component;
    double eps = 0.0;
    std::int64_t scale = 1;
    double quantization_bound = 0.0;
    std::size_t arcs_rounded_to_zero = 0;
    double wall_ms = 0.0;
};

struct Solution {
    std::vector<bool> members;  // size n
    double objective = 0.0;
    double reduced_cut_value = 0.0;
    double a_posteriori_ratio = 1.0;
    SolveStats stats;
};

// The reduced graph plus its bookkeeping, before the cut solve. cmd_reduce
// exports this; sparse_card continues to the cut.
struct Reduction {
    FlowNetwork network;
    SolveStats stats;
};

Reduction build_reduction(const DSFMInstance& inst, double eps, const SolveOptions& options = {});

Solution sparse_card(const DSFMInstance& inst, double eps, const SolveOptions& options = {});

struct BruteForceResult {
    std::vector<bool> minimizer;
    double value = 0.0;
};

// Exhaustive minimum over all subsets; guarded to n <= 24. Ties go to the
// smallest subset mask (node i at bit i).
BruteForceResult brute_force(const DSFMInstance& inst);

}  // namespace sparsecard

#endif
