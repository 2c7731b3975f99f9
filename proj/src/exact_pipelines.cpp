#include "gapcm/exact.hpp"
#include "gapcm/heuristics.hpp"

namespace gapcm {

SolveResult solve_exact_kgaps(const BipartiteInstance& inst, int k, std::chrono::duration<double> time_budget) {
    const OrderingModel model = build_kgap_model(inst, k);
    return solve_branch_and_bound(model, time_budget, solve_kgaps(inst, HeuristicKind::median, k));
}

SolveResult solve_exact_sidegaps(const BipartiteInstance& inst, std::chrono::duration<double> time_budget) {
    const BipartiteInstance reals = real_subinstance(inst);
    const OrderingModel model = build_base_oscm_model(reals);
    SolveResult result =
        solve_branch_and_bound(model, time_budget, heuristic_real_order(inst, HeuristicKind::median));
    if (!result.permutation) result.permutation = heuristic_real_order(inst, HeuristicKind::median);

    const auto start = std::chrono::steady_clock::now();
    result.permutation = side_gap_merge(inst, *result.permutation);
    result.objective = count_crossings(inst, *result.permutation);
    result.wall_time += std::chrono::steady_clock::now() - start;
    return result;
}

SolveResult solve_exact_unrestricted(const BipartiteInstance& inst, std::chrono::duration<double> time_budget) {
    const OrderingModel model = build_base_oscm_model(inst);
    return solve_branch_and_bound(model, time_budget, heuristic_order(inst, top_ids(inst), HeuristicKind::median));
}

}  // namespace gapcm
