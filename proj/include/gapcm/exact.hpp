#ifndef GAPCM_EXACT_HPP
#define GAPCM_EXACT_HPP

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gapcm/core.hpp"
#include "gapcm/gap_placement.hpp"

namespace gapcm {

enum class GapRule {
    none,       ///< plain linear ordering model
    at_most_k,  ///< dummy chain fixed, at most max_gaps gaps
    side_gaps,  ///< dummy chain fixed, no dummy between two reals
};

/**
 * @brief 0/1 linear ordering model over the top nodes.
 *
 * Variables x_i_j (v_i before v_j) for every ordered pair of distinct nodes and,
 * for at_most_k, g_i_j for every consecutive pair (v_i, v_j) of the dummy chain.
 * Constraints:
 *   x_ij + x_ji = 1                        every unordered pair
 *   x_ij + x_jk - x_ik <= 1                every ordered triple (lazy, never stored)
 *   x_ij = 1                               consecutive chain pairs
 *   x_ik + x_kj - g_ij <= 1                consecutive chain pairs, v_k not in the chain (at_most_k)
 *   sum g_ij <= k - 1                      (at_most_k)
 *   x_kd + x_dl <= 1                       d in the chain, k != l not in the chain (side_gaps)
 * Objective: minimize sum over ordered pairs of cost(i, j) * x_ij.
 *
 * Models whose gap constraints would be vacuous (fewer than two dummies for
 * at_most_k) are built as GapRule::none so that export/import is lossless.
 */
struct OrderingModel {
    std::vector<NodeId> nodes;
    std::vector<Count> cost;  ///< row-major |nodes| x |nodes|
    std::vector<NodeId> dummy_chain;
    GapRule gap_rule = GapRule::none;
    int max_gaps = 0;

    std::size_t size() const { return nodes.size(); }
    Count coef(std::size_t i, std::size_t j) const { return cost[i * nodes.size() + j]; }

    friend bool operator==(const OrderingModel&, const OrderingModel&) = default;
};

/// Throws InputError for k < 1.
OrderingModel build_kgap_model(const BipartiteInstance& inst, int k);
/// Plain ordering model over every top node of `inst` (pass real_subinstance() for the reals-only base problem).
OrderingModel build_base_oscm_model(const BipartiteInstance& inst);
OrderingModel build_sidegap_model(const BipartiteInstance& inst);

struct LinearTerm {
    std::string var;
    Count coef = 0;
    friend bool operator==(const LinearTerm&, const LinearTerm&) = default;
};

enum class Relation { less_equal, equal };

struct LinearConstraint {
    std::vector<LinearTerm> terms;
    Relation op = Relation::less_equal;
    Count rhs = 0;
    friend bool operator==(const LinearConstraint&, const LinearConstraint&) = default;
};

std::vector<std::string> model_variables(const OrderingModel& model);
/// Nonzero objective terms.
std::vector<LinearTerm> model_objective(const OrderingModel& model);
std::vector<LinearConstraint> model_constraints(const OrderingModel& model, bool include_transitivity);
std::size_t transitivity_constraint_count(const OrderingModel& model);

/// Sum of cost(i, j) over pairs with i before j. Throws InputError unless `pi` orders exactly the model's nodes.
Count model_objective_value(const OrderingModel& model, const Permutation& pi);
/// Whether `pi` satisfies every constraint of the model.
bool model_feasible(const OrderingModel& model, const Permutation& pi);

/**
 * @brief JSON export with every constraint materialized:
 * {"vars":[{"name":...}], "objective":[{"var":...,"coef":int}],
 *  "constraints":[{"terms":[{"var":...,"coef":int}],"op":"<="|"=","rhs":int}]}
 */
std::string export_model(const OrderingModel& model);
/// Inverse of export_model (transitivity rows are recognized and dropped). Throws InputError.
OrderingModel import_model(std::string_view text);

enum class SolveStatus { optimal, timeout_incumbent, infeasible };

std::string_view to_string(SolveStatus status);

struct SolveResult {
    SolveStatus status = SolveStatus::infeasible;
    std::optional<Permutation> permutation;
    Count objective = 0;
    std::chrono::duration<double> wall_time{0.0};
    std::uint64_t nodes_explored = 0;
};

/**
 * @brief depth-first branch and bound over prefixes of the top order.
 *
 * Dummies enter in chain order, gap rules are checked incrementally, and the
 * bound is the prefix cost plus the sum of min(c_ij, c_ji) over the pairs not
 * yet decided. A feasible `incumbent` seeds the search; without one, a
 * chain-first order is used. With a zero budget nothing is searched and the
 * given incumbent (possibly none) is returned with status timeout_incumbent.
 */
SolveResult solve_branch_and_bound(const OrderingModel& model, std::chrono::duration<double> time_budget,
                                   const std::optional<Permutation>& incumbent = std::nullopt);

/// OSCM-kG: model + search seeded with solve_kgaps(median, k). Objective equals count_crossings.
SolveResult solve_exact_kgaps(const BipartiteInstance& inst, int k,
                              std::chrono::duration<double> time_budget = kDefaultTimeBudget);
/// OSCM-SG: exact real order on G[V1 ∪ V2r], then side_gap_merge.
SolveResult solve_exact_sidegaps(const BipartiteInstance& inst,
                                 std::chrono::duration<double> time_budget = kDefaultTimeBudget);
/// Unconstrained OSCM over all top nodes.
SolveResult solve_exact_unrestricted(const BipartiteInstance& inst,
                                     std::chrono::duration<double> time_budget = kDefaultTimeBudget);

/// The enumeration oracle refuses instances it cannot enumerate in reasonable time.
class RefusalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kOracleMaxTop = 9;

enum class OracleMode { unrestricted, sidegap, kgap };

struct OracleQuery {
    OracleMode mode = OracleMode::unrestricted;
    int k = 1;  ///< kgap only
};

struct OracleResult {
    Permutation permutation;
    Count crossings = 0;
};

/**
 * @brief minimum crossings over all permutations of the top layer passing the
 * mode's filter; ties go to the lexicographically smallest id sequence.
 *
 * Throws RefusalError above kOracleMaxTop top nodes.
 */
OracleResult brute_force_oracle(const BipartiteInstance& inst, OracleQuery query);
/// One enumeration answering several queries.
std::vector<OracleResult> brute_force_oracle(const BipartiteInstance& inst, std::span<const OracleQuery> queries);

}  // namespace gapcm

#endif  // GAPCM_EXACT_HPP
