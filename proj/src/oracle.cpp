#include <algorithm>

#include "gapcm/exact.hpp"

namespace gapcm {

namespace {

bool accepts(const OracleQuery& query, std::size_t runs, bool side_only) {
    switch (query.mode) {
        case OracleMode::unrestricted:
            return true;
        case OracleMode::sidegap:
            return side_only;
        case OracleMode::kgap:
            return runs <= static_cast<std::size_t>(std::max(query.k, 0));
    }
    return false;
}

}  // namespace

std::vector<OracleResult> brute_force_oracle(const BipartiteInstance& inst, std::span<const OracleQuery> queries) {
    const InstanceView view(inst);
    const std::size_t p = view.top_count();
    if (p > kOracleMaxTop) {
        throw RefusalError("oracle refuses " + std::to_string(p) + " top nodes (limit " + std::to_string(kOracleMaxTop) +
                           ")");
    }

    // edges as (pi1 position, top index); crossings follow the pairwise definition directly
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t t = 0; t < p; ++t) {
        for (std::size_t pos : view.neighbor_positions(t)) edges.emplace_back(pos, t);
    }

    std::vector<NodeId> ids(view.top_ids().begin(), view.top_ids().end());
    std::sort(ids.begin(), ids.end());

    std::vector<std::optional<std::vector<NodeId>>> best(queries.size());
    std::vector<Count> best_value(queries.size(), 0);
    std::vector<std::size_t> slot(p);

    do {
        for (std::size_t i = 0; i < p; ++i) slot[view.top_index(ids[i])] = i;

        std::size_t runs = 0;
        bool side_only = true;
        for (std::size_t i = 0; i < p;) {
            if (!view.is_dummy(view.top_index(ids[i]))) {
                ++i;
                continue;
            }
            std::size_t j = i;
            while (j + 1 < p && view.is_dummy(view.top_index(ids[j + 1]))) ++j;
            ++runs;
            side_only = side_only && (i == 0 || j == p - 1);
            i = j + 1;
        }

        bool evaluated = false;
        Count crossings = 0;
        for (std::size_t q = 0; q < queries.size(); ++q) {
            if (!accepts(queries[q], runs, side_only)) continue;
            if (!evaluated) {
                for (std::size_t a = 0; a < edges.size(); ++a) {
                    for (std::size_t b = a + 1; b < edges.size(); ++b) {
                        const auto [u1, u2] = edges[a];
                        const auto [v1, v2] = edges[b];
                        if ((u1 < v1 && slot[u2] > slot[v2]) || (u1 > v1 && slot[u2] < slot[v2])) ++crossings;
                    }
                }
                evaluated = true;
            }
            if (!best[q] || crossings < best_value[q]) {
                best[q] = ids;
                best_value[q] = crossings;
            }
        }
    } while (std::next_permutation(ids.begin(), ids.end()));

    std::vector<OracleResult> results;
    results.reserve(queries.size());
    for (std::size_t q = 0; q < queries.size(); ++q) {
        if (!best[q]) throw RefusalError("oracle found no feasible permutation");
        results.push_back(OracleResult{Permutation(*best[q]), best_value[q]});
    }
    return results;
}

OracleResult brute_force_oracle(const BipartiteInstance& inst, OracleQuery query) {
    return brute_force_oracle(inst, std::span<const OracleQuery>(&query, 1)).front();
}

}  // namespace gapcm
