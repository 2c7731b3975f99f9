#include "gapcm/heuristics.hpp"

#include <algorithm>

namespace gapcm {

KeyedNode heuristic_key(const InstanceView& view, std::size_t top_index, HeuristicKind kind) {
    const auto nbrs = view.neighbor_positions(top_index);
    KeyedNode keyed;
    keyed.id = view.top_id(top_index);
    keyed.degree_parity = nbrs.size() % 2 == 1 ? DegreeParity::odd : DegreeParity::even;
    if (nbrs.empty()) {
        keyed.key = Rational(-1);
        return keyed;
    }
    switch (kind) {
        case HeuristicKind::median:
            keyed.key = Rational(static_cast<std::int64_t>(nbrs[(nbrs.size() - 1) / 2]));
            break;
        case HeuristicKind::barycenter: {
            std::int64_t sum = 0;
            for (std::size_t pos : nbrs) sum += static_cast<std::int64_t>(pos);
            keyed.key = Rational(sum, static_cast<std::int64_t>(nbrs.size()));
            break;
        }
    }
    return keyed;
}

Permutation heuristic_order(const InstanceView& view, std::span<const NodeId> subset, HeuristicKind kind) {
    std::vector<KeyedNode> keyed;
    keyed.reserve(subset.size());
    for (NodeId id : subset) keyed.push_back(heuristic_key(view, view.top_index(id), kind));

    std::sort(keyed.begin(), keyed.end(), [](const KeyedNode& a, const KeyedNode& b) {
        if (a.key != b.key) return a.key < b.key;
        if (a.degree_parity != b.degree_parity) return a.degree_parity == DegreeParity::odd;
        return a.id < b.id;
    });

    std::vector<NodeId> order;
    order.reserve(keyed.size());
    for (const KeyedNode& k : keyed) order.push_back(k.id);
    return Permutation(std::move(order));
}

Permutation heuristic_order(const BipartiteInstance& inst, std::span<const NodeId> subset, HeuristicKind kind) {
    return heuristic_order(InstanceView(inst), subset, kind);
}

Permutation heuristic_real_order(const BipartiteInstance& inst, HeuristicKind kind) {
    const auto reals = top_ids(inst, NodeKind::real);
    return heuristic_order(real_subinstance(inst), reals, kind);
}

bool is_dummy_independent_witness(const BipartiteInstance& inst, HeuristicKind kind) {
    const auto reals = top_ids(inst, NodeKind::real);
    const Permutation alone = heuristic_order(real_subinstance(inst), reals, kind);
    const Permutation full = heuristic_order(inst, top_ids(inst), kind);
    return induced(full, reals) == alone;
}

}  // namespace gapcm
