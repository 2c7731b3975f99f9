#include "gapcm/gap_placement.hpp"

#include <algorithm>
#include <numeric>

#include "gapcm/exact.hpp"

namespace gapcm {

namespace {

void require_real_order(const InstanceView& view, const Permutation& real_order) {
    std::size_t reals = 0;
    for (std::size_t i = 0; i < view.top_count(); ++i) reals += view.is_dummy(i) ? 0 : 1;
    for (NodeId id : real_order) {
        if (!view.has_top(id) || view.is_dummy(view.top_index(id))) {
            throw InputError("real order contains " + std::to_string(id) + ", which is not a real top node");
        }
    }
    if (real_order.size() != reals) {
        throw InputError("real order covers " + std::to_string(real_order.size()) + " of " + std::to_string(reals) +
                         " real top nodes");
    }
}

}  // namespace

CanonicalDummyOrder canonical_dummy_order(const InstanceView& view) {
    CanonicalDummyOrder result;
    std::vector<std::pair<std::size_t, NodeId>> keyed;
    for (std::size_t i = 0; i < view.top_count(); ++i) {
        if (!view.is_dummy(i)) continue;
        const std::size_t pos = view.neighbor_positions(i).front();
        keyed.emplace_back(pos, view.top_id(i));
        result.neighbor_pos.emplace(view.top_id(i), pos);
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<NodeId> order;
    order.reserve(keyed.size());
    for (const auto& [pos, id] : keyed) order.push_back(id);
    result.order = Permutation(std::move(order));
    return result;
}

CanonicalDummyOrder canonical_dummy_order(const BipartiteInstance& inst) {
    return canonical_dummy_order(InstanceView(inst));
}

BlockCostTables::BlockCostTables(const InstanceView& view, const Permutation& real_order,
                                 const Permutation& dummy_order)
    : reals_(real_order.size()), dummies_(dummy_order.size()), prefix_((reals_ + 1) * (dummies_ + 1), 0) {
    std::vector<std::size_t> real_idx;
    real_idx.reserve(reals_);
    for (NodeId id : real_order) real_idx.push_back(view.top_index(id));

    std::vector<Count> after_prefix(reals_ + 1);
    std::vector<Count> before_suffix(reals_ + 1);
    for (std::size_t t = 0; t < dummies_; ++t) {
        const std::size_t d = view.top_index(dummy_order[t]);
        after_prefix[0] = 0;
        for (std::size_t i = 0; i < reals_; ++i) after_prefix[i + 1] = after_prefix[i] + view.pair_crossings(real_idx[i], d);
        before_suffix[reals_] = 0;
        for (std::size_t i = reals_; i-- > 0;) before_suffix[i] = before_suffix[i + 1] + view.pair_crossings(d, real_idx[i]);

        for (std::size_t i = 0; i <= reals_; ++i) {
            const std::size_t row = i * (dummies_ + 1);
            prefix_[row + t + 1] = prefix_[row + t] + after_prefix[i] + before_suffix[i];
        }
    }
}

Permutation side_gap_merge(const InstanceView& view, const Permutation& real_order) {
    require_real_order(view, real_order);
    const CanonicalDummyOrder dummies = canonical_dummy_order(view);
    if (dummies.order.empty()) return real_order;

    // real-edge mass per pi1 position, as prefix sums
    std::vector<Count> mass(view.bottom_count() + 1, 0);
    for (std::size_t i = 0; i < view.top_count(); ++i) {
        if (view.is_dummy(i)) continue;
        for (std::size_t pos : view.neighbor_positions(i)) ++mass[pos + 1];
    }
    std::partial_sum(mass.begin(), mass.end(), mass.begin());
    const Count total = mass.back();

    // left cost is nondecreasing and right cost nonincreasing along the canonical order
    const auto ids = dummies.order.order();
    const auto split = std::partition_point(ids.begin(), ids.end(), [&](NodeId d) {
        const std::size_t q = dummies.neighbor_pos.at(d);
        const Count left = mass[q];
        const Count right = total - mass[q + 1];
        return left < right;
    });

    std::vector<NodeId> order(ids.begin(), split);
    order.insert(order.end(), real_order.begin(), real_order.end());
    order.insert(order.end(), split, ids.end());
    return Permutation(std::move(order));
}

Permutation side_gap_merge(const BipartiteInstance& inst, const Permutation& real_order) {
    return side_gap_merge(InstanceView(inst), real_order);
}

MergeTable::MergeTable(const BlockCostTables& costs, int max_gaps)
    : max_gaps_(max_gaps), reals_(costs.real_count()), dummies_(costs.dummy_count()) {
    if (max_gaps < 0) throw InputError("merge table needs a nonnegative gap count");
    const std::size_t cells = static_cast<std::size_t>(max_gaps + 1) * (reals_ + 1) * (dummies_ + 1);
    dp_.assign(cells, kUnreachable);
    step_.assign(cells, Step::none);
    from_.assign(cells, 0);

    for (std::size_t i = 0; i <= reals_; ++i) dp_[cell(0, i, 0)] = 0;

    for (int g = 1; g <= max_gaps; ++g) {
        for (std::size_t i = 0; i <= reals_; ++i) {
            for (std::size_t j = 0; j <= dummies_; ++j) {
                Count best = kUnreachable;
                Step how = Step::none;
                std::size_t from = 0;
                // last block dummies[j0:j) sits at boundary i
                for (std::size_t j0 = 0; j0 <= j; ++j0) {
                    const Count prev = dp_[cell(g - 1, i, j0)];
                    if (prev >= kUnreachable) continue;
                    const Count candidate = prev + costs.block(i, j0, j);
                    if (candidate < best) {
                        best = candidate;
                        how = Step::block;
                        from = j0;
                    }
                }
                // or every block sits at a boundary before i
                if (i > 0 && dp_[cell(g, i - 1, j)] < best) {
                    best = dp_[cell(g, i - 1, j)];
                    how = Step::advance;
                }
                dp_[cell(g, i, j)] = best;
                step_[cell(g, i, j)] = how;
                from_[cell(g, i, j)] = from;
            }
        }
    }
}

std::vector<std::size_t> MergeTable::backtrack() const {
    std::vector<std::size_t> boundary(dummies_, 0);
    int g = max_gaps_;
    std::size_t i = reals_;
    std::size_t j = dummies_;
    while (j > 0) {
        switch (step(g, i, j)) {
            case Step::advance:
                --i;
                break;
            case Step::block: {
                const std::size_t j0 = block_start(g, i, j);
                for (std::size_t t = j0; t < j; ++t) boundary[t] = i;
                j = j0;
                --g;
                break;
            }
            case Step::none:
                throw std::logic_error("merge table has no solution to backtrack");
        }
    }
    return boundary;
}

KGapMerge k_gap_merge(const InstanceView& view, const Permutation& real_order, int k) {
    if (k < 1) throw InputError("k must be at least 1, got " + std::to_string(k));
    require_real_order(view, real_order);
    const CanonicalDummyOrder dummies = canonical_dummy_order(view);
    if (dummies.order.empty()) return KGapMerge{real_order, 0};

    const BlockCostTables costs(view, real_order, dummies.order);
    const MergeTable table(costs, k);
    const std::vector<std::size_t> boundary = table.backtrack();

    std::vector<NodeId> order;
    order.reserve(real_order.size() + dummies.order.size());
    std::size_t t = 0;
    for (std::size_t b = 0; b <= real_order.size(); ++b) {
        while (t < boundary.size() && boundary[t] == b) order.push_back(dummies.order[t++]);
        if (b < real_order.size()) order.push_back(real_order[b]);
    }
    return KGapMerge{Permutation(std::move(order)), table.value(k, real_order.size(), dummies.order.size())};
}

KGapMerge k_gap_merge(const BipartiteInstance& inst, const Permutation& real_order, int k) {
    return k_gap_merge(InstanceView(inst), real_order, k);
}

Permutation solve_sidegaps(const BipartiteInstance& inst, BaseAlgorithm base, std::chrono::duration<double> exact_budget) {
    switch (base) {
        case BaseAlgorithm::median:
            return side_gap_merge(inst, heuristic_real_order(inst, HeuristicKind::median));
        case BaseAlgorithm::barycenter:
            return side_gap_merge(inst, heuristic_real_order(inst, HeuristicKind::barycenter));
        case BaseAlgorithm::exact:
            return *solve_exact_sidegaps(inst, exact_budget).permutation;
    }
    throw std::logic_error("unknown base algorithm");
}

Permutation solve_kgaps(const BipartiteInstance& inst, HeuristicKind base, int k) {
    if (k < 1) throw InputError("k must be at least 1, got " + std::to_string(k));
    return k_gap_merge(inst, heuristic_real_order(inst, base), k).permutation;
}

}  // namespace gapcm
