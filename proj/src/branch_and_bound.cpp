#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "gapcm/exact.hpp"

namespace gapcm {

namespace {

using Clock = std::chrono::steady_clock;

// Prefix states reached again with no smaller cost are pruned. The key holds
// everything the remaining search depends on: placed set, last node, gap state.
struct MemoKey {
    std::uint64_t placed;
    std::uint32_t last;
    std::uint32_t gap_state;
    friend bool operator==(const MemoKey&, const MemoKey&) = default;
};

struct MemoKeyHash {
    std::size_t operator()(const MemoKey& k) const {
        std::uint64_t h = k.placed * 0x9E3779B97F4A7C15ULL;
        h ^= (static_cast<std::uint64_t>(k.last) << 32 | k.gap_state) + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

constexpr std::size_t kMemoLimit = 1u << 22;
constexpr std::uint32_t kNoLast = 0xFFFFFFFFu;

class Search {
public:
    Search(const OrderingModel& model, Clock::time_point deadline)
        : model_(model), p_(model.size()), deadline_(deadline), chain_pos_(p_, -1), placed_(p_, 0) {
        std::unordered_map<NodeId, std::size_t> index;
        for (std::size_t i = 0; i < p_; ++i) index.emplace(model.nodes[i], i);
        for (std::size_t t = 0; t < model.dummy_chain.size(); ++t) {
            const std::size_t i = index.at(model.dummy_chain[t]);
            chain_pos_[i] = static_cast<int>(t);
            chain_.push_back(i);
        }

        // free nodes by descending interaction weight, ties by id
        std::vector<Count> weight(p_, 0);
        for (std::size_t i = 0; i < p_; ++i) {
            for (std::size_t j = 0; j < p_; ++j) weight[i] += model.coef(i, j) + model.coef(j, i);
        }
        for (std::size_t i = 0; i < p_; ++i) {
            if (chain_pos_[i] < 0) free_order_.push_back(i);
        }
        std::sort(free_order_.begin(), free_order_.end(), [&](std::size_t a, std::size_t b) {
            if (weight[a] != weight[b]) return weight[a] > weight[b];
            return model.nodes[a] < model.nodes[b];
        });

        min_pair_.assign(p_ * p_, 0);
        for (std::size_t i = 0; i < p_; ++i) {
            for (std::size_t j = 0; j < p_; ++j) {
                if (i != j) min_pair_[i * p_ + j] = std::min(model.coef(i, j), model.coef(j, i));
            }
        }
        remaining_bound_ = 0;
        for (std::size_t i = 0; i < p_; ++i) {
            for (std::size_t j = i + 1; j < p_; ++j) remaining_bound_ += min_pair_[i * p_ + j];
        }
        use_memo_ = p_ <= 64;
    }

    void set_incumbent(std::vector<std::size_t> order, Count value) {
        best_order_ = std::move(order);
        best_value_ = value;
        has_best_ = true;
    }

    /// Returns false when the deadline cut the search short.
    bool run() {
        prefix_.clear();
        dfs(0, kNoLast);
        return !timed_out_;
    }

    bool has_best() const { return has_best_; }
    const std::vector<std::size_t>& best_order() const { return best_order_; }
    Count best_value() const { return best_value_; }
    std::uint64_t nodes() const { return nodes_; }

private:
    bool is_free(std::size_t i) const { return chain_pos_[i] < 0; }

    // gap bookkeeping for the current prefix
    struct GapState {
        int runs = 0;
        bool last_was_chain = false;
        bool chain_after_free = false;  // side gaps: a chain node followed some free node
        bool any_free = false;
    };

    bool out_of_time() {
        if ((nodes_ & 0xFFF) == 0 && Clock::now() >= deadline_) timed_out_ = true;
        return timed_out_;
    }

    void dfs(Count cost, std::uint32_t last) {
        ++nodes_;
        if (out_of_time()) return;

        if (prefix_.size() == p_) {
            if (!has_best_ || cost < best_value_) set_incumbent(prefix_, cost);
            return;
        }
        if (has_best_ && cost + remaining_bound_ >= best_value_) return;

        if (use_memo_) {
            const MemoKey key{placed_mask_, last, encode(gap_)};
            auto [it, inserted] = memo_.try_emplace(key, cost);
            if (!inserted) {
                if (it->second <= cost) return;
                it->second = cost;
            } else if (memo_.size() > kMemoLimit) {
                memo_.erase(it);
            }
        }

        // the next chain node, if any remain
        if (next_chain_ < chain_.size()) try_place(chain_[next_chain_], cost, last);
        for (std::size_t v : free_order_) {
            if (timed_out_) return;
            if (!placed_[v]) try_place(v, cost, last);
        }
    }

    void try_place(std::size_t v, Count cost, std::uint32_t last) {
        const bool chain_node = !is_free(v);
        const GapState saved = gap_;

        if (model_.gap_rule != GapRule::none) {
            if (chain_node) {
                if (!gap_.last_was_chain) ++gap_.runs;
                if (gap_.any_free) gap_.chain_after_free = true;
                if (model_.gap_rule == GapRule::at_most_k && gap_.runs > model_.max_gaps) {
                    gap_ = saved;
                    return;
                }
            } else if (model_.gap_rule == GapRule::side_gaps && gap_.chain_after_free) {
                return;
            }
            gap_.last_was_chain = chain_node;
            if (!chain_node) gap_.any_free = true;
        }

        // adjacent free nodes: keep only the cheaper orientation (ties by index)
        if (!chain_node && last != kNoLast && is_free(last)) {
            const Count forward = model_.coef(last, v);
            const Count backward = model_.coef(v, last);
            if (forward > backward || (forward == backward && last > v)) {
                gap_ = saved;
                return;
            }
        }

        Count added = 0;
        Count bound_drop = 0;
        for (std::size_t w = 0; w < p_; ++w) {
            if (w == v || placed_[w]) continue;
            added += model_.coef(v, w);
            bound_drop += min_pair_[v * p_ + w];
        }

        placed_[v] = 1;
        if (v < 64) placed_mask_ |= (std::uint64_t{1} << v);
        if (chain_node) ++next_chain_;
        prefix_.push_back(v);
        remaining_bound_ -= bound_drop;

        dfs(cost + added, static_cast<std::uint32_t>(v));

        remaining_bound_ += bound_drop;
        prefix_.pop_back();
        if (chain_node) --next_chain_;
        if (v < 64) placed_mask_ &= ~(std::uint64_t{1} << v);
        placed_[v] = 0;
        gap_ = saved;
    }

    static std::uint32_t encode(const GapState& g) {
        return static_cast<std::uint32_t>(g.runs) << 3 | (g.last_was_chain ? 4u : 0u) |
               (g.chain_after_free ? 2u : 0u) | (g.any_free ? 1u : 0u);
    }

    const OrderingModel& model_;
    std::size_t p_;
    Clock::time_point deadline_;
    std::vector<int> chain_pos_;
    std::vector<std::size_t> chain_;
    std::vector<std::size_t> free_order_;
    std::vector<Count> min_pair_;

    std::vector<char> placed_;
    std::uint64_t placed_mask_ = 0;
    std::size_t next_chain_ = 0;
    std::vector<std::size_t> prefix_;
    GapState gap_;
    Count remaining_bound_ = 0;

    bool use_memo_ = false;
    std::unordered_map<MemoKey, Count, MemoKeyHash> memo_;

    bool has_best_ = false;
    std::vector<std::size_t> best_order_;
    Count best_value_ = 0;
    std::uint64_t nodes_ = 0;
    bool timed_out_ = false;
};

std::vector<std::size_t> to_indices(const OrderingModel& model, const Permutation& pi) {
    std::vector<std::size_t> order;
    order.reserve(pi.size());
    for (NodeId id : pi) {
        order.push_back(static_cast<std::size_t>(std::find(model.nodes.begin(), model.nodes.end(), id) -
                                                 model.nodes.begin()));
    }
    return order;
}

Permutation to_permutation(const OrderingModel& model, const std::vector<std::size_t>& order) {
    std::vector<NodeId> ids;
    ids.reserve(order.size());
    for (std::size_t i : order) ids.push_back(model.nodes[i]);
    return Permutation(std::move(ids));
}

// chain first, then the remaining nodes in listing order: at most one gap, and a side gap
std::optional<Permutation> default_incumbent(const OrderingModel& model) {
    std::vector<NodeId> ids = model.dummy_chain;
    const std::unordered_set<NodeId> chain(ids.begin(), ids.end());
    for (NodeId id : model.nodes) {
        if (!chain.contains(id)) ids.push_back(id);
    }
    Permutation pi(std::move(ids));
    if (!model_feasible(model, pi)) return std::nullopt;
    return pi;
}

}  // namespace

SolveResult solve_branch_and_bound(const OrderingModel& model, std::chrono::duration<double> time_budget,
                                   const std::optional<Permutation>& incumbent) {
    const auto start = Clock::now();
    SolveResult result;

    std::optional<Permutation> seed;
    if (incumbent && model_feasible(model, *incumbent)) seed = incumbent;

    if (time_budget <= std::chrono::duration<double>::zero()) {
        result.status = SolveStatus::timeout_incumbent;
        if (seed) {
            result.objective = model_objective_value(model, *seed);
            result.permutation = std::move(seed);
        }
        result.wall_time = Clock::now() - start;
        return result;
    }
    if (!seed) seed = default_incumbent(model);

    const auto deadline = start + std::chrono::duration_cast<Clock::duration>(time_budget);
    Search search(model, deadline);
    if (seed) search.set_incumbent(to_indices(model, *seed), model_objective_value(model, *seed));
    const bool complete = search.run();

    result.nodes_explored = search.nodes();
    if (search.has_best()) {
        result.permutation = to_permutation(model, search.best_order());
        result.objective = search.best_value();
        result.status = complete ? SolveStatus::optimal : SolveStatus::timeout_incumbent;
    } else {
        result.status = complete ? SolveStatus::infeasible : SolveStatus::timeout_incumbent;
    }
    result.wall_time = Clock::now() - start;
    return result;
}

}  // namespace gapcm
