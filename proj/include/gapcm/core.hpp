#ifndef GAPCM_CORE_HPP
#define GAPCM_CORE_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace gapcm {

using NodeId = std::int64_t;
using Count = std::int64_t;

/// Malformed or inconsistent input (unknown ids, invalid instances, bad parameters).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Layer { bottom, top };
enum class NodeKind { real, dummy };

struct Node {
    NodeId id = 0;
    Layer layer = Layer::bottom;
    NodeKind kind = NodeKind::real;

    bool is_dummy() const { return kind == NodeKind::dummy; }
    friend bool operator==(const Node&, const Node&) = default;
};

/**
 * @brief ordered arrangement of distinct node ids with O(1) position lookup.
 *
 * Positions are 0-based.
 */
class Permutation {
public:
    Permutation() = default;
    /// Throws InputError if `order` contains a repeated id.
    explicit Permutation(std::vector<NodeId> order);

    std::span<const NodeId> order() const { return order_; }
    const std::vector<NodeId>& ids() const { return order_; }
    std::size_t size() const { return order_.size(); }
    bool empty() const { return order_.empty(); }
    NodeId operator[](std::size_t i) const { return order_[i]; }
    auto begin() const { return order_.begin(); }
    auto end() const { return order_.end(); }

    bool contains(NodeId id) const { return position_.contains(id); }
    /// Throws InputError for ids outside the ground set.
    std::size_t position(NodeId id) const;
    bool precedes(NodeId a, NodeId b) const { return position(a) < position(b); }

    friend bool operator==(const Permutation& a, const Permutation& b) { return a.order_ == b.order_; }

private:
    std::vector<NodeId> order_;
    std::unordered_map<NodeId, std::size_t> position_;
};

/// pi[X'], the relative order of `subset` inside `pi`. Ids outside `pi` are ignored.
Permutation induced(const Permutation& pi, std::span<const NodeId> subset);

/// a ⋆ b; the operands must be disjoint.
Permutation concat(const Permutation& a, const Permutation& b);

struct Edge {
    NodeId bottom = 0;
    NodeId top = 0;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/**
 * @brief two-layer graph with a fixed bottom order pi1 and a free top layer.
 *
 * Plain data; may be invalid. Use validate_instance() before handing it to
 * solvers (every solver entry point validates and throws InputError).
 */
struct BipartiteInstance {
    std::vector<Node> bottom;
    std::vector<Node> top;
    std::vector<Edge> edges;
    Permutation pi1;

    friend bool operator==(const BipartiteInstance&, const BipartiteInstance&) = default;
};

/// Human-readable list of violated invariants; empty means valid.
std::vector<std::string> validate_instance(const BipartiteInstance& inst);

/// The top ids of the given kind, in the instance's listing order.
std::vector<NodeId> top_ids(const BipartiteInstance& inst, NodeKind kind);
std::vector<NodeId> top_ids(const BipartiteInstance& inst);

/// G[V1 ∪ V2r]: drops top dummies and their edges, keeps the whole bottom layer.
/// Bottom dummies left without an edge become isolated real nodes.
BipartiteInstance real_subinstance(const BipartiteInstance& inst);

/**
 * @brief validated, indexed read-only view of an instance.
 *
 * Holds its own copy of the instance. Top nodes are addressed by their index
 * in `inst.top`; neighborhoods are stored as sorted pi1 positions.
 */
class InstanceView {
public:
    /// Throws InputError listing the first violation if `inst` is invalid.
    explicit InstanceView(const BipartiteInstance& inst);

    const BipartiteInstance& instance() const { return inst_; }

    std::size_t top_count() const { return top_ids_.size(); }
    std::size_t bottom_count() const { return inst_.pi1.size(); }
    NodeId top_id(std::size_t index) const { return top_ids_[index]; }
    std::span<const NodeId> top_ids() const { return top_ids_; }
    bool has_top(NodeId id) const { return top_index_.contains(id); }
    /// Throws InputError for unknown ids.
    std::size_t top_index(NodeId id) const;
    bool is_dummy(std::size_t index) const { return dummy_[index] != 0; }
    std::size_t degree(std::size_t index) const { return neighbors_[index].size(); }

    /// Sorted pi1 positions of the neighbors of top node `index`.
    std::span<const std::size_t> neighbor_positions(std::size_t index) const { return neighbors_[index]; }

    /// cr(G, {u}, {v}): crossings between edges at u and at v when u precedes v.
    Count pair_crossings(std::size_t u, std::size_t v) const;

private:
    BipartiteInstance inst_;
    std::vector<NodeId> top_ids_;
    std::unordered_map<NodeId, std::size_t> top_index_;
    std::vector<char> dummy_;
    std::vector<std::vector<std::size_t>> neighbors_;
};

/**
 * @brief dense matrix c[u][v] = cr(G, {u}, {v}) over all top nodes.
 *
 * Rows and columns follow the order of `inst.top`.
 */
class CrossingMatrix {
public:
    CrossingMatrix() = default;
    explicit CrossingMatrix(const InstanceView& view);

    std::size_t size() const { return ids_.size(); }
    std::span<const NodeId> ids() const { return ids_; }
    std::size_t index(NodeId id) const;

    Count at(std::size_t i, std::size_t j) const { return c_[i * ids_.size() + j]; }
    Count operator()(NodeId u, NodeId v) const { return at(index(u), index(v)); }

private:
    std::vector<NodeId> ids_;
    std::unordered_map<NodeId, std::size_t> index_;
    std::vector<Count> c_;
};

/// cr(G, pi1, pi2) by inversion counting, O(m log m). Throws InputError unless pi2 is a permutation of all top ids.
Count count_crossings(const BipartiteInstance& inst, const Permutation& pi2);

CrossingMatrix pairwise_crossings(const BipartiteInstance& inst);

/**
 * @brief cr(G, S, S'): crossing pairs with one edge at S and the other at S',
 * all of S placed before all of S'. Pairs internal to S or to S' are not counted.
 *
 * Throws InputError when S and S' overlap.
 */
Count block_crossings(const CrossingMatrix& c, std::span<const NodeId> s, std::span<const NodeId> s_prime);
Count block_crossings(const BipartiteInstance& inst, std::span<const NodeId> s, std::span<const NodeId> s_prime);

/// One maximal run of consecutive dummies, [start, end] inclusive.
struct GapRun {
    std::size_t start = 0;
    std::size_t end = 0;
    bool side = false;  ///< touches position 0 or the last position

    friend bool operator==(const GapRun&, const GapRun&) = default;
};

struct GapReport {
    std::size_t count = 0;
    std::vector<GapRun> runs;

    /// Every gap touches an end of the permutation.
    bool side_gaps_only() const;
};

GapReport count_gaps(const BipartiteInstance& inst, const Permutation& pi2);

}  // namespace gapcm

#endif  // GAPCM_CORE_HPP
