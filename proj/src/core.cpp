#include "gapcm/core.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>
#include <utility>

namespace gapcm {

Permutation::Permutation(std::vector<NodeId> order) : order_(std::move(order)) {
    position_.reserve(order_.size());
    for (std::size_t i = 0; i < order_.size(); ++i) {
        if (!position_.emplace(order_[i], i).second) {
            throw InputError("permutation repeats id " + std::to_string(order_[i]));
        }
    }
}

std::size_t Permutation::position(NodeId id) const {
    auto it = position_.find(id);
    if (it == position_.end()) throw InputError("id " + std::to_string(id) + " is not in the permutation");
    return it->second;
}

Permutation induced(const Permutation& pi, std::span<const NodeId> subset) {
    const std::unordered_set<NodeId> keep(subset.begin(), subset.end());
    std::vector<NodeId> order;
    order.reserve(keep.size());
    for (NodeId id : pi) {
        if (keep.contains(id)) order.push_back(id);
    }
    return Permutation(std::move(order));
}

Permutation concat(const Permutation& a, const Permutation& b) {
    std::vector<NodeId> order(a.begin(), a.end());
    order.insert(order.end(), b.begin(), b.end());
    return Permutation(std::move(order));
}

std::vector<std::string> validate_instance(const BipartiteInstance& inst) {
    std::vector<std::string> violations;

    std::unordered_map<NodeId, const Node*> nodes;
    auto register_layer = [&](const std::vector<Node>& layer, Layer expected, const char* name) {
        for (const Node& node : layer) {
            if (node.layer != expected) {
                violations.push_back("node " + std::to_string(node.id) + " listed in " + name + " layer has wrong layer tag");
            }
            if (!nodes.emplace(node.id, &node).second) {
                violations.push_back("duplicate node id " + std::to_string(node.id));
            }
        }
    };
    register_layer(inst.bottom, Layer::bottom, "bottom");
    register_layer(inst.top, Layer::top, "top");

    std::unordered_map<NodeId, std::size_t> degree;
    std::set<Edge> seen;
    for (const Edge& e : inst.edges) {
        auto b = nodes.find(e.bottom);
        auto t = nodes.find(e.top);
        if (b == nodes.end() || t == nodes.end()) {
            violations.push_back("edge (" + std::to_string(e.bottom) + "," + std::to_string(e.top) +
                                 ") references an unknown node");
            continue;
        }
        if (b->second->layer != Layer::bottom || t->second->layer != Layer::top) {
            violations.push_back("edge not bipartite: (" + std::to_string(e.bottom) + "," + std::to_string(e.top) + ")");
            continue;
        }
        if (!seen.insert(e).second) {
            violations.push_back("parallel edge (" + std::to_string(e.bottom) + "," + std::to_string(e.top) + ")");
            continue;
        }
        ++degree[e.bottom];
        ++degree[e.top];
    }

    for (const auto* layer : {&inst.bottom, &inst.top}) {
        for (const Node& node : *layer) {
            if (node.is_dummy() && degree[node.id] != 1) {
                violations.push_back("dummy degree != 1: node " + std::to_string(node.id) + " has degree " +
                                     std::to_string(degree[node.id]));
            }
        }
    }

    bool pi1_ok = inst.pi1.size() == inst.bottom.size();
    for (const Node& node : inst.bottom) pi1_ok = pi1_ok && inst.pi1.contains(node.id);
    if (!pi1_ok) violations.push_back("pi1 is not a permutation of the bottom ids");

    return violations;
}

std::vector<NodeId> top_ids(const BipartiteInstance& inst, NodeKind kind) {
    std::vector<NodeId> ids;
    for (const Node& node : inst.top) {
        if (node.kind == kind) ids.push_back(node.id);
    }
    return ids;
}

std::vector<NodeId> top_ids(const BipartiteInstance& inst) {
    std::vector<NodeId> ids;
    ids.reserve(inst.top.size());
    for (const Node& node : inst.top) ids.push_back(node.id);
    return ids;
}

BipartiteInstance real_subinstance(const BipartiteInstance& inst) {
    BipartiteInstance sub;
    sub.bottom = inst.bottom;
    sub.pi1 = inst.pi1;
    std::unordered_set<NodeId> kept;
    for (const Node& node : inst.top) {
        if (!node.is_dummy()) {
            sub.top.push_back(node);
            kept.insert(node.id);
        }
    }
    std::unordered_set<NodeId> touched;
    for (const Edge& e : inst.edges) {
        if (kept.contains(e.top)) {
            sub.edges.push_back(e);
            touched.insert(e.bottom);
        }
    }
    // a bottom dummy whose partner was a top dummy is left isolated; it keeps its
    // pi1 slot (positions feed the heuristics) but can no longer be a dummy
    for (Node& node : sub.bottom) {
        if (node.is_dummy() && !touched.contains(node.id)) node.kind = NodeKind::real;
    }
    return sub;
}

InstanceView::InstanceView(const BipartiteInstance& inst) : inst_(inst) {
    if (auto violations = validate_instance(inst_); !violations.empty()) {
        throw InputError("invalid instance: " + violations.front());
    }
    top_ids_ = gapcm::top_ids(inst_);
    top_index_.reserve(top_ids_.size());
    dummy_.resize(top_ids_.size());
    neighbors_.resize(top_ids_.size());
    for (std::size_t i = 0; i < inst_.top.size(); ++i) {
        top_index_.emplace(inst_.top[i].id, i);
        dummy_[i] = inst_.top[i].is_dummy() ? 1 : 0;
    }
    for (const Edge& e : inst_.edges) {
        neighbors_[top_index_.at(e.top)].push_back(inst_.pi1.position(e.bottom));
    }
    for (auto& nbrs : neighbors_) std::sort(nbrs.begin(), nbrs.end());
}

std::size_t InstanceView::top_index(NodeId id) const {
    auto it = top_index_.find(id);
    if (it == top_index_.end()) throw InputError("unknown top id " + std::to_string(id));
    return it->second;
}

Count InstanceView::pair_crossings(std::size_t u, std::size_t v) const {
    // for each neighbor a of u, count the neighbors b of v strictly left of a
    const auto& nu = neighbors_[u];
    const auto& nv = neighbors_[v];
    Count total = 0;
    std::size_t j = 0;
    for (std::size_t a : nu) {
        while (j < nv.size() && nv[j] < a) ++j;
        total += static_cast<Count>(j);
    }
    return total;
}

CrossingMatrix::CrossingMatrix(const InstanceView& view)
    : ids_(view.top_ids().begin(), view.top_ids().end()), c_(ids_.size() * ids_.size(), 0) {
    const std::size_t p = ids_.size();
    index_.reserve(p);
    for (std::size_t i = 0; i < p; ++i) index_.emplace(ids_[i], i);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < p; ++j) {
            if (i != j) c_[i * p + j] = view.pair_crossings(i, j);
        }
    }
}

std::size_t CrossingMatrix::index(NodeId id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw InputError("unknown top id " + std::to_string(id));
    return it->second;
}

namespace {

// Number of pairs i < j with values[i] > values[j]; sorts `values` as a side effect.
Count count_inversions(std::vector<std::size_t>& values, std::vector<std::size_t>& scratch, std::size_t lo,
                       std::size_t hi) {
    if (hi - lo < 2) return 0;
    const std::size_t mid = lo + (hi - lo) / 2;
    Count inversions = count_inversions(values, scratch, lo, mid) + count_inversions(values, scratch, mid, hi);
    std::size_t i = lo, j = mid, out = lo;
    while (i < mid && j < hi) {
        if (values[j] < values[i]) {
            inversions += static_cast<Count>(mid - i);
            scratch[out++] = values[j++];
        } else {
            scratch[out++] = values[i++];
        }
    }
    while (i < mid) scratch[out++] = values[i++];
    while (j < hi) scratch[out++] = values[j++];
    std::copy(scratch.begin() + static_cast<std::ptrdiff_t>(lo), scratch.begin() + static_cast<std::ptrdiff_t>(hi),
              values.begin() + static_cast<std::ptrdiff_t>(lo));
    return inversions;
}

void require_top_permutation(const BipartiteInstance& inst, const Permutation& pi2) {
    std::unordered_set<NodeId> ids;
    ids.reserve(inst.top.size());
    for (const Node& node : inst.top) ids.insert(node.id);
    for (NodeId id : pi2) {
        if (!ids.contains(id)) throw InputError("unknown top id " + std::to_string(id) + " in permutation");
    }
    if (pi2.size() != ids.size()) {
        throw InputError("permutation has " + std::to_string(pi2.size()) + " ids but the top layer has " +
                         std::to_string(ids.size()));
    }
}

}  // namespace

Count count_crossings(const BipartiteInstance& inst, const Permutation& pi2) {
    require_top_permutation(inst, pi2);

    std::vector<std::pair<std::size_t, std::size_t>> ends;
    ends.reserve(inst.edges.size());
    for (const Edge& e : inst.edges) ends.emplace_back(inst.pi1.position(e.bottom), pi2.position(e.top));
    // edges sharing a bottom endpoint are sorted by top position and so never counted
    std::sort(ends.begin(), ends.end());

    std::vector<std::size_t> tops(ends.size());
    for (std::size_t i = 0; i < ends.size(); ++i) tops[i] = ends[i].second;
    std::vector<std::size_t> scratch(tops.size());
    return count_inversions(tops, scratch, 0, tops.size());
}

CrossingMatrix pairwise_crossings(const BipartiteInstance& inst) { return CrossingMatrix(InstanceView(inst)); }

Count block_crossings(const CrossingMatrix& c, std::span<const NodeId> s, std::span<const NodeId> s_prime) {
    const std::unordered_set<NodeId> left(s.begin(), s.end());
    for (NodeId id : s_prime) {
        if (left.contains(id)) throw InputError("block_crossings: id " + std::to_string(id) + " is in both blocks");
    }
    Count total = 0;
    for (NodeId u : s) {
        const std::size_t i = c.index(u);
        for (NodeId v : s_prime) total += c.at(i, c.index(v));
    }
    return total;
}

Count block_crossings(const BipartiteInstance& inst, std::span<const NodeId> s, std::span<const NodeId> s_prime) {
    return block_crossings(pairwise_crossings(inst), s, s_prime);
}

bool GapReport::side_gaps_only() const {
    return std::all_of(runs.begin(), runs.end(), [](const GapRun& run) { return run.side; });
}

GapReport count_gaps(const BipartiteInstance& inst, const Permutation& pi2) {
    require_top_permutation(inst, pi2);
    std::unordered_set<NodeId> dummies;
    for (const Node& node : inst.top) {
        if (node.is_dummy()) dummies.insert(node.id);
    }

    GapReport report;
    const std::size_t p = pi2.size();
    for (std::size_t i = 0; i < p;) {
        if (!dummies.contains(pi2[i])) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < p && dummies.contains(pi2[j + 1])) ++j;
        report.runs.push_back(GapRun{i, j, i == 0 || j == p - 1});
        i = j + 1;
    }
    report.count = report.runs.size();
    return report;
}

}  // namespace gapcm
