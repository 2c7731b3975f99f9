// Test-only reference implementations. Nothing here calls library algorithms;
// only the plain data types from core.hpp are shared.

#ifndef GAPCM_TESTS_SUPPORT_HPP
#define GAPCM_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "gapcm/core.hpp"

namespace testsupport {

using gapcm::BipartiteInstance;
using gapcm::Count;
using gapcm::Edge;
using gapcm::Layer;
using gapcm::Node;
using gapcm::NodeId;
using gapcm::NodeKind;
using gapcm::Permutation;

inline std::map<NodeId, std::size_t> positions(const std::vector<NodeId>& order) {
    std::map<NodeId, std::size_t> pos;
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
    return pos;
}

inline bool is_dummy(const BipartiteInstance& inst, NodeId id) {
    for (const auto& v : inst.top) {
        if (v.id == id) return v.is_dummy();
    }
    for (const auto& v : inst.bottom) {
        if (v.id == id) return v.is_dummy();
    }
    return false;
}

// Edge pairs (a,u), (b,v) cross iff the bottom and top orders disagree strictly.
inline bool edges_cross(const std::map<NodeId, std::size_t>& p1, const std::map<NodeId, std::size_t>& p2,
                        const Edge& e, const Edge& f) {
    const auto a = p1.at(e.bottom), b = p1.at(f.bottom);
    const auto u = p2.at(e.top), v = p2.at(f.top);
    return (a < b && u > v) || (a > b && u < v);
}

/// O(m^2) crossing count over all edge pairs.
inline Count brute_crossings(const BipartiteInstance& inst, const std::vector<NodeId>& order) {
    const auto p1 = positions(inst.pi1.ids());
    const auto p2 = positions(order);
    Count total = 0;
    for (std::size_t i = 0; i < inst.edges.size(); ++i) {
        for (std::size_t j = i + 1; j < inst.edges.size(); ++j) total += edges_cross(p1, p2, inst.edges[i], inst.edges[j]);
    }
    return total;
}

/// Crossing pairs with exactly one real-incident and one dummy-incident top edge.
inline Count brute_mixed_crossings(const BipartiteInstance& inst, const std::vector<NodeId>& order) {
    const auto p1 = positions(inst.pi1.ids());
    const auto p2 = positions(order);
    Count total = 0;
    for (const auto& e : inst.edges) {
        for (const auto& f : inst.edges) {
            if (!is_dummy(inst, e.top) && is_dummy(inst, f.top)) total += edges_cross(p1, p2, e, f);
        }
    }
    return total;
}

/// Crossing pairs where both edges end at top dummies.
inline Count brute_dummy_dummy_crossings(const BipartiteInstance& inst, const std::vector<NodeId>& order) {
    const auto p1 = positions(inst.pi1.ids());
    const auto p2 = positions(order);
    Count total = 0;
    for (std::size_t i = 0; i < inst.edges.size(); ++i) {
        for (std::size_t j = i + 1; j < inst.edges.size(); ++j) {
            const auto& e = inst.edges[i];
            const auto& f = inst.edges[j];
            if (is_dummy(inst, e.top) && is_dummy(inst, f.top)) total += edges_cross(p1, p2, e, f);
        }
    }
    return total;
}

/// c[u][v] by looping over neighbor pairs: a in N(u), b in N(v) with b strictly left of a.
inline Count neighbor_pair_crossings(const BipartiteInstance& inst, NodeId u, NodeId v) {
    const auto p1 = positions(inst.pi1.ids());
    Count total = 0;
    for (const auto& e : inst.edges) {
        if (e.top != u) continue;
        for (const auto& f : inst.edges) {
            if (f.top == v && p1.at(f.bottom) < p1.at(e.bottom)) ++total;
        }
    }
    return total;
}

struct NaiveGaps {
    std::size_t count = 0;
    bool side_only = true;
};

inline NaiveGaps naive_gaps(const BipartiteInstance& inst, const std::vector<NodeId>& order) {
    NaiveGaps g;
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (!is_dummy(inst, order[i])) continue;
        if (i > 0 && is_dummy(inst, order[i - 1])) continue;
        std::size_t end = i;
        while (end + 1 < order.size() && is_dummy(inst, order[end + 1])) ++end;
        ++g.count;
        if (i != 0 && end + 1 != order.size()) g.side_only = false;
    }
    return g;
}

/// Top dummies sorted by the pi1 position of their neighbor, ties by id.
inline std::vector<NodeId> reference_dummy_order(const BipartiteInstance& inst) {
    const auto p1 = positions(inst.pi1.ids());
    std::vector<std::pair<std::size_t, NodeId>> keyed;
    for (const auto& e : inst.edges) {
        if (is_dummy(inst, e.top)) keyed.emplace_back(p1.at(e.bottom), e.top);
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<NodeId> order;
    for (const auto& [pos, id] : keyed) order.push_back(id);
    return order;
}

inline std::vector<NodeId> dummies_in(const BipartiteInstance& inst, const std::vector<NodeId>& order) {
    std::vector<NodeId> out;
    for (NodeId id : order) {
        if (is_dummy(inst, id)) out.push_back(id);
    }
    return out;
}

/**
 * Every interleaving of `reals` with `dummies` (both orders kept), enumerated by
 * the nondecreasing boundary of each dummy. Calls fn(order, gap_count).
 */
template <typename Fn>
void for_each_merge(const std::vector<NodeId>& reals, const std::vector<NodeId>& dummies, Fn&& fn) {
    std::vector<std::size_t> boundary(dummies.size(), 0);
    while (true) {
        std::vector<NodeId> order;
        std::size_t d = 0;
        for (std::size_t i = 0; i <= reals.size(); ++i) {
            while (d < dummies.size() && boundary[d] == i) order.push_back(dummies[d++]);
            if (i < reals.size()) order.push_back(reals[i]);
        }
        const std::size_t gaps = std::set<std::size_t>(boundary.begin(), boundary.end()).size();
        fn(order, gaps);

        // next nondecreasing sequence over 0..R
        std::size_t t = dummies.size();
        while (t > 0 && boundary[t - 1] == reals.size()) --t;
        if (t == 0) return;
        ++boundary[t - 1];
        for (std::size_t s = t; s < dummies.size(); ++s) boundary[s] = boundary[t - 1];
    }
}

/// Minimum total crossings over merges with at most k gaps.
inline Count exhaustive_merge_min(const BipartiteInstance& inst, const std::vector<NodeId>& reals,
                                  const std::vector<NodeId>& dummies, std::size_t k) {
    Count best = -1;
    for_each_merge(reals, dummies, [&](const std::vector<NodeId>& order, std::size_t gaps) {
        if (gaps > k) return;
        const Count c = brute_crossings(inst, order);
        if (best < 0 || c < best) best = c;
    });
    return best;
}

struct Optima {
    Count unrestricted = -1;
    Count sidegap = -1;
    std::map<std::size_t, Count> kgap;  ///< keyed by k
};

/// Enumeration over all top orders; dummy orders are not restricted.
inline Optima reference_optima(const BipartiteInstance& inst, std::size_t max_k) {
    std::vector<NodeId> order;
    for (const auto& v : inst.top) order.push_back(v.id);
    std::sort(order.begin(), order.end());
    Optima o;
    auto improve = [](Count& slot, Count c) {
        if (slot < 0 || c < slot) slot = c;
    };
    do {
        const Count c = brute_crossings(inst, order);
        const NaiveGaps g = naive_gaps(inst, order);
        improve(o.unrestricted, c);
        if (g.side_only) improve(o.sidegap, c);
        for (std::size_t k = 1; k <= max_k; ++k) {
            if (g.count > k) continue;
            auto [it, fresh] = o.kgap.try_emplace(k, c);
            if (!fresh) it->second = std::min(it->second, c);
        }
    } while (std::next_permutation(order.begin(), order.end()));
    return o;
}

struct RandomShape {
    std::size_t bottom_real = 3;
    std::size_t bottom_dummy = 0;
    std::size_t top_real = 3;
    std::size_t top_dummy = 0;
    double density = 0.5;
};

/**
 * Random valid instance, built independently of the library generator:
 * each real-real pair is an edge with probability `density`, each top dummy
 * links to a uniform bottom node that is real (or to a bottom dummy when the
 * bottom has no reals), bottom dummies link to a real top node.
 */
inline BipartiteInstance random_instance(std::mt19937_64& rng, const RandomShape& shape) {
    BipartiteInstance inst;
    NodeId next = 100;
    std::vector<NodeId> b_real, b_dummy, t_real, t_dummy;
    for (std::size_t i = 0; i < shape.bottom_real; ++i) b_real.push_back(next++);
    for (std::size_t i = 0; i < shape.bottom_dummy; ++i) b_dummy.push_back(next++);
    for (std::size_t i = 0; i < shape.top_real; ++i) t_real.push_back(next++);
    for (std::size_t i = 0; i < shape.top_dummy; ++i) t_dummy.push_back(next++);
    for (NodeId id : b_real) inst.bottom.push_back(Node{id, Layer::bottom, NodeKind::real});
    for (NodeId id : b_dummy) inst.bottom.push_back(Node{id, Layer::bottom, NodeKind::dummy});
    for (NodeId id : t_real) inst.top.push_back(Node{id, Layer::top, NodeKind::real});
    for (NodeId id : t_dummy) inst.top.push_back(Node{id, Layer::top, NodeKind::dummy});

    std::bernoulli_distribution coin(shape.density);
    for (NodeId a : b_real) {
        for (NodeId u : t_real) {
            if (coin(rng)) inst.edges.push_back(Edge{a, u});
        }
    }
    auto pick = [&](const std::vector<NodeId>& from) {
        return from[std::uniform_int_distribution<std::size_t>(0, from.size() - 1)(rng)];
    };
    // bottom dummies pair with real tops; with no real tops they pair with top dummies one to one
    std::vector<NodeId> free_top_dummies = t_dummy;
    std::shuffle(free_top_dummies.begin(), free_top_dummies.end(), rng);
    std::set<NodeId> used_top_dummies;
    for (NodeId d : b_dummy) {
        if (!t_real.empty()) {
            inst.edges.push_back(Edge{d, pick(t_real)});
        } else if (!free_top_dummies.empty()) {
            const NodeId t = free_top_dummies.back();
            free_top_dummies.pop_back();
            used_top_dummies.insert(t);
            inst.edges.push_back(Edge{d, t});
        }
    }
    for (NodeId d : t_dummy) {
        if (used_top_dummies.contains(d)) continue;
        if (!b_real.empty()) {
            inst.edges.push_back(Edge{pick(b_real), d});
        } else {
            // no real bottom: attach to an unused bottom dummy, else drop the node
            NodeId partner = -1;
            for (NodeId b : b_dummy) {
                bool used = false;
                for (const auto& e : inst.edges) used = used || e.bottom == b;
                if (!used) {
                    partner = b;
                    break;
                }
            }
            if (partner >= 0) {
                inst.edges.push_back(Edge{partner, d});
            } else {
                std::erase_if(inst.top, [d](const Node& v) { return v.id == d; });
            }
        }
    }
    // drop bottom dummies left without a partner
    for (NodeId b : b_dummy) {
        bool used = false;
        for (const auto& e : inst.edges) used = used || e.bottom == b;
        if (!used) std::erase_if(inst.bottom, [b](const Node& v) { return v.id == b; });
    }

    std::vector<NodeId> pi1;
    for (const auto& v : inst.bottom) pi1.push_back(v.id);
    std::shuffle(pi1.begin(), pi1.end(), rng);
    inst.pi1 = Permutation(pi1);
    return inst;
}

inline std::vector<NodeId> shuffled(std::vector<NodeId> ids, std::mt19937_64& rng) {
    std::shuffle(ids.begin(), ids.end(), rng);
    return ids;
}

inline std::vector<NodeId> real_top(const BipartiteInstance& inst) {
    std::vector<NodeId> out;
    for (const auto& v : inst.top) {
        if (!v.is_dummy()) out.push_back(v.id);
    }
    return out;
}

inline std::vector<NodeId> all_top(const BipartiteInstance& inst) {
    std::vector<NodeId> out;
    for (const auto& v : inst.top) out.push_back(v.id);
    return out;
}

/// Builds an instance from compact lists; pi1 is the bottom list order.
inline BipartiteInstance make_instance(const std::vector<std::pair<NodeId, NodeKind>>& bottom,
                                       const std::vector<std::pair<NodeId, NodeKind>>& top,
                                       const std::vector<Edge>& edges) {
    BipartiteInstance inst;
    std::vector<NodeId> pi1;
    for (const auto& [id, kind] : bottom) {
        inst.bottom.push_back(Node{id, Layer::bottom, kind});
        pi1.push_back(id);
    }
    for (const auto& [id, kind] : top) inst.top.push_back(Node{id, Layer::top, kind});
    inst.edges = edges;
    inst.pi1 = Permutation(pi1);
    return inst;
}

/// Unrestricted optimum by dynamic programming over subsets placed first (up to ~20 top nodes).
inline Count subset_dp_optimum(const BipartiteInstance& inst) {
    const auto tops = all_top(inst);
    const std::size_t p = tops.size();
    std::vector<std::vector<Count>> c(p, std::vector<Count>(p, 0));
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < p; ++j) {
            if (i != j) c[i][j] = neighbor_pair_crossings(inst, tops[i], tops[j]);
        }
    }
    std::vector<Count> best(std::size_t{1} << p, -1);
    best[0] = 0;
    for (std::size_t mask = 1; mask < best.size(); ++mask) {
        for (std::size_t v = 0; v < p; ++v) {
            if (!(mask >> v & 1)) continue;
            const std::size_t rest = mask & ~(std::size_t{1} << v);
            Count cost = best[rest];
            for (std::size_t u = 0; u < p; ++u) {
                if (rest >> u & 1) cost += c[u][v];
            }
            if (best[mask] < 0 || cost < best[mask]) best[mask] = cost;
        }
    }
    return best.back();
}

}  // namespace testsupport

#endif  // GAPCM_TESTS_SUPPORT_HPP
