#include "gapcm/generator.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>

namespace gapcm {

namespace {

// uniform integer in [0, bound) without the implementation-defined std distributions
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = kMax - kMax % bound;
    std::uint64_t x = 0;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

template <typename T>
void shuffle(std::vector<T>& items, std::mt19937_64& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        std::swap(items[i - 1], items[uniform_below(rng, i)]);
    }
}

}  // namespace

void validate_params(const GenParams& params) {
    if (params.n < 1) throw InputError("n must be at least 1");
    if (params.f_dm < Rational(0) || Rational(1) < params.f_dm) throw InputError("f_dm must lie in [0, 1]");
    if (params.deg_avg <= Rational(0)) throw InputError("deg_avg must be positive");
}

std::int64_t dummy_count(const GenParams& params) { return params.f_dm.floor_times(params.n); }

std::int64_t real_edge_count(const GenParams& params) {
    const std::int64_t n_r = params.n - dummy_count(params);
    return min(Rational(n_r), params.deg_avg).floor_times(n_r);
}

BipartiteInstance generate(const GenParams& params) {
    validate_params(params);
    const std::int64_t n = params.n;
    const std::int64_t n_dm = dummy_count(params);
    const std::int64_t n_r = n - n_dm;
    const std::int64_t edge_count = real_edge_count(params);

    std::mt19937_64 rng(params.seed);
    BipartiteInstance inst;
    for (std::int64_t i = 0; i < n; ++i) {
        inst.bottom.push_back(Node{i, Layer::bottom, i < n_r ? NodeKind::real : NodeKind::dummy});
        inst.top.push_back(Node{n + i, Layer::top, i < n_r ? NodeKind::real : NodeKind::dummy});
    }

    const std::uint64_t pair_space = static_cast<std::uint64_t>(n_r) * static_cast<std::uint64_t>(n_r);
    std::vector<std::uint64_t> pairs(pair_space);
    std::iota(pairs.begin(), pairs.end(), std::uint64_t{0});
    for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(edge_count); ++i) {
        std::swap(pairs[i], pairs[i + uniform_below(rng, pair_space - i)]);
    }
    std::vector<std::uint64_t> chosen(pairs.begin(), pairs.begin() + edge_count);
    std::sort(chosen.begin(), chosen.end());
    for (std::uint64_t idx : chosen) {
        const auto b = static_cast<NodeId>(idx / static_cast<std::uint64_t>(n_r));
        const auto t = static_cast<NodeId>(idx % static_cast<std::uint64_t>(n_r));
        inst.edges.push_back(Edge{b, n + t});
    }

    if (n_r > 0) {
        for (std::int64_t i = n_r; i < n; ++i) {
            inst.edges.push_back(Edge{static_cast<NodeId>(uniform_below(rng, static_cast<std::uint64_t>(n_r))), n + i});
        }
        for (std::int64_t i = n_r; i < n; ++i) {
            inst.edges.push_back(Edge{i, n + static_cast<NodeId>(uniform_below(rng, static_cast<std::uint64_t>(n_r)))});
        }
    } else {
        std::vector<NodeId> tops;
        for (std::int64_t i = 0; i < n; ++i) tops.push_back(n + i);
        shuffle(tops, rng);
        for (std::int64_t i = 0; i < n; ++i) inst.edges.push_back(Edge{i, tops[static_cast<std::size_t>(i)]});
    }

    std::vector<NodeId> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), NodeId{0});
    shuffle(order, rng);
    inst.pi1 = Permutation(std::move(order));
    return inst;
}

}  // namespace gapcm
