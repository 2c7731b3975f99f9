#include <doctest.h>

#include <random>

#include "gapcm/exact.hpp"
#include "gapcm/generator.hpp"
#include "gapcm/instance_io.hpp"
#include "support.hpp"

using namespace gapcm;
using testsupport::make_instance;

namespace {

constexpr auto R = NodeKind::real;
constexpr auto D = NodeKind::dummy;
constexpr std::chrono::duration<double> kBudget{60.0};

std::size_t count_g_vars(const OrderingModel& model) {
    std::size_t g = 0;
    for (const auto& name : model_variables(model)) g += name.starts_with("g_");
    return g;
}

BipartiteInstance random_small(std::mt19937_64& rng) {
    testsupport::RandomShape shape;
    shape.bottom_real = 2 + rng() % 4;
    shape.bottom_dummy = rng() % 2;
    shape.top_real = 1 + rng() % 4;
    shape.top_dummy = rng() % 4;
    shape.density = 0.3 + 0.1 * static_cast<double>(rng() % 5);
    return testsupport::random_instance(rng, shape);
}

}  // namespace

TEST_CASE("kgap model shape") {
    // 2 reals + 2 dummies, k = 1: one chain link, budget sum g <= 0
    const auto inst = make_instance({{1, R}, {2, R}}, {{10, R}, {11, R}, {20, D}, {21, D}},
                                    {{1, 10}, {2, 11}, {1, 20}, {2, 21}});
    const auto model = build_kgap_model(inst, 1);
    CHECK(model.gap_rule == GapRule::at_most_k);
    CHECK(count_g_vars(model) == 1);
    bool budget_found = false;
    for (const auto& c : model_constraints(model, false)) {
        if (c.terms.size() == 1 && c.terms[0].var.starts_with("g_")) {
            budget_found = true;
            CHECK(c.rhs == 0);
            CHECK(c.op == Relation::less_equal);
        }
    }
    CHECK(budget_found);
    CHECK_THROWS_AS(build_kgap_model(inst, 0), InputError);

    // no dummies: no g variables, no budget row
    const auto plain = make_instance({{1, R}, {2, R}}, {{10, R}, {11, R}, {12, R}}, {{1, 10}, {2, 11}, {1, 12}});
    const auto pm = build_kgap_model(plain, 2);
    CHECK(count_g_vars(pm) == 0);
    CHECK(model_variables(pm).size() == 6);
    CHECK(transitivity_constraint_count(pm) == 6);
    std::size_t transitivity = 0;
    for (const auto& c : model_constraints(pm, true)) transitivity += c.terms.size() == 3;
    CHECK(transitivity == 6);
}

TEST_CASE("base model on tiny instances") {
    const auto one = make_instance({{1, R}}, {{10, R}}, {{1, 10}});
    const auto m1 = build_base_oscm_model(one);
    CHECK(model_variables(m1).empty());
    const auto r1 = solve_branch_and_bound(m1, kBudget);
    CHECK(r1.status == SolveStatus::optimal);
    CHECK(r1.objective == 0);

    // two nodes: optimum is min(c12, c21)
    const auto two = make_instance({{1, R}, {2, R}, {3, R}}, {{10, R}, {11, R}}, {{2, 10}, {3, 10}, {1, 11}, {3, 11}});
    const auto c = pairwise_crossings(two);
    const auto r2 = solve_branch_and_bound(build_base_oscm_model(two), kBudget);
    CHECK(r2.status == SolveStatus::optimal);
    CHECK(r2.objective == std::min(c(10, 11), c(11, 10)));
}

TEST_CASE("export format") {
    CHECK(export_model(OrderingModel{}) == "{\"vars\":[],\"objective\":[],\"constraints\":[]}\n");
    const auto two = make_instance({{1, R}, {2, R}}, {{10, R}, {11, R}}, {{1, 11}, {2, 10}});
    const auto m = build_base_oscm_model(two);
    CHECK(model_variables(m) == std::vector<std::string>{"x_10_11", "x_11_10"});
    const auto constraints = model_constraints(m, true);
    REQUIRE(constraints.size() == 1);
    CHECK(constraints[0].op == Relation::equal);
    CHECK(constraints[0].rhs == 1);
}

TEST_CASE("export/import round trip") {
    std::mt19937_64 rng(13);
    int kgap_models = 0;
    for (int trial = 0; trial < 60; ++trial) {
        testsupport::RandomShape shape{3, 0, 2 + rng() % 3, rng() % 4, 0.5};
        const auto inst = testsupport::random_instance(rng, shape);
        for (const auto& model : {build_kgap_model(inst, 1 + static_cast<int>(rng() % 3)), build_sidegap_model(inst),
                                  build_base_oscm_model(inst)}) {
            if (model.size() < 2) continue;
            CHECK(import_model(export_model(model)) == model);
            kgap_models += model.size() == 5 && model.gap_rule == GapRule::at_most_k;
        }
    }
    CHECK(kgap_models > 0);
    CHECK_THROWS_AS(import_model("{\"vars\":"), InputError);
}

TEST_CASE("model semantics match crossings and gaps") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 40; ++trial) {
        const auto inst = random_small(rng);
        const int k = 1 + static_cast<int>(rng() % 3);
        const auto kgap = build_kgap_model(inst, k);
        const auto side = build_sidegap_model(inst);
        const auto canonical = testsupport::reference_dummy_order(inst);
        auto order = testsupport::all_top(inst);
        std::sort(order.begin(), order.end());
        do {
            const Permutation pi(order);
            const Count crossings = testsupport::brute_crossings(inst, order);
            CHECK(model_objective_value(kgap, pi) == crossings);
            const bool chain_ok = testsupport::dummies_in(inst, order) == canonical;
            const auto gaps = testsupport::naive_gaps(inst, order);
            const bool single_dummy = canonical.size() < 2;
            if (!single_dummy) {
                CHECK(model_feasible(kgap, pi) == (chain_ok && gaps.count <= static_cast<std::size_t>(k)));
            }
            if (model_feasible(side, pi)) CHECK(gaps.side_only);
        } while (std::next_permutation(order.begin(), order.end()));
    }
}

TEST_CASE("branch and bound matches enumeration") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 60; ++trial) {
        const auto inst = random_small(rng);
        const auto opt = testsupport::reference_optima(inst, 3);

        const auto unrestricted = solve_branch_and_bound(build_base_oscm_model(inst), kBudget);
        REQUIRE(unrestricted.status == SolveStatus::optimal);
        CHECK(unrestricted.objective == opt.unrestricted);
        CHECK(testsupport::brute_crossings(inst, unrestricted.permutation->ids()) == opt.unrestricted);

        const auto side = solve_branch_and_bound(build_sidegap_model(inst), kBudget);
        REQUIRE(side.status == SolveStatus::optimal);
        CHECK(side.objective == opt.sidegap);
        CHECK(testsupport::naive_gaps(inst, side.permutation->ids()).side_only);

        for (int k = 1; k <= 3; ++k) {
            const auto r = solve_exact_kgaps(inst, k, kBudget);
            REQUIRE(r.status == SolveStatus::optimal);
            CHECK(r.objective == opt.kgap.at(static_cast<std::size_t>(k)));
            CHECK(testsupport::brute_crossings(inst, r.permutation->ids()) == r.objective);
            CHECK(testsupport::naive_gaps(inst, r.permutation->ids()).count <= static_cast<std::size_t>(k));
            CHECK(testsupport::dummies_in(inst, r.permutation->ids()) == testsupport::reference_dummy_order(inst));
        }

        const auto pipeline = solve_exact_sidegaps(inst, kBudget);
        CHECK(pipeline.objective == opt.sidegap);
        CHECK(solve_exact_unrestricted(inst, kBudget).objective == opt.unrestricted);
    }
}

TEST_CASE("zero budget returns the incumbent as a timeout") {
    std::mt19937_64 rng(37);
    const auto inst = testsupport::random_instance(rng, {4, 0, 5, 2, 0.5});
    const auto model = build_kgap_model(inst, 2);
    const auto none = solve_branch_and_bound(model, std::chrono::duration<double>(0.0));
    CHECK(none.status == SolveStatus::timeout_incumbent);
    CHECK_FALSE(none.permutation.has_value());

    const auto seeded = solve_exact_kgaps(inst, 2, std::chrono::duration<double>(0.0));
    CHECK(seeded.status == SolveStatus::timeout_incumbent);
    REQUIRE(seeded.permutation.has_value());
    CHECK(model_feasible(model, *seeded.permutation));
    CHECK(seeded.objective == testsupport::brute_crossings(inst, seeded.permutation->ids()));
}

TEST_CASE("oracle") {
    const auto plain = make_instance({{1, R}, {2, R}, {3, R}}, {{10, R}, {11, R}, {12, R}},
                                     {{3, 10}, {1, 11}, {2, 12}, {1, 12}});
    CHECK(brute_force_oracle(plain, {OracleMode::sidegap, 1}).crossings ==
          brute_force_oracle(plain, {OracleMode::unrestricted, 1}).crossings);

    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 40; ++trial) {
        const auto inst = random_small(rng);
        const auto opt = testsupport::reference_optima(inst, 2);
        const auto u = brute_force_oracle(inst, {OracleMode::unrestricted, 1});
        CHECK(u.crossings == opt.unrestricted);
        CHECK(testsupport::brute_crossings(inst, u.permutation.ids()) == u.crossings);
        CHECK(brute_force_oracle(inst, {OracleMode::sidegap, 1}).crossings == opt.sidegap);
        CHECK(brute_force_oracle(inst, {OracleMode::kgap, 2}).crossings == opt.kgap.at(2));
    }

    std::vector<Node> top;
    std::vector<Edge> edges;
    for (NodeId i = 0; i < 10; ++i) {
        top.push_back({100 + i, Layer::top, NodeKind::real});
        edges.push_back({1, 100 + i});
    }
    BipartiteInstance big{{{1, Layer::bottom, NodeKind::real}}, top, edges, Permutation({1})};
    CHECK_THROWS_AS(brute_force_oracle(big, {OracleMode::unrestricted, 1}), RefusalError);
}

TEST_CASE("frozen oracle values for the seed 7 fixture") {
    // n=6, f_dm=0.3, deg_avg=2, seed=7; 13 is from a separate enumeration outside this library
    const auto inst = instance_from_json(read_text_file(GAPCM_GOLDEN_DIR "/seed7_instance.json"));
    const auto reference = testsupport::reference_optima(inst, 1);
    const std::vector<OracleQuery> queries{{OracleMode::unrestricted, 1}, {OracleMode::sidegap, 1}, {OracleMode::kgap, 1}};
    const auto results = brute_force_oracle(inst, queries);
    REQUIRE(results.size() == 3);
    CHECK(reference.unrestricted == 13);
    CHECK(reference.sidegap == 13);
    CHECK(reference.kgap.at(1) == 13);
    CHECK(results[0].crossings == 13);
    CHECK(results[1].crossings == 13);
    CHECK(results[2].crossings == 13);
}

TEST_CASE("larger instances agree with a subset dynamic program") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        for (std::int64_t n : {12, 14}) {
            const auto inst = generate({n, Rational(1, 5), Rational(3), seed});
            const Count dp = testsupport::subset_dp_optimum(inst);
            const auto unrestricted = solve_exact_unrestricted(inst, kBudget);
            REQUIRE(unrestricted.status == SolveStatus::optimal);
            CHECK(unrestricted.objective == dp);
            // with one gap per dummy allowed, the canonical dummy order loses nothing
            const int dummies = static_cast<int>(top_ids(inst, NodeKind::dummy).size());
            const auto all_gaps = solve_exact_kgaps(inst, std::max(1, dummies), kBudget);
            REQUIRE(all_gaps.status == SolveStatus::optimal);
            CHECK(all_gaps.objective == dp);
        }
    }
}
