#include <doctest.h>

#include <regex>

#include "gapcm/bench.hpp"
#include "gapcm/drawing.hpp"
#include "gapcm/instance_io.hpp"
#include "support.hpp"

using namespace gapcm;
using namespace gapcm::bench;

namespace {

constexpr std::chrono::duration<double> kBudget{60.0};

std::size_t occurrences(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
    return n;
}

std::size_t line_count(const std::string& text) { return occurrences(text, "\n"); }

}  // namespace

TEST_CASE("algorithm names") {
    CHECK(AlgoSpec::parse("median_sidegaps", std::nullopt).algorithm == Algorithm::median_sidegaps);
    CHECK_FALSE(AlgoSpec::parse("median_sidegaps", 3).k.has_value());
    CHECK(AlgoSpec::parse("exact_kgaps", 2).k == 2);
    CHECK_THROWS_AS(AlgoSpec::parse("exact_kgaps", std::nullopt), InputError);
    CHECK_THROWS_AS(AlgoSpec::parse("exact_kgaps", 0), InputError);
    CHECK_THROWS_AS(AlgoSpec::parse("ilp", 2), InputError);
    CHECK(AlgoSpec::parse("oracle_sidegap", std::nullopt).oracle_mode == OracleMode::sidegap);
    CHECK(AlgoSpec::parse("oracle", 2).oracle_mode == OracleMode::kgap);
    CHECK(AlgoSpec::parse("oracle", std::nullopt, OracleMode::sidegap).name() == "oracle_sidegap");
    CHECK_THROWS_AS(AlgoSpec::parse("oracle_kgap", std::nullopt), InputError);
    for (const char* name : {"median_sidegaps", "barycenter_sidegaps", "exact_sidegaps"}) {
        CHECK(AlgoSpec::parse(name, std::nullopt).name() == name);
    }
}

TEST_CASE("records recompute crossings and respect the gap rule") {
    const auto inst = generate({8, Rational(1, 4), Rational(2), 5});
    const auto plain = generate({8, Rational(0), Rational(2), 5});
    for (const char* name : {"median_sidegaps", "barycenter_sidegaps", "exact_sidegaps", "median_kgaps",
                             "barycenter_kgaps", "exact_kgaps", "oracle_kgap"}) {
        const auto spec = AlgoSpec::parse(name, 1);
        const auto outcome = run_algorithm(inst, spec, kBudget);
        const auto record = make_record("x", inst, spec, outcome);
        CHECK(record.crossings == testsupport::brute_crossings(inst, outcome.permutation.ids()));
        const auto gaps = testsupport::naive_gaps(inst, outcome.permutation.ids());
        if (spec.k) CHECK(gaps.count <= 1);
        if (std::string(name).ends_with("sidegaps")) CHECK(gaps.side_only);
    }
    // median_sidegaps on a no-dummy instance is the plain median order
    const auto median = run_algorithm(plain, AlgoSpec::parse("median_sidegaps", std::nullopt), kBudget);
    CHECK(median.permutation == heuristic_real_order(plain, HeuristicKind::median));

    // exact_kgaps(2) equals the oracle kgap(2) value
    const auto exact = run_algorithm(inst, AlgoSpec::parse("exact_kgaps", 2), kBudget);
    CHECK(exact.status == "optimal");
    CHECK(count_crossings(inst, exact.permutation) ==
          testsupport::reference_optima(inst, 2).kgap.at(2));
}

TEST_CASE("csv layout") {
    CHECK(csv_header() ==
          "instance_id,seed,n,f_dm,deg_avg,algo,k,crossings,gaps,wall_time_ms,status,optimal_crossings,"
          "ratio_crossings,ratio_time\n");
    BenchConfig config;
    config.values = {Rational(6)};
    config.instances = 1;
    config.algos = {"median_kgaps"};
    const auto records = run_bench(config, {1, kBudget, true});
    REQUIRE(records.size() == 1);
    const auto csv = render_csv(records);
    CHECK(line_count(csv) == 2);
    CHECK(csv.find("n=6/0,1,6,0.2,3,median_kgaps,2,") != std::string::npos);
}

TEST_CASE("config parsing") {
    const auto config = BenchConfig::from_json(read_text_file(GAPCM_GOLDEN_DIR "/bench_small_config.json"));
    CHECK(config.sweep_param == SweepParam::f_dm);
    CHECK(config.values == std::vector<Rational>{Rational(0), Rational(1, 4)});
    CHECK(config.base_params.n == 6);
    CHECK(config.k == 2);
    CHECK_THROWS_AS(BenchConfig::from_json("{"), InputError);
    CHECK_THROWS_AS(BenchConfig::from_json(R"({"sweep_param":"x","values":[1]})"), InputError);
    CHECK_THROWS_AS(BenchConfig::from_json(R"({"sweep_param":"n","values":[]})"), InputError);
    CHECK_THROWS_AS(BenchConfig::from_json(R"({"sweep_param":"n","values":[6],"algos":["nope"]})"), InputError);
    CHECK_THROWS_AS(BenchConfig::from_json(R"({"sweep_param":"n","values":[6.5]})"), InputError);
    CHECK_THROWS_AS(BenchConfig::from_json(R"({"sweep_param":"f_dm","values":[2]})"), InputError);
    CHECK(BenchConfig::desk_defaults().base_params.n == 20);
    CHECK(BenchConfig::full_scale_defaults().base_params.n == 40);
    CHECK(BenchConfig::full_scale_defaults().instances == 20);
}

TEST_CASE("bench output is reproducible and matches the golden file") {
    const auto config = BenchConfig::from_json(read_text_file(GAPCM_GOLDEN_DIR "/bench_small_config.json"));
    const auto serial = render_csv(run_bench(config, {1, kBudget, true}));
    CHECK(serial == read_text_file(GAPCM_GOLDEN_DIR "/bench_small.csv"));
    CHECK(render_csv(run_bench(config, {4, kBudget, true})) == serial);
    CHECK(line_count(serial) == 1 + 2 * 2 * 6);
}

TEST_CASE("ratios are at least one against optimal references") {
    BenchConfig config;
    config.values = {Rational(10)};
    config.instances = 5;
    const auto records = run_bench(config, {2, kBudget, false});
    std::size_t with_ratio = 0;
    for (const auto& r : records) {
        CHECK(r.status != "error");
        if (r.ratio_crossings) {
            ++with_ratio;
            CHECK(*r.ratio_crossings >= 1.0);
            CHECK(*r.crossings >= *r.optimal_crossings);
        }
        CHECK(r.wall_time_ms.has_value());
    }
    CHECK(with_ratio == records.size());
}

TEST_CASE("k sweep: mean crossings do not increase with k") {
    const auto config = BenchConfig::from_json(R"({"sweep_param":"k","values":[1,2,3,4,5],"instances":20,
        "base_params":{"n":16,"f_dm":0.2,"deg_avg":3,"seed":1},
        "algos":["median_kgaps","barycenter_kgaps","exact_kgaps"]})");
    const auto records = run_bench(config, {4, kBudget, true});
    std::map<std::string, std::vector<double>> means;
    for (const auto& r : records) {
        REQUIRE(r.crossings.has_value());
        auto& m = means[r.algo];
        m.resize(5, 0.0);
        m[static_cast<std::size_t>(*r.k - 1)] += static_cast<double>(*r.crossings) / 20.0;
    }
    for (const auto& [algo, m] : means) {
        for (std::size_t i = 1; i < m.size(); ++i) CHECK(m[i] <= m[i - 1]);
    }
}

TEST_CASE("plots") {
    const auto config = BenchConfig::from_json(read_text_file(GAPCM_GOLDEN_DIR "/bench_small_config.json"));
    const auto records = run_bench(config, {1, kBudget, false});
    const auto plots = render_plots(config, records, true);
    std::vector<std::string> names;
    for (const auto& p : plots) names.push_back(p.name);
    CHECK(names == std::vector<std::string>{"crossings.svg", "ratio_crossings.svg", "time_s.svg", "ratio_time_s.svg"});
    CHECK(plots[2].svg.find("(log)") != std::string::npos);
    CHECK(plots[0].svg.find("(log)") == std::string::npos);
    CHECK(occurrences(plots[0].svg, "<polyline") == 6);
    CHECK(render_plots(config, records, false).size() == 2);
}

TEST_CASE("drawing") {
    using testsupport::make_instance;
    const auto two = make_instance({{1, NodeKind::real}, {2, NodeKind::real}},
                                   {{10, NodeKind::real}, {11, NodeKind::real}}, {{1, 10}, {2, 11}});
    const auto svg = render_drawing(two, Permutation({10, 11}));
    CHECK(occurrences(svg, "<circle") + occurrences(svg, "<rect x=") == 4);
    CHECK(occurrences(svg, "<line") <= 4);
    CHECK_THROWS_AS(render_drawing(two, Permutation({10})), InputError);
    CHECK_THROWS_AS(render_drawing(two, Permutation({10, 12})), InputError);

    const auto gaps = make_instance({{1, NodeKind::real}, {2, NodeKind::real}},
                                    {{10, NodeKind::real}, {11, NodeKind::real}, {20, NodeKind::dummy}, {21, NodeKind::dummy}},
                                    {{1, 10}, {2, 11}, {1, 20}, {2, 21}});
    const auto gap_svg = render_drawing(gaps, Permutation({20, 10, 11, 21}));
    CHECK(occurrences(gap_svg, "stroke-dasharray") == 2);
    CHECK(occurrences(gap_svg, "#8a2be2") == 2);

    const auto inst = instance_from_json(read_text_file(GAPCM_GOLDEN_DIR "/seed7_instance.json"));
    const auto pi = permutation_from_json(read_text_file(GAPCM_GOLDEN_DIR "/seed7_permutation.json"));
    CHECK(render_drawing(inst, pi) == read_text_file(GAPCM_GOLDEN_DIR "/seed7_drawing.svg"));
}
