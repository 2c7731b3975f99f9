#ifndef GAPCM_BENCH_HPP
#define GAPCM_BENCH_HPP

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gapcm/core.hpp"
#include "gapcm/exact.hpp"
#include "gapcm/generator.hpp"

namespace gapcm::bench {

enum class Algorithm {
    median_sidegaps,
    barycenter_sidegaps,
    exact_sidegaps,
    median_kgaps,
    barycenter_kgaps,
    exact_kgaps,
    oracle,
};

/// An algorithm variant; k is set exactly for the k-gap variants and the k-gap oracle.
struct AlgoSpec {
    Algorithm algorithm = Algorithm::median_sidegaps;
    std::optional<int> k;
    OracleMode oracle_mode = OracleMode::unrestricted;

    /// "median_kgaps", "oracle_sidegap", ... (k is not part of the name)
    std::string name() const;
    bool is_exact() const { return algorithm == Algorithm::exact_sidegaps || algorithm == Algorithm::exact_kgaps; }

    /**
     * Accepts the six pipeline names, "oracle" (mode from `mode`) and
     * "oracle_unrestricted" / "oracle_sidegap" / "oracle_kgap". k is kept for
     * k-gap variants (where it is required) and dropped elsewhere.
     */
    static AlgoSpec parse(std::string_view name, std::optional<int> k, std::optional<OracleMode> mode = std::nullopt);
};

OracleMode parse_oracle_mode(std::string_view text);
std::string_view to_string(OracleMode mode);

struct RunOutcome {
    Permutation permutation;
    std::string status;  ///< "ok" for heuristics, a SolveStatus name for exact solvers and the oracle
    std::chrono::duration<double> wall_time{0.0};
};

/// Dispatches to the matching pipeline. Exact variants honor `time_budget`.
RunOutcome run_algorithm(const BipartiteInstance& inst, const AlgoSpec& spec, std::chrono::duration<double> time_budget);

struct RunRecord {
    std::string instance_id;
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> n;
    std::optional<Rational> f_dm;
    std::optional<Rational> deg_avg;
    std::string algo;
    std::optional<int> k;
    std::optional<Count> crossings;
    std::optional<std::size_t> gaps;
    std::optional<double> wall_time_ms;
    std::string status;
    std::optional<Count> optimal_crossings;
    std::optional<double> ratio_crossings;
    std::optional<double> ratio_time;
};

/// Crossings and gaps are recomputed from the permutation, never taken from the solver.
RunRecord make_record(std::string instance_id, const BipartiteInstance& inst, const AlgoSpec& spec,
                      const RunOutcome& outcome);

std::string csv_header();
std::string csv_row(const RunRecord& record);
std::string render_csv(const std::vector<RunRecord>& records);

enum class SweepParam { n, f_dm, deg_avg, k };

std::string_view to_string(SweepParam param);

/**
 * @brief bench configuration, JSON:
 * {"sweep_param": "n"|"f_dm"|"deg_avg"|"k", "values": [...], "instances": int,
 *  "base_params": {"n", "f_dm", "deg_avg", "seed", "k"}, "algos": [name...]}
 */
struct BenchConfig {
    SweepParam sweep_param = SweepParam::n;
    std::vector<Rational> values{Rational(20)};
    int instances = 20;
    GenParams base_params{20, Rational(1, 5), Rational(3), 1};
    int k = 2;
    std::vector<std::string> algos{"median_sidegaps", "barycenter_sidegaps", "exact_sidegaps",
                                   "median_kgaps",    "barycenter_kgaps",    "exact_kgaps"};

    /// Desk-scale defaults: 20 instances at n = 20, f_dm = 0.2, deg_avg = 3, k = 2.
    static BenchConfig desk_defaults();
    /// Full-scale setup: 20 instances at n = 40, f_dm = 0.2, deg_avg = 3, k = 2.
    static BenchConfig full_scale_defaults();
    /// Throws InputError on malformed configurations.
    static BenchConfig from_json(std::string_view text);
};

struct BenchOptions {
    int jobs = 1;
    std::chrono::duration<double> time_budget{300.0};
    bool omit_timing = false;  ///< blank the timing columns so output is reproducible byte for byte
};

/// One row per (sweep value, instance, algorithm) in that nesting order; ratios filled in against the exact variants.
std::vector<RunRecord> run_bench(const BenchConfig& config, const BenchOptions& options);

struct PlotFile {
    std::string name;
    std::string svg;
};

/// Mean line with min/max whiskers per algorithm for crossings, ratios and (unless omitted) time.
std::vector<PlotFile> render_plots(const BenchConfig& config, const std::vector<RunRecord>& records,
                                   bool include_timing);

}  // namespace gapcm::bench

#endif  // GAPCM_BENCH_HPP
