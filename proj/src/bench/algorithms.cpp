#include <array>
#include <cmath>
#include <cstdio>
#include <utility>

#include "gapcm/bench.hpp"
#include "gapcm/gap_placement.hpp"

namespace gapcm::bench {

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::array<std::pair<std::string_view, Algorithm>, 6> kPipelineNames{{
    {"median_sidegaps", Algorithm::median_sidegaps},
    {"barycenter_sidegaps", Algorithm::barycenter_sidegaps},
    {"exact_sidegaps", Algorithm::exact_sidegaps},
    {"median_kgaps", Algorithm::median_kgaps},
    {"barycenter_kgaps", Algorithm::barycenter_kgaps},
    {"exact_kgaps", Algorithm::exact_kgaps},
}};

bool uses_k(const AlgoSpec& spec) {
    switch (spec.algorithm) {
        case Algorithm::median_kgaps:
        case Algorithm::barycenter_kgaps:
        case Algorithm::exact_kgaps:
            return true;
        case Algorithm::oracle:
            return spec.oracle_mode == OracleMode::kgap;
        default:
            return false;
    }
}

std::string format_double(double value, const char* fmt) {
    if (std::isinf(value)) return "inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, value);
    return buf;
}

template <typename T, typename Fn>
std::string opt(const std::optional<T>& value, Fn&& fn) {
    return value ? fn(*value) : std::string();
}

}  // namespace

OracleMode parse_oracle_mode(std::string_view text) {
    if (text == "unrestricted") return OracleMode::unrestricted;
    if (text == "sidegap") return OracleMode::sidegap;
    if (text == "kgap") return OracleMode::kgap;
    throw InputError("unknown oracle mode '" + std::string(text) + "' (expected unrestricted, sidegap or kgap)");
}

std::string_view to_string(OracleMode mode) {
    switch (mode) {
        case OracleMode::unrestricted:
            return "unrestricted";
        case OracleMode::sidegap:
            return "sidegap";
        case OracleMode::kgap:
            return "kgap";
    }
    return "unknown";
}

std::string AlgoSpec::name() const {
    if (algorithm == Algorithm::oracle) return "oracle_" + std::string(to_string(oracle_mode));
    for (const auto& [label, algo] : kPipelineNames) {
        if (algo == algorithm) return std::string(label);
    }
    return "unknown";
}

AlgoSpec AlgoSpec::parse(std::string_view name, std::optional<int> k, std::optional<OracleMode> mode) {
    AlgoSpec spec;
    bool known = false;
    for (const auto& [label, algo] : kPipelineNames) {
        if (label == name) {
            spec.algorithm = algo;
            known = true;
        }
    }
    if (!known) {
        if (name == "oracle") {
            spec.algorithm = Algorithm::oracle;
            spec.oracle_mode = mode.value_or(k ? OracleMode::kgap : OracleMode::unrestricted);
        } else if (name.starts_with("oracle_")) {
            spec.algorithm = Algorithm::oracle;
            spec.oracle_mode = parse_oracle_mode(name.substr(7));
        } else {
            throw InputError("unknown algorithm '" + std::string(name) + "'");
        }
    }
    if (uses_k(spec)) {
        if (!k) throw InputError(spec.name() + " needs --k");
        if (*k < 1) throw InputError("k must be at least 1");
        spec.k = k;
    }
    return spec;
}

RunOutcome run_algorithm(const BipartiteInstance& inst, const AlgoSpec& spec, std::chrono::duration<double> time_budget) {
    const auto start = Clock::now();
    auto finish = [&](Permutation pi, std::string status) {
        return RunOutcome{std::move(pi), std::move(status), Clock::now() - start};
    };
    auto from_solve = [&](const SolveResult& result) {
        if (!result.permutation) throw std::runtime_error("exact solver returned no permutation");
        return finish(*result.permutation, std::string(to_string(result.status)));
    };

    switch (spec.algorithm) {
        case Algorithm::median_sidegaps:
            return finish(solve_sidegaps(inst, BaseAlgorithm::median), "ok");
        case Algorithm::barycenter_sidegaps:
            return finish(solve_sidegaps(inst, BaseAlgorithm::barycenter), "ok");
        case Algorithm::exact_sidegaps:
            return from_solve(solve_exact_sidegaps(inst, time_budget));
        case Algorithm::median_kgaps:
            return finish(solve_kgaps(inst, HeuristicKind::median, spec.k.value()), "ok");
        case Algorithm::barycenter_kgaps:
            return finish(solve_kgaps(inst, HeuristicKind::barycenter, spec.k.value()), "ok");
        case Algorithm::exact_kgaps:
            return from_solve(solve_exact_kgaps(inst, spec.k.value(), time_budget));
        case Algorithm::oracle: {
            const OracleResult result = brute_force_oracle(inst, OracleQuery{spec.oracle_mode, spec.k.value_or(1)});
            return finish(result.permutation, "optimal");
        }
    }
    throw std::logic_error("unknown algorithm");
}

RunRecord make_record(std::string instance_id, const BipartiteInstance& inst, const AlgoSpec& spec,
                      const RunOutcome& outcome) {
    RunRecord record;
    record.instance_id = std::move(instance_id);
    record.algo = spec.name();
    record.k = spec.k;
    record.crossings = count_crossings(inst, outcome.permutation);
    record.gaps = count_gaps(inst, outcome.permutation).count;
    record.wall_time_ms = std::chrono::duration<double, std::milli>(outcome.wall_time).count();
    record.status = outcome.status;
    return record;
}

std::string csv_header() {
    return "instance_id,seed,n,f_dm,deg_avg,algo,k,crossings,gaps,wall_time_ms,status,optimal_crossings,"
           "ratio_crossings,ratio_time\n";
}

std::string csv_row(const RunRecord& r) {
    auto integer = [](auto v) { return std::to_string(v); };
    auto rational = [](const Rational& v) { return v.str(); };
    std::string row;
    row += r.instance_id + ",";
    row += opt(r.seed, integer) + ",";
    row += opt(r.n, integer) + ",";
    row += opt(r.f_dm, rational) + ",";
    row += opt(r.deg_avg, rational) + ",";
    row += r.algo + ",";
    row += opt(r.k, integer) + ",";
    row += opt(r.crossings, integer) + ",";
    row += opt(r.gaps, integer) + ",";
    row += opt(r.wall_time_ms, [](double v) { return format_double(v, "%.3f"); }) + ",";
    row += r.status + ",";
    row += opt(r.optimal_crossings, integer) + ",";
    row += opt(r.ratio_crossings, [](double v) { return format_double(v, "%.6f"); }) + ",";
    row += opt(r.ratio_time, [](double v) { return format_double(v, "%.6f"); }) + "\n";
    return row;
}

std::string render_csv(const std::vector<RunRecord>& records) {
    std::string out = csv_header();
    for (const auto& r : records) out += csv_row(r);
    return out;
}

}  // namespace gapcm::bench
