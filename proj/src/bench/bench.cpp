#include <atomic>
#include <iostream>
#include <limits>
#include <map>
#include <mutex>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "gapcm/bench.hpp"

namespace gapcm::bench {

namespace {

struct Cell {
    std::size_t value_index;
    int instance;
    AlgoSpec spec;
};

std::int64_t as_integer(const Rational& value, const char* what) {
    if (value.den() != 1) throw InputError(std::string(what) + " must be an integer, got " + value.str());
    return value.num();
}

Rational rational_from_json(const nlohmann::json& value) {
    if (value.is_number_integer()) return Rational(value.get<std::int64_t>());
    if (value.is_number()) return Rational::from_double(value.get<double>());
    if (value.is_string()) return Rational::parse(value.get<std::string>());
    throw InputError("expected a number, got " + value.dump());
}

SweepParam parse_sweep(std::string_view text) {
    if (text == "n") return SweepParam::n;
    if (text == "f_dm") return SweepParam::f_dm;
    if (text == "deg_avg") return SweepParam::deg_avg;
    if (text == "k") return SweepParam::k;
    throw InputError("sweep_param must be one of n, f_dm, deg_avg, k; got '" + std::string(text) + "'");
}

// generator parameters and k for one sweep value
std::pair<GenParams, int> params_at(const BenchConfig& config, const Rational& value) {
    GenParams params = config.base_params;
    int k = config.k;
    switch (config.sweep_param) {
        case SweepParam::n:
            params.n = as_integer(value, "n");
            break;
        case SweepParam::f_dm:
            params.f_dm = value;
            break;
        case SweepParam::deg_avg:
            params.deg_avg = value;
            break;
        case SweepParam::k:
            k = static_cast<int>(as_integer(value, "k"));
            break;
    }
    return {params, k};
}

std::optional<std::string> reference_algo(const AlgoSpec& spec) {
    switch (spec.algorithm) {
        case Algorithm::median_sidegaps:
        case Algorithm::barycenter_sidegaps:
        case Algorithm::exact_sidegaps:
            return "exact_sidegaps";
        case Algorithm::median_kgaps:
        case Algorithm::barycenter_kgaps:
        case Algorithm::exact_kgaps:
            return "exact_kgaps";
        case Algorithm::oracle:
            return std::nullopt;
    }
    return std::nullopt;
}

}  // namespace

std::string_view to_string(SweepParam param) {
    switch (param) {
        case SweepParam::n:
            return "n";
        case SweepParam::f_dm:
            return "f_dm";
        case SweepParam::deg_avg:
            return "deg_avg";
        case SweepParam::k:
            return "k";
    }
    return "unknown";
}

BenchConfig BenchConfig::desk_defaults() { return BenchConfig{}; }

BenchConfig BenchConfig::full_scale_defaults() {
    BenchConfig config;
    config.values = {Rational(40)};
    config.base_params.n = 40;
    return config;
}

BenchConfig BenchConfig::from_json(std::string_view text) {
    try {
        const auto doc = nlohmann::json::parse(text);
        BenchConfig config;
        config.sweep_param = parse_sweep(doc.at("sweep_param").get<std::string>());
        config.values.clear();
        for (const auto& v : doc.at("values")) config.values.push_back(rational_from_json(v));
        if (config.values.empty()) throw InputError("values must not be empty");
        config.instances = doc.value("instances", 20);
        if (config.instances < 1) throw InputError("instances must be at least 1");

        if (doc.contains("base_params")) {
            const auto& base = doc.at("base_params");
            if (base.contains("n")) config.base_params.n = base.at("n").get<std::int64_t>();
            if (base.contains("f_dm")) config.base_params.f_dm = rational_from_json(base.at("f_dm"));
            if (base.contains("deg_avg")) config.base_params.deg_avg = rational_from_json(base.at("deg_avg"));
            if (base.contains("seed")) config.base_params.seed = base.at("seed").get<std::uint64_t>();
            if (base.contains("k")) config.k = base.at("k").get<int>();
        }
        if (doc.contains("algos")) config.algos = doc.at("algos").get<std::vector<std::string>>();
        if (config.algos.empty()) throw InputError("algos must not be empty");

        // reject bad names and parameters up front rather than per row
        for (const auto& value : config.values) {
            const auto [params, k] = params_at(config, value);
            validate_params(params);
            for (const auto& name : config.algos) AlgoSpec::parse(name, k);
        }
        return config;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed bench config: ") + e.what());
    }
}

std::vector<RunRecord> run_bench(const BenchConfig& config, const BenchOptions& options) {
    std::vector<std::vector<BipartiteInstance>> instances(config.values.size());
    std::vector<Cell> cells;
    for (std::size_t v = 0; v < config.values.size(); ++v) {
        const auto [params, k] = params_at(config, config.values[v]);
        for (int i = 0; i < config.instances; ++i) {
            GenParams p = params;
            p.seed = params.seed + static_cast<std::uint64_t>(i);
            instances[v].push_back(generate(p));
            for (const auto& name : config.algos) cells.push_back(Cell{v, i, AlgoSpec::parse(name, k)});
        }
    }

    std::vector<RunRecord> records(cells.size());
    std::mutex log_mutex;
    auto run_cell = [&](std::size_t c) {
        const Cell& cell = cells[c];
        const auto [params, k] = params_at(config, config.values[cell.value_index]);
        const BipartiteInstance& inst = instances[cell.value_index][static_cast<std::size_t>(cell.instance)];
        const std::string id =
            std::string(to_string(config.sweep_param)) + "=" + config.values[cell.value_index].str() + "/" +
            std::to_string(cell.instance);

        RunRecord record;
        try {
            record = make_record(id, inst, cell.spec, run_algorithm(inst, cell.spec, options.time_budget));
        } catch (const std::exception& e) {
            record.instance_id = id;
            record.algo = cell.spec.name();
            record.k = cell.spec.k;
            record.status = "error";
            const std::lock_guard lock(log_mutex);
            std::cerr << "bench: " << id << " " << record.algo << ": " << e.what() << "\n";
        }
        record.seed = params.seed + static_cast<std::uint64_t>(cell.instance);
        record.n = params.n;
        record.f_dm = params.f_dm;
        record.deg_avg = params.deg_avg;
        records[c] = std::move(record);
    };

    const int jobs = std::max(1, options.jobs);
    if (jobs == 1) {
        for (std::size_t c = 0; c < cells.size(); ++c) run_cell(c);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> workers;
        for (int w = 0; w < jobs; ++w) {
            workers.emplace_back([&] {
                for (std::size_t c = next++; c < cells.size(); c = next++) run_cell(c);
            });
        }
        for (auto& worker : workers) worker.join();
    }

    // ratios against the exact variant of the same family on the same instance
    std::map<std::tuple<std::size_t, int, std::string>, std::size_t> exact_rows;
    for (std::size_t c = 0; c < cells.size(); ++c) {
        if (cells[c].spec.is_exact()) exact_rows[{cells[c].value_index, cells[c].instance, cells[c].spec.name()}] = c;
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
        RunRecord& record = records[c];
        const auto reference = reference_algo(cells[c].spec);
        if (!reference || !record.crossings) continue;
        auto it = exact_rows.find({cells[c].value_index, cells[c].instance, *reference});
        if (it == exact_rows.end()) continue;
        const RunRecord& exact = records[it->second];
        if (exact.status != "optimal" || !exact.crossings) continue;

        record.optimal_crossings = exact.crossings;
        if (*exact.crossings == 0) {
            record.ratio_crossings = *record.crossings == 0 ? 1.0 : std::numeric_limits<double>::infinity();
        } else {
            record.ratio_crossings = static_cast<double>(*record.crossings) / static_cast<double>(*exact.crossings);
        }
        if (record.wall_time_ms && exact.wall_time_ms && *exact.wall_time_ms > 0.0) {
            record.ratio_time = *record.wall_time_ms / *exact.wall_time_ms;
        }
    }

    if (options.omit_timing) {
        for (auto& record : records) {
            record.wall_time_ms.reset();
            record.ratio_time.reset();
        }
    }
    return records;
}

}  // namespace gapcm::bench
