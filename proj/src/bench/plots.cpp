#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

#include "gapcm/bench.hpp"

namespace gapcm::bench {

namespace {

constexpr int kWidth = 720;
constexpr int kHeight = 440;
constexpr int kLeft = 70;
constexpr int kRight = 190;
constexpr int kTop = 40;
constexpr int kBottom = 60;

constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

struct Stat {
    double mean = 0.0;
    double lo = 0.0;
    double hi = 0.0;
};

struct Series {
    std::string label;
    std::map<std::size_t, Stat> points;  // by sweep value index
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

std::string series_label(const RunRecord& r, bool k_in_label) {
    return k_in_label && r.k ? r.algo + " (k=" + std::to_string(*r.k) + ")" : r.algo;
}

std::string render_chart(const std::string& title, const std::string& x_label, const std::string& y_label,
                         const std::vector<double>& xs, const std::vector<Series>& series, bool log_y) {
    double y_min = std::numeric_limits<double>::infinity();
    double y_max = -std::numeric_limits<double>::infinity();
    for (const auto& s : series) {
        for (const auto& [x, st] : s.points) {
            y_min = std::min(y_min, st.lo);
            y_max = std::max(y_max, st.hi);
        }
    }
    if (!std::isfinite(y_min)) y_min = y_max = 0.0;
    if (log_y) {
        y_min = std::max(y_min, 1e-3);
        y_max = std::max(y_max, y_min * 10.0);
    } else {
        y_min = std::min(y_min, 0.0);
        if (y_max <= y_min) y_max = y_min + 1.0;
    }
    auto ty = [&](double v) {
        const double plot_h = kHeight - kTop - kBottom;
        double f = 0.0;
        if (log_y) {
            v = std::max(v, y_min);
            f = (std::log10(v) - std::log10(y_min)) / (std::log10(y_max) - std::log10(y_min));
        } else {
            f = (v - y_min) / (y_max - y_min);
        }
        return kTop + plot_h * (1.0 - f);
    };
    const double plot_w = kWidth - kLeft - kRight;
    auto tx = [&](std::size_t i) {
        return xs.size() == 1 ? kLeft + plot_w / 2.0 : kLeft + plot_w * static_cast<double>(i) / static_cast<double>(xs.size() - 1);
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << title << "</text>\n";

    // axes and ticks
    svg << "<line x1=\"" << kLeft << "\" y1=\"" << kHeight - kBottom << "\" x2=\"" << kWidth - kRight << "\" y2=\""
        << kHeight - kBottom << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << kHeight - kBottom
        << "\" stroke=\"black\"/>\n";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        svg << "<text x=\"" << num(tx(i)) << "\" y=\"" << kHeight - kBottom + 18 << "\" text-anchor=\"middle\">"
            << tick_label(xs[i]) << "</text>\n";
    }
    for (int t = 0; t <= 4; ++t) {
        const double v = log_y ? std::pow(10.0, std::log10(y_min) + (std::log10(y_max) - std::log10(y_min)) * t / 4.0)
                               : y_min + (y_max - y_min) * t / 4.0;
        svg << "<line x1=\"" << kLeft - 4 << "\" y1=\"" << num(ty(v)) << "\" x2=\"" << kWidth - kRight << "\" y2=\""
            << num(ty(v)) << "\" stroke=\"#ddd\"/>\n";
        svg << "<text x=\"" << kLeft - 8 << "\" y=\"" << num(ty(v) + 4) << "\" text-anchor=\"end\">" << tick_label(v)
            << "</text>\n";
    }
    svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 15 << "\" text-anchor=\"middle\">" << x_label
        << "</text>\n";
    svg << "<text transform=\"translate(18," << kTop + (kHeight - kTop - kBottom) / 2 << ") rotate(-90)\" "
        << "text-anchor=\"middle\">" << y_label << (log_y ? " (log)" : "") << "</text>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = kPalette[s % std::size(kPalette)];
        std::string points;
        for (const auto& [i, st] : series[s].points) {
            if (!points.empty()) points += " ";
            points += num(tx(i)) + "," + num(ty(st.mean));
            svg << "<line x1=\"" << num(tx(i)) << "\" y1=\"" << num(ty(st.lo)) << "\" x2=\"" << num(tx(i)) << "\" y2=\""
                << num(ty(st.hi)) << "\" stroke=\"" << color << "\" stroke-width=\"1\"/>\n";
            svg << "<circle cx=\"" << num(tx(i)) << "\" cy=\"" << num(ty(st.mean)) << "\" r=\"3\" fill=\"" << color
                << "\"/>\n";
        }
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"" << points << "\"/>\n";
        const int ly = kTop + 10 + static_cast<int>(s) * 18;
        svg << "<line x1=\"" << kWidth - kRight + 12 << "\" y1=\"" << ly << "\" x2=\"" << kWidth - kRight + 32
            << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"" << kWidth - kRight + 38 << "\" y=\"" << ly + 4 << "\">" << series[s].label << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace

std::vector<PlotFile> render_plots(const BenchConfig& config, const std::vector<RunRecord>& records,
                                   bool include_timing) {
    struct Metric {
        std::string file;
        std::string label;
        std::optional<double> (*get)(const RunRecord&);
        bool is_time;
    };
    const std::vector<Metric> metrics{
        {"crossings", "crossings",
         [](const RunRecord& r) { return r.crossings ? std::optional<double>(static_cast<double>(*r.crossings)) : std::nullopt; },
         false},
        {"ratio_crossings", "crossings / exact", [](const RunRecord& r) { return r.ratio_crossings; }, false},
        {"time_s", "time [s]",
         [](const RunRecord& r) { return r.wall_time_ms ? std::optional<double>(*r.wall_time_ms / 1000.0) : std::nullopt; },
         true},
        {"ratio_time_s", "time / exact time", [](const RunRecord& r) { return r.ratio_time; }, true},
    };

    // rows come in (value, instance, algo) order
    const std::size_t per_value = records.size() / std::max<std::size_t>(1, config.values.size());
    std::vector<double> xs;
    for (const auto& v : config.values) xs.push_back(v.to_double());
    const bool any_exact = std::any_of(config.algos.begin(), config.algos.end(),
                                       [](const std::string& a) { return a.starts_with("exact"); });
    const bool k_in_label = config.sweep_param != SweepParam::k;

    std::vector<PlotFile> files;
    for (const auto& metric : metrics) {
        if (metric.is_time && !include_timing) continue;
        std::vector<std::string> order;
        std::map<std::string, std::map<std::size_t, std::vector<double>>> samples;
        for (std::size_t r = 0; r < records.size(); ++r) {
            const auto value = metric.get(records[r]);
            if (!value) continue;
            const std::string label = series_label(records[r], k_in_label);
            if (!samples.contains(label)) order.push_back(label);
            samples[label][per_value == 0 ? 0 : r / per_value].push_back(*value);
        }
        if (samples.empty()) continue;

        std::vector<Series> series;
        for (const auto& label : order) {
            Series s{label, {}};
            for (const auto& [i, vals] : samples[label]) {
                Stat st;
                st.lo = *std::min_element(vals.begin(), vals.end());
                st.hi = *std::max_element(vals.begin(), vals.end());
                double sum = 0.0;
                for (double v : vals) sum += v;
                st.mean = sum / static_cast<double>(vals.size());
                s.points.emplace(i, st);
            }
            series.push_back(std::move(s));
        }
        const bool log_y = metric.is_time && any_exact;
        const std::string x_label(to_string(config.sweep_param));
        files.push_back(PlotFile{metric.file + ".svg",
                                 render_chart(metric.label + " vs " + x_label, x_label, metric.label, xs, series, log_y)});
    }
    return files;
}

}  // namespace gapcm::bench
