#pragma once

#include <fstream>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "streamtree/csv.hpp"
#include "streamtree/tree.hpp"

namespace streamtree {

struct RunConfig {
    DatasetSchema schema;
    HyperParams hp;
    ObserverConfig observer;
    int element_capacity = 1024;
    long long curve_interval = 10000;

    void validate() const {
        hp.validate();
        if (observer.mode == ObserverMode::quantile && observer.quantile_count < 2)
            throw std::invalid_argument("quantile mode needs quantile_count >= 2");
        if (element_capacity < 1) throw std::invalid_argument("element_capacity must be >= 1");
    }
};

struct EvalReport {
    long long samples_seen = 0;
    long long correct = 0;
    double accuracy = 0;
    long long split_count = 0;
    long long trial_count = 0;
    long long pool_exhausted = 0;
    TreeMetrics metrics;
    int leaves = 0;
    int depth = 0;
    long long fixed_point_saturations = 0;
    // Cumulative accuracy sampled every curve_interval samples plus at the end.
    std::vector<std::pair<long long, double>> accuracy_curve;

    nlohmann::json to_json() const {
        nlohmann::json curve = nlohmann::json::array();
        for (const auto& [n, acc] : accuracy_curve)
            curve.push_back({{"samples", n}, {"accuracy", acc}});
        return nlohmann::json{
            {"samples_seen", samples_seen},
            {"correct", correct},
            {"accuracy", accuracy},
            {"splits", split_count},
            {"trials", trial_count},
            {"pool_exhausted", pool_exhausted},
            {"metrics",
             {{"splits_hoeffding", metrics.splits_hoeffding},
              {"splits_tie", metrics.splits_tie},
              {"depth_limited", metrics.depth_limited},
              {"leaf_limited", metrics.leaf_limited},
              {"fixed_point_saturations", fixed_point_saturations},
              {"leaves", leaves},
              {"depth", depth}}},
            {"curve", curve}};
    }

    void write_curve_csv(const std::string& path) const {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write curve file: " + path);
        out << "samples,accuracy\n";
        char buf[64];
        for (const auto& [n, acc] : accuracy_curve) {
            std::snprintf(buf, sizeof buf, "%lld,%.10g\n", n, acc);
            out << buf;
        }
    }
};

using SampleSource = std::function<std::optional<Sample>()>;
// Called after each sample is scored, before it is learned.
using PredictionHook = std::function<void(long long index, int predicted, int actual)>;

// Interleaved test-then-train over an existing tree: every sample is
// predicted first, scored, and only then used for training. Accuracy
// accumulates over the whole stream, cold start included.
inline EvalReport run_prequential(HoeffdingTree& tree, const SampleSource& next,
                                  long long curve_interval = 10000,
                                  const PredictionHook& hook = nullptr) {
    EvalReport report;
    while (auto s = next()) {
        const int predicted = tree.predict(*s);
        if (predicted == s->label) ++report.correct;
        if (hook) hook(report.samples_seen, predicted, s->label);
        ++report.samples_seen;
        tree.learn_one(*s);
        if (curve_interval > 0 && report.samples_seen % curve_interval == 0)
            report.accuracy_curve.emplace_back(
                report.samples_seen,
                static_cast<double>(report.correct) / static_cast<double>(report.samples_seen));
    }
    if (report.samples_seen > 0) {
        report.accuracy =
            static_cast<double>(report.correct) / static_cast<double>(report.samples_seen);
        if (report.accuracy_curve.empty() ||
            report.accuracy_curve.back().first != report.samples_seen)
            report.accuracy_curve.emplace_back(report.samples_seen, report.accuracy);
    }
    report.metrics = tree.metrics();
    report.split_count = tree.metrics().splits_total;
    report.trial_count = tree.metrics().trials_run;
    report.pool_exhausted = tree.metrics().pool_exhausted;
    report.leaves = tree.leaf_count();
    report.depth = tree.depth();
    report.fixed_point_saturations = tree.fixed_point_stats().saturations;
    return report;
}

inline EvalReport run_prequential(const RunConfig& config, const SampleSource& next,
                                  const PredictionHook& hook = nullptr) {
    config.validate();
    HoeffdingTree tree(config.schema, config.hp, config.observer, config.element_capacity);
    return run_prequential(tree, next, config.curve_interval, hook);
}

inline EvalReport run_prequential(const RunConfig& config, const std::vector<Sample>& samples,
                                  const PredictionHook& hook = nullptr) {
    std::size_t i = 0;
    return run_prequential(
        config,
        [&]() -> std::optional<Sample> {
            if (i >= samples.size()) return std::nullopt;
            return samples[i++];
        },
        hook);
}

struct SweepRow {
    int quantile_count = 0;
    bool ok = false;
    std::string error;
    EvalReport report;
};

// One prequential run per quantile count over the same stream. A bad count
// records its error in the row and the sweep continues.
inline std::vector<SweepRow> sweep_quantiles(RunConfig config, const std::vector<int>& counts,
                                             const std::vector<Sample>& samples) {
    std::vector<SweepRow> rows;
    for (int q : counts) {
        SweepRow row;
        row.quantile_count = q;
        config.observer.quantile_count = q;
        try {
            row.report = run_prequential(config, samples);
            row.ok = true;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write sweep file: " + path);
    out << "quantiles,accuracy,splits,error\n";
    char buf[64];
    for (const SweepRow& row : rows) {
        if (row.ok) {
            std::snprintf(buf, sizeof buf, "%d,%.10g,%lld,\n", row.quantile_count,
                          row.report.accuracy, row.report.split_count);
            out << buf;
        } else {
            out << row.quantile_count << ",,," << row.error << '\n';
        }
    }
}

}  // namespace streamtree
