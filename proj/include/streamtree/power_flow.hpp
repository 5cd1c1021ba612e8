#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "streamtree/cart.hpp"
#include "streamtree/cost_model.hpp"
#include "streamtree/kmeans.hpp"

namespace streamtree {

// Activity/power rows collected from an instrumented design: one column per
// monitored signal, measured watts in the last column.
struct TraceSet {
    std::vector<std::string> signal_names;
    std::vector<std::vector<double>> activities;  // column-major: [signal][row]
    std::vector<double> powers;

    std::size_t rows() const { return powers.size(); }
    std::size_t signals() const { return signal_names.size(); }
};

inline TraceSet load_traces(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open trace file: " + path);
    TraceSet t;
    std::string line;
    long long line_no = 0;
    bool header_checked = false;
    std::vector<double> row;
    while (std::getline(in, line)) {
        ++line_no;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string field;
        row.clear();
        bool numeric_row = true;
        std::vector<std::string> fields;
        while (std::getline(ss, field, ',')) {
            fields.push_back(field);
            double v = 0;
            auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
            if (ec != std::errc() || ptr != field.data() + field.size())
                numeric_row = false;
            else
                row.push_back(v);
        }
        if (fields.size() < 2)
            throw std::runtime_error("trace file needs at least one signal and power_w (line " +
                                     std::to_string(line_no) + ")");
        if (!header_checked) {
            header_checked = true;
            if (!numeric_row) {  // header row carries the signal names
                t.signal_names.assign(fields.begin(), fields.end() - 1);
                t.activities.resize(t.signal_names.size());
                continue;
            }
            t.signal_names.resize(fields.size() - 1);
            for (std::size_t i = 0; i < t.signal_names.size(); ++i)
                t.signal_names[i] = "s" + std::to_string(i);
            t.activities.resize(t.signal_names.size());
        }
        if (!numeric_row || row.size() != t.signal_names.size() + 1)
            throw std::runtime_error("malformed trace row (line " + std::to_string(line_no) + ")");
        if (row.back() < 0)
            throw std::runtime_error("negative power (line " + std::to_string(line_no) + ")");
        for (std::size_t i = 0; i < t.signal_names.size(); ++i) t.activities[i].push_back(row[i]);
        t.powers.push_back(row.back());
    }
    if (t.powers.empty()) throw std::runtime_error("trace file has no data rows: " + path);
    return t;
}

// Hardware budget the generated monitor has to fit: the label, attribute,
// element and quantile counts are pinned and the BRAM share is capped.
struct TuningConstraints {
    int max_labels = 5;
    int max_numeric_attributes = 8;
    int required_elements = 64;
    int required_quantiles = 8;
    int max_depth = 7;
    double max_bram_fraction = 0.20;
};

// Picks the cluster count by silhouette over [k_min, k_max] clipped to the
// label budget; ties go to the smaller k. The same seed is reused per k.
struct KSelection {
    int k = 0;
    double silhouette_score = 0;
    Clustering clustering;
    std::vector<std::pair<int, double>> scores;  // (k, silhouette) per evaluated k
};

inline KSelection select_k(const std::vector<double>& powers, int k_min, int k_max,
                           const TuningConstraints& constraints, std::uint64_t seed) {
    k_min = std::max(k_min, 2);
    k_max = std::min(k_max, constraints.max_labels);
    if (k_min > k_max) throw std::invalid_argument("select_k: empty feasible k range");
    KSelection best;
    for (int k = k_min; k <= k_max; ++k) {
        Clustering c = kmeans_power(powers, k, seed);
        const double score = silhouette(c, powers);
        best.scores.emplace_back(k, score);
        if (best.k == 0 || score > best.silhouette_score) {
            best.k = k;
            best.silhouette_score = score;
            best.clustering = std::move(c);
        }
    }
    return best;
}

// Power regression turned into classification: each row's power becomes its
// cluster index, and the centers map labels back to watts.
struct RelabeledTraces {
    std::vector<std::string> signal_names;
    std::vector<std::vector<double>> activities;
    std::vector<int> labels;              // per row, in input order
    std::vector<double> center_watts;     // label -> cluster center
};

inline RelabeledTraces relabel_traces(const TraceSet& traces, const Clustering& clustering) {
    if (clustering.assignment.size() != traces.rows())
        throw std::invalid_argument("relabel: clustering/trace arity mismatch");
    if (clustering.k < 2) throw std::invalid_argument("relabel: needs k >= 2");
    RelabeledTraces out;
    out.signal_names = traces.signal_names;
    out.activities = traces.activities;
    out.labels = clustering.assignment;
    out.center_watts = clustering.centers;
    return out;
}

struct AttributeRanking {
    std::vector<int> order;  // signal indices, most important first
    bool trivial = false;    // true when there was nothing to eliminate
};

// Recursive attribute elimination: fit a depth-bounded CART on the surviving
// attributes, drop the least important (ties drop the higher index), repeat.
// The reversed elimination order ranks every signal; callers keep the first
// max_numeric_attributes of it.
inline AttributeRanking rank_attributes(const RelabeledTraces& traces,
                                        const TuningConstraints& constraints) {
    const int total = static_cast<int>(traces.signal_names.size());
    if (total < 1) throw std::invalid_argument("rank_attributes: no signals");
    AttributeRanking ranking;
    if (total <= constraints.max_numeric_attributes) {
        ranking.trivial = true;
        ranking.order.resize(total);
        for (int i = 0; i < total; ++i) ranking.order[i] = i;
        return ranking;
    }

    const int label_count =
        *std::max_element(traces.labels.begin(), traces.labels.end()) + 1;
    CartParams params;
    params.max_depth = constraints.max_depth;
    std::vector<int> active(total);
    for (int i = 0; i < total; ++i) active[i] = i;
    std::vector<int> dropped;
    while (active.size() > 1) {
        std::vector<std::vector<double>> columns;
        columns.reserve(active.size());
        for (int a : active) columns.push_back(traces.activities[a]);
        CartTree tree = CartTree::fit(columns, traces.labels, label_count, params);
        const std::vector<double>& imp = tree.importances();
        std::size_t victim = 0;
        for (std::size_t i = 1; i < active.size(); ++i)
            if (imp[i] <= imp[victim]) victim = i;  // ties drop the higher index
        dropped.push_back(active[victim]);
        active.erase(active.begin() + victim);
    }
    ranking.order.push_back(active.front());
    for (auto it = dropped.rbegin(); it != dropped.rend(); ++it) ranking.order.push_back(*it);
    return ranking;
}

struct ConstraintCheck {
    std::string name;
    double value = 0;
    double bound = 0;
    bool pass = false;
};

struct ConstraintReport {
    bool pass = true;
    std::vector<ConstraintCheck> checks;
    std::string first_violation;
    cost::BramReport bram;
    cost::DspReport dsp;
    double bram_fraction = 0;
    double dsp_fraction = 0;
};

// Validates a tuned design against the budget: the pinned parameter limits
// plus the modeled BRAM share of the device.
inline ConstraintReport check_constraints(const cost::DesignParams& params,
                                          const TuningConstraints& constraints,
                                          long long device_bram = 2160,
                                          long long device_dsp = 6840) {
    ConstraintReport report;
    auto add = [&](const std::string& name, double value, double bound, bool pass) {
        report.checks.push_back({name, value, bound, pass});
        if (!pass && report.pass) {
            report.pass = false;
            report.first_violation = name;
        }
    };
    add("L <= " + std::to_string(constraints.max_labels), params.labels, constraints.max_labels,
        params.labels <= constraints.max_labels);
    add("N <= " + std::to_string(constraints.max_numeric_attributes), params.numeric_attributes,
        constraints.max_numeric_attributes,
        params.numeric_attributes <= constraints.max_numeric_attributes);
    add("E = " + std::to_string(constraints.required_elements), params.elements,
        constraints.required_elements, params.elements == constraints.required_elements);
    add("Q = " + std::to_string(constraints.required_quantiles), params.quantiles,
        constraints.required_quantiles, params.quantiles == constraints.required_quantiles);
    add("depth <= " + std::to_string(constraints.max_depth), params.tree_depth,
        constraints.max_depth, params.tree_depth <= constraints.max_depth);

    report.bram = cost::bram(params);
    report.dsp = cost::dsp(params);
    report.bram_fraction = static_cast<double>(report.bram.overall) / device_bram;
    report.dsp_fraction = static_cast<double>(report.dsp.overall) / device_dsp;
    add("BRAM fraction <= " + std::to_string(constraints.max_bram_fraction),
        report.bram_fraction, constraints.max_bram_fraction,
        report.bram_fraction <= constraints.max_bram_fraction);
    return report;
}

inline nlohmann::json constraint_report_to_json(const ConstraintReport& r) {
    nlohmann::json checks = nlohmann::json::array();
    for (const ConstraintCheck& c : r.checks)
        checks.push_back(
            {{"name", c.name}, {"value", c.value}, {"bound", c.bound}, {"pass", c.pass}});
    return nlohmann::json{{"pass", r.pass},
                          {"first_violation", r.first_violation},
                          {"checks", checks},
                          {"bram_overall", r.bram.overall},
                          {"bram_fraction", r.bram_fraction},
                          {"dsp_overall", r.dsp.overall},
                          {"dsp_fraction", r.dsp_fraction}};
}

struct PowerFlowOptions {
    int k_min = 2;
    int k_max = 5;
    int n_max = 8;
    std::uint64_t seed = 1;
    // Architecture decisions use only the leading window of the traces.
    std::size_t design_window = 5000;
    long long device_bram = 2160;
    long long device_dsp = 6840;
};

struct PowerFlowResult {
    KSelection selection;
    RelabeledTraces relabeled;       // all rows, labeled with the fitted centers
    AttributeRanking ranking;
    std::vector<int> selected_signals;
    ConstraintReport constraints;
    TuningConstraints tuning;
};

// The model-generation pipeline: cluster the power values of the design
// window, relabel the traces, rank and prune attributes, then check the
// resulting architecture against the hardware budget.
inline PowerFlowResult run_power_flow(const TraceSet& traces, const PowerFlowOptions& options) {
    PowerFlowResult result;
    result.tuning.max_numeric_attributes = options.n_max;

    std::vector<double> window_powers = traces.powers;
    if (window_powers.size() > options.design_window)
        window_powers.resize(options.design_window);
    result.selection =
        select_k(window_powers, options.k_min, options.k_max, result.tuning, options.seed);

    // Assign every row (window or not) to the fitted centers.
    Clustering full = result.selection.clustering;
    full.assignment.resize(traces.rows());
    full.inertia = 0;
    for (std::size_t i = 0; i < traces.rows(); ++i) {
        full.assignment[i] = detail::nearest_center(full.centers, traces.powers[i]);
        const double d = traces.powers[i] - full.centers[full.assignment[i]];
        full.inertia += d * d;
    }
    result.relabeled = relabel_traces(traces, full);

    RelabeledTraces window = result.relabeled;
    if (window.labels.size() > options.design_window) {
        window.labels.resize(options.design_window);
        for (auto& col : window.activities) col.resize(options.design_window);
    }
    result.ranking = rank_attributes(window, result.tuning);
    const int keep = std::min<int>(options.n_max, static_cast<int>(result.ranking.order.size()));
    result.selected_signals.assign(result.ranking.order.begin(),
                                   result.ranking.order.begin() + keep);

    cost::DesignParams design;
    design.labels = result.selection.k;
    design.numeric_attributes = keep;
    design.categorical_attributes = 0;
    design.quantiles = result.tuning.required_quantiles;
    design.elements = result.tuning.required_elements;
    design.tree_depth = result.tuning.max_depth;
    result.constraints =
        check_constraints(design, result.tuning, options.device_bram, options.device_dsp);
    return result;
}

inline nlohmann::json power_flow_to_json(const PowerFlowResult& r) {
    nlohmann::json signals = nlohmann::json::array();
    for (int idx : r.selected_signals)
        signals.push_back({{"index", idx}, {"name", r.relabeled.signal_names[idx]}});
    nlohmann::json ranking = nlohmann::json::array();
    for (int idx : r.ranking.order) ranking.push_back(idx);
    return nlohmann::json{
        {"signals", signals},
        {"ranking", ranking},
        {"clusters", r.selection.k},
        {"silhouette", r.selection.silhouette_score},
        {"centers_w", r.selection.clustering.centers},
        {"constraints", constraint_report_to_json(r.constraints)},
        {"run_config",
         {{"observer", "quantile"},
          {"quantiles", r.tuning.required_quantiles},
          {"elements", r.tuning.required_elements},
          {"max_depth", r.tuning.max_depth},
          {"max_leaves", r.tuning.required_elements},
          {"labels", r.selection.k},
          {"nmin", 200},
          {"split_points", 10},
          {"tau", 0.05},
          {"delta", 1e-3},
          {"lambda", 0.01}}}};
}

}  // namespace streamtree
