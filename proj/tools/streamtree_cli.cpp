// Command-line surface of the toolkit: offline normalization, synthetic
// stream generation, prequential training/evaluation, the quantile-count
// sweep, the analytical cost calculators, and the power model generation
// flow.

#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <streamtree/streamtree.hpp>

namespace {

using namespace streamtree;

void write_json(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << '\n';
}

// Parses "2x44,5,3" into {2 repeated 44 times, 5, 3}.
std::vector<int> parse_value_counts(const std::string& spec) {
    std::vector<int> out;
    if (spec.empty()) return out;
    std::stringstream ss(spec);
    std::string token;
    while (std::getline(ss, token, ',')) {
        const std::size_t x = token.find('x');
        if (x == std::string::npos) {
            out.push_back(std::stoi(token));
        } else {
            const int value = std::stoi(token.substr(0, x));
            const int repeat = std::stoi(token.substr(x + 1));
            for (int i = 0; i < repeat; ++i) out.push_back(value);
        }
    }
    return out;
}

struct TrainFlags {
    std::string schema_path;
    std::string data_path;
    std::string observer = "quantile";
    int quantiles = 8;
    long long nmin = 200;
    int split_points = 10;
    double tau = 0.05;
    double delta = 1e-3;
    double lambda = 0.01;
    int max_depth = 15;
    int max_leaves = 1024;
    int elements = 1024;
    bool fixed_point = false;
    bool header = false;
    long long curve_interval = 10000;
    std::string report_path;
    std::string curve_path;
    std::string dump_path;
};

void add_train_flags(CLI::App* cmd, TrainFlags& f, bool single_quantile_count = true) {
    cmd->add_option("--schema", f.schema_path, "schema JSON file")->required();
    cmd->add_option("--data", f.data_path, "CSV data file, label last")->required();
    cmd->add_option("--observer", f.observer, "numeric observer: quantile|gaussian")
        ->check(CLI::IsMember({"quantile", "gaussian"}));
    if (single_quantile_count)
        cmd->add_option("--quantiles", f.quantiles, "quantiles per attribute-class set");
    cmd->add_option("--nmin", f.nmin, "samples between split trials");
    cmd->add_option("--split-points", f.split_points, "candidate points per numeric attribute");
    cmd->add_option("--tau", f.tau, "tie threshold");
    cmd->add_option("--delta", f.delta, "split confidence");
    cmd->add_option("--lambda", f.lambda, "quantile step size");
    cmd->add_option("--max-depth", f.max_depth, "maximum tree depth");
    cmd->add_option("--max-leaves", f.max_leaves, "maximum leaf count");
    cmd->add_option("--elements", f.elements, "training element pool size");
    cmd->add_flag("--fixed-point", f.fixed_point, "emulate Q2.30 numeric arithmetic");
    cmd->add_flag("--header", f.header, "skip a CSV header row");
    cmd->add_option("--curve-interval", f.curve_interval, "accuracy curve sampling interval");
    cmd->add_option("--report", f.report_path, "evaluation report JSON output");
    cmd->add_option("--curve", f.curve_path, "accuracy curve CSV output");
    cmd->add_option("--dump-tree", f.dump_path, "write the final tree as text");
}

RunConfig make_config(const TrainFlags& f) {
    RunConfig config;
    config.schema = load_schema(f.schema_path);
    config.hp.grace_period = f.nmin;
    config.hp.split_points = f.split_points;
    config.hp.tie_threshold = f.tau;
    config.hp.split_confidence = f.delta;
    config.hp.max_depth = f.max_depth;
    config.hp.max_leaves = f.max_leaves;
    config.observer.mode =
        f.observer == "gaussian" ? ObserverMode::gaussian : ObserverMode::quantile;
    config.observer.quantile_count = f.quantiles;
    config.observer.lambda = f.lambda;
    config.observer.fixed_point = f.fixed_point;
    config.element_capacity = f.elements;
    config.curve_interval = f.curve_interval;
    return config;
}

int cmd_normalize(const std::string& schema_path, const std::string& in_path,
                  const std::string& out_path, const std::string& stats_path, bool header) {
    const DatasetSchema schema = load_schema(schema_path);
    std::vector<Sample> samples = load_csv(in_path, schema, header);
    const NormalizationStats stats = normalize_samples(samples, schema);
    write_csv(out_path, schema, samples);
    if (!stats_path.empty()) write_json(stats_path, stats.to_json());
    std::cout << "normalized " << samples.size() << " samples\n";
    return 0;
}

int cmd_train(const TrainFlags& f) {
    const RunConfig config = make_config(f);
    config.validate();
    std::vector<Sample> samples = load_csv(f.data_path, config.schema, f.header);
    HoeffdingTree tree(config.schema, config.hp, config.observer, config.element_capacity);
    std::size_t i = 0;
    const EvalReport report = run_prequential(
        tree,
        [&]() -> std::optional<Sample> {
            if (i >= samples.size()) return std::nullopt;
            return samples[i++];
        },
        config.curve_interval);
    std::cout << "samples " << report.samples_seen << "  accuracy " << report.accuracy
              << "  splits " << report.split_count << "  trials " << report.trial_count << '\n';
    if (!f.report_path.empty()) write_json(f.report_path, report.to_json());
    if (!f.curve_path.empty()) report.write_curve_csv(f.curve_path);
    if (!f.dump_path.empty()) {
        std::ofstream out(f.dump_path);
        if (!out) throw std::runtime_error("cannot write " + f.dump_path);
        out << tree.dump();
    }
    return 0;
}

int cmd_sweep(const TrainFlags& f, const std::string& quantile_list, const std::string& out_path) {
    RunConfig config = make_config(f);
    std::vector<Sample> samples = load_csv(f.data_path, config.schema, f.header);
    std::vector<int> counts;
    std::stringstream ss(quantile_list);
    std::string token;
    while (std::getline(ss, token, ',')) counts.push_back(std::stoi(token));
    const std::vector<SweepRow> rows = sweep_quantiles(config, counts, samples);
    for (const SweepRow& row : rows) {
        if (row.ok)
            std::cout << "Q=" << row.quantile_count << "  accuracy " << row.report.accuracy
                      << "  splits " << row.report.split_count << '\n';
        else
            std::cout << "Q=" << row.quantile_count << "  error: " << row.error << '\n';
    }
    if (!out_path.empty()) write_sweep_csv(out_path, rows);
    return 0;
}

int cmd_synth(const std::string& kind, long long n, std::uint64_t seed, int components,
              const std::string& out_path, const std::string& schema_out) {
    SyntheticSpec spec;
    spec.kind = parse_synthetic_kind(kind);
    spec.count = n;
    spec.seed = seed;
    spec.components = components;
    const DatasetSchema schema = synthetic_schema(spec);
    write_csv(out_path, schema, gen_synthetic(spec));
    if (!schema_out.empty()) save_schema(schema, schema_out);
    std::cout << "wrote " << n << " samples to " << out_path << '\n';
    return 0;
}

int cmd_cost(cost::DesignParams params, const std::string& values_spec, double fit_seconds,
             const std::string& out_path) {
    params.value_counts = parse_value_counts(values_spec);
    if (fit_seconds > 0) {
        params.cold_start_cycles = cost::fit_cold_start(params, fit_seconds);
        std::cout << "fitted cold-start cycles: " << params.cold_start_cycles << '\n';
    }
    const cost::CostReport report = cost::report(params);
    std::cout << cost::report_to_table(report);
    if (!out_path.empty()) write_json(out_path, cost::report_to_json(params, report));
    return 0;
}

int cmd_power_flow(const std::string& traces_path, const std::string& k_range, int n_max,
                   std::uint64_t seed, std::size_t design_window, long long device_bram,
                   long long device_dsp, const std::string& out_path,
                   const std::string& relabeled_out) {
    PowerFlowOptions options;
    options.n_max = n_max;
    options.seed = seed;
    options.design_window = design_window;
    options.device_bram = device_bram;
    options.device_dsp = device_dsp;
    const std::size_t colon = k_range.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("--k-range expects MIN:MAX");
    options.k_min = std::stoi(k_range.substr(0, colon));
    options.k_max = std::stoi(k_range.substr(colon + 1));

    const TraceSet traces = load_traces(traces_path);
    const PowerFlowResult result = run_power_flow(traces, options);
    std::cout << "clusters k=" << result.selection.k << " (silhouette "
              << result.selection.silhouette_score << ")\ncenters:";
    for (double c : result.selection.clustering.centers) std::cout << ' ' << c << "W";
    std::cout << "\nselected signals:";
    for (int idx : result.selected_signals)
        std::cout << ' ' << result.relabeled.signal_names[idx];
    std::cout << "\nconstraints: " << (result.constraints.pass ? "pass" : "FAIL")
              << (result.constraints.pass ? "" : " (" + result.constraints.first_violation + ")")
              << '\n';
    if (!out_path.empty()) write_json(out_path, power_flow_to_json(result));
    if (!relabeled_out.empty()) {
        std::ofstream out(relabeled_out);
        if (!out) throw std::runtime_error("cannot write " + relabeled_out);
        for (int idx : result.selected_signals) out << result.relabeled.signal_names[idx] << ',';
        out << "label\n";
        for (std::size_t row = 0; row < result.relabeled.labels.size(); ++row) {
            for (int idx : result.selected_signals)
                out << result.relabeled.activities[idx][row] << ',';
            out << result.relabeled.labels[row] << '\n';
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"streaming decision-tree toolkit"};
    app.require_subcommand(1);

    // normalize
    std::string n_schema, n_in, n_out, n_stats;
    bool n_header = false;
    CLI::App* normalize = app.add_subcommand("normalize", "map numeric attributes onto [-1,1]");
    normalize->add_option("--schema", n_schema)->required();
    normalize->add_option("--in", n_in)->required();
    normalize->add_option("--out", n_out)->required();
    normalize->add_option("--stats", n_stats, "min/max record JSON");
    normalize->add_flag("--header", n_header, "skip a CSV header row");

    // train
    TrainFlags train_flags;
    CLI::App* train = app.add_subcommand("train", "prequential train/test over a stream");
    add_train_flags(train, train_flags);

    // sweep
    TrainFlags sweep_flags;
    std::string sweep_list = "2,4,8,16,32,64,128,256,512";
    std::string sweep_out;
    CLI::App* sweep = app.add_subcommand("sweep", "prequential run per quantile count");
    add_train_flags(sweep, sweep_flags, /*single_quantile_count=*/false);
    sweep->add_option("--quantiles", sweep_list, "comma-separated quantile counts");
    sweep->add_option("--out", sweep_out, "sweep table CSV output");

    // synth
    std::string s_kind = "separable", s_out, s_schema_out;
    long long s_n = 1000;
    std::uint64_t s_seed = 1;
    int s_components = 2;
    CLI::App* synth = app.add_subcommand("synth", "generate a synthetic stream");
    synth->add_option("--kind", s_kind, "separable|gaussian-mix|uniform-noise");
    synth->add_option("--n", s_n, "sample count")->required();
    synth->add_option("--seed", s_seed, "RNG seed");
    synth->add_option("--components", s_components, "gaussian-mix component count");
    synth->add_option("--out", s_out, "CSV output")->required();
    synth->add_option("--schema-out", s_schema_out, "write the matching schema JSON");

    // cost
    cost::DesignParams params;
    std::string c_values, c_out;
    double c_fit = 0;
    CLI::App* cost_cmd = app.add_subcommand("cost", "analytical performance/resource models");
    cost_cmd->add_option("--labels", params.labels)->required();
    cost_cmd->add_option("--numeric", params.numeric_attributes)->required();
    cost_cmd->add_option("--categorical", params.categorical_attributes);
    cost_cmd->add_option("--values", c_values, "V_i list, e.g. 2x44 or 3,17");
    cost_cmd->add_option("--quantiles", params.quantiles);
    cost_cmd->add_option("--elements", params.elements);
    cost_cmd->add_option("--depth", params.tree_depth);
    cost_cmd->add_option("--freq", params.frequency_mhz, "clock in MHz");
    cost_cmd->add_option("--samples", params.samples);
    cost_cmd->add_option("--cold-start", params.cold_start_cycles);
    cost_cmd->add_option("--cycles-per-sample", params.cycles_per_sample);
    cost_cmd->add_option("--fit-cold-start", c_fit, "solve cold-start from a measured time (s)");
    cost_cmd->add_option("--out", c_out, "report JSON output");

    // power-flow
    std::string p_traces, p_krange = "2:5", p_out, p_relabeled;
    int p_nmax = 8;
    std::uint64_t p_seed = 1;
    std::size_t p_window = 5000;
    long long p_bram = 2160, p_dsp = 6840;
    CLI::App* power = app.add_subcommand("power-flow", "power model generation flow");
    power->add_option("--traces", p_traces, "activity/power trace CSV")->required();
    power->add_option("--k-range", p_krange, "cluster count range MIN:MAX");
    power->add_option("--n-max", p_nmax, "attribute budget");
    power->add_option("--seed", p_seed, "RNG seed");
    power->add_option("--design-window", p_window, "rows used for architecture decisions");
    power->add_option("--device-bram", p_bram, "device BRAM total");
    power->add_option("--device-dsp", p_dsp, "device DSP total");
    power->add_option("--out", p_out, "model config JSON output");
    power->add_option("--relabeled-out", p_relabeled, "classification dataset CSV output");

    CLI11_PARSE(app, argc, argv);

    try {
        if (normalize->parsed()) return cmd_normalize(n_schema, n_in, n_out, n_stats, n_header);
        if (train->parsed()) return cmd_train(train_flags);
        if (sweep->parsed()) return cmd_sweep(sweep_flags, sweep_list, sweep_out);
        if (synth->parsed()) return cmd_synth(s_kind, s_n, s_seed, s_components, s_out, s_schema_out);
        if (cost_cmd->parsed()) return cmd_cost(params, c_values, c_fit, c_out);
        if (power->parsed())
            return cmd_power_flow(p_traces, p_krange, p_nmax, p_seed, p_window, p_bram, p_dsp,
                                  p_out, p_relabeled);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
