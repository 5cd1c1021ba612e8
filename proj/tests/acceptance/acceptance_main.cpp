// Acceptance suite: each criterion is a numbered, self-contained check that
// prints one [PASS]/[FAIL] line. Run with a criterion number (1-9) or with no
// arguments for all. Exit code 0 = pass, 1 = fail, 77 = skipped.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <streamtree/streamtree.hpp>

using namespace streamtree;

namespace {

struct Check {
    bool ok = true;
    std::string detail;
    void expect(bool condition, const std::string& what) {
        if (!condition && ok) {
            ok = false;
            detail = what;
        }
    }
};

constexpr int kSkip = 77;

// ---- criterion 1: DSP model exactness ----
int criterion_dsp(Check& c) {
    struct Row {
        const char* name;
        int labels, numeric, categorical;
        std::vector<int> values;
        long long expected;
    };
    const std::vector<Row> rows = {
        {"bank", 2, 7, 9, std::vector<int>(9, 4), 202},
        {"telescope", 2, 10, 0, {}, 184},
        {"electricity", 2, 7, 1, {7}, 138},
        {"covertype", 7, 10, 44, std::vector<int>(44, 2), 1126},
        {"person", 11, 3, 2, {5, 4}, 191},
    };
    for (const Row& row : rows) {
        cost::DesignParams p;
        p.labels = row.labels;
        p.numeric_attributes = row.numeric;
        p.categorical_attributes = row.categorical;
        p.value_counts = row.values;
        const auto r = cost::dsp(p);
        std::ostringstream what;
        what << row.name << ": DSP " << r.overall << " != " << row.expected;
        c.expect(r.overall == row.expected, what.str());
    }
    return 0;
}

// ---- criterion 2: latency model ----
int criterion_latency(Check& c) {
    cost::DesignParams p;
    p.labels = 2;
    p.numeric_attributes = 1;
    p.tree_depth = 15;
    const auto r = cost::latency(p);
    c.expect(r.overall == 55, "latency(D=15) = " + std::to_string(r.overall) + " != 55");
    return 0;
}

// ---- criterion 3: gini gain algebraic identity ----
int criterion_identity(Check& c) {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> mass(0.0, 100.0);
    double worst = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        const int labels = 2 + static_cast<int>(rng() % 5);
        std::vector<double> left(labels), right(labels), total(labels);
        double n = 0, nl = 0, nr = 0;
        for (int j = 0; j < labels; ++j) {
            left[j] = mass(rng);
            right[j] = mass(rng);
            total[j] = left[j] + right[j];
            nl += left[j];
            nr += right[j];
            n += total[j];
        }
        const double direct = gini(total) - nl / n * gini(left) - nr / n * gini(right);
        const double reorganized = split_quality(left, right) / n + gini(total) - 1.0;
        worst = std::max(worst, std::fabs(direct - reorganized));
    }
    std::ostringstream what;
    what << "max |direct - reorganized| = " << worst;
    c.expect(worst < 1e-12, what.str());
    return 0;
}

// ---- criterion 4: quantile estimator convergence ----
int criterion_quantiles(Check& c) {
    {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> dist(0.0, 1.0);
        QuantileSketch q(dist(rng), 8, 0.01);
        for (int i = 1; i < 100000; ++i) q.update(dist(rng));
        for (int k = 0; k < 8; ++k) {
            const double err = std::fabs(q.values()[k] - q.alphas()[k]);
            std::ostringstream what;
            what << "uniform quantile " << k + 1 << "/9 error " << err << " >= 0.05";
            c.expect(err < 0.05, what.str());
        }
    }
    {
        // Phi^-1(k/9), high-precision reference values
        const double normal_quantiles[8] = {-1.2206403488473502, -0.7647096737863867,
                                            -0.4307272992954576, -0.1397102988818623,
                                            0.1397102988818623,  0.4307272992954576,
                                            0.7647096737863867,  1.2206403488473502};
        std::mt19937_64 rng(1);
        std::normal_distribution<double> dist(0.0, 1.0);
        QuantileSketch q(dist(rng), 8, 0.01);
        for (int i = 1; i < 200000; ++i) q.update(dist(rng));
        double mae = 0;
        for (int k = 0; k < 8; ++k) mae += std::fabs(q.values()[k] - normal_quantiles[k]);
        mae /= 8.0;
        std::ostringstream what;
        what << "normal quantile MAE " << mae << " > 0.08";
        c.expect(mae <= 0.08, what.str());
    }
    return 0;
}

// ---- criterion 5: gaussian baseline against a two-pass oracle ----
int criterion_gaussian(Check& c) {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> dist(-1.5, 3.0);
    std::vector<double> xs(10000);
    GaussianStat g;
    for (auto& x : xs) {
        x = dist(rng);
        g.update(x);
    }
    double mean = 0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double var = 0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var /= static_cast<double>(xs.size() - 1);
    c.expect(std::fabs(g.mean() - mean) <= 1e-9 * std::fabs(mean), "mean relative error > 1e-9");
    c.expect(std::fabs(g.variance() - var) <= 1e-9 * var, "variance relative error > 1e-9");
    return 0;
}

// ---- criterion 6: end-to-end learning sanity ----
int criterion_end_to_end(Check& c) {
    {
        SyntheticSpec spec;
        spec.kind = SyntheticKind::separable;
        spec.count = 10000;
        spec.seed = 6;
        RunConfig config;
        config.schema = synthetic_schema(spec);
        const auto report = run_prequential(config, gen_synthetic(spec));
        std::ostringstream what;
        what << "separable accuracy " << report.accuracy << " < 0.95";
        c.expect(report.accuracy >= 0.95, what.str());
        c.expect(report.split_count >= 1, "separable stream produced no split");
    }
    {
        SyntheticSpec spec;
        spec.kind = SyntheticKind::uniform_noise;
        spec.count = 100000;
        spec.seed = 7;
        RunConfig config;
        config.schema = synthetic_schema(spec);
        const auto samples = gen_synthetic(spec);
        const auto report = run_prequential(config, samples);
        std::ostringstream what;
        what << "noise accuracy " << report.accuracy << " outside 0.5 +- 0.02";
        c.expect(report.accuracy >= 0.48 && report.accuracy <= 0.52, what.str());
        // Tie-rule splits are excluded: that shortcut grows trees on noise by
        // design once the bound shrinks under tau. What must stay at zero is
        // the count of splits certified by the Hoeffding comparison itself.
        std::ostringstream what2;
        what2 << report.metrics.splits_hoeffding
              << " noise splits were certified by the Hoeffding comparison (tie splits: "
              << report.metrics.splits_tie << ")";
        c.expect(report.metrics.splits_hoeffding == 0, what2.str());
        // Context for the log: the same gate under the gaussian observer,
        // whose distribution estimates concentrate with n.
        RunConfig gaussian = config;
        gaussian.observer.mode = ObserverMode::gaussian;
        const auto baseline = run_prequential(gaussian, samples);
        std::cout << "  (gaussian-observer baseline on the same stream: "
                  << baseline.metrics.splits_hoeffding << " Hoeffding-certified splits, "
                  << baseline.metrics.splits_tie << " tie splits)\n";
    }
    return 0;
}

// ---- criterion 7: reference-accuracy reproduction (needs downloaded data) ----
int criterion_reproduction(Check& c) {
    const char* dir = std::getenv("STREAMTREE_UCI_DIR");
    if (!dir) {
        std::cout << "[SKIP] criterion 7: set STREAMTREE_UCI_DIR to run "
                     "(see scripts/reproduce_accuracy.sh)\n";
        return kSkip;
    }
    const std::string base = dir;
    auto run_mode = [&](const std::string& stem, ObserverMode mode) {
        RunConfig config;
        config.schema = load_schema(base + "/" + stem + ".json");
        config.observer.mode = mode;
        config.observer.quantile_count = 8;
        auto samples = load_csv(base + "/" + stem + ".csv", config.schema);
        normalize_samples(samples, config.schema);
        return run_prequential(config, samples);
    };
    {
        const auto report = run_mode("electricity", ObserverMode::quantile);
        std::ostringstream what;
        what << "electricity Q=8 accuracy " << report.accuracy * 100
             << "% not within 2.5pp of 78.02%";
        c.expect(std::fabs(report.accuracy - 0.7802) <= 0.025, what.str());
        std::cout << "  electricity Q=8: " << report.accuracy * 100 << "%\n";
    }
    {
        const auto quantile = run_mode("person", ObserverMode::quantile);
        const auto gaussian = run_mode("person", ObserverMode::gaussian);
        std::ostringstream what;
        what << "person quantile " << quantile.accuracy * 100 << "% vs gaussian "
             << gaussian.accuracy * 100 << "%: margin < 5pp";
        c.expect(quantile.accuracy - gaussian.accuracy >= 0.05, what.str());
        std::cout << "  person quantile: " << quantile.accuracy * 100 << "%, gaussian: "
                  << gaussian.accuracy * 100 << "%\n";
    }
    return 0;
}

// ---- criterion 8: invariant suites ----
int criterion_invariants(Check& c) {
    {  // partition conservation on fuzzed sketches
        std::mt19937_64 rng(81);
        std::uniform_real_distribution<double> dist(-1, 1);
        for (int trial = 0; trial < 500 && c.ok; ++trial) {
            const int labels = 2 + static_cast<int>(rng() % 3);
            std::vector<QuantileSketch> rows;
            std::vector<long long> counts;
            for (int j = 0; j < labels; ++j) {
                QuantileSketch q(dist(rng), 8, 0.01);
                for (int i = 0; i < 64; ++i) q.update(dist(rng));
                rows.push_back(q);
                counts.push_back(static_cast<long long>(rng() % 500));
            }
            const auto row = deduce_partition(rows, counts, dist(rng), 8);
            for (int j = 0; j < labels; ++j)
                c.expect(std::fabs(row.left[j] + row.right[j] -
                                   static_cast<double>(counts[j])) < 1e-9,
                         "partition conservation violated");
        }
    }
    {  // element pool bijection under random ops
        DatasetSchema schema;
        schema.label_count = 2;
        AttributeSchema a;
        a.kind = AttributeKind::numeric;
        a.name = "x";
        schema.attributes = {a};
        schema.finalize();
        ObserverConfig obs;
        const int capacity = 16;
        ElementPool pool(capacity, schema, obs);
        std::map<std::uint64_t, bool> model;
        std::vector<std::uint64_t> bound;
        std::mt19937_64 rng(82);
        std::uint64_t next = 1;
        for (int op = 0; op < 10000 && c.ok; ++op) {
            if (bound.empty() || rng() % 2 == 0) {
                const auto slot = pool.allocate(next);
                if (static_cast<int>(bound.size()) < capacity) {
                    c.expect(slot.has_value(), "allocation failed below capacity");
                    bound.push_back(next);
                    model[next] = true;
                } else {
                    c.expect(!slot.has_value(), "allocation beyond capacity");
                }
                ++next;
            } else {
                const std::size_t pick = rng() % bound.size();
                pool.release(bound[pick]);
                model.erase(bound[pick]);
                bound.erase(bound.begin() + pick);
            }
            c.expect(pool.bound_count() + pool.free_count() == capacity,
                     "bound + free != capacity");
            c.expect(pool.bound_count() == static_cast<int>(model.size()),
                     "table size disagrees with the reference model");
        }
    }
    {  // determinism
        SyntheticSpec spec;
        spec.kind = SyntheticKind::gaussian_mix;
        spec.count = 5000;
        spec.seed = 83;
        RunConfig config;
        config.schema = synthetic_schema(spec);
        const auto samples = gen_synthetic(spec);
        const auto a = run_prequential(config, samples);
        const auto b = run_prequential(config, samples);
        c.expect(a.to_json().dump() == b.to_json().dump(), "identical runs diverged");
    }
    {  // hoeffding bound monotonicity
        double prev = hoeffding_bound(1.0, 1e-3, 1);
        for (long long n = 2; n <= 5000; ++n) {
            const double eps = hoeffding_bound(1.0, 1e-3, n);
            if (!(eps < prev)) {
                c.expect(false, "hoeffding bound not strictly decreasing at n=" +
                                    std::to_string(n));
                break;
            }
            prev = eps;
        }
    }
    {  // gini gain non-negativity on random consistent partitions
        std::mt19937_64 rng(84);
        std::uniform_real_distribution<double> mass(0.0, 50.0);
        std::uniform_real_distribution<double> frac(0.0, 1.0);
        for (int trial = 0; trial < 2000 && c.ok; ++trial) {
            const int labels = 2 + static_cast<int>(rng() % 4);
            std::vector<double> left(labels), right(labels), total(labels);
            double n = 0;
            for (int j = 0; j < labels; ++j) {
                total[j] = mass(rng);
                left[j] = total[j] * frac(rng);
                right[j] = total[j] - left[j];
                n += total[j];
            }
            if (n <= 0) continue;
            const double gain = split_quality(left, right) / n + gini(total) - 1.0;
            c.expect(gain >= -1e-12, "negative gini gain " + std::to_string(gain));
        }
    }
    return 0;
}

// ---- criterion 9: power-flow pipeline ----
int criterion_power_flow(Check& c) {
    std::mt19937_64 rng(91);
    std::normal_distribution<double> noise(0.0, 0.1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    TraceSet traces;
    const int signals = 10;
    for (int i = 0; i < signals; ++i) {
        traces.signal_names.push_back("s" + std::to_string(i));
        traces.activities.emplace_back();
    }
    const double means[3] = {1.0, 5.0, 9.0};
    for (int r = 0; r < 1200; ++r) {
        const int blob = static_cast<int>(rng() % 3);
        traces.powers.push_back(means[blob] + noise(rng));
        traces.activities[0].push_back(static_cast<double>(blob));
        for (int i = 1; i < signals; ++i) traces.activities[i].push_back(unit(rng));
    }
    PowerFlowOptions options;
    options.n_max = 4;
    options.seed = 1;
    const auto result = run_power_flow(traces, options);
    c.expect(result.selection.k == 3,
             "select_k chose k=" + std::to_string(result.selection.k) + " != 3");
    for (double mean : means) {
        double best = 1e18;
        for (double center : result.selection.clustering.centers)
            best = std::min(best, std::fabs(center - mean));
        std::ostringstream what;
        what << "no center within 0.05 of blob mean " << mean;
        c.expect(best < 0.05, what.str());
    }
    c.expect(!result.ranking.order.empty() && result.ranking.order.front() == 0,
             "label-identical signal not ranked first");

    TuningConstraints constraints;
    cost::DesignParams design;
    design.numeric_attributes = 4;
    design.labels = 6;  // violates L <= 5
    design.elements = 64;
    design.quantiles = 8;
    design.tree_depth = 7;
    auto r1 = check_constraints(design, constraints);
    c.expect(!r1.pass && r1.first_violation == "L <= 5",
             "L=6 not rejected with the named violation");
    design.labels = 5;
    design.numeric_attributes = 9;  // violates N <= 8
    auto r2 = check_constraints(design, constraints);
    c.expect(!r2.pass && r2.first_violation == "N <= 8",
             "N=9 not rejected with the named violation");
    return 0;
}

struct Criterion {
    int number;
    const char* title;
    std::function<int(Check&)> run;
};

const std::vector<Criterion> criteria = {
    {1, "DSP model exactness on the five reference designs", criterion_dsp},
    {2, "latency model: depth 15 -> 55 cycles", criterion_latency},
    {3, "gini gain reorganization identity on 10^4 fuzzed partitions", criterion_identity},
    {4, "quantile estimator convergence (uniform and normal streams)", criterion_quantiles},
    {5, "incremental gaussian matches two-pass statistics", criterion_gaussian},
    {6, "end-to-end learning sanity (separable and noise streams)", criterion_end_to_end},
    {7, "reference accuracy reproduction on downloaded datasets", criterion_reproduction},
    {8, "invariant suites (conservation, pool, determinism, bound, gain)", criterion_invariants},
    {9, "power-flow pipeline (clustering, ranking, constraints)", criterion_power_flow},
};

int run_criterion(const Criterion& criterion) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    const int code = criterion.run(check);
    const auto elapsed = std::chrono::duration<double>(
        std::chrono::steady_clock::now() - start);
    if (code == kSkip) return kSkip;
    std::cout << (check.ok ? "[PASS]" : "[FAIL]") << " criterion " << criterion.number << ": "
              << criterion.title << " (" << elapsed.count() << "s)";
    if (!check.ok) std::cout << " -- " << check.detail;
    std::cout << '\n';
    return check.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) {
        const int wanted = std::atoi(argv[1]);
        for (const Criterion& criterion : criteria)
            if (criterion.number == wanted) return run_criterion(criterion);
        std::cerr << "unknown criterion " << wanted << " (valid: 1-9)\n";
        return 2;
    }
    int failures = 0;
    for (const Criterion& criterion : criteria) {
        const int code = run_criterion(criterion);
        if (code == 1) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
