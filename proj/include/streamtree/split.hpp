#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "streamtree/element.hpp"
#include "streamtree/schema.hpp"

namespace streamtree {

struct HyperParams {
    long long grace_period = 200;    // n_min: samples at a leaf between split trials
    int split_points = 10;           // |P|: candidate points per numeric attribute
    double tie_threshold = 0.05;     // tau; 0 disables the tie rule
    double split_confidence = 1e-3;  // delta
    double range = 1.0;              // R of the Hoeffding bound (gini gain of a binary split)
    int max_depth = 15;
    int max_leaves = 1024;

    void validate() const {
        if (grace_period < 1) throw std::invalid_argument("grace_period must be positive");
        if (split_points < 1) throw std::invalid_argument("split_points must be positive");
        if (tie_threshold < 0 || tie_threshold >= 1)
            throw std::invalid_argument("tie_threshold must be in [0,1)");
        if (split_confidence <= 0 || split_confidence >= 1)
            throw std::invalid_argument("split_confidence must be in (0,1)");
        if (range <= 0) throw std::invalid_argument("range must be positive");
        if (max_depth < 1) throw std::invalid_argument("max_depth must be positive");
        if (max_leaves < 1) throw std::invalid_argument("max_leaves must be positive");
    }
};

enum class SplitKind { numeric_threshold, categorical_equality };

// Per-class masses on each side of one candidate split;
// left[j] + right[j] == n_fj for every class j.
struct PartitionRow {
    std::vector<double> left;
    std::vector<double> right;
};

struct SplitCandidate {
    int attribute = -1;      // index across the whole schema
    double split_value = 0;  // threshold (numeric) or value (categorical)
    SplitKind kind = SplitKind::numeric_threshold;
    double quality = 0;      // sum of squared class masses over partition size, both sides
    PartitionRow partition;
};

enum class SplitCause { none, hoeffding, tie };

struct SplitDecision {
    bool split = false;
    SplitCause cause = SplitCause::none;
};

// Candidate points evenly spaced strictly inside [min_a, max_a]:
// pt_p = (max-min)/(count+1) * p + min for p = 1..count. A degenerate range
// yields `count` copies of min_a.
inline std::vector<double> gen_split_points(double min_a, double max_a, int count) {
    std::vector<double> pts(count);
    const double step = (max_a - min_a) / (count + 1);
    for (int p = 1; p <= count; ++p) pts[p - 1] = min_a + step * p;
    return pts;
}

// Left/right class masses at `pt` deduced from the quantile grid: with d
// quantiles strictly below pt, the class CDF rounds down to d/(Q+1) and that
// share of n_fj goes left.
inline PartitionRow deduce_partition(std::span<const QuantileSketch> class_rows,
                                     std::span<const long long> class_counts, double pt,
                                     int quantile_count) {
    PartitionRow row;
    const std::size_t labels = class_counts.size();
    row.left.resize(labels);
    row.right.resize(labels);
    for (std::size_t j = 0; j < labels; ++j) {
        const double n_fj = static_cast<double>(class_counts[j]);
        double left = 0;
        if (class_rows[j].seeded() && n_fj > 0) {
            int below = 0;
            for (double q : class_rows[j].values())
                if (q < pt) ++below;
            left = static_cast<double>(below) / (quantile_count + 1) * n_fj;
        }
        row.left[j] = left;
        row.right[j] = n_fj - left;
    }
    return row;
}

// Gaussian-observer analogue: the class CDF at pt supplies the left share.
inline PartitionRow deduce_partition_gaussian(std::span<const GaussianStat> class_rows,
                                              std::span<const long long> class_counts, double pt) {
    PartitionRow row;
    const std::size_t labels = class_counts.size();
    row.left.resize(labels);
    row.right.resize(labels);
    for (std::size_t j = 0; j < labels; ++j) {
        const double n_fj = static_cast<double>(class_counts[j]);
        double left = 0;
        if (n_fj > 0 && class_rows[j].weight_sum() > 0) left = class_rows[j].cdf(pt) * n_fj;
        row.left[j] = left;
        row.right[j] = n_fj - left;
    }
    return row;
}

// gini(S) = 1 - sum_j p_j^2; an empty set counts as pure.
inline double gini(std::span<const double> counts) {
    double total = 0;
    for (double c : counts) total += c;
    if (total <= 0) return 0.0;
    double sq = 0;
    for (double c : counts) sq += (c / total) * (c / total);
    return 1.0 - sq;
}

// The bracketed split-quality term of the reorganized gini gain:
// sum_j |S_Lj|^2 / |S_L| + sum_j |S_Rj|^2 / |S_R|; an empty side contributes
// nothing. Gini gain of the split is quality/|S| + gini(S) - 1.
inline double split_quality(std::span<const double> left, std::span<const double> right) {
    double q = 0;
    double l_total = 0, l_sq = 0;
    for (double c : left) {
        l_total += c;
        l_sq += c * c;
    }
    if (l_total > 0) q += l_sq / l_total;
    double r_total = 0, r_sq = 0;
    for (double c : right) {
        r_total += c;
        r_sq += c * c;
    }
    if (r_total > 0) q += r_sq / r_total;
    return q;
}

// epsilon = sqrt(R^2 ln(1/delta) / (2n)).
inline double hoeffding_bound(double range, double delta, long long n) {
    if (n < 1) throw std::invalid_argument("hoeffding bound needs n >= 1");
    return std::sqrt(range * range * std::log(1.0 / delta) / (2.0 * static_cast<double>(n)));
}

// Quality value of the do-nothing split (all mass on one side); candidates
// must beat it strictly for a split to be worth taking.
inline double null_split_quality(std::span<const long long> class_counts) {
    double total = 0, sq = 0;
    for (long long c : class_counts) {
        total += static_cast<double>(c);
        sq += static_cast<double>(c) * static_cast<double>(c);
    }
    return total > 0 ? sq / total : 0.0;
}

// Split judgment over the top-two attribute qualities. The gain difference is
// the quality difference scaled by 1/n; a split is taken when it exceeds the
// Hoeffding bound, or under the tie rule when the bound itself has shrunk
// below tau. No-op candidates (best gain not above zero) never split.
inline SplitDecision decide_split(double best_quality, double second_quality, double null_quality,
                                  long long n, const HyperParams& hp) {
    constexpr double kMinGain = 1e-12;  // absorbs float noise in exact-zero gains
    SplitDecision d;
    const double n_real = static_cast<double>(n);
    const double gain_best = (best_quality - null_quality) / n_real;
    if (gain_best <= kMinGain) return d;
    const double gain_diff = (best_quality - second_quality) / n_real;
    const double eps = hoeffding_bound(hp.range, hp.split_confidence, n);
    if (gain_diff > eps) {
        d.split = true;
        d.cause = SplitCause::hoeffding;
    } else if (gain_diff < eps && eps < hp.tie_threshold) {
        d.split = true;
        d.cause = SplitCause::tie;
    }
    return d;
}

struct TrialOutcome {
    SplitDecision decision;
    std::optional<SplitCandidate> best;
};

// One split trial over a frozen element: every candidate point of every
// attribute is scored by split quality, the per-attribute maxima are reduced
// to the top two, and the Hoeffding judgment decides. Ties break toward the
// lower attribute index, then the lower split-point value. Resets the
// element's trial counter.
inline TrialOutcome run_split_trial(LeafElement& element, const DatasetSchema& schema,
                                    const HyperParams& hp) {
    TrialOutcome outcome;
    element.reset_trial_counter();
    const long long n = element.sample_count();
    if (n < 2) return outcome;

    const ObserverConfig& obs = element.observer();
    const std::span<const long long> counts(element.class_counts());
    const int labels = schema.label_count;

    std::optional<SplitCandidate> best;
    double second_quality = 0;
    bool has_second = false;

    auto offer = [&](const SplitCandidate& cand) {
        if (!best) {
            best = cand;
        } else if (cand.quality > best->quality) {
            second_quality = best->quality;
            has_second = true;
            best = cand;
        } else if (!has_second || cand.quality > second_quality) {
            second_quality = cand.quality;
            has_second = true;
        }
    };

    for (const AttributeSchema& attr : schema.attributes) {
        std::optional<SplitCandidate> attr_best;
        auto consider = [&](double value, SplitKind kind, PartitionRow&& row) {
            const double q = split_quality(row.left, row.right);
            if (!attr_best || q > attr_best->quality) {
                attr_best = SplitCandidate{attr.index, value, kind, q, std::move(row)};
            }
        };
        if (attr.kind == AttributeKind::numeric) {
            const double lo = element.min_value(attr.slot);
            const double hi = element.max_value(attr.slot);
            if (!(lo <= hi)) continue;  // attribute never observed
            for (double pt : gen_split_points(lo, hi, hp.split_points)) {
                PartitionRow row =
                    obs.mode == ObserverMode::quantile
                        ? deduce_partition(element.quantile_rows(attr.slot), counts, pt,
                                           obs.quantile_count)
                        : deduce_partition_gaussian(element.gaussian_rows(attr.slot), counts, pt);
                consider(pt, SplitKind::numeric_threshold, std::move(row));
            }
        } else {
            const Histogram& hist = element.histogram(attr.slot);
            if (!hist.valid()) continue;
            // Binary equality split per attribute value: matching samples go left.
            for (int v = 0; v < attr.value_count; ++v) {
                PartitionRow row;
                row.left.resize(labels);
                row.right.resize(labels);
                for (int j = 0; j < labels; ++j) {
                    row.left[j] = static_cast<double>(hist.count(v, j));
                    row.right[j] = static_cast<double>(counts[j]) - row.left[j];
                }
                consider(static_cast<double>(v), SplitKind::categorical_equality, std::move(row));
            }
        }
        if (attr_best) offer(*attr_best);
    }

    if (!best) return outcome;
    const double null_quality = null_split_quality(counts);
    if (!has_second) second_quality = null_quality;  // single scoreable attribute
    outcome.decision = decide_split(best->quality, second_quality, null_quality, n, hp);
    outcome.best = std::move(best);
    return outcome;
}

}  // namespace streamtree
