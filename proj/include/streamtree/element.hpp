#pragma once

#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "streamtree/gaussian_stat.hpp"
#include "streamtree/histogram.hpp"
#include "streamtree/quantile_sketch.hpp"
#include "streamtree/sample.hpp"
#include "streamtree/schema.hpp"

namespace streamtree {

enum class ObserverMode { quantile, gaussian };

struct ObserverConfig {
    ObserverMode mode = ObserverMode::quantile;
    int quantile_count = 8;  // Q
    double lambda = 0.01;
    bool fixed_point = false;
    FixedPointStats* fp_stats = nullptr;
};

// Training state slot bound to one active leaf: class counts, per-numeric
// attribute ranges, and one distribution sketch per (numeric attribute,
// class) plus one histogram per categorical attribute. A sample updates the
// ranges of every attribute but only the sketch row of its own class.
class LeafElement {
public:
    LeafElement(const DatasetSchema& schema, const ObserverConfig& config)
        : schema_(&schema), config_(config) {
        class_counts_.resize(schema.label_count);
        min_.resize(schema.numeric_count);
        max_.resize(schema.numeric_count);
        if (config_.mode == ObserverMode::quantile)
            quantiles_.resize(static_cast<std::size_t>(schema.numeric_count) * schema.label_count);
        else
            gaussians_.resize(static_cast<std::size_t>(schema.numeric_count) * schema.label_count);
        for (const AttributeSchema& a : schema.attributes)
            if (a.kind == AttributeKind::categorical)
                histograms_.emplace_back(a.value_count, schema.label_count);
        reset();
    }

    // Returns the slot to its just-allocated state. Histograms only drop
    // their status bit; their buffers keep the previous leaf's stale counts.
    void reset() {
        sample_count_ = 0;
        samples_since_trial_ = 0;
        std::fill(class_counts_.begin(), class_counts_.end(), 0LL);
        std::fill(min_.begin(), min_.end(), std::numeric_limits<double>::infinity());
        std::fill(max_.begin(), max_.end(), -std::numeric_limits<double>::infinity());
        for (auto& q : quantiles_) q = QuantileSketch{};
        for (auto& g : gaussians_) g.reset();
        for (auto& h : histograms_) h.invalidate();
    }

    void observe(const Sample& s) {
        if (s.label < 0 || s.label >= schema_->label_count)
            throw std::out_of_range("observe: label out of range");
        ++sample_count_;
        ++samples_since_trial_;
        ++class_counts_[s.label];
        for (int slot = 0; slot < schema_->numeric_count; ++slot) {
            const double x = s.numeric_values[slot];
            if (x < min_[slot]) min_[slot] = x;
            if (x > max_[slot]) max_[slot] = x;
            if (config_.mode == ObserverMode::quantile) {
                // The attribute's first sample seeds every class row at the
                // same value; rows diverge only through real updates. Seeding
                // per class instead lets unconverged rows fake huge split
                // gains at a leaf's first trial.
                if (!quantiles_[row(slot, 0)].seeded()) {
                    for (int j = 0; j < schema_->label_count; ++j)
                        quantiles_[row(slot, j)] =
                            QuantileSketch(x, config_.quantile_count, config_.lambda,
                                           config_.fixed_point, config_.fp_stats);
                } else {
                    quantiles_[row(slot, s.label)].update(x);
                }
            } else {
                gaussians_[row(slot, s.label)].update(x);
            }
        }
        for (std::size_t slot = 0; slot < histograms_.size(); ++slot)
            histograms_[slot].observe(s.categorical_values[slot], s.label);
    }

    long long sample_count() const { return sample_count_; }
    const std::vector<long long>& class_counts() const { return class_counts_; }
    long long samples_since_trial() const { return samples_since_trial_; }
    void reset_trial_counter() { samples_since_trial_ = 0; }

    double min_value(int numeric_slot) const { return min_[numeric_slot]; }
    double max_value(int numeric_slot) const { return max_[numeric_slot]; }

    const QuantileSketch& quantile_row(int numeric_slot, int label) const {
        return quantiles_[row(numeric_slot, label)];
    }
    const GaussianStat& gaussian_row(int numeric_slot, int label) const {
        return gaussians_[row(numeric_slot, label)];
    }

    // All class rows of one numeric attribute, contiguous by label.
    std::span<const QuantileSketch> quantile_rows(int numeric_slot) const {
        return {quantiles_.data() + row(numeric_slot, 0),
                static_cast<std::size_t>(schema_->label_count)};
    }
    std::span<const GaussianStat> gaussian_rows(int numeric_slot) const {
        return {gaussians_.data() + row(numeric_slot, 0),
                static_cast<std::size_t>(schema_->label_count)};
    }
    const Histogram& histogram(int categorical_slot) const { return histograms_[categorical_slot]; }

    const DatasetSchema& schema() const { return *schema_; }
    const ObserverConfig& observer() const { return config_; }

private:
    std::size_t row(int numeric_slot, int label) const {
        return static_cast<std::size_t>(numeric_slot) * schema_->label_count + label;
    }

    const DatasetSchema* schema_;
    ObserverConfig config_;
    long long sample_count_ = 0;
    long long samples_since_trial_ = 0;
    std::vector<long long> class_counts_;
    std::vector<double> min_;
    std::vector<double> max_;
    std::vector<QuantileSketch> quantiles_;
    std::vector<GaussianStat> gaussians_;
    std::vector<Histogram> histograms_;
};

}  // namespace streamtree
