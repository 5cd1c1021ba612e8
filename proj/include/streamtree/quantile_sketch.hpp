#pragma once

#include <stdexcept>
#include <vector>

#include "streamtree/fixed_point.hpp"

namespace streamtree {

// Running estimate of Q quantiles of one attribute-class stream, calibrated
// by the asymmetric signum rule: each incoming value moves every estimate by
// +lambda*alpha_k (value above the estimate) or -lambda*(1-alpha_k) (value at
// or below it). The probe grid is alpha_k = k/(Q+1), k = 1..Q.
//
// In fixed-point mode the step constants and the stored estimates are
// quantized to Q2.30, mirroring a 32-bit datapath.
class QuantileSketch {
public:
    QuantileSketch() = default;

    QuantileSketch(double first_value, int count, double lambda, bool fixed_point = false,
                   FixedPointStats* fp_stats = nullptr)
        : lambda_(lambda), fixed_point_(fixed_point), fp_stats_(fp_stats) {
        if (count < 2) throw std::invalid_argument("quantile sketch needs at least 2 quantiles");
        if (lambda <= 0) throw std::invalid_argument("quantile sketch needs lambda > 0");
        if (fixed_point_) first_value = quantize_q2_30(first_value, fp_stats_);
        q_.assign(count, first_value);
        alphas_.resize(count);
        step_up_.resize(count);
        step_down_.resize(count);
        for (int k = 0; k < count; ++k) {
            alphas_[k] = static_cast<double>(k + 1) / (count + 1);
            step_up_[k] = lambda * alphas_[k];
            step_down_[k] = lambda * (1.0 - alphas_[k]);
            if (fixed_point_) {
                step_up_[k] = quantize_q2_30(step_up_[k], fp_stats_);
                step_down_[k] = quantize_q2_30(step_down_[k], fp_stats_);
            }
        }
    }

    bool seeded() const { return !q_.empty(); }
    int count() const { return static_cast<int>(q_.size()); }
    double lambda() const { return lambda_; }
    const std::vector<double>& values() const { return q_; }
    const std::vector<double>& alphas() const { return alphas_; }

    void update(double x) {
        if (!seeded()) throw std::logic_error("quantile sketch updated before seeding");
        for (std::size_t k = 0; k < q_.size(); ++k) {
            if (q_[k] < x)
                q_[k] += step_up_[k];
            else
                q_[k] -= step_down_[k];
            if (fixed_point_) q_[k] = quantize_q2_30(q_[k], fp_stats_);
        }
    }

private:
    std::vector<double> q_;
    std::vector<double> alphas_;
    std::vector<double> step_up_;
    std::vector<double> step_down_;
    double lambda_ = 0;
    bool fixed_point_ = false;
    FixedPointStats* fp_stats_ = nullptr;
};

}  // namespace streamtree
