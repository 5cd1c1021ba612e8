#pragma once

#include <cmath>

namespace streamtree {

// Standard normal CDF via the Abramowitz-Stegun 7.1.26 rational erf
// approximation (max absolute error 1.5e-7).
inline double standard_normal_cdf(double z) {
    const double x = std::fabs(z) / 1.4142135623730951;  // |z| / sqrt(2)
    const double t = 1.0 / (1.0 + 0.3275911 * x);
    const double poly =
        t * (0.254829592 +
             t * (-0.284496736 + t * (1.421413741 + t * (-1.453152027 + t * 1.061405429))));
    const double erf = 1.0 - poly * std::exp(-x * x);
    return z >= 0 ? 0.5 * (1.0 + erf) : 0.5 * (1.0 - erf);
}

// Incremental mean/variance summary of one attribute-class stream. The first
// sample seeds the state; later samples apply the weighted Welford recurrence
// and variance() reports the unbiased estimate v_sum / (w_sum - 1).
class GaussianStat {
public:
    void update(double x, double weight = 1.0) {
        if (w_sum_ <= 0) {
            w_sum_ = weight;
            mean_ = x;
            v_sum_ = 0;
            return;
        }
        w_sum_ += weight;
        const double mean_prior = mean_;
        mean_ += weight * (x - mean_prior) / w_sum_;
        v_sum_ += weight * (x - mean_prior) * (x - mean_);
    }

    double weight_sum() const { return w_sum_; }
    double mean() const { return mean_; }
    double variance() const { return w_sum_ > 1 ? v_sum_ / (w_sum_ - 1) : 0.0; }

    // P(value <= pt) under the fitted Gaussian; degenerates to a step at the
    // mean when the variance is zero.
    double cdf(double pt) const {
        const double v = variance();
        if (v <= 0) return pt < mean_ ? 0.0 : 1.0;
        return standard_normal_cdf((pt - mean_) / std::sqrt(v));
    }

    void reset() { *this = GaussianStat{}; }

private:
    double w_sum_ = 0;
    double mean_ = 0;
    double v_sum_ = 0;
};

}  // namespace streamtree
