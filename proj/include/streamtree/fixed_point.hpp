#pragma once

#include <cmath>
#include <cstdint>

namespace streamtree {

struct FixedPointStats {
    long long saturations = 0;
};

// Q2.30: 32-bit signed raw with 30 fractional bits, range [-2, 2).
// Conversion rounds to nearest; out-of-range inputs saturate to the nearest
// representable bound and are counted in the stats when one is supplied.
class FixedPoint {
public:
    static constexpr int fraction_bits = 30;
    static constexpr double scale = 1073741824.0;  // 2^30

    FixedPoint() = default;
    explicit FixedPoint(std::int32_t raw) : raw_(raw) {}

    static FixedPoint from_real(double x, FixedPointStats* stats = nullptr) {
        double scaled = std::round(x * scale);
        if (scaled > 2147483647.0) {
            scaled = 2147483647.0;
            if (stats) ++stats->saturations;
        } else if (scaled < -2147483648.0) {
            scaled = -2147483648.0;
            if (stats) ++stats->saturations;
        }
        return FixedPoint(static_cast<std::int32_t>(scaled));
    }

    double to_real() const { return static_cast<double>(raw_) / scale; }
    std::int32_t raw() const { return raw_; }

private:
    std::int32_t raw_ = 0;
};

// Round-trips a real through Q2.30.
inline double quantize_q2_30(double x, FixedPointStats* stats = nullptr) {
    return FixedPoint::from_real(x, stats).to_real();
}

}  // namespace streamtree
