#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

namespace streamtree {

struct Clustering {
    int k = 0;
    std::vector<double> centers;  // ascending
    std::vector<int> assignment;  // per input row, nearest center
    double inertia = 0;
};

namespace detail {

inline int nearest_center(const std::vector<double>& centers, double x) {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < centers.size(); ++c) {
        const double d = std::fabs(x - centers[c]);
        if (d < best_d) {
            best_d = d;
            best = static_cast<int>(c);
        }
    }
    return best;
}

}  // namespace detail

// Lloyd k-means on scalar power values with k-means++ seeding. The fit runs
// on a sorted copy so the result does not depend on row order; the final
// assignment is computed per input row. Iteration stops when no center moves
// more than 1e-9 or after 100 rounds, and the inertia is checked to be
// non-increasing every round.
inline Clustering kmeans_power(const std::vector<double>& powers, int k, std::uint64_t seed) {
    if (k < 2) throw std::invalid_argument("kmeans needs k >= 2");
    std::vector<double> sorted = powers;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    {
        std::size_t distinct = n ? 1 : 0;
        for (std::size_t i = 1; i < n; ++i)
            if (sorted[i] != sorted[i - 1]) ++distinct;
        if (distinct < static_cast<std::size_t>(k))
            throw std::invalid_argument("kmeans needs at least k distinct values");
    }

    // k-means++ seeding.
    std::mt19937_64 rng(seed);
    std::vector<double> centers;
    centers.reserve(k);
    centers.push_back(sorted[std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)]);
    std::vector<double> d2(n);
    while (static_cast<int>(centers.size()) < k) {
        double total = 0;
        for (std::size_t i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (double c : centers) best = std::min(best, (sorted[i] - c) * (sorted[i] - c));
            d2[i] = best;
            total += best;
        }
        double draw = std::uniform_real_distribution<double>(0.0, total)(rng);
        std::size_t pick = 0;
        for (; pick + 1 < n; ++pick) {
            draw -= d2[pick];
            if (draw <= 0) break;
        }
        centers.push_back(sorted[pick]);
    }

    std::vector<int> assign(n, 0);
    double prev_inertia = std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < 100; ++iter) {
        double inertia = 0;
        for (std::size_t i = 0; i < n; ++i) {
            assign[i] = detail::nearest_center(centers, sorted[i]);
            const double d = sorted[i] - centers[assign[i]];
            inertia += d * d;
        }
        if (inertia > prev_inertia + 1e-9)
            throw std::logic_error("kmeans inertia increased");
        prev_inertia = inertia;

        std::vector<double> sum(k, 0);
        std::vector<long long> count(k, 0);
        for (std::size_t i = 0; i < n; ++i) {
            sum[assign[i]] += sorted[i];
            ++count[assign[i]];
        }
        // Reseed an emptied cluster with the point farthest from its center.
        for (int c = 0; c < k; ++c) {
            if (count[c] > 0) continue;
            std::size_t far = 0;
            double far_d = -1;
            for (std::size_t i = 0; i < n; ++i) {
                const double d = std::fabs(sorted[i] - centers[assign[i]]);
                if (d > far_d && count[assign[i]] > 1) {
                    far_d = d;
                    far = i;
                }
            }
            sum[assign[far]] -= sorted[far];
            --count[assign[far]];
            assign[far] = c;
            sum[c] = sorted[far];
            count[c] = 1;
        }
        double moved = 0;
        for (int c = 0; c < k; ++c) {
            const double next = sum[c] / static_cast<double>(count[c]);
            moved = std::max(moved, std::fabs(next - centers[c]));
            centers[c] = next;
        }
        if (moved < 1e-9) break;
    }

    std::sort(centers.begin(), centers.end());
    Clustering result;
    result.k = k;
    result.centers = std::move(centers);
    result.assignment.resize(powers.size());
    result.inertia = 0;
    for (std::size_t i = 0; i < powers.size(); ++i) {
        result.assignment[i] = detail::nearest_center(result.centers, powers[i]);
        const double d = powers[i] - result.centers[result.assignment[i]];
        result.inertia += d * d;
    }
    return result;
}

// Mean silhouette (b - a) / max(a, b) over all points; a is the mean
// intra-cluster distance, b the smallest mean distance to another cluster.
// Singleton clusters contribute 0. Exact and O(n^2); above 100k rows a
// deterministic stride subsample of 100k points is scored instead.
inline double silhouette(const Clustering& clustering, const std::vector<double>& powers) {
    if (clustering.k < 2) throw std::invalid_argument("silhouette needs k >= 2");
    if (clustering.assignment.size() != powers.size())
        throw std::invalid_argument("silhouette: assignment/power arity mismatch");

    std::vector<double> values = powers;
    std::vector<int> assign = clustering.assignment;
    constexpr std::size_t kMaxExact = 100000;
    if (values.size() > kMaxExact) {
        const std::size_t stride = (values.size() + kMaxExact - 1) / kMaxExact;
        std::vector<double> v;
        std::vector<int> a;
        for (std::size_t i = 0; i < values.size(); i += stride) {
            v.push_back(values[i]);
            a.push_back(assign[i]);
        }
        values.swap(v);
        assign.swap(a);
    }

    const std::size_t n = values.size();
    std::vector<long long> cluster_size(clustering.k, 0);
    for (int c : assign) ++cluster_size[c];
    for (int c = 0; c < clustering.k; ++c)
        if (cluster_size[c] == 0) throw std::invalid_argument("silhouette: empty cluster");

    double total = 0;
    std::vector<double> dist_sum(clustering.k);
    for (std::size_t i = 0; i < n; ++i) {
        std::fill(dist_sum.begin(), dist_sum.end(), 0.0);
        for (std::size_t j = 0; j < n; ++j)
            dist_sum[assign[j]] += std::fabs(values[i] - values[j]);
        const int own = assign[i];
        if (cluster_size[own] <= 1) continue;  // contributes 0
        const double a = dist_sum[own] / static_cast<double>(cluster_size[own] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (int c = 0; c < clustering.k; ++c)
            if (c != own)
                b = std::min(b, dist_sum[c] / static_cast<double>(cluster_size[c]));
        const double m = std::max(a, b);
        if (m > 0) total += (b - a) / m;
    }
    return total / static_cast<double>(n);
}

}  // namespace streamtree
