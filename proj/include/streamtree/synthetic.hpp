#pragma once

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "streamtree/sample.hpp"
#include "streamtree/schema.hpp"

namespace streamtree {

enum class SyntheticKind { separable, gaussian_mix, uniform_noise };

inline SyntheticKind parse_synthetic_kind(const std::string& name) {
    if (name == "separable") return SyntheticKind::separable;
    if (name == "gaussian-mix") return SyntheticKind::gaussian_mix;
    if (name == "uniform-noise") return SyntheticKind::uniform_noise;
    throw std::invalid_argument("unknown synthetic kind '" + name + "'");
}

struct SyntheticSpec {
    SyntheticKind kind = SyntheticKind::separable;
    long long count = 0;
    std::uint64_t seed = 1;
    int components = 2;  // gaussian-mix only
};

// Generative processes, all on two numeric attributes in [-1, 1]:
//  - separable: label j in {0,1}; attr0 ~ N(+-0.5, 0.1), attr1 ~ U(-1,1).
//    Bayes accuracy ~ 1 - Phi(-5).
//  - gaussian-mix: label j in {0..k-1}; both attrs ~ N(mu_j, 0.1) with the
//    mu_j evenly spaced over [-0.6, 0.6]; nearest-mean is the Bayes rule.
//  - uniform-noise: label ~ uniform {0,1}, both attrs ~ U(-1,1); nothing to
//    learn by construction.
inline DatasetSchema synthetic_schema(const SyntheticSpec& spec) {
    DatasetSchema s;
    s.label_count = spec.kind == SyntheticKind::gaussian_mix ? spec.components : 2;
    for (const char* name : {"a0", "a1"}) {
        AttributeSchema a;
        a.kind = AttributeKind::numeric;
        a.name = name;
        s.attributes.push_back(std::move(a));
    }
    s.finalize();
    return s;
}

inline std::vector<double> gaussian_mix_means(int components) {
    std::vector<double> means(components);
    for (int j = 0; j < components; ++j)
        means[j] = components == 1 ? 0.0 : -0.6 + 1.2 * j / (components - 1);
    return means;
}

inline std::vector<Sample> gen_synthetic(const SyntheticSpec& spec) {
    if (spec.count < 1) throw std::invalid_argument("synthetic stream needs count >= 1");
    if (spec.kind == SyntheticKind::gaussian_mix && spec.components < 2)
        throw std::invalid_argument("gaussian-mix needs at least 2 components");
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::normal_distribution<double> noise(0.0, 0.1);
    const DatasetSchema schema = synthetic_schema(spec);
    std::uniform_int_distribution<int> label_dist(0, schema.label_count - 1);
    const std::vector<double> means = gaussian_mix_means(schema.label_count);

    std::vector<Sample> out;
    out.reserve(spec.count);
    for (long long i = 0; i < spec.count; ++i) {
        Sample s;
        s.label = label_dist(rng);
        s.numeric_values.resize(2);
        switch (spec.kind) {
        case SyntheticKind::separable:
            s.numeric_values[0] = (s.label == 0 ? -0.5 : 0.5) + noise(rng);
            s.numeric_values[1] = unit(rng);
            break;
        case SyntheticKind::gaussian_mix:
            s.numeric_values[0] = means[s.label] + noise(rng);
            s.numeric_values[1] = means[s.label] + noise(rng);
            break;
        case SyntheticKind::uniform_noise:
            s.numeric_values[0] = unit(rng);
            s.numeric_values[1] = unit(rng);
            break;
        }
        for (double& x : s.numeric_values) x = std::clamp(x, -1.0, 1.0);
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace streamtree
