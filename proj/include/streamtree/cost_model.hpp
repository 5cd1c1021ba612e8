#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace streamtree::cost {

// ceil(a / b) for non-negative a, positive b.
constexpr long long ceil_div(long long a, long long b) { return (a + b - 1) / b; }

// ceil(log2 x) for x >= 1; bit-width semantics, so ceil_log2(1) == 0.
constexpr int ceil_log2(long long x) {
    if (x < 1) throw std::invalid_argument("ceil_log2 needs x >= 1");
    return std::bit_width(static_cast<unsigned long long>(x - 1));
}

// ceil(2^e): 2^e for e >= 0, and 1 for negative e (2^e is then in (0,1)).
constexpr long long ceil_pow2(int e) { return e <= 0 ? 1LL : (1LL << e); }

struct DesignParams {
    int labels = 2;                      // L
    int numeric_attributes = 0;          // N
    int categorical_attributes = 0;      // C
    std::vector<int> value_counts;       // V_i, one per categorical attribute
    int quantiles = 8;                   // Q
    int elements = 1024;                 // E
    int tree_depth = 15;                 // D_tree
    double frequency_mhz = 200.0;        // f
    long long samples = 0;               // S
    double cold_start_cycles = 0.0;      // fitted startup cycles
    double cycles_per_sample = 1.047;    // profiled amortized cycles per sample
    double ddr_read_gbps = 9.5;          // GB/s, 10^9 bytes
    double ddr_write_gbps = 8.9;

    void validate() const {
        if (labels < 2) throw std::invalid_argument("labels must be >= 2");
        if (numeric_attributes < 0 || categorical_attributes < 0)
            throw std::invalid_argument("attribute counts must be non-negative");
        if (numeric_attributes + categorical_attributes < 1)
            throw std::invalid_argument("at least one attribute required");
        if (static_cast<int>(value_counts.size()) != categorical_attributes)
            throw std::invalid_argument("value_counts must list V_i for every categorical attribute");
        for (int v : value_counts)
            if (v < 2) throw std::invalid_argument("categorical value counts must be >= 2");
        if (quantiles < 2) throw std::invalid_argument("quantiles must be >= 2");
        if (elements < 1) throw std::invalid_argument("elements must be >= 1");
        if (tree_depth < 1) throw std::invalid_argument("tree_depth must be >= 1");
        if (frequency_mhz <= 0) throw std::invalid_argument("frequency must be positive");
        if (samples < 0) throw std::invalid_argument("samples must be non-negative");
        if (cycles_per_sample <= 0) throw std::invalid_argument("cycles_per_sample must be positive");
    }
};

// ---- performance ----

struct LatencyReport {
    int buffer = 0;   // two FIFO stages of four cycles each
    int tree = 0;     // three pipeline stages per level
    int predict = 0;
    int overall = 0;
};

inline LatencyReport latency(const DesignParams& p) {
    if (p.tree_depth < 1) throw std::invalid_argument("tree_depth must be >= 1");
    LatencyReport r;
    r.buffer = 8;
    r.tree = 3 * p.tree_depth;
    r.predict = 2;
    r.overall = r.buffer + r.tree + r.predict;
    return r;
}

struct ThroughputReport {
    long long sample_bits = 0;
    double fpga_bits_per_s = 0;     // one sample per cycle at f
    double overall_bits_per_s = 0;  // capped by the DDR read bandwidth
};

inline ThroughputReport throughput(const DesignParams& p) {
    p.validate();
    ThroughputReport r;
    long long categorical_bits = 0;
    if (p.categorical_attributes > 0) {
        int width = 0;
        for (int v : p.value_counts) width = std::max(width, ceil_log2(v));
        categorical_bits = static_cast<long long>(width) * p.categorical_attributes;
    }
    r.sample_bits = ceil_log2(p.labels) + 32LL * p.numeric_attributes + categorical_bits;
    r.fpga_bits_per_s = static_cast<double>(r.sample_bits) * p.frequency_mhz * 1e6;
    const double ddr_read_bits = p.ddr_read_gbps * 8e9;
    r.overall_bits_per_s = std::min(r.fpga_bits_per_s, ddr_read_bits);
    return r;
}

struct ExecutionReport {
    double cycles = 0;
    double seconds = 0;
};

inline ExecutionReport exec_time(const DesignParams& p) {
    if (p.frequency_mhz <= 0) throw std::invalid_argument("frequency must be positive");
    if (p.samples < 0) throw std::invalid_argument("samples must be non-negative");
    ExecutionReport r;
    r.cycles = p.cycles_per_sample * static_cast<double>(p.samples) + p.cold_start_cycles;
    r.seconds = r.cycles / (p.frequency_mhz * 1e6);
    return r;
}

// Solves the cold-start cycles from one measured execution time.
inline double fit_cold_start(const DesignParams& p, double measured_seconds) {
    return measured_seconds * p.frequency_mhz * 1e6 -
           p.cycles_per_sample * static_cast<double>(p.samples);
}

// ---- resources ----

struct DspReport {
    long long numeric = 0;      // (3L + 12) x N
    long long categorical = 0;  // (2L + 4) x C
    long long split = 4;        // one 32-bit multiplier for the 1/|S| scaling
    long long overall = 0;
};

inline DspReport dsp(const DesignParams& p) {
    p.validate();
    DspReport r;
    r.numeric = (3LL * p.labels + 12) * p.numeric_attributes;
    r.categorical = (2LL * p.labels + 4) * p.categorical_attributes;
    r.overall = r.numeric + r.categorical + r.split;
    return r;
}

// Node memory for one tree level; the root level lives in registers.
inline long long bram_level(int level, const DesignParams& p) {
    if (level == 1) return 0;
    const long long width = 33 + p.tree_depth + ceil_log2(p.tree_depth) +
                            ceil_log2(p.categorical_attributes + p.numeric_attributes);
    if (level <= 11) return ceil_div(width, 18);
    return ceil_div(width, 36) * (1LL << (level - 11)) + 4;
}

struct BramReport {
    long long buffer_inference = 32;  // input/internal FIFOs, profiled constant
    long long tree = 0;
    long long predict = 0;
    long long inference = 0;

    long long buffer_numeric = 0;
    long long quantile = 0;
    long long numeric = 0;

    long long buffer_categorical = 0;
    long long histogram = 0;
    long long categorical = 0;

    long long overall = 0;
};

inline BramReport bram(const DesignParams& p) {
    p.validate();
    BramReport r;
    const long long L = p.labels;
    const long long N = p.numeric_attributes;
    const long long C = p.categorical_attributes;
    const long long E = p.elements;
    const long long Q = p.quantiles;
    const int log_e = ceil_log2(E);
    const int log_l = ceil_log2(L);

    for (int level = 1; level <= p.tree_depth; ++level) r.tree += bram_level(level, p);
    r.predict = ceil_pow2(log_e + log_l - 10) + ceil_div(E, 1024) +
                ceil_div(12 + L + log_l, 18) * ceil_div(E, 1024);
    r.inference = r.buffer_inference + r.tree + r.predict;

    r.buffer_numeric = N * (8 + 2 * L + ceil_div(log_e + log_l + 32, 18)) +
                       N * ceil_div(E, 1024) *
                           (5 + 4 * L + ceil_div(1 + 6 * L, 18) + ceil_div(2 * L, 3));
    r.quantile = N * (ceil_pow2(log_e + log_l - 10) * 2 * Q + ceil_div(8 * Q, 9) * L);
    r.numeric = r.buffer_numeric + r.quantile;

    r.buffer_categorical = (ceil_div(2 * L, 3) + 2) * ceil_div(E, 1024) + 10 * C;
    long long histogram_slots = 0;
    for (int v : p.value_counts) histogram_slots += ceil_div(v, 2);
    r.histogram = histogram_slots * (ceil_pow2(log_e - 9) + 3 * ceil_pow2(log_e + log_l - 11) +
                                     ceil_pow2(log_e + log_l - 13) + ceil_div(E, 8192));
    r.categorical = r.buffer_categorical + r.histogram;

    r.overall = r.inference + r.numeric + r.categorical;
    return r;
}

// ---- aggregate ----

struct CostReport {
    LatencyReport latency;
    ThroughputReport throughput;
    ExecutionReport execution;
    DspReport dsp;
    BramReport bram;
};

inline CostReport report(const DesignParams& p) {
    p.validate();
    CostReport r;
    r.latency = latency(p);
    r.throughput = throughput(p);
    r.execution = exec_time(p);
    r.dsp = dsp(p);
    r.bram = bram(p);
    return r;
}

inline nlohmann::json report_to_json(const DesignParams& p, const CostReport& r) {
    return nlohmann::json{
        {"params",
         {{"labels", p.labels},
          {"numeric_attributes", p.numeric_attributes},
          {"categorical_attributes", p.categorical_attributes},
          {"value_counts", p.value_counts},
          {"quantiles", p.quantiles},
          {"elements", p.elements},
          {"tree_depth", p.tree_depth},
          {"frequency_mhz", p.frequency_mhz},
          {"samples", p.samples},
          {"cold_start_cycles", p.cold_start_cycles},
          {"cycles_per_sample", p.cycles_per_sample},
          {"ddr_read_gbps", p.ddr_read_gbps},
          {"ddr_write_gbps", p.ddr_write_gbps}}},
        {"latency_cycles",
         {{"buffer", r.latency.buffer},
          {"tree", r.latency.tree},
          {"predict", r.latency.predict},
          {"overall", r.latency.overall}}},
        {"throughput",
         {{"sample_bits", r.throughput.sample_bits},
          {"fpga_bits_per_s", r.throughput.fpga_bits_per_s},
          {"overall_bits_per_s", r.throughput.overall_bits_per_s}}},
        {"execution",
         {{"cycles", r.execution.cycles}, {"seconds", r.execution.seconds}}},
        {"dsp",
         {{"numeric", r.dsp.numeric},
          {"categorical", r.dsp.categorical},
          {"split", r.dsp.split},
          {"overall", r.dsp.overall}}},
        {"bram",
         {{"buffer_inference", r.bram.buffer_inference},
          {"tree", r.bram.tree},
          {"predict", r.bram.predict},
          {"inference", r.bram.inference},
          {"buffer_numeric", r.bram.buffer_numeric},
          {"quantile", r.bram.quantile},
          {"numeric", r.bram.numeric},
          {"buffer_categorical", r.bram.buffer_categorical},
          {"histogram", r.bram.histogram},
          {"categorical", r.bram.categorical},
          {"overall", r.bram.overall}}}};
}

inline std::string report_to_table(const CostReport& r) {
    char buf[256];
    std::string out;
    auto line = [&](const char* fmt, auto... args) {
        std::snprintf(buf, sizeof buf, fmt, args...);
        out += buf;
    };
    line("latency      %d cycles (buffer %d + tree %d + predict %d)\n", r.latency.overall,
         r.latency.buffer, r.latency.tree, r.latency.predict);
    line("sample size  %lld bits\n", r.throughput.sample_bits);
    line("throughput   %.4g Gb/s on chip, %.4g Gb/s overall\n", r.throughput.fpga_bits_per_s / 1e9,
         r.throughput.overall_bits_per_s / 1e9);
    line("exec time    %.6g ms (%.6g cycles)\n", r.execution.seconds * 1e3, r.execution.cycles);
    line("DSP          %lld (numeric %lld + categorical %lld + split %lld)\n", r.dsp.overall,
         r.dsp.numeric, r.dsp.categorical, r.dsp.split);
    line("BRAM         %lld (inference %lld + numeric %lld + categorical %lld)\n", r.bram.overall,
         r.bram.inference, r.bram.numeric, r.bram.categorical);
    return out;
}

}  // namespace streamtree::cost
