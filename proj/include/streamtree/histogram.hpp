#pragma once

#include <numeric>
#include <stdexcept>
#include <vector>

namespace streamtree {

// Per-categorical-attribute count table (value x label) with a status bit.
// While the status bit is clear the logical content is all-zero no matter
// what the physical buffer holds; the first observe after invalidation wipes
// the buffer and sets the bit. This mirrors a memory that is re-bound to a
// fresh leaf without being cleared.
class Histogram {
public:
    Histogram(int value_count, int label_count)
        : value_count_(value_count), label_count_(label_count),
          counts_(static_cast<std::size_t>(value_count) * label_count, 0) {
        if (value_count < 2) throw std::invalid_argument("histogram needs value_count >= 2");
        if (label_count < 2) throw std::invalid_argument("histogram needs label_count >= 2");
    }

    bool valid() const { return valid_; }
    int value_count() const { return value_count_; }
    int label_count() const { return label_count_; }

    // Clears the status bit only; physical counts stay stale.
    void invalidate() { valid_ = false; }

    void observe(int value, int label) {
        check(value, label);
        if (!valid_) {
            counts_.assign(counts_.size(), 0);
            valid_ = true;
        }
        ++counts_[cell(value, label)];
    }

    long long count(int value, int label) const {
        check(value, label);
        return valid_ ? counts_[cell(value, label)] : 0;
    }

    long long total() const {
        if (!valid_) return 0;
        return std::accumulate(counts_.begin(), counts_.end(), 0LL);
    }

    std::vector<long long> label_totals() const {
        std::vector<long long> t(label_count_, 0);
        if (!valid_) return t;
        for (int v = 0; v < value_count_; ++v)
            for (int l = 0; l < label_count_; ++l) t[l] += counts_[cell(v, l)];
        return t;
    }

private:
    std::size_t cell(int value, int label) const {
        return static_cast<std::size_t>(value) * label_count_ + label;
    }

    void check(int value, int label) const {
        if (value < 0 || value >= value_count_)
            throw std::out_of_range("histogram value index out of range");
        if (label < 0 || label >= label_count_)
            throw std::out_of_range("histogram label index out of range");
    }

    int value_count_;
    int label_count_;
    bool valid_ = false;
    std::vector<long long> counts_;
};

}  // namespace streamtree
