#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "streamtree/element.hpp"

namespace streamtree {

// Fixed array of E training elements plus the node-element table mapping
// active leaf ids to slots. Every slot is either free or bound to exactly one
// leaf; running out of slots is a signal to the caller, not an error.
class ElementPool {
public:
    ElementPool(int capacity, const DatasetSchema& schema, const ObserverConfig& config) {
        if (capacity < 1) throw std::invalid_argument("element pool needs capacity >= 1");
        elements_.reserve(capacity);
        for (int i = 0; i < capacity; ++i) elements_.emplace_back(schema, config);
        free_.resize(capacity);
        // LIFO free list: slot released last is reused first.
        for (int i = 0; i < capacity; ++i) free_[i] = capacity - 1 - i;
    }

    // Binds a free slot (logically reset) to the leaf; nullopt when the pool
    // is exhausted.
    std::optional<int> allocate(std::uint64_t leaf_id) {
        if (table_.count(leaf_id)) throw std::logic_error("element pool: leaf already bound");
        if (free_.empty()) return std::nullopt;
        const int slot = free_.back();
        free_.pop_back();
        elements_[slot].reset();
        table_[leaf_id] = slot;
        return slot;
    }

    void release(std::uint64_t leaf_id) {
        auto it = table_.find(leaf_id);
        if (it == table_.end()) throw std::logic_error("element pool: leaf not bound");
        free_.push_back(it->second);
        table_.erase(it);
    }

    bool bound(std::uint64_t leaf_id) const { return table_.count(leaf_id) > 0; }

    LeafElement& element_for(std::uint64_t leaf_id) {
        auto it = table_.find(leaf_id);
        if (it == table_.end()) throw std::logic_error("element pool: leaf not bound");
        return elements_[it->second];
    }

    const LeafElement& element_for(std::uint64_t leaf_id) const {
        auto it = table_.find(leaf_id);
        if (it == table_.end()) throw std::logic_error("element pool: leaf not bound");
        return elements_[it->second];
    }

    int capacity() const { return static_cast<int>(elements_.size()); }
    int free_count() const { return static_cast<int>(free_.size()); }
    int bound_count() const { return static_cast<int>(table_.size()); }

private:
    std::vector<LeafElement> elements_;
    std::vector<int> free_;
    std::unordered_map<std::uint64_t, int> table_;
};

}  // namespace streamtree
