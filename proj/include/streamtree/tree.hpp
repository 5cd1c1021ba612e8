#pragma once

#include <cstdint>
#include <cstdio>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "streamtree/element_pool.hpp"
#include "streamtree/split.hpp"

namespace streamtree {

struct TreeMetrics {
    long long splits_total = 0;
    long long splits_hoeffding = 0;
    long long splits_tie = 0;
    long long trials_run = 0;
    long long depth_limited = 0;
    long long leaf_limited = 0;
    long long pool_exhausted = 0;
};

// Either an internal binary test or a leaf. Leaves carry the vote counts and
// the default label inherited from the parent at split time.
struct TreeNode {
    bool is_leaf = true;
    int depth = 1;  // root is level 1

    // internal
    int attribute = -1;
    double split_value = 0;
    SplitKind kind = SplitKind::numeric_threshold;
    std::unique_ptr<TreeNode> left;
    std::unique_ptr<TreeNode> right;

    // leaf
    std::uint64_t leaf_id = 0;
    std::vector<long long> label_counts;
    int default_label = 0;

    int majority_label() const {
        int best = default_label;
        long long best_count = 0;
        for (std::size_t j = 0; j < label_counts.size(); ++j) {
            if (label_counts[j] > best_count) {
                best_count = label_counts[j];
                best = static_cast<int>(j);
            }
        }
        return best_count > 0 ? best : default_label;
    }
};

struct SplitEvent {
    std::uint64_t leaf_id = 0;
    int attribute = -1;
    double split_value = 0;
    SplitKind kind = SplitKind::numeric_threshold;
    SplitCause cause = SplitCause::none;
    long long sample_index = 0;  // n_f at the leaf when the split fired
};

// Streaming decision tree: samples are filtered to a leaf, counted, observed
// into the leaf's training element, and every grace_period samples a split
// trial may replace the leaf with a binary test. Growth stops silently at the
// depth/leaf limits or when the element pool cannot back two children.
class HoeffdingTree {
public:
    HoeffdingTree(DatasetSchema schema, HyperParams hp, ObserverConfig observer,
                  int element_capacity)
        : schema_(std::move(schema)), hp_(hp), observer_(observer),
          pool_(element_capacity, schema_, patch_stats(observer_)) {
        hp_.validate();
        if (observer_.mode == ObserverMode::quantile && observer_.quantile_count < 2)
            throw std::invalid_argument("quantile mode needs quantile_count >= 2");
        root_ = make_leaf(1, 0);
        if (!pool_.allocate(root_->leaf_id))
            throw std::logic_error("element pool empty at construction");
        leaf_count_ = 1;
    }

    // Elements keep pointers into the tree's schema and stats.
    HoeffdingTree(const HoeffdingTree&) = delete;
    HoeffdingTree& operator=(const HoeffdingTree&) = delete;

    const DatasetSchema& schema() const { return schema_; }
    const TreeNode& root() const { return *root_; }
    const HyperParams& params() const { return hp_; }
    const TreeMetrics& metrics() const { return metrics_; }
    const ElementPool& pool() const { return pool_; }
    const FixedPointStats& fixed_point_stats() const { return fp_stats_; }
    int leaf_count() const { return leaf_count_; }
    int depth() const { return depth_; }

    const TreeNode& find_leaf(const Sample& s) const {
        return *descend(prepare(s));
    }

    // Majority vote at the reached leaf; an empty leaf answers its inherited
    // default and a tie goes to the lowest label.
    int predict(const Sample& s) const { return find_leaf(s).majority_label(); }

    std::optional<SplitEvent> learn_one(const Sample& s) {
        const Sample prepared = prepare(s);
        TreeNode* leaf = descend(prepared);
        ++leaf->label_counts[prepared.label];
        LeafElement& element = pool_.element_for(leaf->leaf_id);
        element.observe(prepared);
        if (element.samples_since_trial() < hp_.grace_period) return std::nullopt;

        ++metrics_.trials_run;
        const long long n_f = element.sample_count();
        TrialOutcome outcome = run_split_trial(element, schema_, hp_);
        if (!outcome.decision.split) return std::nullopt;

        if (leaf->depth >= hp_.max_depth) {
            ++metrics_.depth_limited;
            return std::nullopt;
        }
        if (leaf_count_ >= hp_.max_leaves) {
            ++metrics_.leaf_limited;
            return std::nullopt;
        }
        // The split frees the parent's slot, so one free slot suffices.
        if (pool_.free_count() + 1 < 2) {
            ++metrics_.pool_exhausted;
            return std::nullopt;
        }
        apply_split(*leaf, *outcome.best);
        ++metrics_.splits_total;
        if (outcome.decision.cause == SplitCause::hoeffding)
            ++metrics_.splits_hoeffding;
        else
            ++metrics_.splits_tie;
        return SplitEvent{leaf->leaf_id, outcome.best->attribute, outcome.best->split_value,
                          outcome.best->kind, outcome.decision.cause, n_f};
    }

    // Textual dump, one node per line; stable across runs for golden tests.
    std::string dump() const {
        std::ostringstream out;
        dump_node(out, *root_, 0);
        return out.str();
    }

private:
    ObserverConfig& patch_stats(ObserverConfig& obs) {
        obs.fp_stats = &fp_stats_;
        return obs;
    }

    std::unique_ptr<TreeNode> make_leaf(int depth, int default_label) {
        auto node = std::make_unique<TreeNode>();
        node->depth = depth;
        node->leaf_id = next_leaf_id_++;
        node->label_counts.assign(schema_.label_count, 0);
        node->default_label = default_label;
        depth_ = std::max(depth_, depth);
        return node;
    }

    // Quantizes numeric values once on entry when fixed-point mode is on, so
    // routing, ranges and sketches all see the same representation.
    Sample prepare(const Sample& s) const {
        if (!observer_.fixed_point) return s;
        Sample out = s;
        for (double& x : out.numeric_values) x = quantize_q2_30(x, &fp_stats_);
        return out;
    }

    static bool goes_left(const TreeNode& node, const Sample& s,
                          const DatasetSchema& schema) {
        const AttributeSchema& attr = schema.attributes[node.attribute];
        if (node.kind == SplitKind::numeric_threshold)
            return s.numeric_values[attr.slot] <= node.split_value;
        return s.categorical_values[attr.slot] == static_cast<int>(node.split_value);
    }

    const TreeNode* descend(const Sample& s) const {
        const TreeNode* node = root_.get();
        while (!node->is_leaf)
            node = goes_left(*node, s, schema_) ? node->left.get() : node->right.get();
        return node;
    }

    TreeNode* descend(const Sample& s) {
        return const_cast<TreeNode*>(static_cast<const HoeffdingTree*>(this)->descend(s));
    }

    void apply_split(TreeNode& leaf, const SplitCandidate& cand) {
        const int inherited = leaf.majority_label();
        pool_.release(leaf.leaf_id);
        auto left = make_leaf(leaf.depth + 1, inherited);
        auto right = make_leaf(leaf.depth + 1, inherited);
        if (!pool_.allocate(left->leaf_id) || !pool_.allocate(right->leaf_id))
            throw std::logic_error("element pool exhausted after availability check");
        leaf.is_leaf = false;
        leaf.attribute = cand.attribute;
        leaf.split_value = cand.split_value;
        leaf.kind = cand.kind;
        leaf.left = std::move(left);
        leaf.right = std::move(right);
        leaf.label_counts.clear();
        leaf.label_counts.shrink_to_fit();
        ++leaf_count_;
    }

    void dump_node(std::ostringstream& out, const TreeNode& node, int indent) const {
        for (int i = 0; i < indent; ++i) out << "  ";
        if (node.is_leaf) {
            out << "(leaf id=" << node.leaf_id << " n=";
            long long n = 0;
            for (long long c : node.label_counts) n += c;
            out << n << " counts=[";
            for (std::size_t j = 0; j < node.label_counts.size(); ++j) {
                if (j) out << ',';
                out << node.label_counts[j];
            }
            out << "] default=" << node.default_label << ")\n";
            return;
        }
        const AttributeSchema& attr = schema_.attributes[node.attribute];
        char value[32];
        std::snprintf(value, sizeof value, "%.6g", node.split_value);
        out << "(split " << attr.name
            << (node.kind == SplitKind::numeric_threshold ? " <= " : " == ") << value << "\n";
        dump_node(out, *node.left, indent + 1);
        dump_node(out, *node.right, indent + 1);
        for (int i = 0; i < indent; ++i) out << "  ";
        out << ")\n";
    }

    DatasetSchema schema_;
    HyperParams hp_;
    ObserverConfig observer_;
    mutable FixedPointStats fp_stats_;
    ElementPool pool_;
    std::unique_ptr<TreeNode> root_;
    std::uint64_t next_leaf_id_ = 1;
    int leaf_count_ = 0;
    int depth_ = 1;
    TreeMetrics metrics_;
};

}  // namespace streamtree
