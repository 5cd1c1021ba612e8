#pragma once

#include <algorithm>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace streamtree {

struct CartParams {
    int max_depth = 7;
    int min_samples_split = 2;
};

// Small offline CART classifier over numeric columns, used at design time to
// score attribute importance. Splits greedily by gini gain; importance per
// attribute accumulates (node fraction) x (gain) over all internal nodes.
class CartTree {
public:
    // `columns` is column-major: columns[attr][row]. Labels in [0, label_count).
    static CartTree fit(const std::vector<std::vector<double>>& columns,
                        const std::vector<int>& labels, int label_count,
                        const CartParams& params = {}) {
        if (columns.empty()) throw std::invalid_argument("cart: no attributes");
        for (const auto& col : columns)
            if (col.size() != labels.size())
                throw std::invalid_argument("cart: column/label arity mismatch");
        CartTree tree;
        tree.columns_ = &columns;
        tree.labels_ = &labels;
        tree.label_count_ = label_count;
        tree.params_ = params;
        tree.importances_.assign(columns.size(), 0.0);
        std::vector<int> rows(labels.size());
        std::iota(rows.begin(), rows.end(), 0);
        tree.total_rows_ = static_cast<double>(rows.size());
        tree.root_ = tree.build(rows, 0);
        tree.columns_ = nullptr;
        tree.labels_ = nullptr;
        return tree;
    }

    const std::vector<double>& importances() const { return importances_; }

    int predict(const std::vector<double>& row) const {
        const Node* node = root_.get();
        while (!node->is_leaf)
            node = row[node->attribute] <= node->threshold ? node->left.get() : node->right.get();
        return node->label;
    }

private:
    struct Node {
        bool is_leaf = true;
        int label = 0;
        int attribute = -1;
        double threshold = 0;
        std::unique_ptr<Node> left, right;
    };

    double node_gini(const std::vector<long long>& counts, double n) const {
        double sq = 0;
        for (long long c : counts) sq += static_cast<double>(c) * static_cast<double>(c);
        return 1.0 - sq / (n * n);
    }

    std::unique_ptr<Node> build(std::vector<int>& rows, int depth) {
        auto node = std::make_unique<Node>();
        std::vector<long long> counts(label_count_, 0);
        for (int r : rows) ++counts[(*labels_)[r]];
        node->label = static_cast<int>(std::max_element(counts.begin(), counts.end()) -
                                       counts.begin());

        const double n = static_cast<double>(rows.size());
        const double impurity = node_gini(counts, n);
        if (depth >= params_.max_depth || impurity <= 0 ||
            static_cast<int>(rows.size()) < params_.min_samples_split)
            return node;

        int best_attr = -1;
        double best_threshold = 0, best_gain = 0;
        std::vector<int> order;
        std::vector<long long> left_counts(label_count_);
        for (std::size_t attr = 0; attr < columns_->size(); ++attr) {
            const std::vector<double>& col = (*columns_)[attr];
            order = rows;
            std::sort(order.begin(), order.end(),
                      [&](int a, int b) { return col[a] < col[b]; });
            std::fill(left_counts.begin(), left_counts.end(), 0);
            double left_sq = 0;
            double right_sq = 0;
            for (long long c : counts) right_sq += static_cast<double>(c) * c;
            for (std::size_t i = 0; i + 1 < order.size(); ++i) {
                const int label = (*labels_)[order[i]];
                // Maintain sum of squared counts incrementally on both sides.
                left_sq += 2.0 * static_cast<double>(left_counts[label]) + 1.0;
                right_sq -= 2.0 * static_cast<double>(counts[label] - left_counts[label]) - 1.0;
                ++left_counts[label];
                const double lo = col[order[i]];
                const double hi = col[order[i + 1]];
                if (lo == hi) continue;  // no boundary between equal values
                const double n_l = static_cast<double>(i + 1);
                const double n_r = n - n_l;
                // gain = impurity - wL*gini_L - wR*gini_R, expanded via square sums
                const double gain = impurity - (n_l / n) * (1.0 - left_sq / (n_l * n_l)) -
                                    (n_r / n) * (1.0 - right_sq / (n_r * n_r));
                if (gain > best_gain + 1e-15) {
                    best_gain = gain;
                    best_attr = static_cast<int>(attr);
                    best_threshold = lo + (hi - lo) / 2;
                }
            }
        }
        if (best_attr < 0 || best_gain <= 0) return node;

        importances_[best_attr] += (n / total_rows_) * best_gain;
        node->is_leaf = false;
        node->attribute = best_attr;
        node->threshold = best_threshold;
        std::vector<int> left_rows, right_rows;
        const std::vector<double>& col = (*columns_)[best_attr];
        for (int r : rows)
            (col[r] <= best_threshold ? left_rows : right_rows).push_back(r);
        rows.clear();
        rows.shrink_to_fit();
        node->left = build(left_rows, depth + 1);
        node->right = build(right_rows, depth + 1);
        return node;
    }

    const std::vector<std::vector<double>>* columns_ = nullptr;
    const std::vector<int>* labels_ = nullptr;
    int label_count_ = 0;
    double total_rows_ = 0;
    CartParams params_;
    std::vector<double> importances_;
    std::unique_ptr<Node> root_;
};

}  // namespace streamtree
