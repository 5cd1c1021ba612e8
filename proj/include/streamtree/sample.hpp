#pragma once

#include <vector>

namespace streamtree {

// One labeled observation. Values are stored per kind, in schema slot order;
// immutable by convention once constructed.
struct Sample {
    std::vector<double> numeric_values;
    std::vector<int> categorical_values;
    int label = 0;
};

}  // namespace streamtree
