#pragma once

// Streaming decision-tree toolkit: quantile-sketch Hoeffding tree with a
// Gaussian baseline, prequential evaluation, FPGA cost models and the power
// monitor generation flow.

#include "streamtree/cost_model.hpp"
#include "streamtree/csv.hpp"
#include "streamtree/evaluate.hpp"
#include "streamtree/power_flow.hpp"
#include "streamtree/synthetic.hpp"
#include "streamtree/tree.hpp"
