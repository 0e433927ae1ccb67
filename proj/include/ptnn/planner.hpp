#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ptnn/budget.hpp"
#include "ptnn/network.hpp"

namespace ptnn {

// Closed-form peak activation accounting. Weights are excluded everywhere:
// they live in flash on the target devices, and the model ignores the minute
// working memory of the convolution loops themselves.

// Elements live while one convolution runs: input h*w*c plus output
// H_out*W_out*c_out. Throws SpecError on non-positive output dims and
// BudgetError on element-count overflow.
std::uint64_t layer_footprint(const TensorShape& in_shape, const ConvParams& params);

struct PlanEntry {
    std::string op_id;    // "stem", "bn0", "bn1", ...
    int tunnel = 0;       // index; the central tunnel is the last one
    std::uint64_t elements = 0;
    std::uint64_t bytes = 0;
};

struct MemoryPlan {
    std::vector<PlanEntry> per_op;
    // Persistent head accumulator (c_final elements), resident throughout.
    std::uint64_t resident_elements = 0;
    std::uint64_t peak_elements = 0;
    std::uint64_t peak_bytes = 0;
    std::string peak_op;
    int peak_tunnel = 0;
    std::uint32_t elem_bytes = 4;
    std::uint64_t budget_bytes = 0;
    bool within_budget = false;
};

// Walks every tunnel's op sequence in execution order (tunnels run one at a
// time), scoring plain convs with layer_footprint and bottlenecks with
// bottleneck_footprint. peak = max per-op transient + the resident head
// accumulator. `parallel_tunnels` > 1 is a what-if knob multiplying the
// transient term; budget-certified execution is always sequential.
MemoryPlan plan_network(const NetworkSpec& net, const MemoryBudget& budget,
                        ExecMode mode, int parallel_tunnels = 1);

// Largest c_out whose layer footprint fits the budget:
// floor((budget_elems - in_elems) / (H_out * W_out)). Throws BudgetError when
// even c_out = 1 does not fit.
int max_cout_under_budget(const TensorShape& in_shape, int k_h, int k_w, int s,
                          int p_h, int p_w, const MemoryBudget& budget);

} // namespace ptnn
