#pragma once

#include <cstdint>

namespace ptnn {

// Device activation budget. The comparison is always in bytes; elem_bytes is
// the accounting size of one activation element (4 = fp32, 1 = int8-style
// accounting). Arithmetic precision never depends on it.
struct MemoryBudget {
    std::uint64_t budget_bytes = 0;
    std::uint32_t elem_bytes = 4;
};

// Throws SpecError unless budget_bytes >= 1 and elem_bytes in {1, 2, 4}.
void validate_budget(const MemoryBudget& b);

// Peak-memory decomposition of one bottleneck block. In reordered mode the
// expand and depth-wise stage outputs are single channels, so
// total_elements = h_i*w_i*c_i + h_o_p*w_o_p + h_o_d*w_o_d + h_o*w_o*c_o.
// In standard mode total_elements is the max over the three stages of
// (stage input + stage output) at the full expanded width.
struct BottleneckFootprint {
    int h_i = 0, w_i = 0, c_i = 0;
    int h_o_p = 0, w_o_p = 0;
    int h_o_d = 0, w_o_d = 0;
    int h_o = 0, w_o = 0, c_o = 0;
    std::uint64_t total_elements = 0;
};

enum class ExecMode { standard, reordered };

} // namespace ptnn
