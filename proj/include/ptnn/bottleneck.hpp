#pragma once

#include <vector>

#include "ptnn/arena.hpp"
#include "ptnn/budget.hpp"
#include "ptnn/kernels.hpp"
#include "ptnn/tensor.hpp"

namespace ptnn {

// Inverted-residual block: point-wise expansion to t*c_in channels, 3x3
// depth-wise (stride 1 or 2, padding fixed at 1), point-wise reduction to
// c_out. The reduction stage is always linear; when `affine` is set the
// expand and depth-wise stages each apply per-channel scale/bias + ReLU6.
struct BottleneckSpec {
    int c_in = 1;
    int t = 1;
    int stride = 1; // depth-wise stride, 1 or 2
    int c_out = 1;
    bool residual = false;
    bool affine = false;

    int expanded() const { return t * c_in; }
    static constexpr int dw_kernel = 3;
    static constexpr int dw_padding = 1;
};

// Throws SpecError on invalid fields (t < 1, stride not in {1,2}, ...).
void validate_bottleneck_spec(const BottleneckSpec& spec);

// Output shape of the block for a concrete input; checks channels and, when
// residual is set, that input and output shapes match per the
// floor((d + 2p - k)/s) + 1 rule.
TensorShape bottleneck_output_shape(const BottleneckSpec& spec, const TensorShape& in);

struct StageAffineParams {
    std::vector<float> scale; // [t*c_in]
    std::vector<float> bias;  // [t*c_in]
};

struct BottleneckWeights {
    // expand[n][ci]: n-th expansion filter (1x1), n in [0, t*c_in).
    std::vector<float> expand;
    // dw[n][kh][kw]: n-th 3x3 depth-wise filter.
    std::vector<float> dw;
    // reduce[co][n]: reduction filter rows, co in [0, c_out).
    std::vector<float> reduce;
    // Present only when spec.affine is set.
    StageAffineParams expand_affine;
    StageAffineParams dw_affine;

    static BottleneckWeights zeros(const BottleneckSpec& spec);
    std::size_t parameter_count() const;
};

void validate_bottleneck_weights(const BottleneckSpec& spec, const BottleneckWeights& w);

// Standard three-stage execution, built directly on the reference kernels.
// This is the oracle for the reordered schedule.
Tensor bottleneck_standard(const Tensor& x, const BottleneckSpec& spec,
                           const BottleneckWeights& w);

// Channel-at-a-time schedule: for each expanded channel n, run expand ->
// depth-wise on a single-channel plane and accumulate its reduction
// contribution into the final output, freeing the two intermediates before
// the next n. The two transients plus input and output are everything the
// block ever keeps live. `x` must be the most recent live arena block; on
// return the output replaces it (compacted to x's base). Accumulation order
// is fixed n = 0..t*c_in-1 for reproducibility.
std::span<float> bottleneck_reordered(std::span<float> x, const TensorShape& in_shape,
                                      const BottleneckSpec& spec,
                                      const BottleneckWeights& w, Arena& arena,
                                      const kernels::KernelOps* ops = nullptr);

// Convenience wrapper used by tests and verify_equivalence: runs the
// reordered schedule in a private arena sized by bottleneck_footprint.
Tensor bottleneck_reordered_tensor(const Tensor& x, const BottleneckSpec& spec,
                                   const BottleneckWeights& w,
                                   const kernels::KernelOps* ops = nullptr);

// Peak-memory decomposition per execution mode; reordered totals are
// independent of t.
BottleneckFootprint bottleneck_footprint(const BottleneckSpec& spec,
                                         const TensorShape& in_shape, ExecMode mode);

} // namespace ptnn
