#pragma once

#include <string_view>
#include <vector>

namespace ptnn::kernels {

// Inner-loop kernels used by the optimized execution paths. Each entry has a
// scalar reference implementation plus SIMD variants selected at runtime; the
// variants are equivalence-tested against the scalar table, and the paths
// built on them are checked end-to-end against the naive-convolution oracle.
struct KernelOps {
    const char* name;

    // sum_i a[i] * b[i]
    float (*dot)(const float* a, const float* b, int n);

    // y[p] = dot(x + p*c, w, c) for p in [0, pixels). Channels-innermost
    // layout makes each pixel's channel vector contiguous.
    void (*pointwise_plane)(const float* x, int pixels, int c, const float* w, float* y);

    // Single-channel 3x3 convolution, zero padding p, stride s.
    // x is h*w contiguous, y is oh*ow contiguous.
    void (*dw3x3_plane)(const float* x, int h, int w, const float* k9,
                        int s, int p, float* y, int oh, int ow);

    // out[p*c_out + co] += plane[p] * wcol[co]
    void (*accum_outer)(const float* plane, int pixels, const float* wcol,
                        int c_out, float* out);

    // y[i] += a * x[i]
    void (*axpy)(int n, float a, const float* x, float* y);

    // y[i] += x[i]
    void (*add_inplace)(int n, const float* x, float* y);

    // y[i] = scale*y[i] + bias, clamped to [0,6] when relu6 is set.
    void (*affine_plane)(int n, float scale, float bias, bool relu6_clamp, float* y);

    // sum_i x[i]
    float (*sum)(const float* x, int n);
};

const KernelOps& scalar_ops();

#if defined(__x86_64__) || defined(_M_X64)
const KernelOps& avx2_ops();
bool avx2_supported();
#endif
#if defined(__ARM_NEON) || defined(__aarch64__)
const KernelOps& neon_ops();
#endif

// All tables usable on this machine (scalar first).
std::vector<const KernelOps*> available_ops();

// Best table for this machine; PTNN_ISA=scalar|avx2|neon overrides.
// Resolved once on first call.
const KernelOps& active_ops();

// Lookup by name ("scalar", "avx2", "neon"); nullptr when absent/unsupported.
const KernelOps* find_ops(std::string_view name);

} // namespace ptnn::kernels
