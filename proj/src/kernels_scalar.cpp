#include "ptnn/kernels.hpp"

#include "ptnn/tensor.hpp"

namespace ptnn::kernels {
namespace {

float dot_scalar(const float* a, const float* b, int n) {
    float acc = 0.0f;
    for (int i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

void pointwise_plane_scalar(const float* x, int pixels, int c, const float* w, float* y) {
    for (int p = 0; p < pixels; ++p) {
        y[p] = dot_scalar(x + static_cast<std::size_t>(p) * c, w, c);
    }
}

void dw3x3_plane_scalar(const float* x, int h, int w, const float* k9,
                        int s, int p, float* y, int oh, int ow) {
    for (int r = 0; r < oh; ++r) {
        for (int c = 0; c < ow; ++c) {
            float acc = 0.0f;
            for (int kh = 0; kh < 3; ++kh) {
                const int ih = r * s - p + kh;
                if (ih < 0 || ih >= h) continue;
                for (int kw = 0; kw < 3; ++kw) {
                    const int iw = c * s - p + kw;
                    if (iw < 0 || iw >= w) continue;
                    acc += x[static_cast<std::size_t>(ih) * w + iw] * k9[kh * 3 + kw];
                }
            }
            y[static_cast<std::size_t>(r) * ow + c] = acc;
        }
    }
}

void accum_outer_scalar(const float* plane, int pixels, const float* wcol,
                        int c_out, float* out) {
    for (int p = 0; p < pixels; ++p) {
        const float v = plane[p];
        float* row = out + static_cast<std::size_t>(p) * c_out;
        for (int co = 0; co < c_out; ++co) row[co] += v * wcol[co];
    }
}

void axpy_scalar(int n, float a, const float* x, float* y) {
    for (int i = 0; i < n; ++i) y[i] += a * x[i];
}

void add_inplace_scalar(int n, const float* x, float* y) {
    for (int i = 0; i < n; ++i) y[i] += x[i];
}

void affine_plane_scalar(int n, float scale, float bias, bool relu6_clamp, float* y) {
    for (int i = 0; i < n; ++i) {
        const float v = scale * y[i] + bias;
        y[i] = relu6_clamp ? relu6(v) : v;
    }
}

float sum_scalar(const float* x, int n) {
    float acc = 0.0f;
    for (int i = 0; i < n; ++i) acc += x[i];
    return acc;
}

} // namespace

const KernelOps& scalar_ops() {
    static const KernelOps ops{
        "scalar",
        dot_scalar,
        pointwise_plane_scalar,
        dw3x3_plane_scalar,
        accum_outer_scalar,
        axpy_scalar,
        add_inplace_scalar,
        affine_plane_scalar,
        sum_scalar,
    };
    return ops;
}

} // namespace ptnn::kernels
