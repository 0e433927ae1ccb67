#if defined(__ARM_NEON) || defined(__aarch64__)

#include <arm_neon.h>

#include "ptnn/kernels.hpp"

namespace ptnn::kernels {
namespace {

float dot_neon(const float* a, const float* b, int n) {
    float32x4_t acc = vdupq_n_f32(0.0f);
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        acc = vfmaq_f32(acc, vld1q_f32(a + i), vld1q_f32(b + i));
    }
    float rest = 0.0f;
    for (; i < n; ++i) rest += a[i] * b[i];
    return vaddvq_f32(acc) + rest;
}

void pointwise_plane_neon(const float* x, int pixels, int c, const float* w, float* y) {
    for (int p = 0; p < pixels; ++p) {
        y[p] = dot_neon(x + static_cast<std::size_t>(p) * c, w, c);
    }
}

void dw3x3_plane_neon(const float* x, int h, int w, const float* k9,
                      int s, int p, float* y, int oh, int ow) {
    auto scalar_at = [&](int r, int c) {
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
        return acc;
    };

    if (s != 1) {
        for (int r = 0; r < oh; ++r)
            for (int c = 0; c < ow; ++c)
                y[static_cast<std::size_t>(r) * ow + c] = scalar_at(r, c);
        return;
    }

    const int c_lo = p;
    const int c_hi = w - 3 + p;
    for (int r = 0; r < oh; ++r) {
        float* yrow = y + static_cast<std::size_t>(r) * ow;
        const int ih0 = r - p;
        const bool rows_ok = ih0 >= 0 && ih0 + 2 < h;
        if (!rows_ok || c_lo > c_hi) {
            for (int c = 0; c < ow; ++c) yrow[c] = scalar_at(r, c);
            continue;
        }
        int c = 0;
        for (; c < c_lo && c < ow; ++c) yrow[c] = scalar_at(r, c);
        const int vec_end = (c_hi + 1 < ow ? c_hi + 1 : ow);
        for (; c + 4 <= vec_end; c += 4) {
            float32x4_t acc = vdupq_n_f32(0.0f);
            for (int kh = 0; kh < 3; ++kh) {
                const float* xrow = x + static_cast<std::size_t>(ih0 + kh) * w + (c - p);
                acc = vfmaq_n_f32(acc, vld1q_f32(xrow + 0), k9[kh * 3 + 0]);
                acc = vfmaq_n_f32(acc, vld1q_f32(xrow + 1), k9[kh * 3 + 1]);
                acc = vfmaq_n_f32(acc, vld1q_f32(xrow + 2), k9[kh * 3 + 2]);
            }
            vst1q_f32(yrow + c, acc);
        }
        for (; c < ow; ++c) yrow[c] = scalar_at(r, c);
    }
}

void accum_outer_neon(const float* plane, int pixels, const float* wcol,
                      int c_out, float* out) {
    for (int p = 0; p < pixels; ++p) {
        const float v = plane[p];
        float* row = out + static_cast<std::size_t>(p) * c_out;
        int co = 0;
        for (; co + 4 <= c_out; co += 4) {
            float32x4_t acc = vld1q_f32(row + co);
            acc = vfmaq_n_f32(acc, vld1q_f32(wcol + co), v);
            vst1q_f32(row + co, acc);
        }
        for (; co < c_out; ++co) row[co] += v * wcol[co];
    }
}

void axpy_neon(int n, float a, const float* x, float* y) {
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        float32x4_t acc = vld1q_f32(y + i);
        acc = vfmaq_n_f32(acc, vld1q_f32(x + i), a);
        vst1q_f32(y + i, acc);
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

void add_inplace_neon(int n, const float* x, float* y) {
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        vst1q_f32(y + i, vaddq_f32(vld1q_f32(y + i), vld1q_f32(x + i)));
    }
    for (; i < n; ++i) y[i] += x[i];
}

void affine_plane_neon(int n, float scale, float bias, bool relu6_clamp, float* y) {
    const float32x4_t bv = vdupq_n_f32(bias);
    const float32x4_t zero = vdupq_n_f32(0.0f);
    const float32x4_t six = vdupq_n_f32(6.0f);
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        float32x4_t v = vfmaq_n_f32(bv, vld1q_f32(y + i), scale);
        if (relu6_clamp) v = vminq_f32(vmaxq_f32(v, zero), six);
        vst1q_f32(y + i, v);
    }
    for (; i < n; ++i) {
        float v = scale * y[i] + bias;
        if (relu6_clamp) v = v < 0.0f ? 0.0f : (v > 6.0f ? 6.0f : v);
        y[i] = v;
    }
}

float sum_neon(const float* x, int n) {
    float32x4_t acc = vdupq_n_f32(0.0f);
    int i = 0;
    for (; i + 4 <= n; i += 4) acc = vaddq_f32(acc, vld1q_f32(x + i));
    float rest = 0.0f;
    for (; i < n; ++i) rest += x[i];
    return vaddvq_f32(acc) + rest;
}

} // namespace

const KernelOps& neon_ops() {
    static const KernelOps ops{
        "neon",
        dot_neon,
        pointwise_plane_neon,
        dw3x3_plane_neon,
        accum_outer_neon,
        axpy_neon,
        add_inplace_neon,
        affine_plane_neon,
        sum_neon,
    };
    return ops;
}

} // namespace ptnn::kernels

#endif // __ARM_NEON || __aarch64__
