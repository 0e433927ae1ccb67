#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "ptnn/kernels.hpp"

namespace ptnn::kernels {
namespace {

inline float hsum8(__m256 v) {
    __m128 lo = _mm256_castps256_ps128(v);
    __m128 hi = _mm256_extractf128_ps(v, 1);
    lo = _mm_add_ps(lo, hi);
    __m128 sh = _mm_movehl_ps(lo, lo);
    lo = _mm_add_ps(lo, sh);
    sh = _mm_shuffle_ps(lo, lo, 0x1);
    lo = _mm_add_ss(lo, sh);
    return _mm_cvtss_f32(lo);
}

float dot_avx2(const float* a, const float* b, int n) {
    __m256 acc = _mm256_setzero_ps();
    int i = 0;
    for (; i + 8 <= n; i += 8) {
        acc = _mm256_fmadd_ps(_mm256_loadu_ps(a + i), _mm256_loadu_ps(b + i), acc);
    }
    float rest = 0.0f;
    for (; i < n; ++i) rest += a[i] * b[i];
    return hsum8(acc) + rest;
}

void pointwise_plane_avx2(const float* x, int pixels, int c, const float* w, float* y) {
    for (int p = 0; p < pixels; ++p) {
        y[p] = dot_avx2(x + static_cast<std::size_t>(p) * c, w, c);
    }
}

void dw3x3_plane_avx2(const float* x, int h, int w, const float* k9,
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
        // Strided taps are not contiguous across output columns; stay scalar.
        for (int r = 0; r < oh; ++r)
            for (int c = 0; c < ow; ++c)
                y[static_cast<std::size_t>(r) * ow + c] = scalar_at(r, c);
        return;
    }

    // s == 1: interior columns have all three taps in-bounds, letting eight
    // outputs share unaligned row loads.
    const int c_lo = p;                    // first col with iw = c-p+0 >= 0
    const int c_hi = w - 3 + p;            // last col with iw = c-p+2 <= w-1
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
        for (; c + 8 <= vec_end; c += 8) {
            __m256 acc = _mm256_setzero_ps();
            for (int kh = 0; kh < 3; ++kh) {
                const float* xrow = x + static_cast<std::size_t>(ih0 + kh) * w + (c - p);
                acc = _mm256_fmadd_ps(_mm256_set1_ps(k9[kh * 3 + 0]),
                                      _mm256_loadu_ps(xrow + 0), acc);
                acc = _mm256_fmadd_ps(_mm256_set1_ps(k9[kh * 3 + 1]),
                                      _mm256_loadu_ps(xrow + 1), acc);
                acc = _mm256_fmadd_ps(_mm256_set1_ps(k9[kh * 3 + 2]),
                                      _mm256_loadu_ps(xrow + 2), acc);
            }
            _mm256_storeu_ps(yrow + c, acc);
        }
        for (; c < ow; ++c) yrow[c] = scalar_at(r, c);
    }
}

void accum_outer_avx2(const float* plane, int pixels, const float* wcol,
                      int c_out, float* out) {
    for (int p = 0; p < pixels; ++p) {
        const __m256 v = _mm256_set1_ps(plane[p]);
        float* row = out + static_cast<std::size_t>(p) * c_out;
        int co = 0;
        for (; co + 8 <= c_out; co += 8) {
            __m256 acc = _mm256_loadu_ps(row + co);
            acc = _mm256_fmadd_ps(v, _mm256_loadu_ps(wcol + co), acc);
            _mm256_storeu_ps(row + co, acc);
        }
        const float vs = plane[p];
        for (; co < c_out; ++co) row[co] += vs * wcol[co];
    }
}

void axpy_avx2(int n, float a, const float* x, float* y) {
    const __m256 av = _mm256_set1_ps(a);
    int i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256 acc = _mm256_loadu_ps(y + i);
        acc = _mm256_fmadd_ps(av, _mm256_loadu_ps(x + i), acc);
        _mm256_storeu_ps(y + i, acc);
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

void add_inplace_avx2(int n, const float* x, float* y) {
    int i = 0;
    for (; i + 8 <= n; i += 8) {
        _mm256_storeu_ps(y + i, _mm256_add_ps(_mm256_loadu_ps(y + i),
                                              _mm256_loadu_ps(x + i)));
    }
    for (; i < n; ++i) y[i] += x[i];
}

void affine_plane_avx2(int n, float scale, float bias, bool relu6_clamp, float* y) {
    const __m256 sv = _mm256_set1_ps(scale);
    const __m256 bv = _mm256_set1_ps(bias);
    const __m256 zero = _mm256_setzero_ps();
    const __m256 six = _mm256_set1_ps(6.0f);
    int i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256 v = _mm256_fmadd_ps(sv, _mm256_loadu_ps(y + i), bv);
        if (relu6_clamp) v = _mm256_min_ps(_mm256_max_ps(v, zero), six);
        _mm256_storeu_ps(y + i, v);
    }
    for (; i < n; ++i) {
        float v = scale * y[i] + bias;
        if (relu6_clamp) v = v < 0.0f ? 0.0f : (v > 6.0f ? 6.0f : v);
        y[i] = v;
    }
}

float sum_avx2(const float* x, int n) {
    __m256 acc = _mm256_setzero_ps();
    int i = 0;
    for (; i + 8 <= n; i += 8) acc = _mm256_add_ps(acc, _mm256_loadu_ps(x + i));
    float rest = 0.0f;
    for (; i < n; ++i) rest += x[i];
    return hsum8(acc) + rest;
}

} // namespace

const KernelOps& avx2_ops() {
    static const KernelOps ops{
        "avx2",
        dot_avx2,
        pointwise_plane_avx2,
        dw3x3_plane_avx2,
        accum_outer_avx2,
        axpy_avx2,
        add_inplace_avx2,
        affine_plane_avx2,
        sum_avx2,
    };
    return ops;
}

bool avx2_supported() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

} // namespace ptnn::kernels

#endif // x86_64
