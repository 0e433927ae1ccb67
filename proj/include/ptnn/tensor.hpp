#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace ptnn {

// Accounting element kind. Arithmetic is always float; byte8 only changes how
// many bytes an element is charged in memory plans.
enum class ElemKind : std::uint8_t { f32, byte8 };

inline std::uint32_t elem_kind_bytes(ElemKind k) { return k == ElemKind::f32 ? 4u : 1u; }

struct TensorShape {
    int h = 0;
    int w = 0;
    int c = 0;

    std::int64_t elements() const {
        return static_cast<std::int64_t>(h) * w * c;
    }
    bool operator==(const TensorShape&) const = default;
};

// Throws SpecError unless h, w, c >= 1.
void validate_shape(const TensorShape& s);

// Dense rank-3 activation tensor, row-major h -> w -> c (channels innermost).
class Tensor {
public:
    Tensor() = default;
    Tensor(TensorShape shape, float fill = 0.0f, ElemKind elem = ElemKind::f32);
    Tensor(TensorShape shape, std::vector<float> data, ElemKind elem = ElemKind::f32);

    const TensorShape& shape() const { return shape_; }
    ElemKind elem() const { return elem_; }

    float& at(int i, int j, int ch) {
        return data_[(static_cast<std::size_t>(i) * shape_.w + j) * shape_.c + ch];
    }
    float at(int i, int j, int ch) const {
        return data_[(static_cast<std::size_t>(i) * shape_.w + j) * shape_.c + ch];
    }

    std::span<float> data() { return data_; }
    std::span<const float> data() const { return data_; }

private:
    TensorShape shape_{};
    ElemKind elem_ = ElemKind::f32;
    std::vector<float> data_;
};

// Kernel geometry for a standard convolution. A single stride applies to both
// spatial axes; padding is zero-fill.
struct ConvParams {
    int k_h = 1;
    int k_w = 1;
    int s = 1;
    int p_h = 0;
    int p_w = 0;
    int c_in = 1;
    int c_out = 1;
};

// floor((d - k + 2p) / s) + 1. Throws SpecError when the result is < 1.
int conv_output_dim(int d, int k, int p, int s);

// Output shape for `params` applied to `in`; checks channel match and
// positive output dims.
TensorShape conv_output_shape(const TensorShape& in, const ConvParams& params);

// Dense 4-axis weight array [k_h][k_w][c_in][c_out].
struct ConvKernel {
    int k_h = 1;
    int k_w = 1;
    int c_in = 1;
    int c_out = 1;
    std::vector<float> w;

    ConvKernel() = default;
    ConvKernel(int kh, int kw, int ci, int co, float fill = 0.0f)
        : k_h(kh), k_w(kw), c_in(ci), c_out(co),
          w(static_cast<std::size_t>(kh) * kw * ci * co, fill) {}

    float& at(int kh, int kw, int ci, int co) {
        return w[((static_cast<std::size_t>(kh) * k_w + kw) * c_in + ci) * c_out + co];
    }
    float at(int kh, int kw, int ci, int co) const {
        return w[((static_cast<std::size_t>(kh) * k_w + kw) * c_in + ci) * c_out + co];
    }
};

// Per-channel spatial filters [c][k_h][k_w]; no cross-channel mixing.
struct DepthwiseKernel {
    int c = 1;
    int k_h = 1;
    int k_w = 1;
    std::vector<float> w;

    DepthwiseKernel() = default;
    DepthwiseKernel(int ch, int kh, int kw, float fill = 0.0f)
        : c(ch), k_h(kh), k_w(kw), w(static_cast<std::size_t>(ch) * kh * kw, fill) {}

    float& at(int ch, int kh, int kw) {
        return w[(static_cast<std::size_t>(ch) * k_h + kh) * k_w + kw];
    }
    float at(int ch, int kh, int kw) const {
        return w[(static_cast<std::size_t>(ch) * k_h + kh) * k_w + kw];
    }
};

// Channel-mixing matrix [c_in][c_out] for 1x1 convolution.
struct PointwiseKernel {
    int c_in = 1;
    int c_out = 1;
    std::vector<float> w;

    PointwiseKernel() = default;
    PointwiseKernel(int ci, int co, float fill = 0.0f)
        : c_in(ci), c_out(co), w(static_cast<std::size_t>(ci) * co, fill) {}

    float& at(int ci, int co) { return w[static_cast<std::size_t>(ci) * c_out + co]; }
    float at(int ci, int co) const { return w[static_cast<std::size_t>(ci) * c_out + co]; }
};

// Reference kernels. These are the correctness oracle for every optimized
// path in the project: direct loops, fixed accumulation order (kh, kw, ci
// ascending), no algorithmic shortcuts. Keep them boring.

Tensor conv2d_naive(const Tensor& x, const ConvKernel& kernel, const ConvParams& params);

// Equals conv2d_naive with a 1x1 kernel, s=1, p=0, including accumulation order.
Tensor pointwise_conv(const Tensor& x, const PointwiseKernel& kernel);

Tensor depthwise_conv(const Tensor& x, const DepthwiseKernel& kernel,
                      int s, int p_h, int p_w);

// out[i,j,ch] = scale[ch]*x[i,j,ch] + bias[ch], clamped to [0,6] when
// apply_relu6 is set.
Tensor channel_affine_relu6(const Tensor& x, std::span<const float> scale,
                            std::span<const float> bias, bool apply_relu6);

inline float relu6(float v) { return v < 0.0f ? 0.0f : (v > 6.0f ? 6.0f : v); }

} // namespace ptnn
