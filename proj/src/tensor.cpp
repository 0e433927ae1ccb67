#include "ptnn/tensor.hpp"

#include <string>

#include "ptnn/error.hpp"

namespace ptnn {

void validate_shape(const TensorShape& s) {
    if (s.h < 1 || s.w < 1 || s.c < 1) {
        throw SpecError("invalid tensor shape " + std::to_string(s.h) + "x" +
                        std::to_string(s.w) + "x" + std::to_string(s.c) +
                        ": all dims must be >= 1");
    }
}

Tensor::Tensor(TensorShape shape, float fill, ElemKind elem)
    : shape_(shape), elem_(elem) {
    validate_shape(shape);
    data_.assign(static_cast<std::size_t>(shape.elements()), fill);
}

Tensor::Tensor(TensorShape shape, std::vector<float> data, ElemKind elem)
    : shape_(shape), elem_(elem), data_(std::move(data)) {
    validate_shape(shape);
    if (data_.size() != static_cast<std::size_t>(shape.elements())) {
        throw SpecError("tensor data length " + std::to_string(data_.size()) +
                        " does not match shape elements " +
                        std::to_string(shape.elements()));
    }
}

int conv_output_dim(int d, int k, int p, int s) {
    if (s < 1) throw SpecError("stride must be >= 1, got " + std::to_string(s));
    if (k < 1) throw SpecError("kernel extent must be >= 1, got " + std::to_string(k));
    if (p < 0) throw SpecError("padding must be >= 0, got " + std::to_string(p));
    const int num = d - k + 2 * p;
    if (num < 0) {
        throw SpecError("non-positive convolution output dim: d=" + std::to_string(d) +
                        " k=" + std::to_string(k) + " p=" + std::to_string(p) +
                        " s=" + std::to_string(s));
    }
    return num / s + 1;
}

TensorShape conv_output_shape(const TensorShape& in, const ConvParams& params) {
    validate_shape(in);
    if (in.c != params.c_in) {
        throw SpecError("channel mismatch: input has " + std::to_string(in.c) +
                        " channels, conv expects " + std::to_string(params.c_in));
    }
    if (params.c_out < 1) throw SpecError("c_out must be >= 1");
    return TensorShape{conv_output_dim(in.h, params.k_h, params.p_h, params.s),
                       conv_output_dim(in.w, params.k_w, params.p_w, params.s),
                       params.c_out};
}

Tensor conv2d_naive(const Tensor& x, const ConvKernel& kernel, const ConvParams& params) {
    if (kernel.k_h != params.k_h || kernel.k_w != params.k_w ||
        kernel.c_in != params.c_in || kernel.c_out != params.c_out) {
        throw SpecError("kernel array dims do not match conv params");
    }
    const TensorShape in = x.shape();
    const TensorShape out_shape = conv_output_shape(in, params);
    Tensor out(out_shape, 0.0f, x.elem());

    // Six nested loops, zero-fill padding realized by skipping out-of-bounds
    // taps. This exact accumulation order (kh, kw, ci ascending) is part of
    // the contract; pointwise_conv must reproduce it.
    for (int oh = 0; oh < out_shape.h; ++oh) {
        for (int ow = 0; ow < out_shape.w; ++ow) {
            for (int co = 0; co < params.c_out; ++co) {
                float acc = 0.0f;
                for (int kh = 0; kh < params.k_h; ++kh) {
                    const int ih = oh * params.s - params.p_h + kh;
                    if (ih < 0 || ih >= in.h) continue;
                    for (int kw = 0; kw < params.k_w; ++kw) {
                        const int iw = ow * params.s - params.p_w + kw;
                        if (iw < 0 || iw >= in.w) continue;
                        for (int ci = 0; ci < params.c_in; ++ci) {
                            acc += x.at(ih, iw, ci) * kernel.at(kh, kw, ci, co);
                        }
                    }
                }
                out.at(oh, ow, co) = acc;
            }
        }
    }
    return out;
}

Tensor pointwise_conv(const Tensor& x, const PointwiseKernel& kernel) {
    const TensorShape in = x.shape();
    if (in.c != kernel.c_in) {
        throw SpecError("channel mismatch: input has " + std::to_string(in.c) +
                        " channels, pointwise kernel expects " + std::to_string(kernel.c_in));
    }
    Tensor out(TensorShape{in.h, in.w, kernel.c_out}, 0.0f, x.elem());
    for (int i = 0; i < in.h; ++i) {
        for (int j = 0; j < in.w; ++j) {
            for (int co = 0; co < kernel.c_out; ++co) {
                float acc = 0.0f;
                for (int ci = 0; ci < kernel.c_in; ++ci) {
                    acc += x.at(i, j, ci) * kernel.at(ci, co);
                }
                out.at(i, j, co) = acc;
            }
        }
    }
    return out;
}

Tensor depthwise_conv(const Tensor& x, const DepthwiseKernel& kernel,
                      int s, int p_h, int p_w) {
    const TensorShape in = x.shape();
    if (in.c != kernel.c) {
        throw SpecError("channel mismatch: input has " + std::to_string(in.c) +
                        " channels, depthwise kernel expects " + std::to_string(kernel.c));
    }
    const TensorShape out_shape{conv_output_dim(in.h, kernel.k_h, p_h, s),
                                conv_output_dim(in.w, kernel.k_w, p_w, s), in.c};
    Tensor out(out_shape, 0.0f, x.elem());
    for (int oh = 0; oh < out_shape.h; ++oh) {
        for (int ow = 0; ow < out_shape.w; ++ow) {
            for (int ch = 0; ch < in.c; ++ch) {
                float acc = 0.0f;
                for (int kh = 0; kh < kernel.k_h; ++kh) {
                    const int ih = oh * s - p_h + kh;
                    if (ih < 0 || ih >= in.h) continue;
                    for (int kw = 0; kw < kernel.k_w; ++kw) {
                        const int iw = ow * s - p_w + kw;
                        if (iw < 0 || iw >= in.w) continue;
                        acc += x.at(ih, iw, ch) * kernel.at(ch, kh, kw);
                    }
                }
                out.at(oh, ow, ch) = acc;
            }
        }
    }
    return out;
}

Tensor channel_affine_relu6(const Tensor& x, std::span<const float> scale,
                            std::span<const float> bias, bool apply_relu6) {
    const TensorShape in = x.shape();
    if (scale.size() != static_cast<std::size_t>(in.c) ||
        bias.size() != static_cast<std::size_t>(in.c)) {
        throw SpecError("scale/bias length mismatch: expected " + std::to_string(in.c) +
                        ", got " + std::to_string(scale.size()) + "/" +
                        std::to_string(bias.size()));
    }
    Tensor out(in, 0.0f, x.elem());
    for (int i = 0; i < in.h; ++i) {
        for (int j = 0; j < in.w; ++j) {
            for (int ch = 0; ch < in.c; ++ch) {
                const float v = scale[ch] * x.at(i, j, ch) + bias[ch];
                out.at(i, j, ch) = apply_relu6 ? relu6(v) : v;
            }
        }
    }
    return out;
}

} // namespace ptnn
