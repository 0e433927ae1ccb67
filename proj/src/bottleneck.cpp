#include "ptnn/bottleneck.hpp"

#include <algorithm>
#include <string>

#include "ptnn/error.hpp"

namespace ptnn {

void validate_bottleneck_spec(const BottleneckSpec& spec) {
    if (spec.c_in < 1) throw SpecError("bottleneck c_in must be >= 1");
    if (spec.t < 1) throw SpecError("bottleneck expansion ratio t must be >= 1");
    if (spec.stride != 1 && spec.stride != 2) {
        throw SpecError("bottleneck depth-wise stride must be 1 or 2, got " +
                        std::to_string(spec.stride));
    }
    if (spec.c_out < 1) throw SpecError("bottleneck c_out must be >= 1");
}

TensorShape bottleneck_output_shape(const BottleneckSpec& spec, const TensorShape& in) {
    validate_bottleneck_spec(spec);
    validate_shape(in);
    if (in.c != spec.c_in) {
        throw SpecError("bottleneck channel mismatch: input has " + std::to_string(in.c) +
                        ", spec expects " + std::to_string(spec.c_in));
    }
    const TensorShape out{
        conv_output_dim(in.h, BottleneckSpec::dw_kernel, BottleneckSpec::dw_padding, spec.stride),
        conv_output_dim(in.w, BottleneckSpec::dw_kernel, BottleneckSpec::dw_padding, spec.stride),
        spec.c_out};
    if (spec.residual && out != in) {
        throw SpecError("residual requested but output " + std::to_string(out.h) + "x" +
                        std::to_string(out.w) + "x" + std::to_string(out.c) +
                        " does not match input " + std::to_string(in.h) + "x" +
                        std::to_string(in.w) + "x" + std::to_string(in.c));
    }
    return out;
}

BottleneckWeights BottleneckWeights::zeros(const BottleneckSpec& spec) {
    validate_bottleneck_spec(spec);
    const std::size_t e = static_cast<std::size_t>(spec.expanded());
    BottleneckWeights w;
    w.expand.assign(e * spec.c_in, 0.0f);
    w.dw.assign(e * 9, 0.0f);
    w.reduce.assign(static_cast<std::size_t>(spec.c_out) * e, 0.0f);
    if (spec.affine) {
        w.expand_affine.scale.assign(e, 1.0f);
        w.expand_affine.bias.assign(e, 0.0f);
        w.dw_affine.scale.assign(e, 1.0f);
        w.dw_affine.bias.assign(e, 0.0f);
    }
    return w;
}

std::size_t BottleneckWeights::parameter_count() const {
    return expand.size() + dw.size() + reduce.size() + expand_affine.scale.size() +
           expand_affine.bias.size() + dw_affine.scale.size() + dw_affine.bias.size();
}

void validate_bottleneck_weights(const BottleneckSpec& spec, const BottleneckWeights& w) {
    const std::size_t e = static_cast<std::size_t>(spec.expanded());
    if (w.expand.size() != e * spec.c_in) {
        throw SpecError("expand weights size mismatch");
    }
    if (w.dw.size() != e * 9) throw SpecError("depth-wise weights size mismatch");
    if (w.reduce.size() != static_cast<std::size_t>(spec.c_out) * e) {
        throw SpecError("reduce weights size mismatch");
    }
    const std::size_t affine_len = spec.affine ? e : 0;
    if (w.expand_affine.scale.size() != affine_len ||
        w.expand_affine.bias.size() != affine_len ||
        w.dw_affine.scale.size() != affine_len ||
        w.dw_affine.bias.size() != affine_len) {
        throw SpecError("stage affine parameter size mismatch");
    }
}

Tensor bottleneck_standard(const Tensor& x, const BottleneckSpec& spec,
                           const BottleneckWeights& w) {
    validate_bottleneck_weights(spec, w);
    const TensorShape in = x.shape();
    bottleneck_output_shape(spec, in); // validates channels and residual legality
    const int e = spec.expanded();

    // Expand: 1x1 conv to t*c_in channels. Weight rows are per output channel
    // [n][ci]; pointwise_conv wants [ci][co].
    PointwiseKernel expand_k(spec.c_in, e);
    for (int n = 0; n < e; ++n)
        for (int ci = 0; ci < spec.c_in; ++ci)
            expand_k.at(ci, n) = w.expand[static_cast<std::size_t>(n) * spec.c_in + ci];
    Tensor y = pointwise_conv(x, expand_k);
    if (spec.affine) {
        y = channel_affine_relu6(y, w.expand_affine.scale, w.expand_affine.bias, true);
    }

    // Depth-wise 3x3.
    DepthwiseKernel dw_k(e, 3, 3);
    std::copy(w.dw.begin(), w.dw.end(), dw_k.w.begin());
    y = depthwise_conv(y, dw_k, spec.stride, BottleneckSpec::dw_padding,
                       BottleneckSpec::dw_padding);
    if (spec.affine) {
        y = channel_affine_relu6(y, w.dw_affine.scale, w.dw_affine.bias, true);
    }

    // Reduce: 1x1 conv to c_out, always linear.
    PointwiseKernel reduce_k(e, spec.c_out);
    for (int co = 0; co < spec.c_out; ++co)
        for (int n = 0; n < e; ++n)
            reduce_k.at(n, co) = w.reduce[static_cast<std::size_t>(co) * e + n];
    y = pointwise_conv(y, reduce_k);

    if (spec.residual) {
        for (int i = 0; i < in.h; ++i)
            for (int j = 0; j < in.w; ++j)
                for (int ch = 0; ch < in.c; ++ch) y.at(i, j, ch) += x.at(i, j, ch);
    }
    return y;
}

std::span<float> bottleneck_reordered(std::span<float> x, const TensorShape& in_shape,
                                      const BottleneckSpec& spec,
                                      const BottleneckWeights& w, Arena& arena,
                                      const kernels::KernelOps* ops) {
    validate_bottleneck_weights(spec, w);
    const TensorShape out_shape = bottleneck_output_shape(spec, in_shape);
    if (x.size() != static_cast<std::size_t>(in_shape.elements())) {
        throw SpecError("bottleneck input span does not match its shape");
    }
    const kernels::KernelOps& k = ops ? *ops : kernels::active_ops();

    const int e = spec.expanded();
    const int in_pixels = in_shape.h * in_shape.w;
    const int out_pixels = out_shape.h * out_shape.w;
    const std::uint64_t out_elements = static_cast<std::uint64_t>(out_shape.elements());

    const Arena::Mark base = arena.mark(); // x is the top block at this point
    std::span<float> y = arena.alloc(out_elements);
    std::fill(y.begin(), y.end(), 0.0f);

    std::vector<float> wcol(static_cast<std::size_t>(spec.c_out));
    for (int n = 0; n < e; ++n) {
        // Expand: single output channel, same spatial extent as the input.
        std::span<float> yp = arena.alloc(static_cast<std::uint64_t>(in_pixels));
        k.pointwise_plane(x.data(), in_pixels, in_shape.c,
                          w.expand.data() + static_cast<std::size_t>(n) * spec.c_in,
                          yp.data());
        if (spec.affine) {
            k.affine_plane(in_pixels, w.expand_affine.scale[n], w.expand_affine.bias[n],
                           true, yp.data());
        }

        // Depth-wise on the single-channel plane.
        std::span<float> yd = arena.alloc(static_cast<std::uint64_t>(out_pixels));
        k.dw3x3_plane(yp.data(), in_shape.h, in_shape.w,
                      w.dw.data() + static_cast<std::size_t>(n) * 9, spec.stride,
                      BottleneckSpec::dw_padding, yd.data(), out_shape.h, out_shape.w);
        if (spec.affine) {
            k.affine_plane(out_pixels, w.dw_affine.scale[n], w.dw_affine.bias[n],
                           true, yd.data());
        }

        // Accumulate this channel's reduction contribution, then drop both
        // intermediates before the next cycle.
        for (int co = 0; co < spec.c_out; ++co) {
            wcol[co] = w.reduce[static_cast<std::size_t>(co) * e + n];
        }
        k.accum_outer(yd.data(), out_pixels, wcol.data(), spec.c_out, y.data());

        arena.free(yd);
        arena.free(yp);
    }

    if (spec.residual) {
        k.add_inplace(static_cast<int>(out_elements), x.data(), y.data());
    }

    // Hand the output down over the input's slot.
    Arena::Mark before_x = base;
    before_x.elements -= x.size();
    before_x.blocks -= 1;
    return arena.compact_to(before_x, y);
}

Tensor bottleneck_reordered_tensor(const Tensor& x, const BottleneckSpec& spec,
                                   const BottleneckWeights& w,
                                   const kernels::KernelOps* ops) {
    const TensorShape out_shape = bottleneck_output_shape(spec, x.shape());
    const BottleneckFootprint fp = bottleneck_footprint(spec, x.shape(), ExecMode::reordered);
    Arena arena(MemoryBudget{fp.total_elements * 4, 4});
    std::span<float> xs = arena.alloc(static_cast<std::uint64_t>(x.shape().elements()));
    std::copy(x.data().begin(), x.data().end(), xs.begin());
    std::span<float> ys = bottleneck_reordered(xs, x.shape(), spec, w, arena, ops);
    return Tensor(out_shape, std::vector<float>(ys.begin(), ys.end()), x.elem());
}

BottleneckFootprint bottleneck_footprint(const BottleneckSpec& spec,
                                         const TensorShape& in_shape, ExecMode mode) {
    validate_bottleneck_spec(spec);
    validate_shape(in_shape);
    if (in_shape.c != spec.c_in) {
        throw SpecError("bottleneck channel mismatch in footprint");
    }
    BottleneckFootprint fp;
    fp.h_i = in_shape.h;
    fp.w_i = in_shape.w;
    fp.c_i = in_shape.c;
    fp.h_o_p = in_shape.h; // 1x1 expansion keeps the spatial extent
    fp.w_o_p = in_shape.w;
    fp.h_o_d = conv_output_dim(in_shape.h, BottleneckSpec::dw_kernel,
                               BottleneckSpec::dw_padding, spec.stride);
    fp.w_o_d = conv_output_dim(in_shape.w, BottleneckSpec::dw_kernel,
                               BottleneckSpec::dw_padding, spec.stride);
    fp.h_o = fp.h_o_d;
    fp.w_o = fp.w_o_d;
    fp.c_o = spec.c_out;

    const std::uint64_t in_elems = static_cast<std::uint64_t>(fp.h_i) * fp.w_i * fp.c_i;
    const std::uint64_t out_elems = static_cast<std::uint64_t>(fp.h_o) * fp.w_o * fp.c_o;
    const std::uint64_t pw_plane = static_cast<std::uint64_t>(fp.h_o_p) * fp.w_o_p;
    const std::uint64_t dw_plane = static_cast<std::uint64_t>(fp.h_o_d) * fp.w_o_d;

    if (mode == ExecMode::reordered) {
        // Expand and depth-wise outputs stay one channel each, so the total
        // never depends on t.
        fp.total_elements = in_elems + pw_plane + dw_plane + out_elems;
    } else {
        const std::uint64_t e = static_cast<std::uint64_t>(spec.expanded());
        const std::uint64_t expand_stage = in_elems + pw_plane * e;
        const std::uint64_t dw_stage = pw_plane * e + dw_plane * e;
        const std::uint64_t reduce_stage = dw_plane * e + out_elems;
        fp.total_elements = std::max({expand_stage, dw_stage, reduce_stage});
    }
    return fp;
}

} // namespace ptnn
