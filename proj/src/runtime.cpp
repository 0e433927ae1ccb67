#include "ptnn/runtime.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ptnn/error.hpp"
#include "ptnn/random.hpp"

namespace ptnn {

std::uint64_t ExecutionTrace::replay_high_water() const {
    std::uint64_t cursor = 0;
    std::uint64_t peak = 0;
    for (const TraceEvent& e : events) {
        cursor += e.allocated_bytes;
        cursor -= e.freed_bytes;
        if (cursor != e.cursor_after_bytes) {
            throw SpecError("trace replay diverged from recorded cursor");
        }
        if (cursor > peak) peak = cursor;
    }
    return peak;
}

namespace {

// Records arena traffic; the op id is the arena's current context string.
class TraceRecorder final : public ArenaListener {
public:
    TraceRecorder(ExecutionTrace& trace, const Arena& arena)
        : trace_(trace), arena_(arena) {}

    void set_tunnel(int tunnel) { tunnel_ = tunnel; }

    void on_alloc(std::uint64_t bytes, std::uint64_t cursor_after) override {
        trace_.events.push_back(
            TraceEvent{tunnel_, arena_.context(), bytes, 0, cursor_after});
    }
    void on_free(std::uint64_t bytes, std::uint64_t cursor_after) override {
        trace_.events.push_back(
            TraceEvent{tunnel_, arena_.context(), 0, bytes, cursor_after});
    }

private:
    ExecutionTrace& trace_;
    const Arena& arena_;
    int tunnel_ = -1;
};

// Plain conv inside the arena: allocate the output, run the reference
// convolution against the input span, hand the output down over the input.
std::span<float> stem_conv_in_arena(std::span<float> x, const TensorShape& in_shape,
                                    const ConvParams& params, const ConvKernel& kernel,
                                    Arena& arena) {
    const TensorShape out_shape = conv_output_shape(in_shape, params);
    Tensor xt(in_shape, std::vector<float>(x.begin(), x.end()));
    Tensor yt = conv2d_naive(xt, kernel, params);

    std::span<float> y = arena.alloc(static_cast<std::uint64_t>(out_shape.elements()));
    std::copy(yt.data().begin(), yt.data().end(), y.begin());

    Arena::Mark before_x = arena.mark();
    before_x.elements -= x.size() + y.size();
    before_x.blocks -= 2;
    return arena.compact_to(before_x, y);
}

} // namespace

std::vector<float> run_tunnel(const Tensor& patch, const TunnelSpec& tunnel,
                              const TunnelWeights& weights, Arena& arena,
                              std::span<float> head_accum,
                              const kernels::KernelOps* ops) {
    const kernels::KernelOps& k = ops ? *ops : kernels::active_ops();
    const Arena::Mark entry = arena.mark();

    TensorShape shape = patch.shape();
    std::span<float> x = arena.alloc(static_cast<std::uint64_t>(shape.elements()));
    std::copy(patch.data().begin(), patch.data().end(), x.begin());

    std::size_t op_index = 0;
    if (tunnel.stem) {
        arena.set_context(arena.context() + "/stem");
        x = stem_conv_in_arena(x, shape, *tunnel.stem, *weights.stem, arena);
        shape = conv_output_shape(shape, *tunnel.stem);
        ++op_index;
    }
    for (std::size_t b = 0; b < tunnel.bottlenecks.size(); ++b) {
        x = bottleneck_reordered(x, shape, tunnel.bottlenecks[b],
                                 weights.bottlenecks[b], arena, &k);
        shape = bottleneck_output_shape(tunnel.bottlenecks[b], shape);
        ++op_index;
    }

    // Global average pooling straight into the head accumulator.
    if (head_accum.size() != static_cast<std::size_t>(shape.c)) {
        throw SpecError("head accumulator length does not match tunnel c_final");
    }
    const int pixels = shape.h * shape.w;
    std::vector<float> contribution(static_cast<std::size_t>(shape.c), 0.0f);
    const float inv = 1.0f / static_cast<float>(pixels);
    for (int p = 0; p < pixels; ++p) {
        k.axpy(shape.c, inv, x.data() + static_cast<std::size_t>(p) * shape.c,
               contribution.data());
    }
    k.add_inplace(shape.c, contribution.data(), head_accum.data());

    arena.release(entry);
    return contribution;
}

ExecutionResult execute_network(const NetworkSpec& net, const NetworkWeights& weights,
                                const Tensor& image, const MemoryBudget& budget,
                                const ExecOptions& options) {
    validate_network_weights(net, weights);
    if (image.shape() != net.input_shape) {
        throw SpecError("image shape " + std::to_string(image.shape().h) + "x" +
                        std::to_string(image.shape().w) + "x" +
                        std::to_string(image.shape().c) +
                        " does not match network input " +
                        std::to_string(net.input_shape.h) + "x" +
                        std::to_string(net.input_shape.w) + "x" +
                        std::to_string(net.input_shape.c));
    }
    const kernels::KernelOps& k = options.ops ? *options.ops : kernels::active_ops();

    std::vector<int> order(net.tunnels.size());
    std::iota(order.begin(), order.end(), 0);
    if (!options.tunnel_order.empty()) {
        if (options.tunnel_order.size() != net.tunnels.size()) {
            throw SpecError("tunnel_order must list every tunnel exactly once");
        }
        std::vector<int> sorted = options.tunnel_order;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != order) {
            throw SpecError("tunnel_order must be a permutation of 0..n-1");
        }
        order = options.tunnel_order;
    }

    const std::vector<PatchRegion> regions = plan_regions(image.shape(), net.layout);
    const std::vector<Tensor> patches = extract_patches(image, regions);
    const int c_final = net.c_final();

    ExecutionResult result;
    result.tunnel_features.resize(net.tunnels.size());

    Arena arena(budget);
    TraceRecorder recorder(result.trace);
    arena.set_listener(&recorder);

    recorder.set_position(-1, "head_accum");
    arena.set_context("head_accum");
    std::span<float> head_accum = arena.alloc(static_cast<std::uint64_t>(c_final));
    std::fill(head_accum.begin(), head_accum.end(), 0.0f);

    for (int ti : order) {
        recorder.set_position(ti, "tunnel");
        arena.set_context("tunnel" + std::to_string(ti));
        result.tunnel_features[static_cast<std::size_t>(ti)] =
            run_tunnel(patches[static_cast<std::size_t>(ti)],
                       net.tunnels[static_cast<std::size_t>(ti)],
                       weights.tunnels[static_cast<std::size_t>(ti)], arena,
                       head_accum, &k);
    }

    // Fully connected head on the summed feature vector. Scores are the
    // network's host-side output; the accounting model keeps only the
    // accumulator resident (see planner).
    result.scores.assign(static_cast<std::size_t>(net.head.num_classes), 0.0f);
    for (int c = 0; c < c_final; ++c) {
        k.axpy(net.head.num_classes, head_accum[static_cast<std::size_t>(c)],
               weights.fc.data() + static_cast<std::size_t>(c) * net.head.num_classes,
               result.scores.data());
    }

    result.trace.high_water_bytes = arena.high_water_bytes();
    return result;
}

EquivalenceReport verify_equivalence(const BottleneckSpec& spec, const TensorShape& shape,
                                     int trials, std::uint64_t seed, double tol,
                                     const kernels::KernelOps* ops) {
    validate_bottleneck_spec(spec);
    bottleneck_output_shape(spec, shape);
    if (trials < 1) throw SpecError("trials must be >= 1");
    if (tol < 0.0) throw SpecError("tolerance must be >= 0");

    SplitMix64 rng(seed);
    EquivalenceReport report;
    report.trials = trials;
    for (int trial = 0; trial < trials; ++trial) {
        Tensor x(shape);
        rng.fill_normal(x.data());
        BottleneckWeights w = BottleneckWeights::zeros(spec);
        rng.fill_normal(w.expand);
        rng.fill_normal(w.dw);
        rng.fill_normal(w.reduce);
        if (spec.affine) {
            for (float& s : w.expand_affine.scale)
                s = static_cast<float>(1.0 + 0.1 * rng.next_normal());
            rng.fill_normal(w.expand_affine.bias, 0.1);
            for (float& s : w.dw_affine.scale)
                s = static_cast<float>(1.0 + 0.1 * rng.next_normal());
            rng.fill_normal(w.dw_affine.bias, 0.1);
        }

        const Tensor ref = bottleneck_standard(x, spec, w);
        const Tensor got = bottleneck_reordered_tensor(x, spec, w, ops);

        float ref_max = 0.0f;
        float dev_max = 0.0f;
        const auto rd = ref.data();
        const auto gd = got.data();
        for (std::size_t i = 0; i < rd.size(); ++i) {
            ref_max = std::max(ref_max, std::fabs(rd[i]));
            dev_max = std::max(dev_max, std::fabs(rd[i] - gd[i]));
        }
        const double rel = ref_max > 0.0f ? static_cast<double>(dev_max) / ref_max
                                          : static_cast<double>(dev_max);
        report.max_rel_dev = std::max(report.max_rel_dev, rel);
    }
    report.pass = report.max_rel_dev <= tol;
    return report;
}

} // namespace ptnn
