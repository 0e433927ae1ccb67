#include "ptnn/network.hpp"

#include <string>

#include "ptnn/error.hpp"
#include "ptnn/random.hpp"

namespace ptnn {

std::vector<TensorShape> tunnel_shapes(const NetworkSpec& net, int tunnel_index) {
    const TunnelSpec& tunnel = net.tunnels.at(static_cast<std::size_t>(tunnel_index));
    const std::string where = "tunnel" + std::to_string(tunnel_index);
    std::vector<TensorShape> shapes;
    TensorShape shape = patch_shape(net.input_shape, net.layout);
    shapes.push_back(shape);
    try {
        if (tunnel.stem) {
            shape = conv_output_shape(shape, *tunnel.stem);
            shapes.push_back(shape);
        }
        for (std::size_t b = 0; b < tunnel.bottlenecks.size(); ++b) {
            shape = bottleneck_output_shape(tunnel.bottlenecks[b], shape);
            shapes.push_back(shape);
        }
    } catch (const SpecError& e) {
        throw SpecError(where + ": " + e.what());
    }
    return shapes;
}

int NetworkSpec::c_final() const {
    if (tunnels.empty()) throw SpecError("network has no tunnels");
    return tunnel_shapes(*this, 0).back().c;
}

void validate_network(const NetworkSpec& net) {
    validate_layout(net.input_shape, net.layout);
    const int expected = net.layout.patch_count();
    if (static_cast<int>(net.tunnels.size()) != expected) {
        throw SpecError("tunnel count " + std::to_string(net.tunnels.size()) +
                        " does not match layout patch count " + std::to_string(expected));
    }
    if (net.head.num_classes < 1) throw SpecError("head num_classes must be >= 1");

    int c_final = -1;
    for (int ti = 0; ti < expected; ++ti) {
        if (net.tunnels[static_cast<std::size_t>(ti)].bottlenecks.empty() &&
            !net.tunnels[static_cast<std::size_t>(ti)].stem) {
            throw SpecError("tunnel" + std::to_string(ti) + ": empty op chain");
        }
        const int c = tunnel_shapes(net, ti).back().c;
        if (c_final < 0) c_final = c;
        if (c != c_final) {
            throw SpecError("tunnel" + std::to_string(ti) + " ends with " +
                            std::to_string(c) + " channels but tunnel0 ends with " +
                            std::to_string(c_final));
        }
    }
}

std::size_t NetworkWeights::parameter_count() const {
    std::size_t n = fc.size();
    for (const TunnelWeights& t : tunnels) {
        if (t.stem) n += t.stem->w.size();
        for (const BottleneckWeights& b : t.bottlenecks) n += b.parameter_count();
    }
    return n;
}

void validate_network_weights(const NetworkSpec& net, const NetworkWeights& w) {
    validate_network(net);
    if (w.tunnels.size() != net.tunnels.size()) {
        throw SpecError("weights tunnel count mismatch");
    }
    for (std::size_t ti = 0; ti < net.tunnels.size(); ++ti) {
        const TunnelSpec& ts = net.tunnels[ti];
        const TunnelWeights& tw = w.tunnels[ti];
        const std::string where = "tunnel" + std::to_string(ti);
        if (ts.stem.has_value() != tw.stem.has_value()) {
            throw SpecError(where + ": stem weight presence mismatch");
        }
        if (ts.stem) {
            if (tw.stem->k_h != ts.stem->k_h || tw.stem->k_w != ts.stem->k_w ||
                tw.stem->c_in != ts.stem->c_in || tw.stem->c_out != ts.stem->c_out) {
                throw SpecError(where + ": stem kernel dims mismatch");
            }
        }
        if (tw.bottlenecks.size() != ts.bottlenecks.size()) {
            throw SpecError(where + ": bottleneck weight count mismatch");
        }
        for (std::size_t b = 0; b < ts.bottlenecks.size(); ++b) {
            try {
                validate_bottleneck_weights(ts.bottlenecks[b], tw.bottlenecks[b]);
            } catch (const SpecError& e) {
                throw SpecError(where + "/bn" + std::to_string(b) + ": " + e.what());
            }
        }
    }
    const std::size_t fc_len =
        static_cast<std::size_t>(net.c_final()) * net.head.num_classes;
    if (w.fc.size() != fc_len) {
        throw SpecError("fc weight length " + std::to_string(w.fc.size()) +
                        " does not match c_final*classes = " + std::to_string(fc_len));
    }
}

NetworkWeights zero_weights(const NetworkSpec& net) {
    validate_network(net);
    NetworkWeights w;
    w.tunnels.reserve(net.tunnels.size());
    for (const TunnelSpec& ts : net.tunnels) {
        TunnelWeights tw;
        if (ts.stem) {
            tw.stem = ConvKernel(ts.stem->k_h, ts.stem->k_w, ts.stem->c_in,
                                 ts.stem->c_out, 0.0f);
        }
        for (const BottleneckSpec& bs : ts.bottlenecks) {
            tw.bottlenecks.push_back(BottleneckWeights::zeros(bs));
        }
        w.tunnels.push_back(std::move(tw));
    }
    w.fc.assign(static_cast<std::size_t>(net.c_final()) * net.head.num_classes, 0.0f);
    return w;
}

NetworkWeights random_weights(const NetworkSpec& net, std::uint64_t seed, double stddev) {
    NetworkWeights w = zero_weights(net);
    SplitMix64 rng(seed);
    for (TunnelWeights& tw : w.tunnels) {
        if (tw.stem) rng.fill_normal(tw.stem->w, stddev);
        for (BottleneckWeights& bw : tw.bottlenecks) {
            rng.fill_normal(bw.expand, stddev);
            rng.fill_normal(bw.dw, stddev);
            rng.fill_normal(bw.reduce, stddev);
            // Affine scales stay near 1 so activations neither die nor blow up.
            for (float& s : bw.expand_affine.scale)
                s = static_cast<float>(1.0 + 0.1 * rng.next_normal());
            rng.fill_normal(bw.expand_affine.bias, 0.1);
            for (float& s : bw.dw_affine.scale)
                s = static_cast<float>(1.0 + 0.1 * rng.next_normal());
            rng.fill_normal(bw.dw_affine.bias, 0.1);
        }
    }
    rng.fill_normal(w.fc, stddev);
    return w;
}

} // namespace ptnn
