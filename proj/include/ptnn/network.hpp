#pragma once

#include <optional>
#include <vector>

#include "ptnn/bottleneck.hpp"
#include "ptnn/segmentation.hpp"
#include "ptnn/tensor.hpp"

namespace ptnn {

// One patch tunnel: an optional stem convolution followed by bottleneck
// blocks. Each tunnel owns independent weights.
struct TunnelSpec {
    std::optional<ConvParams> stem;
    std::vector<BottleneckSpec> bottlenecks;
};

struct HeadSpec {
    int num_classes = 1;
};

// Whole-network description: the image is segmented per `layout`, each patch
// runs through its own tunnel, the pooled tunnel features are summed, and one
// shared fully connected head maps the sum to class scores.
struct NetworkSpec {
    TensorShape input_shape;
    PatchLayout layout;
    std::vector<TunnelSpec> tunnels; // k (+1 central) entries
    HeadSpec head;

    // Channel width every tunnel must end with (validated equal across
    // tunnels).
    int c_final() const;
};

struct TunnelWeights {
    std::optional<ConvKernel> stem;
    std::vector<BottleneckWeights> bottlenecks;
};

struct NetworkWeights {
    std::vector<TunnelWeights> tunnels;
    // fc[c][cls], row-major, maps the summed feature vector to class scores.
    std::vector<float> fc;

    std::size_t parameter_count() const;
};

// Shape-checks the whole network: layout applies to the input, every tunnel's
// op chain type-checks patch-shape through to its final activation, and all
// tunnels end on the same channel width. Throws SpecError with the failing
// tunnel/op named.
void validate_network(const NetworkSpec& net);

// Activation shapes along one tunnel, starting at the patch shape; one entry
// per op boundary (size = op count + 1).
std::vector<TensorShape> tunnel_shapes(const NetworkSpec& net, int tunnel_index);

void validate_network_weights(const NetworkSpec& net, const NetworkWeights& w);

NetworkWeights zero_weights(const NetworkSpec& net);

// Deterministic weights for tests and toy models (splitmix64-seeded normals).
NetworkWeights random_weights(const NetworkSpec& net, std::uint64_t seed,
                              double stddev = 0.5);

} // namespace ptnn
