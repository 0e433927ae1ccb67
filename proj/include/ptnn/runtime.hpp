#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ptnn/arena.hpp"
#include "ptnn/network.hpp"
#include "ptnn/planner.hpp"

namespace ptnn {

// One arena event. tunnel < 0 marks network-level allocations (the head
// accumulator). Replaying alloc/free deltas reproduces high_water_bytes.
struct TraceEvent {
    int tunnel = -1;
    std::string op_id;
    std::uint64_t allocated_bytes = 0;
    std::uint64_t freed_bytes = 0;
    std::uint64_t cursor_after_bytes = 0;
};

struct ExecutionTrace {
    std::vector<TraceEvent> events;
    std::uint64_t high_water_bytes = 0;

    // Max cursor reachable by replaying the events; equals high_water_bytes.
    std::uint64_t replay_high_water() const;
};

// Runs one patch through its tunnel inside the arena: stem conv (if any),
// then every bottleneck in reordered mode, then global average pooling.
// The pooled means are accumulated into `head_accum` (which must already
// live in the arena) and also returned as this tunnel's contribution. On
// return the arena cursor is back at its entry position.
std::vector<float> run_tunnel(const Tensor& patch, const TunnelSpec& tunnel,
                              const TunnelWeights& weights, Arena& arena,
                              std::span<float> head_accum,
                              const kernels::KernelOps* ops = nullptr);

struct ExecutionResult {
    std::vector<float> scores;               // [num_classes]
    std::vector<std::vector<float>> tunnel_features; // per-tunnel pooled means
    ExecutionTrace trace;
};

struct ExecOptions {
    // Tunnel execution order, for reassociation experiments; empty = 0..n-1.
    std::vector<int> tunnel_order;
    const kernels::KernelOps* ops = nullptr;
};

// Segments the image, runs every tunnel sequentially inside one arena sized
// by `budget`, sums the pooled features into the persistent head accumulator,
// and applies the fully connected head to the sum. Aborts with BudgetError on
// arena overflow; partial results are never returned.
ExecutionResult execute_network(const NetworkSpec& net, const NetworkWeights& weights,
                                const Tensor& image, const MemoryBudget& budget,
                                const ExecOptions& options = {});

struct EquivalenceReport {
    double max_rel_dev = 0.0;
    int trials = 0;
    bool pass = false;
};

// Draws seeded random inputs and weights, runs bottleneck_standard and
// bottleneck_reordered on each, and reports the worst relative L-infinity
// deviation (normalized by the standard route's max magnitude).
EquivalenceReport verify_equivalence(const BottleneckSpec& spec, const TensorShape& shape,
                                     int trials, std::uint64_t seed, double tol,
                                     const kernels::KernelOps* ops = nullptr);

} // namespace ptnn
