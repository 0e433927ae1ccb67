#include "ptnn/planner.hpp"

#include "ptnn/error.hpp"

namespace ptnn {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r)) {
        throw BudgetError("element count overflow");
    }
    return r;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = 0;
    if (__builtin_add_overflow(a, b, &r)) {
        throw BudgetError("element count overflow");
    }
    return r;
}

std::uint64_t shape_elements(const TensorShape& s) {
    return checked_mul(checked_mul(static_cast<std::uint64_t>(s.h),
                                   static_cast<std::uint64_t>(s.w)),
                       static_cast<std::uint64_t>(s.c));
}

} // namespace

std::uint64_t layer_footprint(const TensorShape& in_shape, const ConvParams& params) {
    const TensorShape out = conv_output_shape(in_shape, params);
    return checked_add(shape_elements(in_shape), shape_elements(out));
}

MemoryPlan plan_network(const NetworkSpec& net, const MemoryBudget& budget,
                        ExecMode mode, int parallel_tunnels) {
    validate_network(net);
    validate_budget(budget);
    if (parallel_tunnels < 1) throw SpecError("parallel_tunnels must be >= 1");

    MemoryPlan plan;
    plan.elem_bytes = budget.elem_bytes;
    plan.budget_bytes = budget.budget_bytes;
    plan.resident_elements = static_cast<std::uint64_t>(net.c_final());

    std::uint64_t max_transient = 0;
    for (int ti = 0; ti < static_cast<int>(net.tunnels.size()); ++ti) {
        const TunnelSpec& tunnel = net.tunnels[static_cast<std::size_t>(ti)];
        const std::vector<TensorShape> shapes = tunnel_shapes(net, ti);
        std::size_t si = 0;
        auto record = [&](const std::string& op_id, std::uint64_t elements) {
            plan.per_op.push_back(PlanEntry{op_id, ti, elements,
                                            checked_mul(elements, budget.elem_bytes)});
            if (elements > max_transient) {
                max_transient = elements;
                plan.peak_op = op_id;
                plan.peak_tunnel = ti;
            }
        };
        if (tunnel.stem) {
            record("stem", layer_footprint(shapes[si], *tunnel.stem));
            ++si;
        }
        for (std::size_t b = 0; b < tunnel.bottlenecks.size(); ++b) {
            const BottleneckFootprint fp =
                bottleneck_footprint(tunnel.bottlenecks[b], shapes[si], mode);
            record("bn" + std::to_string(b), fp.total_elements);
            ++si;
        }
    }

    plan.peak_elements = checked_add(checked_mul(max_transient,
                                                 static_cast<std::uint64_t>(parallel_tunnels)),
                                     plan.resident_elements);
    plan.peak_bytes = checked_mul(plan.peak_elements, budget.elem_bytes);
    plan.within_budget = plan.peak_bytes <= budget.budget_bytes;
    return plan;
}

int max_cout_under_budget(const TensorShape& in_shape, int k_h, int k_w, int s,
                          int p_h, int p_w, const MemoryBudget& budget) {
    validate_shape(in_shape);
    validate_budget(budget);
    const std::uint64_t budget_elems = budget.budget_bytes / budget.elem_bytes;
    const std::uint64_t in_elems = shape_elements(in_shape);
    if (budget_elems <= in_elems) {
        throw BudgetError("input alone (" + std::to_string(in_elems) +
                          " elements) exceeds the budget of " +
                          std::to_string(budget_elems) + " elements");
    }
    const std::uint64_t out_plane =
        checked_mul(static_cast<std::uint64_t>(conv_output_dim(in_shape.h, k_h, p_h, s)),
                    static_cast<std::uint64_t>(conv_output_dim(in_shape.w, k_w, p_w, s)));
    const std::uint64_t c = (budget_elems - in_elems) / out_plane;
    if (c < 1) {
        throw BudgetError("no feasible c_out: one output channel needs " +
                          std::to_string(out_plane) + " elements but only " +
                          std::to_string(budget_elems - in_elems) + " remain");
    }
    constexpr std::uint64_t int_max = 2147483647u;
    return static_cast<int>(c > int_max ? int_max : c);
}

} // namespace ptnn
