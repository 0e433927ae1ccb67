#include "ptnn/kernels.hpp"

#include <cstdlib>

namespace ptnn::kernels {

std::vector<const KernelOps*> available_ops() {
    std::vector<const KernelOps*> out;
    out.push_back(&scalar_ops());
#if defined(__x86_64__) || defined(_M_X64)
    if (avx2_supported()) out.push_back(&avx2_ops());
#endif
#if defined(__ARM_NEON) || defined(__aarch64__)
    out.push_back(&neon_ops());
#endif
    return out;
}

const KernelOps* find_ops(std::string_view name) {
    for (const KernelOps* ops : available_ops()) {
        if (name == ops->name) return ops;
    }
    return nullptr;
}

const KernelOps& active_ops() {
    static const KernelOps* selected = [] {
        if (const char* forced = std::getenv("PTNN_ISA")) {
            if (const KernelOps* ops = find_ops(forced)) return ops;
        }
        const auto all = available_ops();
        return all.back(); // widest supported table
    }();
    return *selected;
}

} // namespace ptnn::kernels
