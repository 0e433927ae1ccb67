#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ptnn/budget.hpp"

namespace ptnn {

// Observer for arena traffic; offsets and sizes are in accounting bytes.
class ArenaListener {
public:
    virtual ~ArenaListener() = default;
    virtual void on_alloc(std::uint64_t bytes, std::uint64_t cursor_after) = 0;
    virtual void on_free(std::uint64_t bytes, std::uint64_t cursor_after) = 0;
};

// Bump allocator with stack discipline: only the most recent live block may
// be freed. The cursor is tracked in accounting bytes (elements * elem_bytes)
// against the device budget while the backing store holds floats, so the
// byte accounting models the device and the arithmetic stays at full
// precision. high_water is the maximum cursor ever reached.
class Arena {
public:
    explicit Arena(const MemoryBudget& budget);

    // Throws BudgetError (naming the current context) when the allocation
    // would push the cursor past capacity; the arena is left unchanged.
    std::span<float> alloc(std::uint64_t elements);

    // Frees the most recent live block; `block` must be exactly that block.
    void free(std::span<float> block);

    struct Mark { std::uint64_t elements = 0; std::size_t blocks = 0; };
    Mark mark() const { return Mark{cursor_elements_, blocks_.size()}; }

    // Pops every block allocated after `m`.
    void release(Mark m);

    // Pops the top block and everything back to `m`, then re-allocates the
    // top block's contents at `m`: the handover of an op's output over its
    // freed inputs. Returns the relocated block. Cursor only decreases.
    std::span<float> compact_to(Mark m, std::span<float> top);

    std::uint64_t cursor_bytes() const { return cursor_elements_ * elem_bytes_; }
    std::uint64_t cursor_elements() const { return cursor_elements_; }
    std::uint64_t high_water_bytes() const { return high_water_elements_ * elem_bytes_; }
    std::uint64_t high_water_elements() const { return high_water_elements_; }
    std::uint64_t capacity_bytes() const { return capacity_bytes_; }
    std::uint32_t elem_bytes() const { return elem_bytes_; }

    // Label used in overflow errors and listener context, e.g. "tunnel0/bn2".
    void set_context(std::string context) { context_ = std::move(context); }
    const std::string& context() const { return context_; }

    void set_listener(ArenaListener* listener) { listener_ = listener; }

private:
    struct Block { std::uint64_t offset; std::uint64_t elements; };

    std::uint64_t capacity_bytes_ = 0;
    std::uint32_t elem_bytes_ = 4;
    std::uint64_t cursor_elements_ = 0;
    std::uint64_t high_water_elements_ = 0;
    std::vector<float> storage_;
    std::vector<Block> blocks_;
    std::string context_;
    ArenaListener* listener_ = nullptr;
};

Arena make_arena(const MemoryBudget& budget);

} // namespace ptnn
