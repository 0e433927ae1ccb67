#include "ptnn/arena.hpp"

#include <cstring>

#include "ptnn/error.hpp"

namespace ptnn {

void validate_budget(const MemoryBudget& b) {
    if (b.budget_bytes < 1) throw SpecError("budget_bytes must be >= 1");
    if (b.elem_bytes != 1 && b.elem_bytes != 2 && b.elem_bytes != 4) {
        throw SpecError("elem_bytes must be 1, 2, or 4, got " +
                        std::to_string(b.elem_bytes));
    }
}

Arena::Arena(const MemoryBudget& budget)
    : capacity_bytes_(budget.budget_bytes), elem_bytes_(budget.elem_bytes) {
    validate_budget(budget);
    // Backing floats for every accountable element.
    storage_.resize(static_cast<std::size_t>(capacity_bytes_ / elem_bytes_));
}

Arena make_arena(const MemoryBudget& budget) { return Arena(budget); }

std::span<float> Arena::alloc(std::uint64_t elements) {
    const std::uint64_t new_cursor = cursor_elements_ + elements;
    if (new_cursor * elem_bytes_ > capacity_bytes_) {
        throw BudgetError((context_.empty() ? std::string("arena") : context_) +
                          ": arena overflow: need " + std::to_string(new_cursor * elem_bytes_) +
                          " bytes (cursor " + std::to_string(cursor_bytes()) + " + " +
                          std::to_string(elements * elem_bytes_) + "), capacity " +
                          std::to_string(capacity_bytes_));
    }
    float* base = storage_.data() + cursor_elements_;
    blocks_.push_back(Block{cursor_elements_, elements});
    cursor_elements_ = new_cursor;
    if (cursor_elements_ > high_water_elements_) high_water_elements_ = cursor_elements_;
    if (listener_) listener_->on_alloc(elements * elem_bytes_, cursor_bytes());
    return {base, static_cast<std::size_t>(elements)};
}

void Arena::free(std::span<float> block) {
    if (blocks_.empty()) throw SpecError("arena free with no live blocks");
    const Block& top = blocks_.back();
    if (block.data() != storage_.data() + top.offset ||
        block.size() != static_cast<std::size_t>(top.elements)) {
        throw SpecError("arena stack discipline violated: freed block is not the "
                        "most recent live allocation");
    }
    cursor_elements_ = top.offset;
    blocks_.pop_back();
    if (listener_) listener_->on_free(block.size() * elem_bytes_, cursor_bytes());
}

void Arena::release(Mark m) {
    if (m.blocks > blocks_.size() || m.elements > cursor_elements_) {
        throw SpecError("arena release past the current cursor");
    }
    while (blocks_.size() > m.blocks) {
        const Block top = blocks_.back();
        blocks_.pop_back();
        cursor_elements_ = top.offset;
        if (listener_) listener_->on_free(top.elements * elem_bytes_, cursor_bytes());
    }
    if (cursor_elements_ != m.elements) {
        throw SpecError("arena release mark does not sit on a block boundary");
    }
}

std::span<float> Arena::compact_to(Mark m, std::span<float> top) {
    if (blocks_.empty()) throw SpecError("arena compact with no live blocks");
    const Block& t = blocks_.back();
    if (top.data() != storage_.data() + t.offset ||
        top.size() != static_cast<std::size_t>(t.elements)) {
        throw SpecError("arena compact: block is not the top allocation");
    }
    const std::uint64_t elements = t.elements;
    free(top);
    release(m);
    float* dst = storage_.data() + m.elements;
    std::memmove(dst, top.data(), top.size() * sizeof(float));
    // Re-register at the new base; cursor never rises above its prior value.
    blocks_.push_back(Block{m.elements, elements});
    cursor_elements_ = m.elements + elements;
    if (listener_) listener_->on_alloc(elements * elem_bytes_, cursor_bytes());
    return {dst, top.size()};
}

} // namespace ptnn
