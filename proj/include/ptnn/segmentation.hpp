#pragma once

#include <vector>

#include "ptnn/tensor.hpp"

namespace ptnn {

// Grid segmentation of an input image into k overlapping patches plus an
// optional central patch. k must be a perfect square; every patch has extent
// (h/sqrt(k) + m_h) x (w/sqrt(k) + m_w).
struct PatchLayout {
    int k = 1;
    int m_h = 0;
    int m_w = 0;
    bool central = false;

    int patch_count() const { return k + (central ? 1 : 0); }
};

struct PatchRegion {
    int row0 = 0;
    int col0 = 0;
    int height = 0;
    int width = 0;
    bool is_central = false;

    bool operator==(const PatchRegion&) const = default;
};

// Exact integer sqrt of a perfect square; throws SpecError otherwise.
int grid_side(int k);

// Throws SpecError when the layout cannot be applied to the image: k not a
// perfect square, h or w not divisible by sqrt(k), or margins that push the
// patch extent past the image.
void validate_layout(const TensorShape& image_shape, const PatchLayout& layout);

// Grid patches in row-major cell order, central patch (if any) last.
//
// Placement: each cell expands toward the image interior so that patches stay
// inside the image with no padding. Edge cells take the full margin on their
// single interior side; for sqrt(k) >= 3, interior cells split the margin
// ceil(m/2) toward the left/top seam and floor(m/2) toward the right/bottom.
// For sqrt(k) = 2 this makes adjacent patches overlap by exactly 2m.
std::vector<PatchRegion> plan_regions(const TensorShape& image_shape,
                                      const PatchLayout& layout);

// Copies each region's sub-rectangle (all channels) out of the image.
std::vector<Tensor> extract_patches(const Tensor& image,
                                    const std::vector<PatchRegion>& regions);

// Patch-to-image area ratio for the square-image case (h = w, m_h = m_w):
// 1/k + 2*m_h/(h*sqrt(k)) + m_h^2/h^2, which equals (h/sqrt(k) + m_h)^2 / h^2.
double patch_area_ratio(int h, int k, int m_h);

// Extent of one patch for `layout` applied to `image_shape`.
TensorShape patch_shape(const TensorShape& image_shape, const PatchLayout& layout);

} // namespace ptnn
