#include "ptnn/segmentation.hpp"

#include <string>

#include "ptnn/error.hpp"

namespace ptnn {

int grid_side(int k) {
    if (k < 1) throw SpecError("patch count k must be >= 1, got " + std::to_string(k));
    int g = 0;
    while ((g + 1) * (g + 1) <= k) ++g;
    if (g * g != k) {
        throw SpecError("patch count k=" + std::to_string(k) +
                        " is not a perfect square");
    }
    return g;
}

void validate_layout(const TensorShape& image_shape, const PatchLayout& layout) {
    validate_shape(image_shape);
    const int g = grid_side(layout.k);
    if (layout.m_h < 0 || layout.m_w < 0) {
        throw SpecError("margins must be >= 0");
    }
    if (image_shape.h % g != 0 || image_shape.w % g != 0) {
        throw SpecError("image " + std::to_string(image_shape.h) + "x" +
                        std::to_string(image_shape.w) + " is not divisible by sqrt(k)=" +
                        std::to_string(g));
    }
    if (image_shape.h / g + layout.m_h > image_shape.h ||
        image_shape.w / g + layout.m_w > image_shape.w) {
        throw SpecError("margin too large: patch extent " +
                        std::to_string(image_shape.h / g + layout.m_h) + "x" +
                        std::to_string(image_shape.w / g + layout.m_w) +
                        " exceeds image " + std::to_string(image_shape.h) + "x" +
                        std::to_string(image_shape.w));
    }
}

namespace {

// Start offset of grid cell index r along an axis of `d` pixels split into
// g cells with margin m. Edge cells absorb the full margin on their interior
// side; interior cells take ceil(m/2) toward the preceding seam, clamped so
// the patch stays inside the image. Clamping still leaves every patch
// covering its own cell, so reassembly stays lossless.
int cell_start(int r, int d, int g, int m) {
    const int cell = d / g;
    if (r == 0) return 0;
    if (r == g - 1) return d - (cell + m);
    int start = r * cell - (m + 1) / 2;
    if (start < 0) start = 0;
    if (start > d - (cell + m)) start = d - (cell + m);
    return start;
}

} // namespace

std::vector<PatchRegion> plan_regions(const TensorShape& image_shape,
                                      const PatchLayout& layout) {
    validate_layout(image_shape, layout);
    const int g = grid_side(layout.k);
    const int ph = image_shape.h / g + layout.m_h;
    const int pw = image_shape.w / g + layout.m_w;

    std::vector<PatchRegion> regions;
    regions.reserve(static_cast<std::size_t>(layout.patch_count()));
    for (int r = 0; r < g; ++r) {
        for (int c = 0; c < g; ++c) {
            regions.push_back(PatchRegion{cell_start(r, image_shape.h, g, layout.m_h),
                                          cell_start(c, image_shape.w, g, layout.m_w),
                                          ph, pw, false});
        }
    }
    if (layout.central) {
        regions.push_back(PatchRegion{(image_shape.h - ph) / 2,
                                      (image_shape.w - pw) / 2, ph, pw, true});
    }
    return regions;
}

std::vector<Tensor> extract_patches(const Tensor& image,
                                    const std::vector<PatchRegion>& regions) {
    const TensorShape in = image.shape();
    std::vector<Tensor> patches;
    patches.reserve(regions.size());
    for (const PatchRegion& r : regions) {
        if (r.row0 < 0 || r.col0 < 0 || r.height < 1 || r.width < 1 ||
            r.row0 + r.height > in.h || r.col0 + r.width > in.w) {
            throw SpecError("patch region [" + std::to_string(r.row0) + "," +
                            std::to_string(r.col0) + " " + std::to_string(r.height) +
                            "x" + std::to_string(r.width) + "] out of bounds for " +
                            std::to_string(in.h) + "x" + std::to_string(in.w));
        }
        Tensor patch(TensorShape{r.height, r.width, in.c}, 0.0f, image.elem());
        for (int i = 0; i < r.height; ++i) {
            for (int j = 0; j < r.width; ++j) {
                for (int ch = 0; ch < in.c; ++ch) {
                    patch.at(i, j, ch) = image.at(r.row0 + i, r.col0 + j, ch);
                }
            }
        }
        patches.push_back(std::move(patch));
    }
    return patches;
}

double patch_area_ratio(int h, int k, int m_h) {
    if (h <= 0) throw SpecError("image extent must be > 0, got " + std::to_string(h));
    if (m_h < 0) throw SpecError("margin must be >= 0");
    const double g = static_cast<double>(grid_side(k));
    const double hd = static_cast<double>(h);
    const double md = static_cast<double>(m_h);
    return 1.0 / k + 2.0 * md / (hd * g) + (md * md) / (hd * hd);
}

TensorShape patch_shape(const TensorShape& image_shape, const PatchLayout& layout) {
    validate_layout(image_shape, layout);
    const int g = grid_side(layout.k);
    return TensorShape{image_shape.h / g + layout.m_h,
                       image_shape.w / g + layout.m_w, image_shape.c};
}

} // namespace ptnn
