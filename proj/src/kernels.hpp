#pragma once

// Per-row kernels shared by the parallel and serial (reference) drivers so
// both produce bit-identical output.

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "heightnorm/image.hpp"
#include "heightnorm/transform.hpp"

namespace heightnorm::detail {

inline std::uint8_t round_to_u8(double v) {
    return static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
}

/// Output row `y` of an inverse-mapped bilinear warp. `inv` maps output
/// pixel centres to source coordinates.
inline void warp_image_row(const ImageBuffer& src, const AffineTransform2D& inv, int y, int out_width,
                           std::uint8_t fill, std::uint8_t* out) {
    const int w = src.width();
    const int h = src.height();
    const int ch = src.channels();
    const double max_x = w - 1.0;
    const double max_y = h - 1.0;
    // Absorbs round-off in the inverse map so edge rows/columns that map
    // exactly onto the source border are sampled rather than filled.
    constexpr double eps = 1e-9;
    for (int x = 0; x < out_width; ++x) {
        const double sx = inv.m[0] * x + inv.m[1] * y + inv.m[2];
        const double sy = inv.m[3] * x + inv.m[4] * y + inv.m[5];
        std::uint8_t* px = out + static_cast<std::size_t>(x) * ch;
        if (!(sx >= -eps && sx <= max_x + eps && sy >= -eps && sy <= max_y + eps)) {
            std::fill(px, px + ch, fill);
            continue;
        }
        const double cx = std::clamp(sx, 0.0, max_x);
        const double cy = std::clamp(sy, 0.0, max_y);
        const int x0 = static_cast<int>(std::floor(cx));
        const int y0 = static_cast<int>(std::floor(cy));
        const int x1 = std::min(x0 + 1, w - 1);
        const int y1 = std::min(y0 + 1, h - 1);
        const double fx = cx - x0;
        const double fy = cy - y0;
        for (int c = 0; c < ch; ++c) {
            const double top = (1.0 - fx) * src.at(x0, y0, c) + fx * src.at(x1, y0, c);
            const double bottom = (1.0 - fx) * src.at(x0, y1, c) + fx * src.at(x1, y1, c);
            px[c] = round_to_u8((1.0 - fy) * top + fy * bottom);
        }
    }
}

inline void warp_mask_row(const MaskBuffer& src, const AffineTransform2D& inv, int y, int out_width,
                          std::uint8_t* out) {
    const int w = src.width();
    const int h = src.height();
    for (int x = 0; x < out_width; ++x) {
        const double sx = inv.m[0] * x + inv.m[1] * y + inv.m[2];
        const double sy = inv.m[3] * x + inv.m[4] * y + inv.m[5];
        const double rx = std::floor(sx + 0.5);
        const double ry = std::floor(sy + 0.5);
        if (rx >= 0.0 && rx < w && ry >= 0.0 && ry < h) {
            out[x] = src.at(static_cast<int>(rx), static_cast<int>(ry));
        } else {
            out[x] = MaskBuffer::kBackground;
        }
    }
}

inline void suppress_row(const ImageBuffer& img, const MaskBuffer& mask, int y, std::uint8_t* out) {
    const int ch = img.channels();
    const std::uint8_t* in = img.row(y);
    const std::uint8_t* m = mask.row(y);
    for (int x = 0; x < img.width(); ++x) {
        for (int c = 0; c < ch; ++c) {
            const std::size_t i = static_cast<std::size_t>(x) * ch + c;
            out[i] = m[x] != 0 ? in[i] : 0;
        }
    }
}

}  // namespace heightnorm::detail
