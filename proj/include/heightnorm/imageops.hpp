#pragma once

#include <cstdint>

#include "heightnorm/image.hpp"
#include "heightnorm/transform.hpp"

namespace heightnorm {

// Pixel centres sit on integer coordinates. Warps use inverse mapping: each
// output pixel centre is pulled back through T^-1 and sampled in the source.

/// Bilinear warp. Samples outside [0, w-1] x [0, h-1] take `fill`.
/// Throws Error(geometry) when T is not invertible. Rows run in parallel.
ImageBuffer warp_image(const ImageBuffer& img, const AffineTransform2D& t, ImageDims out_dims,
                       std::uint8_t fill = 0);

/// Nearest-neighbour warp; out-of-source pixels are background.
MaskBuffer warp_mask(const MaskBuffer& mask, const AffineTransform2D& t, ImageDims out_dims);

/// Zeroes every pixel whose mask value is background.
ImageBuffer suppress_background(const ImageBuffer& img, const MaskBuffer& mask);

/// Serial kernels with the same per-pixel arithmetic, kept as the
/// reference the parallel versions are checked against.
namespace reference {
ImageBuffer warp_image(const ImageBuffer& img, const AffineTransform2D& t, ImageDims out_dims,
                       std::uint8_t fill = 0);
MaskBuffer warp_mask(const MaskBuffer& mask, const AffineTransform2D& t, ImageDims out_dims);
ImageBuffer suppress_background(const ImageBuffer& img, const MaskBuffer& mask);
}  // namespace reference

}  // namespace heightnorm
