#include "heightnorm/imageops.hpp"

#include "heightnorm/error.hpp"
#include "kernels.hpp"

namespace heightnorm {

namespace {

void check_out_dims(ImageDims d) {
    if (d.width <= 0 || d.height <= 0) {
        throw Error(ErrorKind::domain, "output dimensions must be positive");
    }
}

void check_same_dims(const ImageBuffer& img, const MaskBuffer& mask) {
    if (img.dims() != mask.dims()) {
        throw Error(ErrorKind::domain, "image and mask dimensions differ");
    }
}

}  // namespace

ImageBuffer warp_image(const ImageBuffer& img, const AffineTransform2D& t, ImageDims out_dims,
                       std::uint8_t fill) {
    check_out_dims(out_dims);
    const AffineTransform2D inv = t.inverse();
    ImageBuffer out(out_dims.width, out_dims.height, img.channels());
#pragma omp parallel for schedule(static)
    for (int y = 0; y < out_dims.height; ++y) {
        detail::warp_image_row(img, inv, y, out_dims.width, fill, out.row(y));
    }
    return out;
}

MaskBuffer warp_mask(const MaskBuffer& mask, const AffineTransform2D& t, ImageDims out_dims) {
    check_out_dims(out_dims);
    const AffineTransform2D inv = t.inverse();
    MaskBuffer out(out_dims.width, out_dims.height);
#pragma omp parallel for schedule(static)
    for (int y = 0; y < out_dims.height; ++y) {
        detail::warp_mask_row(mask, inv, y, out_dims.width, out.row(y));
    }
    return out;
}

ImageBuffer suppress_background(const ImageBuffer& img, const MaskBuffer& mask) {
    check_same_dims(img, mask);
    ImageBuffer out(img.width(), img.height(), img.channels());
#pragma omp parallel for schedule(static)
    for (int y = 0; y < img.height(); ++y) {
        detail::suppress_row(img, mask, y, out.row(y));
    }
    return out;
}

namespace reference {

ImageBuffer warp_image(const ImageBuffer& img, const AffineTransform2D& t, ImageDims out_dims,
                       std::uint8_t fill) {
    check_out_dims(out_dims);
    const AffineTransform2D inv = t.inverse();
    ImageBuffer out(out_dims.width, out_dims.height, img.channels());
    for (int y = 0; y < out_dims.height; ++y) {
        detail::warp_image_row(img, inv, y, out_dims.width, fill, out.row(y));
    }
    return out;
}

MaskBuffer warp_mask(const MaskBuffer& mask, const AffineTransform2D& t, ImageDims out_dims) {
    check_out_dims(out_dims);
    const AffineTransform2D inv = t.inverse();
    MaskBuffer out(out_dims.width, out_dims.height);
    for (int y = 0; y < out_dims.height; ++y) {
        detail::warp_mask_row(mask, inv, y, out_dims.width, out.row(y));
    }
    return out;
}

ImageBuffer suppress_background(const ImageBuffer& img, const MaskBuffer& mask) {
    check_same_dims(img, mask);
    ImageBuffer out(img.width(), img.height(), img.channels());
    for (int y = 0; y < img.height(); ++y) {
        detail::suppress_row(img, mask, y, out.row(y));
    }
    return out;
}

}  // namespace reference

}  // namespace heightnorm
