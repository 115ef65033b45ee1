#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "heightnorm/geometry.hpp"

namespace heightnorm {

/// Row-major interleaved 8-bit image with 1 or 3 channels.
class ImageBuffer {
public:
    ImageBuffer() = default;
    ImageBuffer(int width, int height, int channels, std::uint8_t value = 0);
    ImageBuffer(int width, int height, int channels, std::vector<std::uint8_t> pixels);

    int width() const { return width_; }
    int height() const { return height_; }
    int channels() const { return channels_; }
    ImageDims dims() const { return {width_, height_}; }

    std::uint8_t& at(int x, int y, int c = 0) {
        return pixels_[(static_cast<std::size_t>(y) * width_ + x) * channels_ + c];
    }
    std::uint8_t at(int x, int y, int c = 0) const {
        return pixels_[(static_cast<std::size_t>(y) * width_ + x) * channels_ + c];
    }

    std::uint8_t* row(int y) { return pixels_.data() + static_cast<std::size_t>(y) * width_ * channels_; }
    const std::uint8_t* row(int y) const {
        return pixels_.data() + static_cast<std::size_t>(y) * width_ * channels_;
    }

    const std::vector<std::uint8_t>& pixels() const { return pixels_; }

    friend bool operator==(const ImageBuffer&, const ImageBuffer&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    int channels_ = 1;
    std::vector<std::uint8_t> pixels_;
};

/// Binary subject mask: 0 background, 255 subject.
class MaskBuffer {
public:
    static constexpr std::uint8_t kBackground = 0;
    static constexpr std::uint8_t kSubject = 255;

    MaskBuffer() = default;
    MaskBuffer(int width, int height, std::uint8_t value = kBackground);
    /// Throws Error(validation) if any value is not 0 or 255.
    MaskBuffer(int width, int height, std::vector<std::uint8_t> pixels);

    int width() const { return width_; }
    int height() const { return height_; }
    ImageDims dims() const { return {width_, height_}; }

    bool subject(int x, int y) const { return pixels_[static_cast<std::size_t>(y) * width_ + x] != 0; }
    std::uint8_t at(int x, int y) const { return pixels_[static_cast<std::size_t>(y) * width_ + x]; }
    void set(int x, int y, bool subject) {
        pixels_[static_cast<std::size_t>(y) * width_ + x] = subject ? kSubject : kBackground;
    }

    std::uint8_t* row(int y) { return pixels_.data() + static_cast<std::size_t>(y) * width_; }
    const std::uint8_t* row(int y) const { return pixels_.data() + static_cast<std::size_t>(y) * width_; }

    const std::vector<std::uint8_t>& pixels() const { return pixels_; }

    friend bool operator==(const MaskBuffer&, const MaskBuffer&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> pixels_;
};

// PNG IO (8-bit gray or RGB). Alpha is dropped, palettes expanded, 16-bit
// samples reduced. Masks are converted to gray and thresholded at 128.
ImageBuffer read_png_image(const std::filesystem::path& path);
MaskBuffer read_png_mask(const std::filesystem::path& path);
void write_png(const std::filesystem::path& path, const ImageBuffer& img);
void write_png(const std::filesystem::path& path, const MaskBuffer& mask);

}  // namespace heightnorm
