#include "heightnorm/image.hpp"

#include <algorithm>
#include <string>

#include <png.h>

#include "heightnorm/error.hpp"

namespace heightnorm {

namespace {
void check_dims(int width, int height) {
    if (width <= 0 || height <= 0) {
        throw Error(ErrorKind::domain, "image dimensions must be positive, got " +
                                           std::to_string(width) + "x" + std::to_string(height));
    }
}
}  // namespace

ImageBuffer::ImageBuffer(int width, int height, int channels, std::uint8_t value)
    : width_(width), height_(height), channels_(channels) {
    check_dims(width, height);
    if (channels != 1 && channels != 3) {
        throw Error(ErrorKind::domain, "images must have 1 or 3 channels");
    }
    pixels_.assign(static_cast<std::size_t>(width) * height * channels, value);
}

ImageBuffer::ImageBuffer(int width, int height, int channels, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), channels_(channels), pixels_(std::move(pixels)) {
    check_dims(width, height);
    if (channels != 1 && channels != 3) {
        throw Error(ErrorKind::domain, "images must have 1 or 3 channels");
    }
    if (pixels_.size() != static_cast<std::size_t>(width) * height * channels) {
        throw Error(ErrorKind::validation, "pixel buffer length does not match image dimensions");
    }
}

MaskBuffer::MaskBuffer(int width, int height, std::uint8_t value) : width_(width), height_(height) {
    check_dims(width, height);
    if (value != kBackground && value != kSubject) {
        throw Error(ErrorKind::validation, "mask values must be 0 or 255");
    }
    pixels_.assign(static_cast<std::size_t>(width) * height, value);
}

MaskBuffer::MaskBuffer(int width, int height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
    check_dims(width, height);
    if (pixels_.size() != static_cast<std::size_t>(width) * height) {
        throw Error(ErrorKind::validation, "mask buffer length does not match dimensions");
    }
    if (!std::ranges::all_of(pixels_, [](std::uint8_t v) { return v == kBackground || v == kSubject; })) {
        throw Error(ErrorKind::validation, "mask values must be 0 or 255");
    }
}

namespace {

struct PngReader {
    png_image image{};

    explicit PngReader(const std::filesystem::path& path) {
        image.version = PNG_IMAGE_VERSION;
        if (!png_image_begin_read_from_file(&image, path.c_str())) {
            const std::string msg = image.message;
            png_image_free(&image);
            throw Error(ErrorKind::io, "cannot read PNG " + path.string() + ": " + msg);
        }
    }
    ~PngReader() { png_image_free(&image); }
    PngReader(const PngReader&) = delete;
    PngReader& operator=(const PngReader&) = delete;

    std::vector<std::uint8_t> finish(png_uint_32 format, const std::filesystem::path& path) {
        image.format = format;
        std::vector<std::uint8_t> buf(PNG_IMAGE_SIZE(image));
        if (!png_image_finish_read(&image, nullptr, buf.data(), 0, nullptr)) {
            throw Error(ErrorKind::io, "cannot decode PNG " + path.string() + ": " + image.message);
        }
        return buf;
    }
};

void write_raw(const std::filesystem::path& path, int width, int height, png_uint_32 format,
               const std::uint8_t* data) {
    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(width);
    image.height = static_cast<png_uint_32>(height);
    image.format = format;
    if (!png_image_write_to_file(&image, path.c_str(), 0, data, 0, nullptr)) {
        const std::string msg = image.message;
        png_image_free(&image);
        throw Error(ErrorKind::io, "cannot write PNG " + path.string() + ": " + msg);
    }
}

}  // namespace

ImageBuffer read_png_image(const std::filesystem::path& path) {
    PngReader reader(path);
    const bool color = (reader.image.format & PNG_FORMAT_FLAG_COLOR) != 0;
    const int width = static_cast<int>(reader.image.width);
    const int height = static_cast<int>(reader.image.height);
    auto buf = reader.finish(color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY, path);
    return ImageBuffer(width, height, color ? 3 : 1, std::move(buf));
}

MaskBuffer read_png_mask(const std::filesystem::path& path) {
    PngReader reader(path);
    const int width = static_cast<int>(reader.image.width);
    const int height = static_cast<int>(reader.image.height);
    auto buf = reader.finish(PNG_FORMAT_GRAY, path);
    for (auto& v : buf) {
        v = v >= 128 ? MaskBuffer::kSubject : MaskBuffer::kBackground;
    }
    return MaskBuffer(width, height, std::move(buf));
}

void write_png(const std::filesystem::path& path, const ImageBuffer& img) {
    write_raw(path, img.width(), img.height(), img.channels() == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY,
              img.pixels().data());
}

void write_png(const std::filesystem::path& path, const MaskBuffer& mask) {
    write_raw(path, mask.width(), mask.height(), PNG_FORMAT_GRAY, mask.pixels().data());
}

}  // namespace heightnorm
