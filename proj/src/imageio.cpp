#include "vesselseg/imageio.hpp"

#include <png.h>

#include <cmath>
#include <cstdio>
#include <memory>
#include <vector>

namespace vseg {
namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

struct PngReader {
    png_structp png = nullptr;
    png_infop info = nullptr;
    ~PngReader() { png_destroy_read_struct(&png, &info, nullptr); }
};

struct PngWriter {
    png_structp png = nullptr;
    png_infop info = nullptr;
    ~PngWriter() { png_destroy_write_struct(&png, &info); }
};

[[noreturn]] void png_error_fn(png_structp png, png_const_charp msg) {
    throw DecodeError(std::string("libpng: ") + msg);
}
void png_warn_fn(png_structp, png_const_charp) {}

struct Decoded {
    int width = 0;
    int height = 0;
    int channels = 0;   // 1 or 3
    int bit_depth = 0;  // 8 or 16
    std::vector<std::uint8_t> rows;
};

Decoded decode(const std::filesystem::path& path, bool allow_16bit) {
    FilePtr fp(std::fopen(path.string().c_str(), "rb"));
    if (!fp) throw IoError("cannot open " + path.string());

    png_byte header[8];
    if (std::fread(header, 1, 8, fp.get()) != 8 || png_sig_cmp(header, 0, 8))
        throw DecodeError(path.string() + ": not a PNG file");

    PngReader r;
    r.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, png_error_fn, png_warn_fn);
    if (!r.png) throw DecodeError("png_create_read_struct failed");
    r.info = png_create_info_struct(r.png);
    if (!r.info) throw DecodeError("png_create_info_struct failed");

    png_init_io(r.png, fp.get());
    png_set_sig_bytes(r.png, 8);
    png_read_info(r.png, r.info);

    const int color_type = png_get_color_type(r.png, r.info);
    const int bit_depth = png_get_bit_depth(r.png, r.info);

    if (color_type == PNG_COLOR_TYPE_PALETTE)
        throw DecodeError(path.string() + ": palette PNG is unsupported");
    if (bit_depth == 16 && !allow_16bit)
        throw DecodeError(path.string() + ": 16-bit PNG is unsupported here (expected 8-bit)");
    if (bit_depth == 16 && color_type != PNG_COLOR_TYPE_GRAY)
        throw DecodeError(path.string() + ": 16-bit PNG must be grayscale");

    if (bit_depth < 8) png_set_expand_gray_1_2_4_to_8(r.png);
    if (color_type & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(r.png);

    png_set_interlace_handling(r.png);
    png_read_update_info(r.png, r.info);

    Decoded out;
    out.width = static_cast<int>(png_get_image_width(r.png, r.info));
    out.height = static_cast<int>(png_get_image_height(r.png, r.info));
    out.bit_depth = png_get_bit_depth(r.png, r.info);
    out.channels = png_get_channels(r.png, r.info);
    if (out.channels != 1 && out.channels != 3)
        throw DecodeError(path.string() + ": unsupported channel count " +
                          std::to_string(out.channels));

    const size_t rowbytes = png_get_rowbytes(r.png, r.info);
    out.rows.resize(rowbytes * out.height);
    std::vector<png_bytep> row_ptrs(out.height);
    for (int y = 0; y < out.height; ++y) row_ptrs[y] = out.rows.data() + rowbytes * y;
    png_read_image(r.png, row_ptrs.data());
    png_read_end(r.png, nullptr);
    return out;
}

void encode_gray(const std::filesystem::path& path, int width, int height, int bit_depth,
                 const std::vector<std::uint8_t>& rows) {
    FilePtr fp(std::fopen(path.string().c_str(), "wb"));
    if (!fp) throw IoError("cannot write " + path.string());

    PngWriter w;
    w.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, png_error_fn, png_warn_fn);
    if (!w.png) throw IoError("png_create_write_struct failed");
    w.info = png_create_info_struct(w.png);
    if (!w.info) throw IoError("png_create_info_struct failed");

    png_init_io(w.png, fp.get());
    png_set_IHDR(w.png, w.info, width, height, bit_depth, PNG_COLOR_TYPE_GRAY,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(w.png, w.info);

    const size_t rowbytes = static_cast<size_t>(width) * (bit_depth / 8);
    std::vector<png_bytep> row_ptrs(height);
    for (int y = 0; y < height; ++y)
        row_ptrs[y] = const_cast<png_bytep>(rows.data() + rowbytes * y);
    png_write_image(w.png, row_ptrs.data());
    png_write_end(w.png, nullptr);
}

}  // namespace

RgbImage load_png(const std::filesystem::path& path) {
    Decoded d = decode(path, /*allow_16bit=*/false);
    RgbImage img(d.width, d.height);
    if (d.channels == 3) {
        img.data.assign(d.rows.begin(), d.rows.end());
    } else {
        for (size_t i = 0; i < img.pixels(); ++i) {
            const std::uint8_t g = d.rows[i];
            img.data[i * 3 + 0] = g;
            img.data[i * 3 + 1] = g;
            img.data[i * 3 + 2] = g;
        }
    }
    return img;
}

BinaryMask load_mask_png(const std::filesystem::path& path) {
    Decoded d = decode(path, /*allow_16bit=*/false);
    BinaryMask mask(d.width, d.height);
    for (size_t i = 0; i < mask.pixels(); ++i) {
        int lum;
        if (d.channels == 3) {
            // integer rec.601 luma, denominator 1000
            lum = (299 * d.rows[i * 3] + 587 * d.rows[i * 3 + 1] + 114 * d.rows[i * 3 + 2]) / 1000;
        } else {
            lum = d.rows[i];
        }
        mask.data[i] = lum > 127 ? 1 : 0;
    }
    return mask;
}

void save_mask_png(const BinaryMask& mask, const std::filesystem::path& path) {
    std::vector<std::uint8_t> rows(mask.pixels());
    for (size_t i = 0; i < rows.size(); ++i) rows[i] = mask.data[i] ? 255 : 0;
    encode_gray(path, mask.width, mask.height, 8, rows);
}

void save_gray_png(const GrayImage& img, const std::filesystem::path& path) {
    std::vector<std::uint8_t> rows(img.pixels());
    for (size_t i = 0; i < rows.size(); ++i) {
        const float v = std::min(1.0f, std::max(0.0f, img.data[i]));
        rows[i] = static_cast<std::uint8_t>(std::lround(255.0f * v));
    }
    encode_gray(path, img.width, img.height, 8, rows);
}

void save_gray16_png(const GrayImage& img, const std::filesystem::path& path) {
    std::vector<std::uint8_t> rows(img.pixels() * 2);
    for (size_t i = 0; i < img.pixels(); ++i) {
        const float v = std::min(1.0f, std::max(0.0f, img.data[i]));
        const auto q = static_cast<std::uint16_t>(std::lround(65535.0f * v));
        rows[i * 2] = static_cast<std::uint8_t>(q >> 8);  // PNG is big-endian
        rows[i * 2 + 1] = static_cast<std::uint8_t>(q & 0xff);
    }
    encode_gray(path, img.width, img.height, 16, rows);
}

GrayImage load_gray_png(const std::filesystem::path& path) {
    Decoded d = decode(path, /*allow_16bit=*/true);
    GrayImage img(d.width, d.height);
    if (d.bit_depth == 16) {
        for (size_t i = 0; i < img.pixels(); ++i) {
            const int v = (d.rows[i * 2] << 8) | d.rows[i * 2 + 1];
            img.data[i] = static_cast<float>(v) / 65535.0f;
        }
    } else if (d.channels == 1) {
        for (size_t i = 0; i < img.pixels(); ++i) img.data[i] = d.rows[i] / 255.0f;
    } else {
        for (size_t i = 0; i < img.pixels(); ++i) img.data[i] = d.rows[i * 3 + 1] / 255.0f;
    }
    return img;
}

GrayImage extract_channel(const RgbImage& img, Channel channel) {
    GrayImage out(img.width, img.height);
    const int c = static_cast<int>(channel);
    for (size_t i = 0; i < out.pixels(); ++i) out.data[i] = img.data[i * 3 + c] / 255.0f;
    return out;
}

}  // namespace vseg
