#pragma once

#include <cstdint>
#include <vector>

#include "vesselseg/errors.hpp"

namespace vseg {

/// 8-bit RGB image, row-major interleaved triples.
struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;  // width*height*3

    RgbImage() = default;
    RgbImage(int w, int h) : width(w), height(h), data(static_cast<size_t>(w) * h * 3, 0) {
        if (w < 1 || h < 1) throw ShapeError("RgbImage dimensions must be >= 1");
    }

    std::uint8_t& at(int row, int col, int ch) {
        return data[(static_cast<size_t>(row) * width + col) * 3 + ch];
    }
    std::uint8_t at(int row, int col, int ch) const {
        return data[(static_cast<size_t>(row) * width + col) * 3 + ch];
    }
    size_t pixels() const { return static_cast<size_t>(width) * height; }
};

/// Single-channel float image with values in [0,1], row-major.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<float> data;  // width*height

    GrayImage() = default;
    GrayImage(int w, int h, float fill = 0.0f)
        : width(w), height(h), data(static_cast<size_t>(w) * h, fill) {
        if (w < 1 || h < 1) throw ShapeError("GrayImage dimensions must be >= 1");
    }

    float& at(int row, int col) { return data[static_cast<size_t>(row) * width + col]; }
    float at(int row, int col) const { return data[static_cast<size_t>(row) * width + col]; }
    size_t pixels() const { return static_cast<size_t>(width) * height; }
};

/// Binary mask, row-major, one byte per pixel (0 or 1).
struct BinaryMask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;  // width*height

    BinaryMask() = default;
    BinaryMask(int w, int h, bool fill = false)
        : width(w), height(h), data(static_cast<size_t>(w) * h, fill ? 1 : 0) {
        if (w < 1 || h < 1) throw ShapeError("BinaryMask dimensions must be >= 1");
    }

    bool at(int row, int col) const { return data[static_cast<size_t>(row) * width + col] != 0; }
    void set(int row, int col, bool v) {
        data[static_cast<size_t>(row) * width + col] = v ? 1 : 0;
    }
    size_t pixels() const { return static_cast<size_t>(width) * height; }
    size_t count() const {
        size_t n = 0;
        for (auto b : data) n += b != 0;
        return n;
    }

    bool operator==(const BinaryMask& o) const {
        return width == o.width && height == o.height && data == o.data;
    }
};

inline void require_same_dims(int w1, int h1, int w2, int h2, const char* what) {
    if (w1 != w2 || h1 != h2)
        throw ShapeError(std::string(what) + ": dimension mismatch (" + std::to_string(w1) + "x" +
                         std::to_string(h1) + " vs " + std::to_string(w2) + "x" +
                         std::to_string(h2) + ")");
}

}  // namespace vseg
