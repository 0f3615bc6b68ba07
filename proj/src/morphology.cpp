#include "vesselseg/morphology.hpp"

#include <algorithm>

namespace vseg {

void StructuringElement::validate() const {
    if (width < 1 || height < 1 || data.size() != static_cast<size_t>(width) * height)
        throw ConfigError("structuring element has inconsistent dimensions");
    if (anchor_row < 0 || anchor_row >= height || anchor_col < 0 || anchor_col >= width)
        throw ConfigError("structuring element anchor out of bounds");
    if (std::find(data.begin(), data.end(), 1) == data.end())
        throw ConfigError("structuring element has no active cell");
}

StructuringElement StructuringElement::reflected() const {
    StructuringElement r = *this;
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x)
            r.data[static_cast<size_t>(y) * width + x] =
                data[static_cast<size_t>(height - 1 - y) * width + (width - 1 - x)];
    r.anchor_row = height - 1 - anchor_row;
    r.anchor_col = width - 1 - anchor_col;
    return r;
}

StructuringElement StructuringElement::box(int radius) {
    if (radius < 0) throw ConfigError("structuring element radius must be >= 0");
    const int n = 2 * radius + 1;
    StructuringElement se{n, n, radius, radius, std::vector<std::uint8_t>(n * n, 1)};
    return se;
}

StructuringElement StructuringElement::cross(int radius) {
    if (radius < 0) throw ConfigError("structuring element radius must be >= 0");
    const int n = 2 * radius + 1;
    StructuringElement se{n, n, radius, radius, std::vector<std::uint8_t>(n * n, 0)};
    for (int i = 0; i < n; ++i) {
        se.data[static_cast<size_t>(radius) * n + i] = 1;
        se.data[static_cast<size_t>(i) * n + radius] = 1;
    }
    return se;
}

StructuringElement StructuringElement::disk(int radius) {
    if (radius < 0) throw ConfigError("structuring element radius must be >= 0");
    const int n = 2 * radius + 1;
    StructuringElement se{n, n, radius, radius, std::vector<std::uint8_t>(n * n, 0)};
    for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x)
            if ((y - radius) * (y - radius) + (x - radius) * (x - radius) <= radius * radius)
                se.data[static_cast<size_t>(y) * n + x] = 1;
    return se;
}

StructuringElement StructuringElement::named(const std::string& shape, int radius) {
    if (shape == "box") return box(radius);
    if (shape == "cross") return cross(radius);
    if (shape == "disk") return disk(radius);
    throw ConfigError("unknown structuring element shape '" + shape +
                      "' (expected box|cross|disk)");
}

namespace {

// offsets of active cells relative to the anchor
std::vector<std::pair<int, int>> active_offsets(const StructuringElement& se) {
    std::vector<std::pair<int, int>> offs;
    for (int y = 0; y < se.height; ++y)
        for (int x = 0; x < se.width; ++x)
            if (se.at(y, x)) offs.emplace_back(y - se.anchor_row, x - se.anchor_col);
    return offs;
}

}  // namespace

BinaryMask erode(const BinaryMask& mask, const StructuringElement& se) {
    se.validate();
    const auto offs = active_offsets(se);
    BinaryMask out(mask.width, mask.height);
#pragma omp parallel for schedule(static)
    for (int y = 0; y < mask.height; ++y) {
        for (int x = 0; x < mask.width; ++x) {
            bool all = true;
            for (const auto& [dy, dx] : offs) {
                const int yy = y + dy, xx = x + dx;
                if (yy < 0 || yy >= mask.height || xx < 0 || xx >= mask.width ||
                    !mask.at(yy, xx)) {
                    all = false;
                    break;
                }
            }
            out.set(y, x, all);
        }
    }
    return out;
}

BinaryMask dilate(const BinaryMask& mask, const StructuringElement& se) {
    se.validate();
    const auto offs = active_offsets(se.reflected());
    BinaryMask out(mask.width, mask.height);
#pragma omp parallel for schedule(static)
    for (int y = 0; y < mask.height; ++y) {
        for (int x = 0; x < mask.width; ++x) {
            bool any = false;
            for (const auto& [dy, dx] : offs) {
                const int yy = y + dy, xx = x + dx;
                if (yy >= 0 && yy < mask.height && xx >= 0 && xx < mask.width &&
                    mask.at(yy, xx)) {
                    any = true;
                    break;
                }
            }
            out.set(y, x, any);
        }
    }
    return out;
}

BinaryMask open(const BinaryMask& mask, const StructuringElement& se) {
    return dilate(erode(mask, se), se);
}

std::pair<BinaryMask, BinaryMask> segregate_vessels(const BinaryMask& gt,
                                                    const StructuringElement& se) {
    BinaryMask thick = open(gt, se);
    BinaryMask thin(gt.width, gt.height);
    for (size_t i = 0; i < gt.data.size(); ++i)
        thin.data[i] = (gt.data[i] && !thick.data[i]) ? 1 : 0;
    return {std::move(thick), std::move(thin)};
}

}  // namespace vseg
