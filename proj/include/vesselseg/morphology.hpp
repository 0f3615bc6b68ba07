#pragma once

#include <string>
#include <utility>

#include "vesselseg/types.hpp"

namespace vseg {

/// Flat structuring element with an anchor cell. Pixels outside the mask are
/// treated as background during erosion and dilation.
struct StructuringElement {
    int width = 0;
    int height = 0;
    int anchor_row = 0;
    int anchor_col = 0;
    std::vector<std::uint8_t> data;

    bool at(int row, int col) const { return data[static_cast<size_t>(row) * width + col] != 0; }
    void validate() const;

    /// The element mirrored through its anchor (used by dilation).
    StructuringElement reflected() const;

    static StructuringElement box(int radius);
    static StructuringElement cross(int radius);
    static StructuringElement disk(int radius);
    /// shape is one of "box" | "cross" | "disk".
    static StructuringElement named(const std::string& shape, int radius);
};

/// Output pixel is true iff every true element cell lands on a true pixel.
BinaryMask erode(const BinaryMask& mask, const StructuringElement& se);

/// Output pixel is true iff any reflected element cell hits a true pixel.
/// Satisfies dilate(m, se) == ~erode(~m, reflect(se)).
BinaryMask dilate(const BinaryMask& mask, const StructuringElement& se);

/// Morphological opening: dilate(erode(mask)). Anti-extensive and idempotent.
BinaryMask open(const BinaryMask& mask, const StructuringElement& se);

/// Splits a vessel ground truth into calibre classes: thick = opening of the
/// mask (structures the element fits into), thin = the remainder. The two
/// masks partition the input.
std::pair<BinaryMask, BinaryMask> segregate_vessels(const BinaryMask& gt,
                                                    const StructuringElement& se);

}  // namespace vseg
