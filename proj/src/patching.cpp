#include "vesselseg/patching.hpp"

#include <algorithm>
#include <cmath>

namespace vseg {

const char* stratum_name(Stratum s) {
    switch (s) {
        case Stratum::Unassigned: return "unassigned";
        case Stratum::Vessel: return "vessel";
        case Stratum::ThinVessel: return "thin_vessel";
        case Stratum::ThickVessel: return "thick_vessel";
        case Stratum::PartialBackground: return "partial_bg";
        case Stratum::FullBackground: return "full_bg";
    }
    return "unassigned";
}

Stratum stratum_from_name(const std::string& name) {
    for (auto s : {Stratum::Unassigned, Stratum::Vessel, Stratum::ThinVessel,
                   Stratum::ThickVessel, Stratum::PartialBackground, Stratum::FullBackground})
        if (name == stratum_name(s)) return s;
    throw ConfigError("unknown stratum '" + name + "'");
}

PatchSet::PatchSet(std::string image_id, int patch, std::shared_ptr<const GrayImage> padded,
                   int source_width, int source_height)
    : image_id_(std::move(image_id)),
      patch_(patch),
      source_width_(source_width),
      source_height_(source_height),
      padded_(std::move(padded)) {
    if (patch_ < 1) throw ConfigError("patch size must be >= 1");
    if (padded_->width != source_width_ + patch_ - 1 ||
        padded_->height != source_height_ + patch_ - 1)
        throw ShapeError("padded image does not match source dimensions plus patch margin");
}

void PatchSet::copy_window(size_t i, std::span<float> dst) const {
    const PatchRecord& rec = records_[i];
    const size_t n = static_cast<size_t>(patch_) * patch_;
    if (dst.size() < n) throw ShapeError("window destination too small");
    // top pad equals patch/2, so the window's top-left corner in padded
    // coordinates is exactly the source coordinate
    const GrayImage& p = *padded_;
    for (int y = 0; y < patch_; ++y) {
        const float* src = &p.data[static_cast<size_t>(rec.row + y) * p.width + rec.col];
        std::copy(src, src + patch_, dst.data() + static_cast<size_t>(y) * patch_);
    }
}

double PatchSet::window_mean(size_t i) const {
    const PatchRecord& rec = records_[i];
    const GrayImage& p = *padded_;
    double sum = 0.0;
    for (int y = 0; y < patch_; ++y)
        for (int x = 0; x < patch_; ++x)
            sum += p.data[static_cast<size_t>(rec.row + y) * p.width + rec.col + x];
    return sum / (static_cast<double>(patch_) * patch_);
}

PatchSet PatchSet::with_records(std::vector<PatchRecord> records) const {
    PatchSet out = *this;
    out.records_ = std::move(records);
    return out;
}

int reflect_index(int i, int n) {
    if (n == 1) return 0;
    const int period = 2 * n;
    int j = i % period;
    if (j < 0) j += period;
    return j < n ? j : period - 1 - j;
}

GrayImage pad_image(const GrayImage& img, int patch) {
    if (patch < 1) throw ConfigError("patch size must be >= 1");
    const int before = patch / 2;
    const int after = patch - before - 1;
    GrayImage out(img.width + before + after, img.height + before + after);
#pragma omp parallel for schedule(static)
    for (int y = 0; y < out.height; ++y) {
        const int sy = reflect_index(y - before, img.height);
        for (int x = 0; x < out.width; ++x) {
            const int sx = reflect_index(x - before, img.width);
            out.at(y, x) = img.at(sy, sx);
        }
    }
    return out;
}

PatchSet extract_dense(const GrayImage& img, const BinaryMask& gt, int patch,
                       const std::string& image_id) {
    require_same_dims(img.width, img.height, gt.width, gt.height, "extract_dense");
    if (img.height > UINT16_MAX || img.width > UINT16_MAX)
        throw ShapeError("image too large for patch records");

    auto padded = std::make_shared<GrayImage>(pad_image(img, patch));
    PatchSet set(image_id, patch, padded, img.width, img.height);

    // summed-area table of the padded image; any window mean is four lookups
    const GrayImage& p = *padded;
    const int pw = p.width, ph = p.height;
    std::vector<double> sat(static_cast<size_t>(pw + 1) * (ph + 1), 0.0);
    for (int y = 0; y < ph; ++y) {
        double row = 0.0;
        for (int x = 0; x < pw; ++x) {
            row += p.at(y, x);
            sat[static_cast<size_t>(y + 1) * (pw + 1) + (x + 1)] =
                sat[static_cast<size_t>(y) * (pw + 1) + (x + 1)] + row;
        }
    }
    const double inv_area = 1.0 / (static_cast<double>(patch) * patch);

    auto& records = set.records();
    records.resize(img.pixels());
#pragma omp parallel for schedule(static)
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            PatchRecord& rec = records[static_cast<size_t>(y) * img.width + x];
            rec.row = static_cast<std::uint16_t>(y);
            rec.col = static_cast<std::uint16_t>(x);
            rec.label = gt.at(y, x) ? Label::Vessel : Label::NonVessel;
            rec.stratum = Stratum::Unassigned;
            const size_t y0 = y, x0 = x;
            const size_t y1 = y + patch, x1 = x + patch;
            const double sum = sat[y1 * (pw + 1) + x1] - sat[y0 * (pw + 1) + x1] -
                               sat[y1 * (pw + 1) + x0] + sat[y0 * (pw + 1) + x0];
            rec.patch_mean = static_cast<float>(sum * inv_area);
        }
    }
    return set;
}

GrayImage reassemble(const PatchSet& set, int width, int height,
                     std::span<const float> values) {
    if (values.size() != set.size())
        throw ShapeError("reassemble: one value per record required");
    GrayImage out(width, height);
    std::vector<std::uint8_t> seen(out.pixels(), 0);
    for (size_t i = 0; i < set.size(); ++i) {
        const PatchRecord& rec = set.records()[i];
        if (rec.row >= height || rec.col >= width)
            throw CoverageError("record pixel (" + std::to_string(rec.row) + "," +
                                std::to_string(rec.col) + ") outside target image");
        const size_t idx = static_cast<size_t>(rec.row) * width + rec.col;
        if (seen[idx])
            throw CoverageError("pixel (" + std::to_string(rec.row) + "," +
                                std::to_string(rec.col) + ") covered twice");
        seen[idx] = 1;
        out.data[idx] = values[i];
    }
    for (size_t idx = 0; idx < seen.size(); ++idx)
        if (!seen[idx])
            throw CoverageError("pixel (" + std::to_string(idx / width) + "," +
                                std::to_string(idx % width) + ") not covered");
    return out;
}

BinaryMask reassemble_labels(const PatchSet& set, int width, int height) {
    std::vector<float> values(set.size());
    for (size_t i = 0; i < set.size(); ++i)
        values[i] = set.records()[i].label == Label::Vessel ? 1.0f : 0.0f;
    GrayImage img = reassemble(set, width, height, values);
    BinaryMask mask(width, height);
    for (size_t i = 0; i < mask.pixels(); ++i) mask.data[i] = img.data[i] > 0.5f ? 1 : 0;
    return mask;
}

}  // namespace vseg
