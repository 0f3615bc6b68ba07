#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "vesselseg/types.hpp"

namespace vseg {

enum class Label : std::uint8_t { NonVessel = 0, Vessel = 1, Unlabeled = 2 };

enum class Stratum : std::uint8_t {
    Unassigned = 0,
    Vessel = 1,  // level-I vessel stratum, calibre not yet split
    ThinVessel = 2,
    ThickVessel = 3,
    PartialBackground = 4,
    FullBackground = 5,
};

const char* stratum_name(Stratum s);
Stratum stratum_from_name(const std::string& name);

/// One focal pixel: its coordinate in the source image, the label of that
/// pixel, the mean of its window and the sampling stratum it was assigned to.
/// The window itself is materialized on demand from the shared padded image.
struct PatchRecord {
    std::uint16_t row = 0;
    std::uint16_t col = 0;
    Label label = Label::Unlabeled;
    Stratum stratum = Stratum::Unassigned;
    float patch_mean = 0.0f;
};

/// Dense or subsampled patch collection over one source image. Windows are
/// recomputed from the padded image on demand; a DRIVE-sized dense set would
/// otherwise hold ~5 GB of floats.
class PatchSet {
  public:
    PatchSet() = default;
    PatchSet(std::string image_id, int patch, std::shared_ptr<const GrayImage> padded,
             int source_width, int source_height);

    const std::string& image_id() const { return image_id_; }
    int patch() const { return patch_; }
    int source_width() const { return source_width_; }
    int source_height() const { return source_height_; }
    const GrayImage& padded() const { return *padded_; }
    std::shared_ptr<const GrayImage> padded_ptr() const { return padded_; }

    std::vector<PatchRecord>& records() { return records_; }
    const std::vector<PatchRecord>& records() const { return records_; }
    size_t size() const { return records_.size(); }

    /// Copies the patch x patch window of record i into dst.
    void copy_window(size_t i, std::span<float> dst) const;

    /// Mean of record i's window recomputed directly (test support).
    double window_mean(size_t i) const;

    /// Same padded image and geometry, different record list.
    PatchSet with_records(std::vector<PatchRecord> records) const;

  private:
    std::string image_id_;
    int patch_ = 0;
    int source_width_ = 0;
    int source_height_ = 0;
    std::shared_ptr<const GrayImage> padded_;
    std::vector<PatchRecord> records_;
};

/// Pads with mirrored borders (edge pixel repeated) so that every source
/// pixel owns a full patch window: patch/2 rows/cols before, patch - patch/2
/// - 1 after. Reflection folds as often as needed for images smaller than
/// the pad width.
GrayImage pad_image(const GrayImage& img, int patch);

/// Index into the mirror-padded axis for a possibly out-of-range coordinate.
int reflect_index(int i, int n);

/// One record per pixel in row-major order; label taken from the ground
/// truth at the focal pixel; patch means computed via a summed-area table.
PatchSet extract_dense(const GrayImage& img, const BinaryMask& gt, int patch,
                       const std::string& image_id = "");

/// Places values[i] at record i's pixel. Every pixel must be covered exactly
/// once.
GrayImage reassemble(const PatchSet& set, int width, int height, std::span<const float> values);

/// Reassembles record labels into a mask (vessel -> true).
BinaryMask reassemble_labels(const PatchSet& set, int width, int height);

/// Flat view over records of several patch sets, the unit the trainer and
/// samplers operate on.
struct PatchPool {
    struct Entry {
        const PatchSet* set;
        std::uint32_t record;
    };
    std::vector<Entry> entries;

    PatchPool() = default;
    explicit PatchPool(const PatchSet& set) {
        entries.reserve(set.size());
        for (std::uint32_t i = 0; i < set.size(); ++i) entries.push_back({&set, i});
    }
    void append(const PatchSet& set) {
        for (std::uint32_t i = 0; i < set.size(); ++i) entries.push_back({&set, i});
    }
    size_t size() const { return entries.size(); }
    const PatchRecord& record(size_t i) const {
        return entries[i].set->records()[entries[i].record];
    }
};

}  // namespace vseg
