#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vesselseg/patching.hpp"

namespace vseg {

/// Thresholds and ratios for the two balancing levels.
struct BalanceConfig {
    /// Patch-mean threshold separating partial from full background.
    double mean_threshold = 0.05;
    /// Share of the non-vessel quota taken from partial background (the rest
    /// comes from full background).
    double partial_bg_ratio = 0.9;
    /// Thick-vessel draw size as a multiple of the thin-vessel count.
    double thick_thin_ratio = 1.0;
    /// Reproduces the literal level-II rule where the thick draw is scaled
    /// from the thick stratum size by partial_bg_ratio instead of being
    /// anchored to the thin count.
    bool legacy_thick_rule = false;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Records binned by sampling stratum. Strata are disjoint by pixel.
struct StratifiedPatches {
    const PatchSet* source = nullptr;
    std::vector<std::uint32_t> vessel;      // level-I vessel stratum
    std::vector<std::uint32_t> thin;        // level-II thin vessel stratum
    std::vector<std::uint32_t> thick;       // level-II thick vessel stratum
    std::vector<std::uint32_t> partial_bg;  // non-vessel, patch mean >= threshold
    std::vector<std::uint32_t> full_bg;     // non-vessel, patch mean < threshold
};

/// Per-stratum counts before and after selection, plus clamp warnings.
struct BalanceReport {
    size_t vessel_before = 0, thin_before = 0, thick_before = 0;
    size_t partial_bg_before = 0, full_bg_before = 0;
    size_t vessel_after = 0, thin_after = 0, thick_after = 0;
    size_t partial_bg_after = 0, full_bg_after = 0;
    std::vector<std::string> warnings;
};

struct BalanceOutcome {
    PatchSet patches;
    BalanceReport report;
};

/// Level-I stratification: vessel if the ground truth is set at the focal
/// pixel, otherwise partial or full background by patch mean.
StratifiedPatches classify_level1(PatchSet& patches, const BinaryMask& gt,
                                  double mean_threshold);

/// Level-I selection: keeps every vessel record and draws an equal number of
/// non-vessel records, split partial:full by partial_bg_ratio. Short strata
/// are clamped with a warning. Output order is a seeded shuffle.
BalanceOutcome balance_level1(const StratifiedPatches& s, const BalanceConfig& cfg);

/// Level-II stratification: thin mask wins over thick mask at the focal
/// pixel; remaining records split by patch mean as in level I.
StratifiedPatches classify_level2(PatchSet& patches, const BinaryMask& gt,
                                  const BinaryMask& thin, const BinaryMask& thick,
                                  double mean_threshold);

/// Level-II selection: draws round(thick_thin_ratio * |thin|) thick records
/// (clamped), unions them with all thin records, then runs the level-I
/// background selection against that vessel set.
BalanceOutcome balance_level2(const StratifiedPatches& s, const BalanceConfig& cfg);

}  // namespace vseg
