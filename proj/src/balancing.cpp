#include "vesselseg/balancing.hpp"

#include <cmath>

#include "vesselseg/rng.hpp"

namespace vseg {

void BalanceConfig::validate() const {
    if (mean_threshold < 0.0 || mean_threshold > 1.0)
        throw ConfigError("balance.mean_threshold must be in [0,1]");
    if (partial_bg_ratio <= 0.0 || partial_bg_ratio > 1.0)
        throw ConfigError("balance.partial_bg_ratio must be in (0,1]");
    if (thick_thin_ratio <= 0.0) throw ConfigError("balance.thick_thin_ratio must be > 0");
}

StratifiedPatches classify_level1(PatchSet& patches, const BinaryMask& gt,
                                  double mean_threshold) {
    require_same_dims(patches.source_width(), patches.source_height(), gt.width, gt.height,
                      "classify_level1");
    StratifiedPatches s;
    s.source = &patches;
    auto& records = patches.records();
    for (std::uint32_t i = 0; i < records.size(); ++i) {
        PatchRecord& rec = records[i];
        if (gt.at(rec.row, rec.col)) {
            rec.stratum = Stratum::Vessel;
            s.vessel.push_back(i);
        } else if (rec.patch_mean >= mean_threshold) {
            rec.stratum = Stratum::PartialBackground;
            s.partial_bg.push_back(i);
        } else {
            rec.stratum = Stratum::FullBackground;
            s.full_bg.push_back(i);
        }
    }
    return s;
}

StratifiedPatches classify_level2(PatchSet& patches, const BinaryMask& gt,
                                  const BinaryMask& thin, const BinaryMask& thick,
                                  double mean_threshold) {
    require_same_dims(patches.source_width(), patches.source_height(), gt.width, gt.height,
                      "classify_level2");
    require_same_dims(thin.width, thin.height, thick.width, thick.height, "classify_level2");
    for (size_t i = 0; i < thin.data.size(); ++i)
        if (thin.data[i] && thick.data[i])
            throw ConfigError("classify_level2: thin and thick masks overlap");

    StratifiedPatches s;
    s.source = &patches;
    auto& records = patches.records();
    for (std::uint32_t i = 0; i < records.size(); ++i) {
        PatchRecord& rec = records[i];
        if (thin.at(rec.row, rec.col)) {
            rec.stratum = Stratum::ThinVessel;
            s.thin.push_back(i);
        } else if (thick.at(rec.row, rec.col)) {
            rec.stratum = Stratum::ThickVessel;
            s.thick.push_back(i);
        } else if (!gt.at(rec.row, rec.col) && rec.patch_mean >= mean_threshold) {
            rec.stratum = Stratum::PartialBackground;
            s.partial_bg.push_back(i);
        } else if (!gt.at(rec.row, rec.col)) {
            rec.stratum = Stratum::FullBackground;
            s.full_bg.push_back(i);
        } else {
            // vessel pixel missing from both masks cannot happen when the
            // masks come from segregate_vessels of the same ground truth
            rec.stratum = Stratum::Vessel;
            s.vessel.push_back(i);
        }
    }
    return s;
}

namespace {

size_t rounded(double x) { return static_cast<size_t>(std::llround(x)); }

/// Draws `want` indices uniformly without replacement; clamps and warns when
/// the stratum is short.
std::vector<std::uint32_t> draw(const std::vector<std::uint32_t>& stratum, size_t want,
                                const char* name, Rng& rng,
                                std::vector<std::string>& warnings) {
    size_t take = want;
    if (take > stratum.size()) {
        warnings.push_back(std::string(name) + " stratum has " +
                           std::to_string(stratum.size()) + " records, wanted " +
                           std::to_string(want) + "; clamped");
        take = stratum.size();
    }
    const auto picks = rng.sample_indices(static_cast<std::uint32_t>(stratum.size()),
                                          static_cast<std::uint32_t>(take));
    std::vector<std::uint32_t> out(take);
    for (size_t i = 0; i < take; ++i) out[i] = stratum[picks[i]];
    return out;
}

/// Level-I background selection against a fixed vessel record list, shared by
/// both balancing levels.
BalanceOutcome select_background(const StratifiedPatches& s,
                                 std::vector<std::uint32_t> vessel_ids,
                                 const BalanceConfig& cfg, Rng& rng, BalanceReport report) {
    const size_t quota = vessel_ids.size();
    const size_t from_partial = rounded(cfg.partial_bg_ratio * static_cast<double>(quota));
    const size_t from_full = quota - std::min(from_partial, quota);

    auto partial = draw(s.partial_bg, std::min(from_partial, quota), "partial background",
                        rng, report.warnings);
    auto full = draw(s.full_bg, from_full, "full background", rng, report.warnings);

    std::vector<std::uint32_t> ids = std::move(vessel_ids);
    ids.insert(ids.end(), partial.begin(), partial.end());
    ids.insert(ids.end(), full.begin(), full.end());
    rng.shuffle(ids);

    report.partial_bg_after = partial.size();
    report.full_bg_after = full.size();

    const auto& src = *s.source;
    std::vector<PatchRecord> records;
    records.reserve(ids.size());
    for (auto id : ids) records.push_back(src.records()[id]);
    return {src.with_records(std::move(records)), std::move(report)};
}

BalanceReport report_before(const StratifiedPatches& s) {
    BalanceReport r;
    r.vessel_before = s.vessel.size() + s.thin.size() + s.thick.size();
    r.thin_before = s.thin.size();
    r.thick_before = s.thick.size();
    r.partial_bg_before = s.partial_bg.size();
    r.full_bg_before = s.full_bg.size();
    return r;
}

}  // namespace

BalanceOutcome balance_level1(const StratifiedPatches& s, const BalanceConfig& cfg) {
    cfg.validate();
    if (s.vessel.empty()) throw BalanceError("level-I balancing: no vessel patches");

    Rng rng(cfg.seed);
    BalanceReport report = report_before(s);
    report.vessel_after = s.vessel.size();
    return select_background(s, s.vessel, cfg, rng, std::move(report));
}

BalanceOutcome balance_level2(const StratifiedPatches& s, const BalanceConfig& cfg) {
    cfg.validate();
    if (s.thin.empty()) throw BalanceError("level-II balancing: no thin-vessel patches");

    Rng rng(cfg.seed);
    BalanceReport report = report_before(s);

    const size_t want_thick =
        cfg.legacy_thick_rule
            ? rounded(cfg.partial_bg_ratio * static_cast<double>(s.thick.size()))
            : rounded(cfg.thick_thin_ratio * static_cast<double>(s.thin.size()));
    auto thick_picks = draw(s.thick, want_thick, "thick vessel", rng, report.warnings);

    std::vector<std::uint32_t> vessel_ids = s.thin;
    vessel_ids.insert(vessel_ids.end(), thick_picks.begin(), thick_picks.end());

    report.thin_after = s.thin.size();
    report.thick_after = thick_picks.size();
    report.vessel_after = vessel_ids.size();
    return select_background(s, std::move(vessel_ids), cfg, rng, std::move(report));
}

}  // namespace vseg
