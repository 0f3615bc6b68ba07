#include "vesselseg/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace vseg {

void PreprocessConfig::validate() const {
    if (gcn_epsilon <= 0) throw ConfigError("preprocess.gcn_epsilon must be > 0");
    if (clahe_tile_rows < 1 || clahe_tile_cols < 1)
        throw ConfigError("preprocess.clahe_tiles must be >= 1x1");
    if (clahe_clip < 1.0) throw ConfigError("preprocess.clahe_clip must be >= 1.0");
    if (clahe_bins < 2) throw ConfigError("preprocess.clahe_bins must be >= 2");
    if (gamma <= 0) throw ConfigError("preprocess.gamma must be > 0");
}

GrayImage gcn(const GrayImage& img, double epsilon) {
    const size_t n = img.pixels();
    double sum = 0.0;
    for (float v : img.data) sum += v;
    const double mean = sum / static_cast<double>(n);

    double sq = 0.0;
    for (float v : img.data) {
        const double d = v - mean;
        sq += d * d;
    }
    const double stddev = std::max(std::sqrt(sq / static_cast<double>(n)), epsilon);

    const auto [min_it, max_it] = std::minmax_element(img.data.begin(), img.data.end());
    GrayImage out(img.width, img.height);
    if (*min_it == *max_it) return out;  // constant input maps to all zeros

    // z-scores are a positive affine map of x, so the min-max rescale can be
    // fused into one linear remap of the raw values
    const double lo = (*min_it - mean) / stddev;
    const double hi = (*max_it - mean) / stddev;
    const double scale = 1.0 / (hi - lo);
    const std::int64_t count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < count; ++i) {
        const double z = (img.data[i] - mean) / stddev;
        out.data[i] = static_cast<float>((z - lo) * scale);
    }
    return out;
}

namespace {

inline int bin_of(float x, int bins) {
    int b = static_cast<int>(x * static_cast<float>(bins));
    if (b < 0) b = 0;
    if (b >= bins) b = bins - 1;
    return b;
}

}  // namespace

GrayImage clahe(const GrayImage& img, const PreprocessConfig& cfg) {
    cfg.validate();
    const int rows = cfg.clahe_tile_rows, cols = cfg.clahe_tile_cols;
    const int bins = cfg.clahe_bins;
    if (rows > img.height || cols > img.width)
        throw ConfigError("preprocess.clahe_tiles: tile grid exceeds image dimensions");

    // tile r spans [r*H/rows, (r+1)*H/rows)
    std::vector<int> row_start(rows + 1), col_start(cols + 1);
    for (int r = 0; r <= rows; ++r)
        row_start[r] = static_cast<int>(static_cast<std::int64_t>(r) * img.height / rows);
    for (int c = 0; c <= cols; ++c)
        col_start[c] = static_cast<int>(static_cast<std::int64_t>(c) * img.width / cols);

    // per-tile clipped CDF mapping: map[tile][bin] -> equalized level in (0,1]
    std::vector<std::vector<float>> maps(static_cast<size_t>(rows) * cols);
#pragma omp parallel for collapse(2) schedule(static)
    for (int tr = 0; tr < rows; ++tr) {
        for (int tc = 0; tc < cols; ++tc) {
            std::vector<double> hist(bins, 0.0);
            const int y0 = row_start[tr], y1 = row_start[tr + 1];
            const int x0 = col_start[tc], x1 = col_start[tc + 1];
            for (int y = y0; y < y1; ++y)
                for (int x = x0; x < x1; ++x) hist[bin_of(img.at(y, x), bins)] += 1.0;

            const double tile_pixels = static_cast<double>(y1 - y0) * (x1 - x0);
            const double limit = cfg.clahe_clip * tile_pixels / bins;
            double excess = 0.0;
            for (double& h : hist) {
                if (h > limit) {
                    excess += h - limit;
                    h = limit;
                }
            }
            const double share = excess / bins;
            for (double& h : hist) h += share;

            std::vector<float> map(bins);
            double cum = 0.0;
            for (int b = 0; b < bins; ++b) {
                cum += hist[b];
                map[b] = static_cast<float>(cum / tile_pixels);
            }
            maps[static_cast<size_t>(tr) * cols + tc] = std::move(map);
        }
    }

    // tile centers for the bilinear blend
    std::vector<double> cy(rows), cx(cols);
    for (int r = 0; r < rows; ++r) cy[r] = 0.5 * (row_start[r] + row_start[r + 1] - 1);
    for (int c = 0; c < cols; ++c) cx[c] = 0.5 * (col_start[c] + col_start[c + 1] - 1);

    // per-coordinate neighbor pair and weight, clamped at the borders
    const auto axis_blend = [](const std::vector<double>& centers, int coord, int& lo,
                               double& w) {
        const int n = static_cast<int>(centers.size());
        if (coord <= centers.front() || n == 1) {
            lo = 0;
            w = 0.0;
        } else if (coord >= centers.back()) {
            lo = n - 2 >= 0 ? n - 2 : 0;
            w = n >= 2 ? 1.0 : 0.0;
        } else {
            lo = static_cast<int>(std::upper_bound(centers.begin(), centers.end(),
                                                   static_cast<double>(coord)) -
                                  centers.begin()) -
                 1;
            w = (coord - centers[lo]) / (centers[lo + 1] - centers[lo]);
        }
    };

    std::vector<int> row_lo(img.height), col_lo(img.width);
    std::vector<double> row_w(img.height), col_w(img.width);
    for (int y = 0; y < img.height; ++y) axis_blend(cy, y, row_lo[y], row_w[y]);
    for (int x = 0; x < img.width; ++x) axis_blend(cx, x, col_lo[x], col_w[x]);

    GrayImage out(img.width, img.height);
#pragma omp parallel for schedule(static)
    for (int y = 0; y < img.height; ++y) {
        const int tr0 = row_lo[y];
        const int tr1 = std::min(tr0 + 1, rows - 1);
        const double wy = row_w[y];
        for (int x = 0; x < img.width; ++x) {
            const int tc0 = col_lo[x];
            const int tc1 = std::min(tc0 + 1, cols - 1);
            const double wx = col_w[x];
            const int b = bin_of(img.at(y, x), bins);
            const double top = (1.0 - wx) * maps[static_cast<size_t>(tr0) * cols + tc0][b] +
                               wx * maps[static_cast<size_t>(tr0) * cols + tc1][b];
            const double bot = (1.0 - wx) * maps[static_cast<size_t>(tr1) * cols + tc0][b] +
                               wx * maps[static_cast<size_t>(tr1) * cols + tc1][b];
            out.at(y, x) = static_cast<float>((1.0 - wy) * top + wy * bot);
        }
    }
    return out;
}

GrayImage gamma_correct(const GrayImage& img, double gamma) {
    if (gamma <= 0) throw ConfigError("gamma must be > 0");
    GrayImage out(img.width, img.height);
    const std::int64_t count = static_cast<std::int64_t>(img.pixels());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < count; ++i) {
        const float x = std::min(1.0f, std::max(0.0f, img.data[i]));
        out.data[i] = std::pow(x, static_cast<float>(gamma));
    }
    return out;
}

GrayImage preprocess_image(const RgbImage& img, const PreprocessConfig& cfg) {
    cfg.validate();
    GrayImage g = extract_channel(img, Channel::Green);
    g = gcn(g, cfg.gcn_epsilon);
    g = clahe(g, cfg);
    return gamma_correct(g, cfg.gamma);
}

}  // namespace vseg
