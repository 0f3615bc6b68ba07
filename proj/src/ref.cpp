#include "vesselseg/ref.hpp"

#include <algorithm>
#include <cmath>

namespace vseg::ref {

GrayImage gcn(const GrayImage& img, double epsilon) {
    double sum = 0.0;
    for (float v : img.data) sum += v;
    const double mean = sum / static_cast<double>(img.pixels());
    double sq = 0.0;
    for (float v : img.data) sq += (v - mean) * (v - mean);
    const double sd = std::max(std::sqrt(sq / static_cast<double>(img.pixels())), epsilon);

    std::vector<double> z(img.pixels());
    for (size_t i = 0; i < z.size(); ++i) z[i] = (img.data[i] - mean) / sd;
    const double lo = *std::min_element(z.begin(), z.end());
    const double hi = *std::max_element(z.begin(), z.end());

    GrayImage out(img.width, img.height);
    if (hi == lo) return out;
    for (size_t i = 0; i < z.size(); ++i)
        out.data[i] = static_cast<float>((z[i] - lo) / (hi - lo));
    return out;
}

namespace {
int bin_of(float x, int bins) {
    int b = static_cast<int>(x * static_cast<float>(bins));
    return std::clamp(b, 0, bins - 1);
}
}  // namespace

GrayImage equalize_hist(const GrayImage& img, int bins) {
    std::vector<double> hist(bins, 0.0);
    for (float v : img.data) hist[bin_of(v, bins)] += 1.0;
    std::vector<double> cdf(bins, 0.0);
    double cum = 0.0;
    for (int b = 0; b < bins; ++b) {
        cum += hist[b];
        cdf[b] = cum / static_cast<double>(img.pixels());
    }
    GrayImage out(img.width, img.height);
    for (size_t i = 0; i < img.pixels(); ++i)
        out.data[i] = static_cast<float>(cdf[bin_of(img.data[i], bins)]);
    return out;
}

std::vector<double> tile_histogram(const GrayImage& img, int y0, int y1, int x0, int x1,
                                   int bins) {
    std::vector<double> hist(bins, 0.0);
    for (int y = y0; y < y1; ++y)
        for (int x = x0; x < x1; ++x) hist[bin_of(img.at(y, x), bins)] += 1.0;
    return hist;
}

GrayImage clahe(const GrayImage& img, const PreprocessConfig& cfg) {
    const int rows = cfg.clahe_tile_rows, cols = cfg.clahe_tile_cols, bins = cfg.clahe_bins;
    std::vector<int> rs(rows + 1), cs(cols + 1);
    for (int r = 0; r <= rows; ++r) rs[r] = static_cast<int>((std::int64_t)r * img.height / rows);
    for (int c = 0; c <= cols; ++c) cs[c] = static_cast<int>((std::int64_t)c * img.width / cols);

    std::vector<std::vector<float>> maps(static_cast<size_t>(rows) * cols);
    for (int tr = 0; tr < rows; ++tr) {
        for (int tc = 0; tc < cols; ++tc) {
            auto hist = tile_histogram(img, rs[tr], rs[tr + 1], cs[tc], cs[tc + 1], bins);
            const double tile_pixels = static_cast<double>(rs[tr + 1] - rs[tr]) *
                                       (cs[tc + 1] - cs[tc]);
            const double limit = cfg.clahe_clip * tile_pixels / bins;
            double excess = 0.0;
            for (double& h : hist) {
                if (h > limit) {
                    excess += h - limit;
                    h = limit;
                }
            }
            for (double& h : hist) h += excess / bins;
            std::vector<float> map(bins);
            double cum = 0.0;
            for (int b = 0; b < bins; ++b) {
                cum += hist[b];
                map[b] = static_cast<float>(cum / tile_pixels);
            }
            maps[static_cast<size_t>(tr) * cols + tc] = std::move(map);
        }
    }

    std::vector<double> cy(rows), cx(cols);
    for (int r = 0; r < rows; ++r) cy[r] = 0.5 * (rs[r] + rs[r + 1] - 1);
    for (int c = 0; c < cols; ++c) cx[c] = 0.5 * (cs[c] + cs[c + 1] - 1);

    GrayImage out(img.width, img.height);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            int tr0, tc0;
            double wy, wx;
            if (rows == 1 || y <= cy[0]) {
                tr0 = 0;
                wy = 0.0;
            } else if (y >= cy[rows - 1]) {
                tr0 = rows - 2;
                wy = 1.0;
            } else {
                tr0 = 0;
                while (cy[tr0 + 1] <= y) ++tr0;
                wy = (y - cy[tr0]) / (cy[tr0 + 1] - cy[tr0]);
            }
            if (cols == 1 || x <= cx[0]) {
                tc0 = 0;
                wx = 0.0;
            } else if (x >= cx[cols - 1]) {
                tc0 = cols - 2;
                wx = 1.0;
            } else {
                tc0 = 0;
                while (cx[tc0 + 1] <= x) ++tc0;
                wx = (x - cx[tc0]) / (cx[tc0 + 1] - cx[tc0]);
            }
            const int tr1 = std::min(tr0 + 1, rows - 1), tc1 = std::min(tc0 + 1, cols - 1);
            const int b = bin_of(img.at(y, x), bins);
            const double top = (1 - wx) * maps[(size_t)tr0 * cols + tc0][b] +
                               wx * maps[(size_t)tr0 * cols + tc1][b];
            const double bot = (1 - wx) * maps[(size_t)tr1 * cols + tc0][b] +
                               wx * maps[(size_t)tr1 * cols + tc1][b];
            out.at(y, x) = static_cast<float>((1 - wy) * top + wy * bot);
        }
    }
    return out;
}

BinaryMask erode(const BinaryMask& mask, const StructuringElement& se) {
    BinaryMask out(mask.width, mask.height);
    for (int y = 0; y < mask.height; ++y) {
        for (int x = 0; x < mask.width; ++x) {
            bool all = true;
            for (int sy = 0; sy < se.height && all; ++sy) {
                for (int sx = 0; sx < se.width && all; ++sx) {
                    if (!se.at(sy, sx)) continue;
                    const int yy = y + sy - se.anchor_row;
                    const int xx = x + sx - se.anchor_col;
                    const bool in = yy >= 0 && yy < mask.height && xx >= 0 && xx < mask.width;
                    if (!in || !mask.at(yy, xx)) all = false;
                }
            }
            out.set(y, x, all);
        }
    }
    return out;
}

BinaryMask dilate(const BinaryMask& mask, const StructuringElement& se) {
    // stamp the element over every set pixel
    BinaryMask out(mask.width, mask.height);
    for (int y = 0; y < mask.height; ++y) {
        for (int x = 0; x < mask.width; ++x) {
            if (!mask.at(y, x)) continue;
            for (int sy = 0; sy < se.height; ++sy) {
                for (int sx = 0; sx < se.width; ++sx) {
                    if (!se.at(sy, sx)) continue;
                    const int yy = y - (sy - se.anchor_row);
                    const int xx = x - (sx - se.anchor_col);
                    if (yy >= 0 && yy < mask.height && xx >= 0 && xx < mask.width)
                        out.set(yy, xx, true);
                }
            }
        }
    }
    return out;
}

BinaryMask open(const BinaryMask& mask, const StructuringElement& se) {
    return dilate(erode(mask, se), se);
}

ConfusionCounts confusion(const BinaryMask& pred, const BinaryMask& gt, const BinaryMask* roi) {
    ConfusionCounts c;
    for (size_t i = 0; i < pred.data.size(); ++i) {
        if (roi && !roi->data[i]) continue;
        const bool p = pred.data[i] != 0, g = gt.data[i] != 0;
        if (p && g)
            ++c.tp;
        else if (p && !g)
            ++c.fp;
        else if (!p && g)
            ++c.fn;
        else
            ++c.tn;
    }
    return c;
}

double auc_all_pairs(const GrayImage& scores, const BinaryMask& gt, const BinaryMask* roi) {
    std::vector<float> pos, neg;
    for (size_t i = 0; i < scores.data.size(); ++i) {
        if (roi && !roi->data[i]) continue;
        (gt.data[i] ? pos : neg).push_back(scores.data[i]);
    }
    double wins = 0.0;
    for (float p : pos) {
        for (float q : neg) {
            if (p > q)
                wins += 1.0;
            else if (p == q)
                wins += 0.5;
        }
    }
    return wins / (static_cast<double>(pos.size()) * static_cast<double>(neg.size()));
}

void conv2d_naive(const float* in, int n, int ci, int h, int w, const float* weights,
                  const float* bias, int co, int kernel, int pad, float* out) {
    for (int b = 0; b < n; ++b) {
        for (int oc = 0; oc < co; ++oc) {
            for (int y = 0; y < h; ++y) {
                for (int x = 0; x < w; ++x) {
                    double acc = bias ? bias[oc] : 0.0;
                    for (int ic = 0; ic < ci; ++ic) {
                        for (int ky = 0; ky < kernel; ++ky) {
                            for (int kx = 0; kx < kernel; ++kx) {
                                const int yy = y + ky - pad, xx = x + kx - pad;
                                if (yy < 0 || yy >= h || xx < 0 || xx >= w) continue;
                                const float v =
                                    in[(((size_t)b * ci + ic) * h + yy) * w + xx];
                                const float wv =
                                    weights[(((size_t)oc * ci + ic) * kernel + ky) * kernel +
                                            kx];
                                acc += static_cast<double>(v) * wv;
                            }
                        }
                    }
                    out[(((size_t)b * co + oc) * h + y) * w + x] = static_cast<float>(acc);
                }
            }
        }
    }
}

}  // namespace vseg::ref
