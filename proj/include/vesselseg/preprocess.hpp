#pragma once

#include "vesselseg/imageio.hpp"
#include "vesselseg/types.hpp"

namespace vseg {

/// Parameters of the contrast enhancement chain. The chain runs on the green
/// channel in fixed order: global contrast normalization, CLAHE, gamma.
struct PreprocessConfig {
    double gcn_epsilon = 1e-8;  // lower bound on the standard deviation
    int clahe_tile_rows = 8;
    int clahe_tile_cols = 8;
    double clahe_clip = 2.0;  // clip limit as a multiple of the uniform bin height
    int clahe_bins = 256;
    double gamma = 0.8;

    void validate() const;
};

/// Z-scores the whole image with a floored standard deviation, then rescales
/// affinely so min maps to 0 and max to 1. A constant image maps to all
/// zeros. The rescale keeps the output in a fixed domain for the CLAHE bins.
GrayImage gcn(const GrayImage& img, double epsilon);

/// Contrast-limited adaptive histogram equalization. Per-tile histograms over
/// [0,1] are clipped at clip * tile_pixels / bins, clipped excess is spread
/// uniformly over all bins, and each pixel is remapped through a bilinear
/// blend of the four surrounding tile CDFs (edge tiles clamped).
GrayImage clahe(const GrayImage& img, const PreprocessConfig& cfg);

/// Elementwise clamp(x,0,1)^gamma.
GrayImage gamma_correct(const GrayImage& img, double gamma);

/// Green channel -> gcn -> clahe -> gamma, in that order.
GrayImage preprocess_image(const RgbImage& img, const PreprocessConfig& cfg);

}  // namespace vseg
