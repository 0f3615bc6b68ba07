#pragma once

#include <utility>
#include <vector>

#include "vesselseg/metrics.hpp"
#include "vesselseg/morphology.hpp"
#include "vesselseg/preprocess.hpp"
#include "vesselseg/types.hpp"

// Plain serial implementations of the parallel kernels, written directly from
// the operation definitions. They back the unit-test oracles and the
// serial-vs-parallel benchmark; none of this code is shared with the OpenMP
// paths in src/.
namespace vseg::ref {

GrayImage gcn(const GrayImage& img, double epsilon);

/// Plain global histogram equalization (single histogram, no clipping).
GrayImage equalize_hist(const GrayImage& img, int bins);

GrayImage clahe(const GrayImage& img, const PreprocessConfig& cfg);

/// Raw histogram of one tile, counted pixel by pixel.
std::vector<double> tile_histogram(const GrayImage& img, int y0, int y1, int x0, int x1,
                                   int bins);

BinaryMask erode(const BinaryMask& mask, const StructuringElement& se);
BinaryMask dilate(const BinaryMask& mask, const StructuringElement& se);
BinaryMask open(const BinaryMask& mask, const StructuringElement& se);

ConfusionCounts confusion(const BinaryMask& pred, const BinaryMask& gt,
                          const BinaryMask* roi = nullptr);

/// All-pairs AUC: counts positive/negative score pairs won, ties half.
double auc_all_pairs(const GrayImage& scores, const BinaryMask& gt,
                     const BinaryMask* roi = nullptr);

/// Naive direct convolution, NCHW, zero padding pad on each side.
/// out shape: (n, co, h, w) with h,w unchanged when pad == kernel/2.
void conv2d_naive(const float* in, int n, int ci, int h, int w, const float* weights,
                  const float* bias, int co, int kernel, int pad, float* out);

}  // namespace vseg::ref
