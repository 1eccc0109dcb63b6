#pragma once

#include <vector>

#include "dctrec/image.hpp"

namespace dctrec {

struct QualityScore {
  double psnr = 0.0;          // dB, +inf for identical images
  double psnr_shifted = 0.0;  // best over integer global shifts
  double ssim = 0.0;
  double mae = 0.0;
};

/// 10 log10(x_max^2 / MSE); +inf when the images are identical.
double psnr(const GrayImage& a, const GrayImage& b);

/// Best PSNR over all integer global intensity shifts of b in [-255, 255],
/// discounting pure global-intensity error. Exhaustive search.
double shifted_psnr(const GrayImage& a, const GrayImage& b);

/// Mean local SSIM, 11x11 Gaussian window sigma 1.5, K1=0.01, K2=0.03,
/// L = 255, windows fully inside the image.
double ssim(const GrayImage& a, const GrayImage& b);

double mean_absolute_error(const GrayImage& a, const GrayImage& b);

QualityScore score_pair(const GrayImage& original, const GrayImage& candidate);

struct MetricSummary {
  double mean = 0.0;    // over finite entries
  double median = 0.0;  // over all entries
  double min = 0.0;
  double max = 0.0;
  int infinity_count = 0;
};

struct AggregateScores {
  MetricSummary psnr;
  MetricSummary psnr_shifted;
  MetricSummary ssim;
  MetricSummary mae;
  int count = 0;
};

AggregateScores aggregate(const std::vector<QualityScore>& scores);

}  // namespace dctrec
