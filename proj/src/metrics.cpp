#include "dctrec/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dctrec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_same_size(const GrayImage& a, const GrayImage& b) {
  if (a.width() != b.width() || a.height() != b.height())
    throw Error(ErrorCode::DimensionMismatch,
                "images differ in size: " + std::to_string(a.width()) + "x" +
                    std::to_string(a.height()) + " vs " +
                    std::to_string(b.width()) + "x" +
                    std::to_string(b.height()));
}

double psnr_from_mse(double mse, int max_value) {
  if (mse == 0.0) return kInf;
  return 10.0 * std::log10(static_cast<double>(max_value) * max_value / mse);
}

}  // namespace

double psnr(const GrayImage& a, const GrayImage& b) {
  require_same_size(a, b);
  double se = 0.0;
  const auto& pa = a.pixels();
  const auto& pb = b.pixels();
  for (std::size_t i = 0; i < pa.size(); ++i) {
    double d = static_cast<double>(pa[i]) - pb[i];
    se += d * d;
  }
  return psnr_from_mse(se / pa.size(), a.max_value());
}

double shifted_psnr(const GrayImage& a, const GrayImage& b) {
  require_same_size(a, b);
  const auto& pa = a.pixels();
  const auto& pb = b.pixels();
  const double n = static_cast<double>(pa.size());

  // MSE under shift s is (sum d^2 - 2 s sum d + s^2 n) / n.
  double sum_d = 0.0, sum_d2 = 0.0;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    double d = static_cast<double>(pa[i]) - pb[i];
    sum_d += d;
    sum_d2 += d * d;
  }
  double best_mse = kInf;
  for (int s = -a.max_value(); s <= a.max_value(); ++s)
    best_mse = std::min(best_mse, (sum_d2 - 2.0 * s * sum_d + s * s * n) / n);
  return psnr_from_mse(std::max(best_mse, 0.0), a.max_value());
}

double ssim(const GrayImage& a, const GrayImage& b) {
  require_same_size(a, b);
  constexpr int kWin = 11;
  if (a.width() < kWin || a.height() < kWin)
    throw Error(ErrorCode::TooSmall, "SSIM needs at least 11x11 images");

  constexpr double kSigma = 1.5;
  const double l = a.max_value();
  const double c1 = (0.01 * l) * (0.01 * l);
  const double c2 = (0.03 * l) * (0.03 * l);

  double g[kWin];
  double gsum = 0.0;
  for (int i = 0; i < kWin; ++i) {
    double d = i - (kWin - 1) / 2.0;
    g[i] = std::exp(-d * d / (2.0 * kSigma * kSigma));
    gsum += g[i];
  }
  for (double& v : g) v /= gsum;

  const int w = a.width(), h = a.height();
  const int ow = w - kWin + 1, oh = h - kWin + 1;

  // Separable filtering of the five local moments, rows then columns.
  enum { X, Y, XX, YY, XY, NMOM };
  std::vector<double> rowpass(static_cast<std::size_t>(NMOM) * h * ow);
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < ow; ++j) {
      double m[NMOM] = {};
      for (int t = 0; t < kWin; ++t) {
        double xa = a.at(i, j + t);
        double xb = b.at(i, j + t);
        m[X] += g[t] * xa;
        m[Y] += g[t] * xb;
        m[XX] += g[t] * xa * xa;
        m[YY] += g[t] * xb * xb;
        m[XY] += g[t] * xa * xb;
      }
      for (int q = 0; q < NMOM; ++q)
        rowpass[(static_cast<std::size_t>(q) * h + i) * ow + j] = m[q];
    }
  }

  double total = 0.0;
  for (int i = 0; i < oh; ++i) {
    for (int j = 0; j < ow; ++j) {
      double m[NMOM] = {};
      for (int t = 0; t < kWin; ++t)
        for (int q = 0; q < NMOM; ++q)
          m[q] += g[t] *
                  rowpass[(static_cast<std::size_t>(q) * h + i + t) * ow + j];
      double var_x = m[XX] - m[X] * m[X];
      double var_y = m[YY] - m[Y] * m[Y];
      double cov = m[XY] - m[X] * m[Y];
      total += ((2.0 * m[X] * m[Y] + c1) * (2.0 * cov + c2)) /
               ((m[X] * m[X] + m[Y] * m[Y] + c1) * (var_x + var_y + c2));
    }
  }
  return total / (static_cast<double>(ow) * oh);
}

double mean_absolute_error(const GrayImage& a, const GrayImage& b) {
  require_same_size(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.pixels().size(); ++i)
    s += std::abs(static_cast<double>(a.pixels()[i]) - b.pixels()[i]);
  return s / a.pixels().size();
}

QualityScore score_pair(const GrayImage& original,
                        const GrayImage& candidate) {
  return QualityScore{psnr(original, candidate),
                      shifted_psnr(original, candidate),
                      ssim(original, candidate),
                      mean_absolute_error(original, candidate)};
}

namespace {

MetricSummary summarize(std::vector<double> values) {
  MetricSummary s;
  double sum = 0.0;
  int finite = 0;
  s.min = kInf;
  s.max = -kInf;
  for (double v : values) {
    if (std::isinf(v)) {
      ++s.infinity_count;
    } else {
      sum += v;
      ++finite;
    }
    s.min = std::min(s.min, v);
    s.max = std::max(s.max, v);
  }
  s.mean = finite ? sum / finite : kInf;
  std::sort(values.begin(), values.end());
  std::size_t half = values.size() / 2;
  s.median = values.size() % 2 == 1
                 ? values[half]
                 : 0.5 * (values[half - 1] + values[half]);
  return s;
}

}  // namespace

AggregateScores aggregate(const std::vector<QualityScore>& scores) {
  if (scores.empty())
    throw Error(ErrorCode::EmptyInput, "no scores to aggregate");
  std::vector<double> p, ps, ss, mae;
  for (const auto& s : scores) {
    p.push_back(s.psnr);
    ps.push_back(s.psnr_shifted);
    ss.push_back(s.ssim);
    mae.push_back(s.mae);
  }
  AggregateScores agg;
  agg.psnr = summarize(std::move(p));
  agg.psnr_shifted = summarize(std::move(ps));
  agg.ssim = summarize(std::move(ss));
  agg.mae = summarize(std::move(mae));
  agg.count = static_cast<int>(scores.size());
  return agg;
}

}  // namespace dctrec
