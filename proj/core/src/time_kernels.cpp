#include "echo2d/time_kernels.hpp"

#include <algorithm>
#include <cmath>

namespace echo2d::kernels {

namespace {

constexpr double kSeriesRadius = 0.5;
const std::complex<double> kI{0.0, 1.0};

// Taylor series of phase_average; 20 terms reach 1e-17 below kSeriesRadius.
std::complex<double> phase_average_series(double x) {
  std::complex<double> term = 1.0;
  std::complex<double> sum = 1.0;
  for (int k = 1; k < 20; ++k) {
    term *= kI * x / static_cast<double>(k + 1);
    sum += term;
  }
  return sum;
}

// F(x,y) = sum_{p,q} (ix)^p (iy)^q / (p! q! (q+1)(p+q+2)).
std::complex<double> ordered_series(double x, double y) {
  std::complex<double> sum = 0.0;
  std::complex<double> xp = 1.0;
  for (int p = 0; p < 20; ++p) {
    if (p > 0) xp *= kI * x / static_cast<double>(p);
    std::complex<double> yq = 1.0;
    for (int q = 0; q < 20; ++q) {
      if (q > 0) yq *= kI * y / static_cast<double>(q);
      sum += xp * yq / static_cast<double>((q + 1) * (p + q + 2));
    }
  }
  return sum;
}

}  // namespace

std::complex<double> phase_average(double x) {
  if (std::abs(x) < kSeriesRadius) return phase_average_series(x);
  return (std::polar(1.0, x) - 1.0) / (kI * x);
}

std::complex<double> first_order(double a, double t) { return t * phase_average(a * t); }

std::complex<double> ordered_second_order(double a, double b, double t) {
  const double x = a * t;
  const double y = b * t;
  std::complex<double> f;
  if (std::max(std::abs(x), std::abs(y)) < kSeriesRadius) {
    f = ordered_series(x, y);
  } else if (std::abs(y) >= std::abs(x)) {
    f = (phase_average(x + y) - phase_average(x)) / (kI * y);
  } else {
    f = (std::polar(1.0, x) * phase_average(y) - phase_average(x + y)) / (kI * x);
  }
  return t * t * f;
}

}  // namespace echo2d::kernels
