#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "echo2d/response.hpp"

namespace echo2d {

enum class Window { None, Cosine, Exponential };

const char* to_string(Window w);
Window window_from_string(const std::string& name);

struct SpectrumOptions {
  Window window = Window::Cosine;
  double exponential_tau = 0.0;  // fs, Exponential only
  int zero_pad = 4;
  /// Centre of each frequency axis (cm^-1). The sampled band is
  /// [origin - nu_Nyquist, origin + nu_Nyquist); content outside aliases into it.
  double origin1 = 0.0;
  double origin3 = 0.0;

  void validate() const;
};

/// S(w1, w3) = dt1 dt3 sum' R(t1,t3) e^{-i w1 t1} e^{+i w3 t3} over t1, t3 >= 0,
/// trapezoidal end weights. Rows follow omega1, columns omega3 (cm^-1, ascending).
struct Spectrum2D {
  Eigen::VectorXd omega1;
  Eigen::VectorXd omega3;
  double t2 = 0.0;
  Eigen::MatrixXcd values;  // fs^2
  SpectrumOptions options;

  /// Spacing of the unpadded transform (cm^-1).
  double intrinsic_bin1 = 0.0;
  double intrinsic_bin3 = 0.0;
};

/// Window times trapezoid weight at sample i of n.
double sample_weight(const SpectrumOptions& options, int i, int n, double dt);

Spectrum2D transform(const ResponseGrid& grid, const SpectrumOptions& options);

struct Peak {
  double omega1 = 0.0;
  double omega3 = 0.0;
  double height = 0.0;  // signed Re S
  int row = 0;
  int col = 0;
};

/// Strict 3x3 local maxima of |Re S| away from the borders, sorted by |height|,
/// at most n_peaks (0 = all), dropping those below min_relative * max |Re S|.
std::vector<Peak> extract_peaks(const Spectrum2D& spectrum, int n_peaks, double min_relative = 0.0);

/// Mean of Re S over the cells within half_width (cm^-1) of (omega1, omega3).
double region_intensity(const Spectrum2D& spectrum, double omega1, double omega3, double half_width);

}  // namespace echo2d
