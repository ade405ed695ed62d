#include "echo2d/spectrum.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <mutex>
#include <numbers>

#include <fftw3.h>

#include "echo2d/error.hpp"
#include "echo2d/units.hpp"

namespace echo2d {

using cplx = std::complex<double>;

const char* to_string(Window w) {
  switch (w) {
    case Window::None: return "none";
    case Window::Cosine: return "cosine";
    case Window::Exponential: return "exponential";
  }
  return "unknown";
}

Window window_from_string(const std::string& name) {
  std::string n = name;
  std::transform(n.begin(), n.end(), n.begin(), [](unsigned char c) { return std::tolower(c); });
  if (n == "none") return Window::None;
  if (n == "cosine") return Window::Cosine;
  if (n == "exponential") return Window::Exponential;
  throw ValidationError("grid.window: unknown window '" + name + "'");
}

void SpectrumOptions::validate() const {
  if (zero_pad < 1) throw ValidationError("grid.zero_pad: must be >= 1");
  if (window == Window::Exponential && !(exponential_tau > 0.0))
    throw ValidationError("grid.window_tau: must be positive for the exponential window");
}

double sample_weight(const SpectrumOptions& options, int i, int n, double dt) {
  double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
  const double t = i * dt;
  const double tmax = (n - 1) * dt;
  switch (options.window) {
    case Window::None: break;
    case Window::Cosine: w *= tmax > 0.0 ? std::cos(std::numbers::pi * t / (2.0 * tmax)) : 1.0; break;
    case Window::Exponential: w *= std::exp(-t / options.exponential_tau); break;
  }
  return w;
}

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

double axis_step(const Eigen::VectorXd& axis) {
  if (axis.size() < 2) throw ValidationError("transform: each time axis needs at least two samples");
  const double dt = axis(1) - axis(0);
  if (!(dt > 0.0) || axis(0) != 0.0) throw ValidationError("transform: time axes must start at 0 and increase");
  for (Eigen::Index i = 1; i < axis.size(); ++i)
    if (std::abs(axis(i) - axis(0) - i * dt) > 1e-9 * dt * static_cast<double>(axis.size()))
      throw ValidationError("transform: time axis is not uniform");
  return dt;
}

Eigen::VectorXd frequency_axis(int npad, double dt_fs, double origin) {
  const double step = 1.0 / (units::kSpeedOfLight * npad * dt_fs);
  Eigen::VectorXd axis(npad);
  for (int p = 0; p < npad; ++p) axis(p) = origin + (p - npad / 2) * step;
  return axis;
}

}  // namespace

Spectrum2D transform(const ResponseGrid& grid, const SpectrumOptions& options) {
  options.validate();
  const double dt1 = axis_step(grid.t1_axis);
  const double dt3 = axis_step(grid.t3_axis);
  const int n1 = static_cast<int>(grid.t1_axis.size());
  const int n3 = static_cast<int>(grid.t3_axis.size());
  if (grid.values.rows() != n1 || grid.values.cols() != n3)
    throw ValidationError("transform: values do not match the time axes");
  const int p1 = n1 * options.zero_pad;
  const int p3 = n3 * options.zero_pad;

  // Row-major [t1][t3] buffer; the origin shift moves each band centre to zero.
  std::vector<cplx> buf(static_cast<std::size_t>(p1) * p3, cplx(0.0));
  for (int i = 0; i < n1; ++i) {
    const double w1 = sample_weight(options, i, n1, dt1);
    const cplx s1 = std::polar(w1, -options.origin1 * units::fs_to_cm(grid.t1_axis(i)));
    for (int j = 0; j < n3; ++j) {
      const double w3 = sample_weight(options, j, n3, dt3);
      const cplx s3 = std::polar(w3, options.origin3 * units::fs_to_cm(grid.t3_axis(j)));
      buf[static_cast<std::size_t>(i) * p3 + j] = grid.values(i, j) * s1 * s3;
    }
  }

  auto* data = reinterpret_cast<fftw_complex*>(buf.data());
  fftw_plan along_t3;
  fftw_plan along_t1;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    int len3 = p3;
    int len1 = p1;
    along_t3 = fftw_plan_many_dft(1, &len3, p1, data, nullptr, 1, p3, data, nullptr, 1, p3, FFTW_BACKWARD,
                                  FFTW_ESTIMATE);
    along_t1 = fftw_plan_many_dft(1, &len1, p3, data, nullptr, p3, 1, data, nullptr, p3, 1, FFTW_FORWARD,
                                  FFTW_ESTIMATE);
  }
  fftw_execute(along_t3);
  fftw_execute(along_t1);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(along_t3);
    fftw_destroy_plan(along_t1);
  }

  Spectrum2D out;
  out.omega1 = frequency_axis(p1, dt1, options.origin1);
  out.omega3 = frequency_axis(p3, dt3, options.origin3);
  out.t2 = grid.t2;
  out.options = options;
  out.intrinsic_bin1 = 1.0 / (units::kSpeedOfLight * n1 * dt1);
  out.intrinsic_bin3 = 1.0 / (units::kSpeedOfLight * n3 * dt3);
  out.values.resize(p1, p3);
  const double scale = dt1 * dt3;
  for (int a = 0; a < p1; ++a) {
    const int k1 = (a + p1 / 2) % p1;
    for (int b = 0; b < p3; ++b) {
      const int k3 = (b + p3 / 2) % p3;
      out.values(a, b) = scale * buf[static_cast<std::size_t>(k1) * p3 + k3];
    }
  }
  return out;
}

std::vector<Peak> extract_peaks(const Spectrum2D& spectrum, int n_peaks, double min_relative) {
  const Eigen::MatrixXd mag = spectrum.values.real().cwiseAbs();
  const double top = mag.size() > 0 ? mag.maxCoeff() : 0.0;
  std::vector<Peak> peaks;
  for (Eigen::Index a = 1; a + 1 < mag.rows(); ++a) {
    for (Eigen::Index b = 1; b + 1 < mag.cols(); ++b) {
      const double v = mag(a, b);
      if (v <= 0.0 || v < min_relative * top) continue;
      bool is_max = true;
      for (int da = -1; da <= 1 && is_max; ++da)
        for (int db = -1; db <= 1; ++db)
          if ((da != 0 || db != 0) && mag(a + da, b + db) >= v) {
            is_max = false;
            break;
          }
      if (is_max)
        peaks.push_back({spectrum.omega1(a), spectrum.omega3(b), spectrum.values(a, b).real(), static_cast<int>(a),
                         static_cast<int>(b)});
    }
  }
  std::stable_sort(peaks.begin(), peaks.end(),
                   [](const Peak& x, const Peak& y) { return std::abs(x.height) > std::abs(y.height); });
  if (n_peaks > 0 && static_cast<int>(peaks.size()) > n_peaks) peaks.resize(static_cast<std::size_t>(n_peaks));
  return peaks;
}

double region_intensity(const Spectrum2D& spectrum, double omega1, double omega3, double half_width) {
  double sum = 0.0;
  int count = 0;
  for (Eigen::Index a = 0; a < spectrum.omega1.size(); ++a) {
    if (std::abs(spectrum.omega1(a) - omega1) > half_width) continue;
    for (Eigen::Index b = 0; b < spectrum.omega3.size(); ++b) {
      if (std::abs(spectrum.omega3(b) - omega3) > half_width) continue;
      sum += spectrum.values(a, b).real();
      ++count;
    }
  }
  if (count == 0) throw ValidationError("region_intensity: region lies outside the frequency axes");
  return sum / count;
}

}  // namespace echo2d
