#include "echo2d/bath.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "echo2d/error.hpp"
#include "echo2d/quadrature.hpp"
#include "echo2d/units.hpp"

namespace echo2d {

double BathSpec::beta() const { return units::beta_from_kelvin(temperature); }

double BathSpec::resolved_omega_max() const {
  if (quadrature.omega_max > 0.0) return quadrature.omega_max;
  if (kind == SpectralKind::Tabulated && !table.empty()) return table.back().omega;
  return 30.0 * cutoff;
}

void BathSpec::validate() const {
  if (!(temperature > 0.0)) throw ValidationError("bath.temperature: must be positive");
  switch (kind) {
    case SpectralKind::Ohmic:
    case SpectralKind::Debye:
      if (!(reorganization > 0.0)) throw ValidationError("bath.lambda: must be positive");
      if (!(cutoff > 0.0)) throw ValidationError("bath.omega_c: must be positive");
      break;
    case SpectralKind::Tabulated:
      if (table.size() < 2) throw ValidationError("bath.table: need at least two rows");
      for (std::size_t i = 0; i < table.size(); ++i) {
        if (table[i].omega < 0.0) throw ValidationError("bath.table: negative frequency");
        if (i > 0 && !(table[i].omega > table[i - 1].omega))
          throw ValidationError("bath.table: frequencies must be strictly ascending");
      }
      break;
    case SpectralKind::Discrete:
      for (const auto& m : modes)
        if (!(m.omega > 0.0)) throw ValidationError("bath.modes: frequencies must be positive");
      break;
  }
  if (kind != SpectralKind::Discrete) {
    if (quadrature.n_points < 2) throw ValidationError("bath.quadrature.n_points: must be >= 2");
    if (quadrature.omega_max < 0.0) throw ValidationError("bath.quadrature.omega_max: must be positive");
  }
}

std::vector<std::string> BathSpec::warnings() const {
  std::vector<std::string> out;
  if ((kind == SpectralKind::Ohmic || kind == SpectralKind::Debye) &&
      resolved_omega_max() < 20.0 * cutoff) {
    std::ostringstream os;
    os << "bath.quadrature.omega_max = " << resolved_omega_max() << " cm^-1 is below 20 * omega_c; "
       << "the spectral tail is truncated";
    out.push_back(os.str());
  }
  return out;
}

std::vector<TabulatedPoint> read_spectral_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("bath.table: cannot open '" + path + "'");
  std::vector<TabulatedPoint> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    TabulatedPoint p;
    if (!(ls >> p.omega)) continue;
    if (!(ls >> p.density))
      throw ValidationError("bath.table: line " + std::to_string(lineno) + " needs two columns");
    rows.push_back(p);
  }
  return rows;
}

double spectral_density(const BathSpec& spec, double omega) {
  if (omega < 0.0) throw ValidationError("spectral_density: negative frequency");
  switch (spec.kind) {
    case SpectralKind::Ohmic:
      return spec.reorganization / spec.cutoff * omega * std::exp(-omega / spec.cutoff);
    case SpectralKind::Debye:
      return 2.0 / std::numbers::pi * spec.reorganization * omega * spec.cutoff /
             (omega * omega + spec.cutoff * spec.cutoff);
    case SpectralKind::Tabulated: {
      const auto& t = spec.table;
      if (t.empty() || omega < t.front().omega || omega > t.back().omega) return 0.0;
      auto hi = std::lower_bound(t.begin(), t.end(), omega,
                                 [](const TabulatedPoint& p, double w) { return p.omega < w; });
      if (hi == t.begin()) return hi->density;
      auto lo = hi - 1;
      const double f = (omega - lo->omega) / (hi->omega - lo->omega);
      return lo->density + f * (hi->density - lo->density);
    }
    case SpectralKind::Discrete:
      break;
  }
  throw ValidationError("spectral_density: a discrete bath has no continuous density");
}

BathNode make_node(double omega, double strength, double beta) {
  BathNode node;
  node.omega = omega;
  node.strength = strength;
  const double x = beta * omega;
  if (x < 1e-8) {
    // 1/(e^x - 1) = 1/x - 1/2 + x/12 + O(x^3)
    node.occupation = 1.0 / x - 0.5 + x / 12.0;
  } else {
    node.occupation = 1.0 / std::expm1(x);
  }
  node.coth = 2.0 * node.occupation + 1.0;
  return node;
}

Bath::Bath(BathSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
  beta_ = spec_.beta();
  if (spec_.kind == SpectralKind::Discrete) {
    for (const auto& m : spec_.modes) nodes_.push_back(make_node(m.omega, m.coupling * m.coupling, beta_));
    return;
  }
  const double lower = spec_.kind == SpectralKind::Tabulated ? spec_.table.front().omega : 0.0;
  const auto rule = gauss_legendre(spec_.quadrature.n_points, lower, spec_.resolved_omega_max());
  nodes_.reserve(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double w = rule.nodes[i];
    nodes_.push_back(make_node(w, rule.weights[i] * echo2d::spectral_density(spec_, w), beta_));
  }
}

std::complex<double> Bath::position_kernel(double tau_fs) const {
  const double tau = units::fs_to_cm(tau_fs);
  double re = 0.0;
  double im = 0.0;
  for (const auto& n : nodes_) {
    const double phase = n.omega * tau;
    re += n.strength * n.coth * std::cos(phase);
    im -= n.strength * std::sin(phase);
  }
  return {re, im};
}

std::complex<double> Bath::momentum_kernel(double tau_fs) const {
  const double tau = units::fs_to_cm(tau_fs);
  std::complex<double> sum = 0.0;
  for (const auto& n : nodes_) {
    const double w2 = n.strength * n.omega * n.omega;
    const std::complex<double> e = std::polar(1.0, -n.omega * tau);
    sum += w2 * ((n.occupation + 1.0) * e + n.occupation * std::conj(e));
  }
  return sum;
}

double Bath::reorganization_integral() const {
  double sum = 0.0;
  for (const auto& n : nodes_) sum += n.strength / n.omega;
  return sum;
}

Bath Bath::scaled(double factor) const {
  Bath out = *this;
  switch (out.spec_.kind) {
    case SpectralKind::Ohmic:
    case SpectralKind::Debye:
      out.spec_.reorganization *= factor;
      break;
    case SpectralKind::Tabulated:
      for (auto& p : out.spec_.table) p.density *= factor;
      break;
    case SpectralKind::Discrete:
      for (auto& m : out.spec_.modes) m.coupling *= std::sqrt(factor);
      break;
  }
  for (auto& n : out.nodes_) n.strength *= factor;
  return out;
}

ConvergenceReport check_kernel_convergence(const BathSpec& spec, const std::vector<double>& taus_fs,
                                           double tolerance) {
  ConvergenceReport report;
  if (spec.kind == SpectralKind::Discrete) {
    report.converged = true;
    return report;
  }
  const Bath base(spec);
  BathSpec fine_spec = spec;
  fine_spec.quadrature.n_points = 2 * spec.quadrature.n_points;
  if (spec.kind != SpectralKind::Tabulated) fine_spec.quadrature.omega_max = 2.0 * spec.resolved_omega_max();
  const Bath fine(fine_spec);

  auto rel = [](std::complex<double> a, std::complex<double> b) {
    const double scale = std::max(std::abs(b), std::numeric_limits<double>::min());
    return std::abs(a - b) / scale;
  };
  for (double tau : taus_fs) {
    report.max_relative_change =
        std::max({report.max_relative_change, rel(base.position_kernel(tau), fine.position_kernel(tau)),
                  rel(base.momentum_kernel(tau), fine.momentum_kernel(tau))});
  }
  report.converged = report.max_relative_change < tolerance;
  return report;
}

const char* to_string(SpectralKind kind) {
  switch (kind) {
    case SpectralKind::Ohmic: return "ohmic";
    case SpectralKind::Debye: return "debye";
    case SpectralKind::Tabulated: return "tabulated";
    case SpectralKind::Discrete: return "discrete";
  }
  return "unknown";
}

SpectralKind spectral_kind_from_string(const std::string& name) {
  std::string n = name;
  std::transform(n.begin(), n.end(), n.begin(), [](unsigned char c) { return std::tolower(c); });
  if (n == "ohmic") return SpectralKind::Ohmic;
  if (n == "debye") return SpectralKind::Debye;
  if (n == "tabulated") return SpectralKind::Tabulated;
  if (n == "discrete") return SpectralKind::Discrete;
  throw ValidationError("bath.kind: unknown spectral density '" + name + "'");
}

}  // namespace echo2d
