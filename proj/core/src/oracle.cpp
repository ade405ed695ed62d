#include "echo2d/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "echo2d/error.hpp"
#include "echo2d/units.hpp"

namespace echo2d {

using cplx = std::complex<double>;

double DiscretizedBath::reorganization() const {
  double sum = 0.0;
  for (const auto& m : modes) sum += m.coupling * m.coupling / m.omega;
  return sum;
}

BathSpec DiscretizedBath::as_spec() const {
  BathSpec spec;
  spec.kind = SpectralKind::Discrete;
  spec.temperature = temperature;
  spec.modes = modes;
  spec.reorganization = reorganization();
  return spec;
}

DiscretizedBath discretize(const BathSpec& spec, int n_modes, int fock_levels) {
  if (n_modes < 1) throw ValidationError("oracle.modes: need at least one mode per site");
  if (fock_levels < 2) throw ValidationError("oracle.fock_levels: need at least two levels");
  spec.validate();
  DiscretizedBath out;
  out.fock_levels = fock_levels;
  out.temperature = spec.temperature;
  if (spec.kind == SpectralKind::Discrete) {
    out.modes = spec.modes;
    return out;
  }

  // Cumulative reorganization R(w) = int_0^w S/w' dw' on a fine trapezoid grid.
  const double lower = spec.kind == SpectralKind::Tabulated ? spec.table.front().omega : 0.0;
  const double upper = spec.resolved_omega_max();
  const int n = 200000;
  const double h = (upper - lower) / n;
  auto density = [&](double w) {
    if (w <= 0.0) {
      // S(w)/w at w -> 0 by one-sided extrapolation.
      const double e = 1e-6 * h;
      return spectral_density(spec, e) / e;
    }
    return spectral_density(spec, w) / w;
  };
  std::vector<double> grid(n + 1);
  std::vector<double> cum(n + 1, 0.0);
  double prev = density(lower);
  grid[0] = lower;
  for (int i = 1; i <= n; ++i) {
    grid[i] = lower + i * h;
    const double cur = density(grid[i]);
    cum[i] = cum[i - 1] + 0.5 * h * (prev + cur);
    prev = cur;
  }
  const double total = cum.back();
  if (!(total > 0.0)) throw ValidationError("oracle: spectral density carries no reorganization energy");
  for (int b = 0; b < n_modes; ++b) {
    const double target = (b + 0.5) / n_modes * total;
    const auto it = std::lower_bound(cum.begin(), cum.end(), target);
    const auto i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(1, it - cum.begin()));
    const double f = (target - cum[i - 1]) / (cum[i] - cum[i - 1]);
    const double omega = grid[i - 1] + f * h;
    const double lambda_b = total / n_modes;
    out.modes.push_back({omega, std::sqrt(lambda_b * omega)});
  }
  return out;
}

namespace {

/// Bath Fock space: mode index = site * modes_per_site + b, mixed radix.
struct FockSpace {
  int n_modes = 0;
  int levels = 0;
  int size = 1;
  std::vector<double> omega;
  std::vector<double> coupling;
  std::vector<int> site;

  int occupation(int state, int mode) const {
    for (int k = 0; k < mode; ++k) state /= levels;
    return state % levels;
  }
  int stride(int mode) const {
    int s = 1;
    for (int k = 0; k < mode; ++k) s *= levels;
    return s;
  }
  double energy(int state) const {
    double e = 0.0;
    for (int k = 0; k < n_modes; ++k) e += omega[static_cast<std::size_t>(k)] * occupation(state, k);
    return e;
  }
  /// sum over modes of the given site of c (a + a^dagger).
  Eigen::MatrixXd displacement(int which_site) const {
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(size, size);
    for (int k = 0; k < n_modes; ++k) {
      if (site[static_cast<std::size_t>(k)] != which_site) continue;
      const int st = stride(k);
      for (int s = 0; s < size; ++s) {
        const int occ = occupation(s, k);
        if (occ + 1 < levels) {
          const double v = coupling[static_cast<std::size_t>(k)] * std::sqrt(occ + 1.0);
          x(s + st, s) += v;
          x(s, s + st) += v;
        }
      }
    }
    return x;
  }
};

}  // namespace

ExactOracle::ExactOracle(const ExcitonModel& model, const DiscretizedBath& bath, OracleOptions options) {
  model.validate();
  const int ns = model.n_sites();
  FockSpace fock;
  fock.levels = bath.fock_levels;
  for (int j = 0; j < ns; ++j)
    for (const auto& m : bath.modes) {
      fock.omega.push_back(m.omega);
      fock.coupling.push_back(m.coupling);
      fock.site.push_back(j);
    }
  fock.n_modes = static_cast<int>(fock.omega.size());
  const int npairs = ns * (ns - 1) / 2;
  double size = 1.0;
  for (int k = 0; k < fock.n_modes; ++k) size *= fock.levels;
  const double total = (1.0 + ns + npairs) * size;
  if (total > options.dimension_cap)
    throw ValidationError("oracle: Hilbert dimension " + std::to_string(static_cast<long long>(total)) +
                          " exceeds the cap of " + std::to_string(options.dimension_cap));
  fock.size = static_cast<int>(size);
  dimension_ = static_cast<int>(total);
  const int nb = fock.size;

  // Ground manifold: uncoupled bath, already diagonal.
  ground_energies_.resize(nb);
  for (int s = 0; s < nb; ++s) ground_energies_(s) = model.ground_energy + fock.energy(s);
  const double beta = units::beta_from_kelvin(bath.temperature);
  thermal_.resize(nb);
  const double e0 = ground_energies_.minCoeff();
  for (int s = 0; s < nb; ++s) thermal_(s) = std::exp(-beta * (ground_energies_(s) - e0));
  thermal_ /= thermal_.sum();

  std::vector<Eigen::MatrixXd> x(static_cast<std::size_t>(ns));
  for (int j = 0; j < ns; ++j) x[static_cast<std::size_t>(j)] = fock.displacement(j);
  Eigen::VectorXd hb(nb);
  for (int s = 0; s < nb; ++s) hb(s) = fock.energy(s);

  // One-exciton block, basis index site * nb + bath state.
  const Eigen::MatrixXd hs = model.singles_hamiltonian();
  Eigen::MatrixXd he = Eigen::MatrixXd::Zero(ns * nb, ns * nb);
  for (int i = 0; i < ns; ++i)
    for (int j = 0; j < ns; ++j) {
      if (hs(i, j) != 0.0) he.block(i * nb, j * nb, nb, nb).diagonal().array() += hs(i, j);
    }
  for (int j = 0; j < ns; ++j) {
    he.block(j * nb, j * nb, nb, nb).diagonal() += hb;
    he.block(j * nb, j * nb, nb, nb) += x[static_cast<std::size_t>(j)];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(he);
  if (es.info() != Eigen::Success) throw NumericalError("oracle: one-exciton diagonalization failed");
  single_energies_ = es.eigenvalues();
  const Eigen::MatrixXd& ue = es.eigenvectors();

  // <e-state k | mu | ground bath state s> = sum_j U(j*nb + s, k) mu_j.
  eg_dipole_.resize(ns * nb, nb);
  for (int k = 0; k < ns * nb; ++k)
    for (int s = 0; s < nb; ++s) {
      double v = 0.0;
      for (int j = 0; j < ns; ++j) v += ue(j * nb + s, k) * model.site_dipoles(j);
      eg_dipole_(k, s) = v;
    }

  if (ns >= 2) {
    const DoublesSystem doubles = build_doubles(model);
    const int np = static_cast<int>(doubles.pairs.size());
    Eigen::MatrixXd hf = Eigen::MatrixXd::Zero(np * nb, np * nb);
    for (int p = 0; p < np; ++p)
      for (int q = 0; q < np; ++q)
        if (doubles.hamiltonian(p, q) != 0.0) hf.block(p * nb, q * nb, nb, nb).diagonal().array() += doubles.hamiltonian(p, q);
    for (int p = 0; p < np; ++p) {
      const auto [i, k] = doubles.pairs[static_cast<std::size_t>(p)];
      hf.block(p * nb, p * nb, nb, nb).diagonal() += hb;
      hf.block(p * nb, p * nb, nb, nb) += x[static_cast<std::size_t>(i)] + x[static_cast<std::size_t>(k)];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> fs(hf);
    if (fs.info() != Eigen::Success) throw NumericalError("oracle: two-exciton diagonalization failed");
    double_energies_ = fs.eigenvalues();

    // Site-basis dipole |j> -> |(i,k)>: mu of the other site of the pair.
    Eigen::MatrixXd site_fe = Eigen::MatrixXd::Zero(np * nb, ns * nb);
    for (int p = 0; p < np; ++p) {
      const auto [i, k] = doubles.pairs[static_cast<std::size_t>(p)];
      for (int s = 0; s < nb; ++s) {
        site_fe(p * nb + s, i * nb + s) = model.site_dipoles(k);
        site_fe(p * nb + s, k * nb + s) = model.site_dipoles(i);
      }
    }
    fe_dipole_ = fs.eigenvectors().transpose() * site_fe * ue;
  }
}

Eigen::MatrixXcd ExactOracle::chain(Pathway pathway, double t2, double t3) const {
  // Matrix M(k, nu) such that R = sum_nu p_nu e^{-i Eg_nu t1 (+t2)} sum_k A(k,nu) e^{i Ee_k (...)} M(k, nu).
  const Eigen::MatrixXd& a = eg_dipole_;
  auto phases = [](const Eigen::VectorXd& e, double t) {
    Eigen::VectorXcd v(e.size());
    for (Eigen::Index i = 0; i < e.size(); ++i) v(i) = std::polar(1.0, e(i) * t);
    return v;
  };
  const Eigen::MatrixXcd ac = a.cast<cplx>();
  switch (pathway) {
    case Pathway::SE: {
      // A diag(e^{i Eg t3}) A^T diag(e^{-i Ee (t2+t3)}) A
      const Eigen::MatrixXcd right = phases(single_energies_, -(t2 + t3)).asDiagonal() * ac;
      const Eigen::MatrixXcd mid = a.transpose().cast<cplx>() * right;
      return ac * (phases(ground_energies_, t3).asDiagonal() * mid);
    }
    case Pathway::GSB: {
      const Eigen::MatrixXcd right = phases(single_energies_, -t3).asDiagonal() * ac;
      const Eigen::MatrixXcd mid = a.transpose().cast<cplx>() * right;
      return ac * (phases(ground_energies_, t2 + t3).asDiagonal() * mid);
    }
    case Pathway::ESA: {
      if (fe_dipole_.size() == 0) throw ValidationError("oracle: ESA requires at least two sites");
      const Eigen::MatrixXcd right = phases(single_energies_, -t2).asDiagonal() * ac;
      const Eigen::MatrixXcd mid = fe_dipole_.cast<cplx>() * right;
      return fe_dipole_.transpose().cast<cplx>() * (phases(double_energies_, -t3).asDiagonal() * mid);
    }
    case Pathway::Total: break;
  }
  throw std::logic_error("oracle: evaluate pathways separately");
}

Eigen::MatrixXcd ExactOracle::response(Pathway pathway, const Eigen::VectorXd& t1_fs, double t2_fs,
                                       const Eigen::VectorXd& t3_fs) const {
  const double t2 = units::fs_to_cm(t2_fs);
  Eigen::MatrixXcd out(t1_fs.size(), t3_fs.size());
  for (Eigen::Index j = 0; j < t3_fs.size(); ++j) {
    const double t3 = units::fs_to_cm(t3_fs(j));
    const Eigen::MatrixXcd m = chain(pathway, t2, t3);
    // Elementwise A(k,nu) M(k,nu), then the t1 (and t2) phases.
    const Eigen::MatrixXcd am = eg_dipole_.cast<cplx>().cwiseProduct(m);
#pragma omp parallel for schedule(static)
    for (Eigen::Index i = 0; i < t1_fs.size(); ++i) {
      const double t1 = units::fs_to_cm(t1_fs(i));
      double ke = t1;
      double kg = t1;
      if (pathway == Pathway::SE) ke = t1 + t2;
      if (pathway == Pathway::GSB) kg = t1 + t2;
      if (pathway == Pathway::ESA) ke = t1 + t2 + t3;
      Eigen::VectorXcd pe(am.rows());
      for (Eigen::Index k = 0; k < am.rows(); ++k) pe(k) = std::polar(1.0, single_energies_(k) * ke);
      const Eigen::VectorXcd cols = am.transpose() * pe;
      cplx sum = 0.0;
      for (Eigen::Index nu = 0; nu < am.cols(); ++nu)
        sum += thermal_(nu) * std::polar(1.0, -ground_energies_(nu) * kg) * cols(nu);
      out(i, j) = sum;
    }
  }
  return out;
}

cplx ExactOracle::response(Pathway pathway, const Delays& t) const {
  Eigen::VectorXd t1(1);
  Eigen::VectorXd t3(1);
  t1 << t.t1;
  t3 << t.t3;
  return response(pathway, t1, t.t2, t3)(0, 0);
}

double fock_truncation_change(const ExcitonModel& model, const DiscretizedBath& bath,
                              const std::vector<Delays>& points, OracleOptions options) {
  DiscretizedBath more = bath;
  more.fock_levels += 1;
  const ExactOracle base(model, bath, options);
  const ExactOracle fine(model, more, options);
  double worst = 0.0;
  for (const auto& p : points) {
    const cplx a = base.response(Pathway::SE, p);
    const cplx b = fine.response(Pathway::SE, p);
    worst = std::max(worst, std::abs(a - b) / std::max(std::abs(b), 1e-300));
  }
  return worst;
}

}  // namespace echo2d
