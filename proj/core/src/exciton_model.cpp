#include "echo2d/exciton_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "echo2d/error.hpp"

namespace echo2d {

void ExcitonModel::validate() const {
  const int n = n_sites();
  if (n < 1) throw ValidationError("model.site_energies: at least one site is required");
  if (couplings.rows() != n || couplings.cols() != n)
    throw ValidationError("model.couplings: expected " + std::to_string(n) + "x" + std::to_string(n) +
                          " matrix");
  if (site_dipoles.size() != n)
    throw ValidationError("model.dipoles: expected " + std::to_string(n) + " values");
  for (int i = 0; i < n; ++i) {
    if (couplings(i, i) != 0.0) throw ValidationError("model.couplings: diagonal must be zero");
    for (int j = i + 1; j < n; ++j) {
      if (couplings(i, j) != couplings(j, i))
        throw ValidationError("model.couplings: matrix must be symmetric");
    }
  }
  if (!site_energies.allFinite() || !couplings.allFinite() || !site_dipoles.allFinite() ||
      !std::isfinite(ground_energy))
    throw ValidationError("model: non-finite value");
}

Eigen::MatrixXd ExcitonModel::singles_hamiltonian() const {
  Eigen::MatrixXd h = couplings;
  h.diagonal() = site_energies;
  return h;
}

Eigensystem diagonalize_symmetric(const Eigen::MatrixXd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  const Eigen::Index n = h.rows();
  Eigensystem out;
  out.energies.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = n - 1 - k;
    out.energies(k) = solver.eigenvalues()(src);
    Eigen::VectorXd v = solver.eigenvectors().col(src);
    // First component whose magnitude is (numerically) the largest decides the sign.
    const double vmax = v.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::abs(v(i)) >= vmax - 1e-12) {
        if (v(i) < 0.0) v = -v;
        break;
      }
    }
    out.vectors.col(k) = v;
  }
  return out;
}

Eigensystem diagonalize_singles(const ExcitonModel& model) {
  model.validate();
  return diagonalize_symmetric(model.singles_hamiltonian());
}

DoublesSystem build_doubles(const ExcitonModel& model) {
  model.validate();
  const int n = model.n_sites();
  if (n < 2) throw ValidationError("build_doubles: the two-exciton manifold needs at least two sites");

  DoublesSystem out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) out.pairs.emplace_back(i, j);

  const auto np = static_cast<Eigen::Index>(out.pairs.size());
  out.hamiltonian = Eigen::MatrixXd::Zero(np, np);
  for (Eigen::Index p = 0; p < np; ++p) {
    const auto [i, j] = out.pairs[p];
    out.hamiltonian(p, p) = model.site_energies(i) + model.site_energies(j) - model.ground_energy;
    for (Eigen::Index q = 0; q < np; ++q) {
      if (q == p) continue;
      const auto [k, l] = out.pairs[q];
      // Pairs sharing one site are coupled through the hopping of the other.
      double value = 0.0;
      if (i == k) value = model.couplings(j, l);
      else if (i == l) value = model.couplings(j, k);
      else if (j == k) value = model.couplings(i, l);
      else if (j == l) value = model.couplings(i, k);
      out.hamiltonian(p, q) = value;
    }
  }
  out.eigen = diagonalize_symmetric(out.hamiltonian);
  return out;
}

Eigen::MatrixXd singles_gradients(const Eigensystem& singles) {
  return singles.vectors.cwiseAbs2().transpose();
}

Eigen::MatrixXd doubles_gradients(const DoublesSystem& doubles, int n_sites) {
  const auto nd = doubles.eigen.energies.size();
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(nd, n_sites);
  for (std::size_t p = 0; p < doubles.pairs.size(); ++p) {
    const auto [i, j] = doubles.pairs[p];
    for (Eigen::Index n = 0; n < nd; ++n) {
      const double w = doubles.eigen.vectors(static_cast<Eigen::Index>(p), n);
      g(n, i) += w * w;
      g(n, j) += w * w;
    }
  }
  return g;
}

std::vector<Eigen::MatrixXcd> nonadiabatic_couplings(const Eigensystem& system,
                                                     const std::vector<Eigen::MatrixXd>& site_projectors,
                                                     double degeneracy_tol) {
  const auto n = system.energies.size();
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = a + 1; b < n; ++b)
      if (std::abs(system.energies(a) - system.energies(b)) < degeneracy_tol)
        throw DegenerateStates("nonadiabatic coupling is singular: states " + std::to_string(a) + " and " +
                                   std::to_string(b) + " are degenerate",
                               static_cast<int>(a), static_cast<int>(b));

  std::vector<Eigen::MatrixXcd> out;
  out.reserve(site_projectors.size());
  for (const auto& proj : site_projectors) {
    const Eigen::MatrixXd num = system.vectors.transpose() * proj * system.vectors;
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index r = 0; r < n; ++r)
      for (Eigen::Index c = 0; c < n; ++c)
        if (r != c)
          a(r, c) = std::complex<double>(0.0, -num(r, c) / (system.energies(r) - system.energies(c)));
    out.push_back(std::move(a));
  }
  return out;
}

DipoleMatrices dipole_matrices(const ExcitonModel& model, const Eigensystem& singles,
                               const DoublesSystem* doubles) {
  DipoleMatrices out;
  out.ground_to_singles = singles.vectors.transpose() * model.site_dipoles;
  if (doubles == nullptr || doubles->pairs.empty()) {
    out.singles_to_doubles.resize(singles.energies.size(), 0);
    return out;
  }
  // Site-basis operator: |i> -> |i,j> carries mu_j, |j> -> |i,j> carries mu_i.
  const int ns = model.n_sites();
  const auto np = static_cast<Eigen::Index>(doubles->pairs.size());
  Eigen::MatrixXd site_op = Eigen::MatrixXd::Zero(ns, np);
  for (Eigen::Index p = 0; p < np; ++p) {
    const auto [i, j] = doubles->pairs[p];
    site_op(i, p) = model.site_dipoles(j);
    site_op(j, p) = model.site_dipoles(i);
  }
  out.singles_to_doubles = singles.vectors.transpose() * site_op * doubles->eigen.vectors;
  return out;
}

Eigen::VectorXd site_dipoles_from_stationary(const ExcitonModel& model,
                                             const Eigen::VectorXd& stationary_dipoles) {
  ExcitonModel m = model;
  m.site_dipoles = Eigen::VectorXd::Zero(model.n_sites());
  const Eigensystem singles = diagonalize_singles(m);
  if (stationary_dipoles.size() != model.n_sites())
    throw ValidationError("model.dipoles: expected one value per stationary state");
  return singles.vectors * stationary_dipoles;
}

StationaryBasis::StationaryBasis(const ExcitonModel& model, BasisOptions options)
    : n_sites_(model.n_sites()), ground_energy_(model.ground_energy), options_(options) {
  singles_ = diagonalize_singles(model);
  if (n_sites_ >= 2) doubles_ = build_doubles(model);

  const int ns = n_singles();
  const int nd = n_doubles();
  gradients_.resize(ns + nd, n_sites_);
  gradients_.topRows(ns) = singles_gradients(singles_);
  if (nd > 0) gradients_.bottomRows(nd) = doubles_gradients(doubles_, n_sites_);

  std::vector<Eigen::MatrixXd> site_proj;
  for (int j = 0; j < n_sites_; ++j) {
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n_sites_, n_sites_);
    p(j, j) = 1.0;
    site_proj.push_back(std::move(p));
  }
  singles_na_ = nonadiabatic_couplings(singles_, site_proj, options_.degeneracy_tol);

  if (nd > 0 && options_.doubles_couplings) {
    std::vector<Eigen::MatrixXd> pair_proj;
    for (int j = 0; j < n_sites_; ++j) {
      Eigen::MatrixXd p = Eigen::MatrixXd::Zero(nd, nd);
      for (int q = 0; q < nd; ++q) {
        const auto [a, b] = doubles_.pairs[q];
        if (a == j || b == j) p(q, q) = 1.0;
      }
      pair_proj.push_back(std::move(p));
    }
    doubles_na_ = nonadiabatic_couplings(doubles_.eigen, pair_proj, options_.degeneracy_tol);
  } else {
    doubles_na_.assign(n_sites_, Eigen::MatrixXcd::Zero(nd, nd));
  }

  dipoles_ = dipole_matrices(model, singles_, nd > 0 ? &doubles_ : nullptr);
}

double StationaryBasis::energy(int state) const {
  if (state < n_singles()) return singles_.energies(state);
  return doubles_.eigen.energies(state - n_singles());
}

Eigen::VectorXd StationaryBasis::energies() const {
  Eigen::VectorXd e(n_states());
  for (int s = 0; s < n_states(); ++s) e(s) = energy(s);
  return e;
}

std::complex<double> StationaryBasis::na_coupling(int site, int n, int m) const {
  const int ns = n_singles();
  const bool nd = n >= ns;
  const bool md = m >= ns;
  if (nd != md) return {0.0, 0.0};
  if (!nd) return singles_na_[site](n, m);
  return doubles_na_[site](n - ns, m - ns);
}

}  // namespace echo2d
