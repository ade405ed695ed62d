#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "echo2d/bath.hpp"
#include "echo2d/delays.hpp"
#include "echo2d/exciton_model.hpp"
#include "echo2d/response.hpp"

namespace echo2d {

/// Few-mode harmonic bath, the same modes attached to every site.
struct DiscretizedBath {
  std::vector<DiscreteMode> modes;  // per site
  int fock_levels = 4;
  double temperature = 77.0;

  double reorganization() const;  // sum c^2 / omega
  /// Continuum-free BathSpec with the same modes, for the cumulant pipeline.
  BathSpec as_spec() const;
};

/// Modes at the (i + 1/2)/n quantiles of S(w)/w, each carrying lambda/n.
DiscretizedBath discretize(const BathSpec& spec, int n_modes, int fock_levels = 4);

struct OracleOptions {
  int dimension_cap = 20000;
};

/// Exact third-order response of the exciton system coupled to a truncated
/// Fock-space bath, from the block eigendecompositions of the full Hamiltonian
/// and a Boltzmann-weighted sum over ground-manifold bath states.
class ExactOracle {
 public:
  ExactOracle(const ExcitonModel& model, const DiscretizedBath& bath, OracleOptions options = {});

  int dimension() const noexcept { return dimension_; }

  std::complex<double> response(Pathway pathway, const Delays& t) const;
  /// Rows follow t1, columns follow t3.
  Eigen::MatrixXcd response(Pathway pathway, const Eigen::VectorXd& t1_fs, double t2_fs,
                            const Eigen::VectorXd& t3_fs) const;

 private:
  Eigen::MatrixXcd chain(Pathway pathway, double t2, double t3) const;

  int dimension_ = 0;
  Eigen::VectorXd ground_energies_;
  Eigen::VectorXd thermal_;
  Eigen::VectorXd single_energies_;
  Eigen::VectorXd double_energies_;
  Eigen::MatrixXd eg_dipole_;  // singles eigenstates x ground states
  Eigen::MatrixXd fe_dipole_;  // doubles eigenstates x singles eigenstates
};

/// Largest relative change of the SE response over the points when every
/// mode gains one Fock level.
double fock_truncation_change(const ExcitonModel& model, const DiscretizedBath& bath,
                              const std::vector<Delays>& points, OracleOptions options = {});

}  // namespace echo2d
