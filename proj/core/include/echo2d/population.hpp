#pragma once

#include <array>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "echo2d/bath.hpp"
#include "echo2d/delays.hpp"
#include "echo2d/exciton_model.hpp"

namespace echo2d {

enum class RelaxationMode { Reduced, Full };

/// Per-node contribution to <H_na,kl(t) H_na,mn(s)> = sum weight e^{i a t} e^{i b s};
/// a and b in cm^-1.
struct PairBranch {
  std::complex<double> weight;
  double a;
  double b;
};

/// Nonadiabatic (momentum-correlation) integrals over stationary states given
/// by global index. Times in fs; results dimensionless.
class RelaxationTerms {
 public:
  RelaxationTerms(const StationaryBasis& basis, const Bath& bath);

  /// sum_j A^j_kl A^j_mn.
  std::complex<double> coupling_product(int k, int l, int m, int n) const;
  std::vector<PairBranch> na_pair_weight(int k, int l, int m, int n) const;

  /// L_mn(t) = int_0^t dt' int_0^t' dt'' <H_na(t') H_na(t'')>_mn, intermediates
  /// restricted to the manifold of m and n.
  std::complex<double> L(int m, int n, double t_fs) const;
  /// Matrix adjoint: conj(L_nm(t)).
  std::complex<double> L_adjoint(int m, int n, double t_fs) const { return std::conj(L(n, m, t_fs)); }
  std::complex<double> O(int k, int l, int m, int n, double t_fs) const;
  std::complex<double> N(int k, int l, int m, int n, double t_fs, double s_fs) const;

  Eigen::VectorXcd L(int m, int n, const Eigen::VectorXd& t_fs) const;
  Eigen::VectorXcd O(int k, int l, int m, int n, const Eigen::VectorXd& t_fs) const;
  /// Rows follow t_fs, columns follow s_fs.
  Eigen::MatrixXcd N(int k, int l, int m, int n, const Eigen::VectorXd& t_fs, const Eigen::VectorXd& s_fs) const;

  const StationaryBasis& basis() const noexcept { return *basis_; }

 private:
  std::vector<int> manifold_of(int state) const;

  const StationaryBasis* basis_;
  std::vector<BathNode> nodes_;
};

/// One signed term of a relaxation exponent.
struct RelaxationAtom {
  enum class Kind { L, LAdjoint, O, N };
  Kind kind;
  std::array<int, 4> idx;  // L uses the first two
  Delay first;
  Delay second;  // N only
  double sign;
};

/// Term lists with their Kronecker guards already resolved for the tuple.
std::vector<RelaxationAtom> p_se_terms(const std::array<int, 6>& m, RelaxationMode mode);
std::vector<RelaxationAtom> p_gsb_terms(const std::array<int, 4>& m, RelaxationMode mode);
std::vector<RelaxationAtom> p_esa_terms(const std::array<int, 6>& m, int n1, int n2, RelaxationMode mode);

/// True when every Kronecker guard of the pathway holds (first cumulant case).
bool se_fully_guarded(const std::array<int, 6>& m);
bool gsb_fully_guarded(const std::array<int, 4>& m);
bool esa_fully_guarded(const std::array<int, 6>& m, int n1, int n2);

std::complex<double> evaluate(const RelaxationTerms& terms, const std::vector<RelaxationAtom>& atoms,
                              const Delays& t);

std::complex<double> p_se(const RelaxationTerms& terms, const std::array<int, 6>& m, const Delays& t,
                          RelaxationMode mode = RelaxationMode::Reduced);
std::complex<double> p_gsb(const RelaxationTerms& terms, const std::array<int, 4>& m, const Delays& t,
                           RelaxationMode mode = RelaxationMode::Reduced);
std::complex<double> p_esa(const RelaxationTerms& terms, const std::array<int, 6>& m, int n1, int n2,
                           const Delays& t, RelaxationMode mode = RelaxationMode::Reduced);

}  // namespace echo2d
