#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "echo2d/bath.hpp"
#include "echo2d/delays.hpp"
#include "echo2d/exciton_model.hpp"

namespace echo2d {

/// Bath-only energy-gap integrals (dimensionless); times in fs.
///   x(t)   = int_0^t dt' int_0^t' dt'' C(t'-t'')
///   y(t,s) = int_0^t dt' int_0^s dt'' C(t'-t'')
///   z(t)   = y(t,t)
class Lineshape {
 public:
  explicit Lineshape(const Bath& bath) : nodes_(bath.nodes()) {}

  std::complex<double> x(double t_fs) const;
  std::complex<double> y(double t_fs, double s_fs) const;
  double z(double t_fs) const;

  Eigen::VectorXcd x(const Eigen::VectorXd& t_fs) const;
  /// Rows follow t_fs, columns follow s_fs.
  Eigen::MatrixXcd y(const Eigen::VectorXd& t_fs, const Eigen::VectorXd& s_fs) const;

 private:
  std::vector<BathNode> nodes_;
};

/// X, Y, Z of the stationary states for identical, uncorrelated site baths:
/// each carries the gradient overlap G_mn = sum_j dE_m/dQ_j dE_n/dQ_j.
class DecoherenceTerms {
 public:
  DecoherenceTerms(const StationaryBasis& basis, const Bath& bath);

  double overlap(int m, int n) const { return overlap_(m, n); }
  const Eigen::MatrixXd& overlaps() const noexcept { return overlap_; }
  const Lineshape& lineshape() const noexcept { return lineshape_; }

  std::complex<double> X(int m, double t_fs) const { return overlap_(m, m) * lineshape_.x(t_fs); }
  std::complex<double> Y(int m, int n, double t_fs, double s_fs) const {
    return overlap_(m, n) * lineshape_.y(t_fs, s_fs);
  }
  std::complex<double> Z(int m, int n, double t_fs) const { return overlap_(m, n) * lineshape_.z(t_fs); }

 private:
  Eigen::MatrixXd overlap_;
  Lineshape lineshape_;
};

/// One signed term of a decoherence exponent.
struct DecoherenceAtom {
  enum class Kind { X, XConj, Y, Z };
  Kind kind;
  int m;
  int n;  // unused for X
  Delay first;
  Delay second;  // Y only
  double sign;
};

std::vector<DecoherenceAtom> d_se_terms(int m2, int m3, int m4, int m5);
std::vector<DecoherenceAtom> d_gsb_terms(int m2, int m3);
std::vector<DecoherenceAtom> d_esa_terms(int m2, int m3, int m4, int m5, int n1);

std::complex<double> evaluate(const DecoherenceTerms& terms, const std::vector<DecoherenceAtom>& atoms,
                              const Delays& t);

std::complex<double> d_se(const DecoherenceTerms& terms, int m2, int m3, int m4, int m5, const Delays& t);
std::complex<double> d_gsb(const DecoherenceTerms& terms, int m2, int m3, const Delays& t);
std::complex<double> d_esa(const DecoherenceTerms& terms, int m2, int m3, int m4, int m5, int n1,
                           const Delays& t);

}  // namespace echo2d
