#include "echo2d/lineshape.hpp"

#include "echo2d/time_kernels.hpp"
#include "echo2d/units.hpp"

namespace echo2d {

using cplx = std::complex<double>;

cplx Lineshape::x(double t_fs) const {
  const double t = units::fs_to_cm(t_fs);
  double re = 0.0;
  double im = 0.0;
  for (const auto& n : nodes_) {
    const cplx i = kernels::ordered_second_order(-n.omega, n.omega, t);
    re += n.strength * n.coth * i.real();
    im += n.strength * i.imag();
  }
  return {re, im};
}

cplx Lineshape::y(double t_fs, double s_fs) const {
  const double t = units::fs_to_cm(t_fs);
  const double s = units::fs_to_cm(s_fs);
  double re = 0.0;
  double im = 0.0;
  for (const auto& n : nodes_) {
    const cplx p = kernels::first_order(n.omega, t) * std::conj(kernels::first_order(n.omega, s));
    re += n.strength * n.coth * p.real();
    im -= n.strength * p.imag();
  }
  return {re, im};
}

double Lineshape::z(double t_fs) const {
  const double t = units::fs_to_cm(t_fs);
  double sum = 0.0;
  for (const auto& n : nodes_) sum += n.strength * n.coth * std::norm(kernels::first_order(n.omega, t));
  return sum;
}

Eigen::VectorXcd Lineshape::x(const Eigen::VectorXd& t_fs) const {
  Eigen::VectorXcd out(t_fs.size());
  for (Eigen::Index i = 0; i < t_fs.size(); ++i) out(i) = x(t_fs(i));
  return out;
}

Eigen::MatrixXcd Lineshape::y(const Eigen::VectorXd& t_fs, const Eigen::VectorXd& s_fs) const {
  // y = sum_w s [(n+1) conj(J_t) J_s + n J_t conj(J_s)], two GEMMs over the nodes.
  const auto nw = static_cast<Eigen::Index>(nodes_.size());
  Eigen::MatrixXcd jt(t_fs.size(), nw);
  Eigen::MatrixXcd js(nw, s_fs.size());
  Eigen::VectorXd up(nw);
  Eigen::VectorXd down(nw);
  for (Eigen::Index k = 0; k < nw; ++k) {
    const auto& n = nodes_[static_cast<std::size_t>(k)];
    up(k) = n.strength * (n.occupation + 1.0);
    down(k) = n.strength * n.occupation;
    for (Eigen::Index i = 0; i < t_fs.size(); ++i)
      jt(i, k) = kernels::first_order(n.omega, units::fs_to_cm(t_fs(i)));
    for (Eigen::Index j = 0; j < s_fs.size(); ++j)
      js(k, j) = kernels::first_order(n.omega, units::fs_to_cm(s_fs(j)));
  }
  Eigen::MatrixXcd out = jt.conjugate() * (up.asDiagonal() * js);
  out.noalias() += jt * (down.asDiagonal() * js.conjugate());
  return out;
}

DecoherenceTerms::DecoherenceTerms(const StationaryBasis& basis, const Bath& bath)
    : overlap_(basis.gradients() * basis.gradients().transpose()), lineshape_(bath) {}

namespace {

using K = DecoherenceAtom::Kind;

DecoherenceAtom xc(int m, Delay t) { return {K::XConj, m, m, t, t, 1.0}; }
DecoherenceAtom xx(int m, Delay t) { return {K::X, m, m, t, t, 1.0}; }
DecoherenceAtom yy(double sign, int m, int n, Delay t, Delay s) { return {K::Y, m, n, t, s, sign}; }
DecoherenceAtom zz(double sign, int m, int n, Delay t) { return {K::Z, m, n, t, t, sign}; }

constexpr Delay T1 = Delay::T1;
constexpr Delay T2 = Delay::T2;
constexpr Delay T3 = Delay::T3;

}  // namespace

std::vector<DecoherenceAtom> d_se_terms(int m2, int m3, int m4, int m5) {
  return {xc(m2, T1),
          xc(m3, T2),
          xx(m4, T3),
          xx(m5, T2),
          yy(+1, m2, m3, T1, T2),
          yy(-1, m2, m4, T1, T3),
          yy(-1, m2, m5, T1, T2),
          yy(-1, m3, m4, T2, T3),
          zz(-1, m3, m5, T2),
          yy(+1, m4, m5, T3, T2)};
}

std::vector<DecoherenceAtom> d_gsb_terms(int m2, int m3) {
  return {xc(m2, T1), xx(m3, T3), yy(-1, m2, m3, T1, T3)};
}

std::vector<DecoherenceAtom> d_esa_terms(int m2, int m3, int m4, int m5, int n1) {
  return {xc(m2, T1),
          xc(m3, T2),
          xc(m4, T3),
          xx(n1, T3),
          xx(m5, T2),
          yy(+1, m2, m3, T1, T2),
          yy(+1, m2, m4, T1, T3),
          yy(-1, m2, n1, T1, T3),
          yy(-1, m2, m5, T1, T2),
          yy(+1, m3, m4, T2, T3),
          yy(-1, m3, n1, T2, T3),
          zz(-1, m3, m5, T2),
          zz(-1, m4, n1, T3),
          yy(-1, m4, m5, T3, T2),
          yy(+1, n1, m5, T3, T2)};
}

cplx evaluate(const DecoherenceTerms& terms, const std::vector<DecoherenceAtom>& atoms, const Delays& t) {
  cplx sum = 0.0;
  for (const auto& a : atoms) {
    switch (a.kind) {
      case K::X: sum += a.sign * terms.X(a.m, t[a.first]); break;
      case K::XConj: sum += a.sign * std::conj(terms.X(a.m, t[a.first])); break;
      case K::Y: sum += a.sign * terms.Y(a.m, a.n, t[a.first], t[a.second]); break;
      case K::Z: sum += a.sign * terms.Z(a.m, a.n, t[a.first]); break;
    }
  }
  return sum;
}

cplx d_se(const DecoherenceTerms& terms, int m2, int m3, int m4, int m5, const Delays& t) {
  return evaluate(terms, d_se_terms(m2, m3, m4, m5), t);
}

cplx d_gsb(const DecoherenceTerms& terms, int m2, int m3, const Delays& t) {
  return evaluate(terms, d_gsb_terms(m2, m3), t);
}

cplx d_esa(const DecoherenceTerms& terms, int m2, int m3, int m4, int m5, int n1, const Delays& t) {
  return evaluate(terms, d_esa_terms(m2, m3, m4, m5, n1), t);
}

}  // namespace echo2d
