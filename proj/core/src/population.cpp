#include "echo2d/population.hpp"

#include "echo2d/time_kernels.hpp"
#include "echo2d/units.hpp"

namespace echo2d {

using cplx = std::complex<double>;

RelaxationTerms::RelaxationTerms(const StationaryBasis& basis, const Bath& bath)
    : basis_(&basis), nodes_(bath.nodes()) {}

cplx RelaxationTerms::coupling_product(int k, int l, int m, int n) const {
  cplx sum = 0.0;
  for (int j = 0; j < basis_->n_sites(); ++j) sum += basis_->na_coupling(j, k, l) * basis_->na_coupling(j, m, n);
  return sum;
}

std::vector<PairBranch> RelaxationTerms::na_pair_weight(int k, int l, int m, int n) const {
  std::vector<PairBranch> out;
  const cplx c = coupling_product(k, l, m, n);
  if (c == 0.0) return out;
  const double dkl = basis_->energy(k) - basis_->energy(l);
  const double dmn = basis_->energy(m) - basis_->energy(n);
  out.reserve(2 * nodes_.size());
  for (const auto& node : nodes_) {
    const double s = node.strength * node.omega * node.omega;
    out.push_back({c * s * (node.occupation + 1.0), dkl - node.omega, dmn + node.omega});
    out.push_back({c * s * node.occupation, dkl + node.omega, dmn - node.omega});
  }
  return out;
}

std::vector<int> RelaxationTerms::manifold_of(int state) const {
  std::vector<int> out;
  const int begin = basis_->is_double(state) ? basis_->n_singles() : 0;
  const int end = basis_->is_double(state) ? basis_->n_states() : basis_->n_singles();
  for (int k = begin; k < end; ++k) out.push_back(k);
  return out;
}

cplx RelaxationTerms::L(int m, int n, double t_fs) const {
  const double t = units::fs_to_cm(t_fs);
  cplx sum = 0.0;
  for (int k : manifold_of(m))
    for (const auto& br : na_pair_weight(m, k, k, n)) sum += br.weight * kernels::ordered_second_order(br.a, br.b, t);
  return sum;
}

cplx RelaxationTerms::O(int k, int l, int m, int n, double t_fs) const {
  const double t = units::fs_to_cm(t_fs);
  cplx sum = 0.0;
  for (const auto& br : na_pair_weight(k, l, m, n))
    sum += br.weight * kernels::first_order(br.a, t) * kernels::first_order(br.b, t);
  return sum;
}

cplx RelaxationTerms::N(int k, int l, int m, int n, double t_fs, double s_fs) const {
  const double t = units::fs_to_cm(t_fs);
  const double s = units::fs_to_cm(s_fs);
  cplx sum = 0.0;
  for (const auto& br : na_pair_weight(k, l, m, n))
    sum += br.weight * kernels::first_order(br.a, t) * kernels::first_order(br.b, s);
  return sum;
}

Eigen::VectorXcd RelaxationTerms::L(int m, int n, const Eigen::VectorXd& t_fs) const {
  Eigen::VectorXcd out(t_fs.size());
  for (Eigen::Index i = 0; i < t_fs.size(); ++i) out(i) = L(m, n, t_fs(i));
  return out;
}

Eigen::VectorXcd RelaxationTerms::O(int k, int l, int m, int n, const Eigen::VectorXd& t_fs) const {
  Eigen::VectorXcd out(t_fs.size());
  for (Eigen::Index i = 0; i < t_fs.size(); ++i) out(i) = O(k, l, m, n, t_fs(i));
  return out;
}

Eigen::MatrixXcd RelaxationTerms::N(int k, int l, int m, int n, const Eigen::VectorXd& t_fs,
                                    const Eigen::VectorXd& s_fs) const {
  const auto branches = na_pair_weight(k, l, m, n);
  if (branches.empty()) return Eigen::MatrixXcd::Zero(t_fs.size(), s_fs.size());
  const auto nb = static_cast<Eigen::Index>(branches.size());
  Eigen::MatrixXcd jt(t_fs.size(), nb);
  Eigen::MatrixXcd js(nb, s_fs.size());
  for (Eigen::Index b = 0; b < nb; ++b) {
    const auto& br = branches[static_cast<std::size_t>(b)];
    for (Eigen::Index i = 0; i < t_fs.size(); ++i) jt(i, b) = kernels::first_order(br.a, units::fs_to_cm(t_fs(i)));
    for (Eigen::Index j = 0; j < s_fs.size(); ++j)
      js(b, j) = br.weight * kernels::first_order(br.b, units::fs_to_cm(s_fs(j)));
  }
  return jt * js;
}

namespace {

using K = RelaxationAtom::Kind;
constexpr Delay T1 = Delay::T1;
constexpr Delay T2 = Delay::T2;
constexpr Delay T3 = Delay::T3;

RelaxationAtom l_term(int m, int n, Delay t) { return {K::L, {m, n, 0, 0}, t, t, 1.0}; }
RelaxationAtom ladj_term(int m, int n, Delay t) { return {K::LAdjoint, {m, n, 0, 0}, t, t, 1.0}; }
RelaxationAtom o_term(double sign, int k, int l, int m, int n, Delay t) { return {K::O, {k, l, m, n}, t, t, sign}; }
RelaxationAtom n_term(double sign, int k, int l, int m, int n, Delay t, Delay s) {
  return {K::N, {k, l, m, n}, t, s, sign};
}

}  // namespace

bool se_fully_guarded(const std::array<int, 6>& m) {
  return m[0] == m[1] && m[1] == m[2] && m[3] == m[4] && m[4] == m[5];
}

bool gsb_fully_guarded(const std::array<int, 4>& m) { return m[0] == m[1] && m[2] == m[3]; }

bool esa_fully_guarded(const std::array<int, 6>& m, int n1, int n2) {
  return m[0] == m[1] && m[1] == m[2] && m[2] == m[3] && m[4] == m[5] && n1 == n2;
}

std::vector<RelaxationAtom> p_se_terms(const std::array<int, 6>& m, RelaxationMode mode) {
  const bool d12 = m[0] == m[1];
  const bool d23 = m[1] == m[2];
  const bool d45 = m[3] == m[4];
  const bool d56 = m[4] == m[5];
  std::vector<RelaxationAtom> out;
  if (d12 && d23 && d45) out.push_back(l_term(m[4], m[5], T2));
  if (d12 && d23 && d56) out.push_back(l_term(m[3], m[4], T3));
  if (d12 && d45 && d56) out.push_back(ladj_term(m[1], m[2], T2));
  if (d23 && d45 && d56) out.push_back(ladj_term(m[0], m[1], T1));
  if (d12 && d45) out.push_back(o_term(-1, m[1], m[2], m[4], m[5], T2));
  if (mode == RelaxationMode::Full) {
    if (d12 && d23) out.push_back(n_term(+1, m[3], m[4], m[4], m[5], T3, T2));
    if (d23 && d45) out.push_back(n_term(-1, m[0], m[1], m[4], m[5], T1, T2));
    if (d12 && d56) out.push_back(n_term(-1, m[1], m[2], m[3], m[4], T2, T3));
    if (d23 && d56) out.push_back(n_term(-1, m[0], m[1], m[3], m[4], T1, T3));
    if (d45 && d56) out.push_back(n_term(+1, m[0], m[1], m[1], m[2], T1, T2));
  }
  return out;
}

std::vector<RelaxationAtom> p_gsb_terms(const std::array<int, 4>& m, RelaxationMode mode) {
  std::vector<RelaxationAtom> out;
  if (m[0] == m[1]) out.push_back(l_term(m[2], m[3], T3));
  if (m[2] == m[3]) out.push_back(ladj_term(m[0], m[1], T1));
  if (mode == RelaxationMode::Full) out.push_back(n_term(-1, m[0], m[1], m[2], m[3], T1, T3));
  return out;
}

std::vector<RelaxationAtom> p_esa_terms(const std::array<int, 6>& m, int n1, int n2, RelaxationMode) {
  const bool d12 = m[0] == m[1];
  const bool d23 = m[1] == m[2];
  const bool d34 = m[2] == m[3];
  const bool d56 = m[4] == m[5];
  const bool dn = n1 == n2;
  std::vector<RelaxationAtom> out;
  if (d23 && d34 && d56 && dn) out.push_back(ladj_term(m[0], m[1], T1));
  if (d12 && d34 && d56 && dn) out.push_back(ladj_term(m[1], m[2], T2));
  if (d12 && d23 && d56 && dn) out.push_back(ladj_term(m[2], m[3], T3));
  if (d12 && d23 && d34 && dn) out.push_back(l_term(m[4], m[5], T2));
  if (d12 && d23 && d34 && d56) out.push_back(l_term(n1, n2, T3));
  if (d12 && d34 && dn) out.push_back(o_term(-1, m[1], m[2], m[4], m[5], T2));
  if (d12 && d23 && d56) out.push_back(o_term(-1, m[2], m[3], n1, n2, T3));
  return out;
}

cplx evaluate(const RelaxationTerms& terms, const std::vector<RelaxationAtom>& atoms, const Delays& t) {
  cplx sum = 0.0;
  for (const auto& a : atoms) {
    const auto& i = a.idx;
    switch (a.kind) {
      case K::L: sum += a.sign * terms.L(i[0], i[1], t[a.first]); break;
      case K::LAdjoint: sum += a.sign * terms.L_adjoint(i[0], i[1], t[a.first]); break;
      case K::O: sum += a.sign * terms.O(i[0], i[1], i[2], i[3], t[a.first]); break;
      case K::N: sum += a.sign * terms.N(i[0], i[1], i[2], i[3], t[a.first], t[a.second]); break;
    }
  }
  return sum;
}

cplx p_se(const RelaxationTerms& terms, const std::array<int, 6>& m, const Delays& t, RelaxationMode mode) {
  return evaluate(terms, p_se_terms(m, mode), t);
}

cplx p_gsb(const RelaxationTerms& terms, const std::array<int, 4>& m, const Delays& t, RelaxationMode mode) {
  return evaluate(terms, p_gsb_terms(m, mode), t);
}

cplx p_esa(const RelaxationTerms& terms, const std::array<int, 6>& m, int n1, int n2, const Delays& t,
           RelaxationMode mode) {
  return evaluate(terms, p_esa_terms(m, n1, n2, mode), t);
}

}  // namespace echo2d
