#include "echo2d/response.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <tuple>

#include "echo2d/error.hpp"
#include "echo2d/units.hpp"

namespace echo2d {

using cplx = std::complex<double>;

const char* to_string(Pathway p) {
  switch (p) {
    case Pathway::SE: return "SE";
    case Pathway::GSB: return "GSB";
    case Pathway::ESA: return "ESA";
    case Pathway::Total: return "total";
  }
  return "unknown";
}

Pathway pathway_from_string(const std::string& name) {
  std::string n = name;
  std::transform(n.begin(), n.end(), n.begin(), [](unsigned char c) { return std::toupper(c); });
  if (n == "SE") return Pathway::SE;
  if (n == "GSB") return Pathway::GSB;
  if (n == "ESA") return Pathway::ESA;
  if (n == "TOTAL") return Pathway::Total;
  throw ValidationError("pathways: unknown pathway '" + name + "'");
}

Eigen::VectorXd uniform_axis(int n, double dt) {
  Eigen::VectorXd axis(n);
  for (int i = 0; i < n; ++i) axis(i) = i * dt;
  return axis;
}

ResponseEngine::ResponseEngine(const StationaryBasis& basis, const Bath& bath, ResponseOptions options)
    : basis_(&basis), options_(options), decoherence_(basis, bath), relaxation_(basis, bath) {}

TupleTerm ResponseEngine::make_term(Pathway pathway, const std::array<int, 6>& m, int n1, int n2) const {
  const auto& b = *basis_;
  const double eg = b.ground_energy();
  TupleTerm t;
  t.m = m;
  t.n1 = n1;
  t.n2 = n2;
  switch (pathway) {
    case Pathway::SE:
      t.dipole = b.dipole_ground(m[0]) * b.dipole_ground(m[2]) * b.dipole_ground(m[3]) * b.dipole_ground(m[5]);
      t.nu1 = b.energy(m[1]) - eg;
      t.nu2 = b.energy(m[2]) - b.energy(m[4]);
      t.nu3 = -(b.energy(m[3]) - eg);
      t.fully_guarded = se_fully_guarded(m);
      t.decoherence = d_se_terms(m[1], m[2], m[3], m[4]);
      t.relaxation = p_se_terms(m, options_.relaxation);
      break;
    case Pathway::GSB: {
      const std::array<int, 4> g{m[0], m[1], m[2], m[3]};
      t.dipole = b.dipole_ground(m[0]) * b.dipole_ground(m[1]) * b.dipole_ground(m[2]) * b.dipole_ground(m[3]);
      t.nu1 = b.energy(m[1]) - eg;
      t.nu3 = -(b.energy(m[2]) - eg);
      t.fully_guarded = gsb_fully_guarded(g);
      t.decoherence = d_gsb_terms(m[1], m[2]);
      t.relaxation = p_gsb_terms(g, options_.relaxation);
      break;
    }
    case Pathway::ESA: {
      const int d1 = n1 - b.n_singles();
      const int d2 = n2 - b.n_singles();
      t.dipole = b.dipole_ground(m[0]) * b.dipole_singles_doubles(m[3], d1) * b.dipole_singles_doubles(m[4], d2) *
                 b.dipole_ground(m[5]);
      t.nu1 = b.energy(m[1]) - eg;
      t.nu2 = b.energy(m[2]) - b.energy(m[4]);
      t.nu3 = b.energy(m[3]) - b.energy(n1);
      t.fully_guarded = esa_fully_guarded(m, n1, n2);
      t.decoherence = d_esa_terms(m[1], m[2], m[3], m[4], n1);
      t.relaxation = p_esa_terms(m, n1, n2, options_.relaxation);
      break;
    }
    case Pathway::Total:
      throw std::logic_error("make_term: Total is not a single pathway");
  }
  return t;
}

bool ResponseEngine::keep(const TupleTerm& term, Pathway pathway) const {
  if (options_.prune && !term.fully_guarded && term.relaxation.empty()) return false;
  const bool population = pathway == Pathway::GSB || term.m[2] == term.m[4];
  switch (options_.filter) {
    case TupleFilter::All: return true;
    case TupleFilter::Population: return population;
    case TupleFilter::Coherence: return !population;
  }
  return true;
}

std::vector<TupleTerm> ResponseEngine::tuples(Pathway pathway) const {
  const int ns = basis_->n_singles();
  std::vector<TupleTerm> out;
  auto visit = [&](const std::array<int, 6>& m, int n1, int n2) {
    TupleTerm t = make_term(pathway, m, n1, n2);
    if (keep(t, pathway)) out.push_back(std::move(t));
  };
  const int depth = pathway == Pathway::GSB ? 4 : 6;
  std::array<int, 6> m{};
  // Odometer over singles^depth.
  std::int64_t count = 1;
  for (int i = 0; i < depth; ++i) count *= ns;
  for (std::int64_t c = 0; c < count; ++c) {
    std::int64_t r = c;
    for (int i = depth - 1; i >= 0; --i) {
      m[static_cast<std::size_t>(i)] = static_cast<int>(r % ns);
      r /= ns;
    }
    if (pathway == Pathway::ESA) {
      if (!basis_->has_doubles()) throw ValidationError("pathways: ESA requires at least two sites");
      for (int a = 0; a < basis_->n_doubles(); ++a)
        for (int b = 0; b < basis_->n_doubles(); ++b) visit(m, basis_->double_state(a), basis_->double_state(b));
    } else {
      visit(m, -1, -1);
    }
  }
  return out;
}

cplx ResponseEngine::f_factor(const TupleTerm& term, const Delays& t) const {
  const cplx p = evaluate(relaxation_, term.relaxation, t);
  if (term.fully_guarded) return std::exp(-(evaluate(decoherence_, term.decoherence, t) + p));
  cplx f = 1.0 - std::exp(p);
  if (options_.case2_decoherence) f *= std::exp(-evaluate(decoherence_, term.decoherence, t));
  return f;
}

cplx ResponseEngine::point(Pathway pathway, const Delays& t) const {
  if (pathway == Pathway::Total) throw std::logic_error("point: evaluate pathways separately");
  const double t1 = units::fs_to_cm(t.t1);
  const double t2 = units::fs_to_cm(t.t2);
  const double t3 = units::fs_to_cm(t.t3);
  cplx sum = 0.0;
  for (const auto& term : tuples(pathway)) {
    if (term.dipole == 0.0) continue;
    sum += term.dipole * std::polar(1.0, term.nu1 * t1 + term.nu2 * t2 + term.nu3 * t3) * f_factor(term, t);
  }
  return sum;
}

namespace {

/// A kernel sampled on the (t1, t3) plane at fixed t2, stored in the
/// cheapest shape its delays allow.
struct Field {
  enum class Shape { Scalar, AlongT1, AlongT3, Plane };
  Shape shape = Shape::Scalar;
  cplx scalar = 0.0;
  Eigen::VectorXcd vec;
  Eigen::MatrixXcd plane;
};

Field::Shape shape_of(Delay a, Delay b) {
  const bool has1 = a == Delay::T1 || b == Delay::T1;
  const bool has3 = a == Delay::T3 || b == Delay::T3;
  if (has1 && has3) return Field::Shape::Plane;
  if (has1) return Field::Shape::AlongT1;
  if (has3) return Field::Shape::AlongT3;
  return Field::Shape::Scalar;
}

/// Accumulated exponent: scalar + f1(t1) + f3(t3) + plane(t1, t3).
struct Exponent {
  cplx scalar = 0.0;
  Eigen::VectorXcd f1;
  Eigen::VectorXcd f3;
  Eigen::MatrixXcd plane;
  bool has_plane = false;

  Exponent(Eigen::Index n1, Eigen::Index n3) : f1(Eigen::VectorXcd::Zero(n1)), f3(Eigen::VectorXcd::Zero(n3)) {}

  void add(double sign, const Field& f, bool conjugate = false) {
    auto c = [conjugate](const auto& x) { return conjugate ? std::conj(x) : x; };
    switch (f.shape) {
      case Field::Shape::Scalar: scalar += sign * c(f.scalar); break;
      case Field::Shape::AlongT1: f1 += sign * (conjugate ? f.vec.conjugate().eval() : f.vec); break;
      case Field::Shape::AlongT3: f3 += sign * (conjugate ? f.vec.conjugate().eval() : f.vec); break;
      case Field::Shape::Plane:
        if (!has_plane) {
          plane = Eigen::MatrixXcd::Zero(f1.size(), f3.size());
          has_plane = true;
        }
        plane += sign * (conjugate ? f.plane.conjugate().eval() : f.plane);
        break;
    }
  }

  cplx at(Eigen::Index i, Eigen::Index j) const {
    cplx v = scalar + f1(i) + f3(j);
    if (has_plane) v += plane(i, j);
    return v;
  }
};

/// Samples bivariate kernels g(t, s) on the snapshot, batching the plane
/// through the supplied matrix routine.
class Sampler {
 public:
  Sampler(const Eigen::VectorXd& t1, double t2, const Eigen::VectorXd& t3) : t1_(t1), t3_(t3), t2_(t2) {}

  template <class Point, class Plane>
  Field sample(Delay a, Delay b, Point point, Plane plane) const {
    Field f;
    f.shape = shape_of(a, b);
    switch (f.shape) {
      case Field::Shape::Scalar: f.scalar = point(t2_, t2_); break;
      case Field::Shape::AlongT1:
      case Field::Shape::AlongT3: {
        const Eigen::VectorXd& axis = f.shape == Field::Shape::AlongT1 ? t1_ : t3_;
        const Delay varying = f.shape == Field::Shape::AlongT1 ? Delay::T1 : Delay::T3;
        f.vec.resize(axis.size());
        for (Eigen::Index i = 0; i < axis.size(); ++i) {
          const double ta = a == varying ? axis(i) : t2_;
          const double tb = b == varying ? axis(i) : t2_;
          f.vec(i) = point(ta, tb);
        }
        break;
      }
      case Field::Shape::Plane:
        if (a == Delay::T1) {
          f.plane = plane(t1_, t3_);
        } else {
          f.plane = plane(t3_, t1_).transpose();
        }
        break;
    }
    return f;
  }

 private:
  const Eigen::VectorXd& t1_;
  const Eigen::VectorXd& t3_;
  double t2_;
};

using AtomKey = std::tuple<int, int, int, int, int, int, int>;

}  // namespace

ResponseGrid ResponseEngine::grid(Pathway pathway, const Eigen::VectorXd& t1_axis, double t2,
                                  const Eigen::VectorXd& t3_axis) const {
  if (pathway == Pathway::Total) throw std::logic_error("grid: evaluate pathways separately");
  const Eigen::Index n1 = t1_axis.size();
  const Eigen::Index n3 = t3_axis.size();
  const Sampler sampler(t1_axis, t2, t3_axis);
  const Lineshape& ls = decoherence_.lineshape();

  // Bath-only lineshape pieces keyed by (kind, first, second); scaled by G_mn per atom.
  std::map<AtomKey, Field> ls_cache;
  auto lineshape_field = [&](const DecoherenceAtom& a) -> const Field& {
    const int kind = a.kind == DecoherenceAtom::Kind::XConj ? static_cast<int>(DecoherenceAtom::Kind::X)
                                                             : static_cast<int>(a.kind);
    const bool bivariate = a.kind == DecoherenceAtom::Kind::Y;
    const AtomKey key{kind, static_cast<int>(a.first), bivariate ? static_cast<int>(a.second) : -1, 0, 0, 0, 0};
    auto it = ls_cache.find(key);
    if (it != ls_cache.end()) return it->second;
    Field f;
    switch (a.kind) {
      case DecoherenceAtom::Kind::X:
      case DecoherenceAtom::Kind::XConj:
        f = sampler.sample(a.first, Delay::T2, [&](double t, double) { return ls.x(t); },
                           [&](const Eigen::VectorXd&, const Eigen::VectorXd&) { return Eigen::MatrixXcd(); });
        break;
      case DecoherenceAtom::Kind::Y:
        f = sampler.sample(a.first, a.second, [&](double t, double s) { return ls.y(t, s); },
                           [&](const Eigen::VectorXd& t, const Eigen::VectorXd& s) { return ls.y(t, s); });
        break;
      case DecoherenceAtom::Kind::Z:
        f = sampler.sample(a.first, Delay::T2, [&](double t, double) { return cplx(ls.z(t)); },
                           [&](const Eigen::VectorXd&, const Eigen::VectorXd&) { return Eigen::MatrixXcd(); });
        break;
    }
    return ls_cache.emplace(key, std::move(f)).first->second;
  };

  std::map<AtomKey, Field> pop_cache;
  auto relaxation_field = [&](const RelaxationAtom& a) -> const Field& {
    const auto& i = a.idx;
    const bool bivariate = a.kind == RelaxationAtom::Kind::N;
    const AtomKey key{static_cast<int>(a.kind), i[0], i[1], i[2], i[3], static_cast<int>(a.first),
                      bivariate ? static_cast<int>(a.second) : -1};
    auto it = pop_cache.find(key);
    if (it != pop_cache.end()) return it->second;
    const auto none = [](const Eigen::VectorXd&, const Eigen::VectorXd&) { return Eigen::MatrixXcd(); };
    Field f;
    switch (a.kind) {
      case RelaxationAtom::Kind::L:
        f = sampler.sample(a.first, Delay::T2, [&](double t, double) { return relaxation_.L(i[0], i[1], t); }, none);
        break;
      case RelaxationAtom::Kind::LAdjoint:
        f = sampler.sample(a.first, Delay::T2,
                           [&](double t, double) { return relaxation_.L_adjoint(i[0], i[1], t); }, none);
        break;
      case RelaxationAtom::Kind::O:
        f = sampler.sample(a.first, Delay::T2,
                           [&](double t, double) { return relaxation_.O(i[0], i[1], i[2], i[3], t); }, none);
        break;
      case RelaxationAtom::Kind::N:
        f = sampler.sample(
            a.first, a.second, [&](double t, double s) { return relaxation_.N(i[0], i[1], i[2], i[3], t, s); },
            [&](const Eigen::VectorXd& t, const Eigen::VectorXd& s) {
              return relaxation_.N(i[0], i[1], i[2], i[3], t, s);
            });
        break;
    }
    return pop_cache.emplace(key, std::move(f)).first->second;
  };

  ResponseGrid out;
  out.pathway = pathway;
  out.t1_axis = t1_axis;
  out.t3_axis = t3_axis;
  out.t2 = t2;
  out.values = Eigen::MatrixXcd::Zero(n1, n3);

  const double t2c = units::fs_to_cm(t2);
  for (const auto& term : tuples(pathway)) {
    if (term.dipole == 0.0) continue;
    Exponent d(n1, n3);
    Exponent p(n1, n3);
    const bool need_d = term.fully_guarded || options_.case2_decoherence;
    if (need_d) {
      for (const auto& a : term.decoherence)
        d.add(a.sign * decoherence_.overlap(a.m, a.n), lineshape_field(a), a.kind == DecoherenceAtom::Kind::XConj);
    }
    for (const auto& a : term.relaxation) p.add(a.sign, relaxation_field(a));

    Eigen::VectorXcd phase1(n1);
    Eigen::VectorXcd phase3(n3);
    for (Eigen::Index i = 0; i < n1; ++i) phase1(i) = std::polar(1.0, term.nu1 * units::fs_to_cm(t1_axis(i)));
    for (Eigen::Index j = 0; j < n3; ++j) phase3(j) = std::polar(1.0, term.nu3 * units::fs_to_cm(t3_axis(j)));
    const cplx prefactor = term.dipole * std::polar(1.0, term.nu2 * t2c);
    const bool guarded = term.fully_guarded;
    const bool decohere = options_.case2_decoherence;

#pragma omp parallel for schedule(static)
    for (Eigen::Index i = 0; i < n1; ++i) {
      for (Eigen::Index j = 0; j < n3; ++j) {
        cplx f;
        if (guarded) {
          f = std::exp(-(d.at(i, j) + p.at(i, j)));
        } else {
          f = 1.0 - std::exp(p.at(i, j));
          if (decohere) f *= std::exp(-d.at(i, j));
        }
        out.values(i, j) += prefactor * phase1(i) * phase3(j) * f;
      }
    }
  }
  return out;
}

ResponseGrid assemble_spe(const ResponseGrid* se, const ResponseGrid* gsb, const ResponseGrid* esa,
                          double prefactor) {
  const ResponseGrid* first = se ? se : (gsb ? gsb : esa);
  if (!first) throw ValidationError("pathways: at least one pathway is required");
  ResponseGrid out;
  out.pathway = Pathway::Total;
  out.t1_axis = first->t1_axis;
  out.t3_axis = first->t3_axis;
  out.t2 = first->t2;
  out.values = Eigen::MatrixXcd::Zero(first->values.rows(), first->values.cols());
  if (se) out.values += se->values;
  if (gsb) out.values += gsb->values;
  if (esa) out.values -= esa->values;
  out.values *= prefactor;
  return out;
}

}  // namespace echo2d
