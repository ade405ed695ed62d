#include <array>
#include <cmath>
#include <complex>

#include <gtest/gtest.h>

#include "echo2d/error.hpp"
#include "echo2d/response.hpp"
#include "echo2d/units.hpp"
#include "fixtures.hpp"

using namespace echo2d;
using cplx = std::complex<double>;

namespace {

struct ResponseTest : ::testing::Test {
  Bath bath{fx::reference_bath()};
  StationaryBasis basis{fx::reference_dimer_stationary()};
  ResponseEngine engine{basis, bath};

  static std::array<int, 6> tuple_of(int code) {
    std::array<int, 6> m;
    for (int i = 0; i < 6; ++i) m[i] = (code >> i) & 1;
    return m;
  }
};

double max_rel(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a - b).cwiseAbs().maxCoeff() / b.cwiseAbs().maxCoeff();
}

}  // namespace

TEST_F(ResponseTest, OriginValuesByEnumeration) {
  // At t = 0 case-1 tuples contribute their dipole product and case-2 tuples vanish.
  auto mu = [&](int m) { return basis.dipole_ground(m); };
  double se = 0.0, gsb = 0.0, esa = 0.0;
  for (int code = 0; code < 64; ++code) {
    const auto m = tuple_of(code);
    if (m[0] == m[1] && m[1] == m[2] && m[3] == m[4] && m[4] == m[5]) se += mu(m[0]) * mu(m[2]) * mu(m[3]) * mu(m[5]);
    if (m[0] == m[1] && m[1] == m[2] && m[2] == m[3] && m[4] == m[5])
      esa += mu(m[0]) * basis.dipole_singles_doubles(m[3], 0) * basis.dipole_singles_doubles(m[4], 0) * mu(m[5]);
    if (code < 16 && m[0] == m[1] && m[2] == m[3]) gsb += mu(m[0]) * mu(m[1]) * mu(m[2]) * mu(m[3]);
  }
  EXPECT_NEAR(se, 4.0, 1e-12);
  EXPECT_NEAR(gsb, 4.0, 1e-12);
  const Delays zero{0.0, 0.0, 0.0};
  EXPECT_NEAR(std::abs(engine.point(Pathway::SE, zero) - se), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(engine.point(Pathway::GSB, zero) - gsb), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(engine.point(Pathway::ESA, zero) - esa), 0.0, 1e-13);
  EXPECT_GT(esa, 0.0);  // enters the total with a minus sign
}

TEST_F(ResponseTest, FactorCases) {
  const Delays zero{0.0, 0.0, 0.0};
  for (const auto& term : engine.tuples(Pathway::SE)) {
    const cplx f = engine.f_factor(term, zero);
    EXPECT_EQ(f, term.fully_guarded ? cplx(1.0) : cplx(0.0));
  }
  // (a,a,a,b,b,a): only the L_{m5,m6}(t2) guard survives with a nonzero value.
  const Delays t{30.0, 140.0, 60.0};
  const RelaxationTerms& rt = engine.relaxation();
  for (const auto& term : engine.tuples(Pathway::SE)) {
    if (term.m != std::array<int, 6>{0, 0, 0, 1, 1, 0}) continue;
    EXPECT_FALSE(term.fully_guarded);
    const cplx want = 1.0 - std::exp(rt.L(1, 0, t.t2));
    EXPECT_LT(std::abs(engine.f_factor(term, t) - want), 1e-14);
  }
}

TEST_F(ResponseTest, PruningIsSound) {
  ResponseOptions all;
  all.prune = false;
  const ResponseEngine unpruned(basis, bath, all);
  EXPECT_EQ(unpruned.tuples(Pathway::SE).size(), 64u);
  EXPECT_LT(engine.tuples(Pathway::SE).size(), 64u);
  for (const Delays& t : {Delays{0.0, 0.0, 0.0}, Delays{20.0, 100.0, 50.0}, Delays{200.0, 625.0, 120.0}})
    for (Pathway p : {Pathway::SE, Pathway::GSB, Pathway::ESA}) {
      const cplx a = engine.point(p, t), b = unpruned.point(p, t);
      EXPECT_LT(std::abs(a - b), 1e-12 * std::abs(b)) << to_string(p);
    }
}

TEST_F(ResponseTest, GridMatchesPointwise) {
  const Eigen::VectorXd t1 = uniform_axis(5, 37.0);
  const Eigen::VectorXd t3 = uniform_axis(4, 51.0);
  for (Pathway p : {Pathway::SE, Pathway::GSB, Pathway::ESA})
    for (double t2 : {0.0, 300.0}) {
      const ResponseGrid g = engine.grid(p, t1, t2, t3);
      ASSERT_EQ(g.values.rows(), 5);
      ASSERT_EQ(g.values.cols(), 4);
      for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 4; ++j) {
          const cplx want = engine.point(p, {t1(i), t2, t3(j)});
          EXPECT_LT(std::abs(g.values(i, j) - want), 1e-12 * (1.0 + std::abs(want))) << to_string(p);
        }
    }
}

TEST_F(ResponseTest, FullModeAndCase2FlagMatchPointwise) {
  ResponseOptions o;
  o.relaxation = RelaxationMode::Full;
  o.case2_decoherence = true;
  const ResponseEngine e(basis, bath, o);
  const Eigen::VectorXd axis = uniform_axis(3, 60.0);
  for (Pathway p : {Pathway::SE, Pathway::GSB, Pathway::ESA}) {
    const ResponseGrid g = e.grid(p, axis, 80.0, axis);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const cplx want = e.point(p, {axis(i), 80.0, axis(j)});
        EXPECT_LT(std::abs(g.values(i, j) - want), 1e-12 * (1.0 + std::abs(want)));
      }
  }
}

TEST_F(ResponseTest, DipoleScalingIsQuartic) {
  ExcitonModel scaled = fx::reference_dimer_stationary();
  scaled.site_dipoles *= 1.7;
  const StationaryBasis b2(scaled);
  const ResponseEngine e2(b2, bath);
  const double c4 = std::pow(1.7, 4);
  for (Pathway p : {Pathway::SE, Pathway::GSB, Pathway::ESA}) {
    const cplx a = engine.point(p, {40.0, 100.0, 70.0});
    EXPECT_LT(std::abs(e2.point(p, {40.0, 100.0, 70.0}) - c4 * a), 1e-12 * c4 * std::abs(a));
  }
}

TEST_F(ResponseTest, GsbIsIndependentOfWaitingTime) {
  const Eigen::VectorXd axis = uniform_axis(16, 8.0);
  const ResponseGrid a = engine.grid(Pathway::GSB, axis, 10.0, axis);
  const ResponseGrid b = engine.grid(Pathway::GSB, axis, 625.0, axis);
  const ResponseGrid c = engine.grid(Pathway::GSB, axis, 0.0, axis);
  EXPECT_TRUE(a.values == b.values);
  EXPECT_TRUE(a.values == c.values);
}

TEST_F(ResponseTest, RealAtZeroCoherenceTimes) {
  for (double t2 : {10.0, 100.0, 300.0, 625.0})
    for (Pathway p : {Pathway::SE, Pathway::GSB, Pathway::ESA}) {
      const cplx r = engine.point(p, {0.0, t2, 0.0});
      EXPECT_LT(std::abs(r.imag() / r.real()), 1e-10) << to_string(p) << ' ' << t2;
    }
}

TEST_F(ResponseTest, UncoupledSitesGivePureDephasing) {
  ExcitonModel free = fx::reference_dimer(Eigen::Vector2d(0.8, 1.3));
  free.couplings.setZero();
  const StationaryBasis b(free);
  const ResponseEngine e(b, bath);
  const DecoherenceTerms& d = e.decoherence();
  const double eg = b.ground_energy();
  for (const Delays& t : {Delays{30.0, 0.0, 70.0}, Delays{120.0, 250.0, 40.0}}) {
    cplx want = 0.0;
    for (int m = 0; m < 2; ++m)
      for (int n = 0; n < 2; ++n) {
        const double mu = std::pow(b.dipole_ground(m) * b.dipole_ground(n), 2);
        // m != n leaves the |m><n| coherence during t2.
        const double phase = (b.energy(m) - eg) * units::fs_to_cm(t.t1) +
                             (b.energy(m) - b.energy(n)) * units::fs_to_cm(t.t2) -
                             (b.energy(n) - eg) * units::fs_to_cm(t.t3);
        want += mu * std::polar(1.0, phase) * std::exp(-d_se(d, m, m, n, n, t));
      }
    EXPECT_LT(std::abs(e.point(Pathway::SE, t) - want), 1e-12 * std::abs(want)) << t.t2;
  }
}

TEST_F(ResponseTest, PopulationTermsDominateLateWaitingTimes) {
  ResponseOptions pop, coh;
  pop.filter = TupleFilter::Population;
  coh.filter = TupleFilter::Coherence;
  const ResponseEngine ep(basis, bath, pop), ec(basis, bath, coh);
  const Delays t{0.0, 625.0, 0.0};
  EXPECT_GT(std::abs(ep.point(Pathway::SE, t)), 10.0 * std::abs(ec.point(Pathway::SE, t)));
  EXPECT_LT(std::abs(ep.point(Pathway::SE, t) + ec.point(Pathway::SE, t) - engine.point(Pathway::SE, t)), 1e-12);
}

TEST_F(ResponseTest, AssembleTotal) {
  const Eigen::VectorXd axis = uniform_axis(4, 20.0);
  const ResponseGrid se = engine.grid(Pathway::SE, axis, 50.0, axis);
  const ResponseGrid gsb = engine.grid(Pathway::GSB, axis, 50.0, axis);
  const ResponseGrid esa = engine.grid(Pathway::ESA, axis, 50.0, axis);
  const ResponseGrid total = assemble_spe(&se, &gsb, &esa, 2.5);
  EXPECT_EQ(total.pathway, Pathway::Total);
  EXPECT_LT(max_rel(total.values, 2.5 * (se.values + gsb.values - esa.values)), 1e-15);
  EXPECT_TRUE(assemble_spe(&se, &gsb, &esa, 0.0).values.isZero());
  EXPECT_TRUE(assemble_spe(&se, &gsb, nullptr).values == se.values + gsb.values);
  EXPECT_THROW(assemble_spe(nullptr, nullptr, nullptr), ValidationError);
}

TEST_F(ResponseTest, EsaNeedsTwoSites) {
  ExcitonModel one;
  one.site_energies = Eigen::VectorXd::Constant(1, 0.0);
  one.couplings = Eigen::MatrixXd::Zero(1, 1);
  one.site_dipoles = Eigen::VectorXd::Ones(1);
  const StationaryBasis b(one);
  const ResponseEngine e(b, bath);
  EXPECT_THROW(e.tuples(Pathway::ESA), ValidationError);
  EXPECT_NEAR(std::abs(e.point(Pathway::SE, {0.0, 0.0, 0.0}) - 1.0), 0.0, 1e-15);
}

TEST(Pathways, NamesRoundTrip) {
  for (Pathway p : {Pathway::SE, Pathway::GSB, Pathway::ESA, Pathway::Total})
    EXPECT_EQ(pathway_from_string(to_string(p)), p);
  EXPECT_EQ(pathway_from_string("gsb"), Pathway::GSB);
  EXPECT_THROW(pathway_from_string("DQ"), ValidationError);
}
