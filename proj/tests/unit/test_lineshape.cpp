#include <cmath>
#include <complex>

#include <gtest/gtest.h>

#include "echo2d/lineshape.hpp"
#include "echo2d/units.hpp"
#include "fixtures.hpp"

using namespace echo2d;
using cplx = std::complex<double>;

namespace {

struct LineshapeTest : ::testing::Test {
  Bath bath{fx::reference_bath()};
  StationaryBasis basis{fx::reference_dimer_stationary()};
  DecoherenceTerms terms{basis, bath};

  cplx quad_x(double t) const {
    return fx::double_integral([&](double tau) { return bath.position_kernel(tau); },
                                    [](double, double) { return cplx(1.0); }, t, t, true, 2.0);
  }
  cplx quad_y(double t, double s) const {
    return fx::double_integral([&](double tau) { return bath.position_kernel(tau); },
                                    [](double, double) { return cplx(1.0); }, t, s, false, 2.0);
  }
};

}  // namespace

TEST_F(LineshapeTest, XMatchesDoubleQuadrature) {
  for (double t : {10.0, 100.0, 500.0}) EXPECT_LT(fx::rel_err(terms.lineshape().x(t), quad_x(t)), 1e-6) << t;
}

TEST_F(LineshapeTest, YMatchesDoubleQuadrature) {
  const double lattice[][2] = {{50.0, 80.0}, {10.0, 500.0}, {500.0, 250.0}, {120.0, 120.0}, {300.0, 40.0}};
  for (const auto& p : lattice)
    EXPECT_LT(fx::rel_err(terms.lineshape().y(p[0], p[1]), quad_y(p[0], p[1])), 1e-6) << p[0] << ',' << p[1];
}

TEST_F(LineshapeTest, ZeroTimes) {
  const auto& ls = terms.lineshape();
  EXPECT_EQ(ls.x(0.0), cplx(0.0));
  EXPECT_EQ(ls.y(70.0, 0.0), cplx(0.0));
  EXPECT_EQ(ls.y(0.0, 70.0), cplx(0.0));
  EXPECT_EQ(ls.z(0.0), 0.0);
}

TEST_F(LineshapeTest, SquareIsTwiceTriangle) {
  const auto& ls = terms.lineshape();
  for (double t : {5.0, 60.0, 400.0}) {
    EXPECT_NEAR(ls.z(t), ls.y(t, t).real(), 1e-12 * ls.z(t));
    EXPECT_NEAR(ls.y(t, t).imag(), 0.0, 1e-12 * ls.z(t));
    EXPECT_NEAR(ls.z(t) - 2.0 * ls.x(t).real(), 0.0, 1e-12 * ls.z(t));
    for (int m = 0; m < 2; ++m)
      for (int n = 0; n < 2; ++n) {
        EXPECT_NEAR(std::abs(terms.Z(m, n, t) - terms.Y(m, n, t, t)), 0.0, 1e-12 * ls.z(t));
        EXPECT_EQ(terms.Z(m, n, t), terms.Z(n, m, t));
      }
  }
}

TEST_F(LineshapeTest, RealPartGrowsAndImaginarySlopeIsReorganization) {
  const auto& ls = terms.lineshape();
  double prev = 0.0;
  for (double t = 10.0; t <= 1000.0; t += 10.0) {
    const double re = ls.x(t).real();
    EXPECT_GT(re, prev);
    prev = re;
  }
  const double slope = (ls.x(3000.0).imag() - ls.x(2500.0).imag()) / units::fs_to_cm(500.0);
  EXPECT_NEAR(slope, -bath.reorganization_integral(), 1e-2 * bath.reorganization_integral());
}

TEST_F(LineshapeTest, VectorFormsMatchPointForms) {
  const auto& ls = terms.lineshape();
  Eigen::VectorXd t(4), s(3);
  t << 0.0, 12.0, 250.0, 600.0;
  s << 4.0, 80.0, 333.0;
  const Eigen::VectorXcd xv = ls.x(t);
  const Eigen::MatrixXcd yv = ls.y(t, s);
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(xv(i), ls.x(t(i)));
    for (int j = 0; j < 3; ++j) EXPECT_LT(std::abs(yv(i, j) - ls.y(t(i), s(j))), 1e-12 * (1.0 + std::abs(yv(i, j))));
  }
}

TEST_F(LineshapeTest, OverlapsAreGradientProducts) {
  const auto& g = basis.gradients();
  for (int m = 0; m < 2; ++m)
    for (int n = 0; n < 2; ++n) EXPECT_NEAR(terms.overlap(m, n), g(m, 0) * g(n, 0) + g(m, 1) * g(n, 1), 1e-15);
}

TEST_F(LineshapeTest, SeExponentReductions) {
  EXPECT_EQ(d_se(terms, 0, 1, 0, 1, {0.0, 0.0, 0.0}), cplx(0.0));
  for (int m2 = 0; m2 < 2; ++m2) {
    const cplx d = d_se(terms, m2, 1, 0, 1, {90.0, 0.0, 0.0});
    EXPECT_LT(std::abs(d - std::conj(terms.X(m2, 90.0))), 1e-14 * std::abs(d));
  }
}

TEST_F(LineshapeTest, SeExponentTermByTerm) {
  // (a,a,a,a) at (100, 0, 100): X*(t1) + X(t3) - Y(t1,t3) with the a-a overlap.
  const double g = terms.overlap(0, 0);
  const cplx want = g * (std::conj(quad_x(100.0)) + quad_x(100.0) - quad_y(100.0, 100.0));
  const cplx got = d_se(terms, 0, 0, 0, 0, {100.0, 0.0, 100.0});
  EXPECT_LT(std::abs(got - want), 1e-6 * std::abs(quad_y(100.0, 100.0)) * g);

  // Mixed tuple with every delay nonzero against a hand assembly from the quadratures.
  const double t1 = 60.0, t2 = 40.0, t3 = 80.0;
  auto G = [&](int m, int n) { return terms.overlap(m, n); };
  const int m2 = 0, m3 = 1, m4 = 1, m5 = 0;
  const cplx hand = G(m2, m2) * std::conj(quad_x(t1)) + G(m3, m3) * std::conj(quad_x(t2)) + G(m4, m4) * quad_x(t3) +
                    G(m5, m5) * quad_x(t2) + G(m2, m3) * quad_y(t1, t2) - G(m2, m4) * quad_y(t1, t3) -
                    G(m2, m5) * quad_y(t1, t2) - G(m3, m4) * quad_y(t2, t3) - G(m3, m5) * quad_y(t2, t2) +
                    G(m4, m5) * quad_y(t3, t2);
  const cplx mixed = d_se(terms, m2, m3, m4, m5, {t1, t2, t3});
  EXPECT_LT(std::abs(mixed - hand), 1e-6 * std::abs(quad_y(t3, t3)));
}

TEST_F(LineshapeTest, DiagonalTuplesDecay) {
  const double ts[] = {0.0, 40.0, 200.0, 600.0};
  for (int m = 0; m < 2; ++m)
    for (int n = 0; n < 2; ++n)
      for (double t1 : ts)
        for (double t2 : ts)
          for (double t3 : ts) EXPECT_LE(std::abs(std::exp(-d_se(terms, m, m, n, n, {t1, t2, t3}))), 1.0 + 1e-12);
}

TEST_F(LineshapeTest, GsbExponent) {
  const cplx a = d_gsb(terms, 0, 1, {70.0, 0.0, 30.0});
  for (double t2 : {100.0, 625.0}) EXPECT_EQ(d_gsb(terms, 0, 1, {70.0, t2, 30.0}), a);
  EXPECT_LT(std::abs(d_gsb(terms, 0, 1, {0.0, 0.0, 30.0}) - terms.X(1, 30.0)), 1e-15);
  EXPECT_LT(std::abs(d_gsb(terms, 0, 1, {70.0, 0.0, 0.0}) - std::conj(terms.X(0, 70.0))), 1e-15);
}

TEST_F(LineshapeTest, EsaExponent) {
  const int n1 = basis.double_state(0);
  EXPECT_EQ(d_esa(terms, 0, 1, 0, 1, n1, {0.0, 0.0, 0.0}), cplx(0.0));
  const cplx d = d_esa(terms, 1, 0, 0, 1, n1, {55.0, 0.0, 0.0});
  EXPECT_LT(std::abs(d - std::conj(terms.X(1, 55.0))), 1e-14 * std::abs(d));
  EXPECT_EQ(d_esa_terms(0, 0, 0, 0, n1).size(), 15u);
  // Doubles gradients of a dimer are (1, 1): the doubles-doubles overlap is 2.
  EXPECT_NEAR(terms.overlap(n1, n1), 2.0, 1e-12);
}

TEST_F(LineshapeTest, AssemblyIsLinearInTerms) {
  const Delays t{30.0, 70.0, 110.0};
  const auto atoms = d_se_terms(0, 1, 1, 0);
  cplx manual = 0.0;
  for (const auto& a : atoms) {
    cplx v;
    switch (a.kind) {
      case DecoherenceAtom::Kind::X: v = terms.X(a.m, t[a.first]); break;
      case DecoherenceAtom::Kind::XConj: v = std::conj(terms.X(a.m, t[a.first])); break;
      case DecoherenceAtom::Kind::Y: v = terms.Y(a.m, a.n, t[a.first], t[a.second]); break;
      case DecoherenceAtom::Kind::Z: v = terms.Z(a.m, a.n, t[a.first]); break;
    }
    manual += a.sign * v;
  }
  EXPECT_LT(std::abs(evaluate(terms, atoms, t) - manual), 1e-14 * std::abs(manual));
}
