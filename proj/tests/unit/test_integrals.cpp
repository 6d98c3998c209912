#include <gtest/gtest.h>

#include "xchg/error.hpp"
#include "xchg/integrals.hpp"
#include "xchg/mp/constants.hpp"

using namespace xchg;
using mp::Precision;
using mp::Rational;
using mp::Real;

namespace {

constexpr int kDigits = 40;

::testing::AssertionResult rel_close(const Real& x, const Real& y, int digits) {
  const Real diff = mp::abs(x - y);
  if (diff <= mp::pow10(-digits, x.precision()) * mp::abs(y)) return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure() << mp::to_sci(x, digits + 2) << " vs " << mp::to_sci(y, digits + 2);
}

Real exact(const Rational& q) { return Real(q, mp::working_precision(kDigits)); }

}  // namespace

TEST(Gamma, Samples) {
  const Precision prec = mp::working_precision(kDigits);
  EXPECT_TRUE(gamma_eta(Real(1, prec), kDigits).is_zero());
  EXPECT_TRUE(rel_close(gamma_eta(Real(0, prec), kDigits), mp::const_a(prec), kDigits));
  EXPECT_THROW(gamma_eta(Real(-1, prec), kDigits), DomainError);
  EXPECT_THROW(gamma_eta(Real(1.5, prec), kDigits), DomainError);
}

TEST(Gamma, VariableChange) {
  const Precision prec = mp::working_precision(kDigits);
  for (double tv : {0.01, 0.3, 1.0, 2.5, 7.0}) {
    const Real t(tv, prec);
    const Real eta = 2 * mp::exp(-t) - 1;
    EXPECT_TRUE(rel_close(gamma_eta(eta, kDigits), gamma_of_t(t), kDigits - 5)) << tv;
    EXPECT_TRUE(rel_close(gamma_eta(-eta, kDigits), gamma_reflected_of_t(t), kDigits - 5)) << tv;
  }
}

TEST(Gamma, SmallTSeriesBranch) {
  // e^{-t} + t - 1 = t^2/2 - t^3/6 + t^4/24 - ...
  const Precision prec = mp::working_precision(kDigits);
  const Real t("1e-5", prec);
  Real expect(prec);
  Real term = t;
  for (int n = 2; n < 20; ++n) {
    term = -term * t / n;
    expect -= term;
  }
  EXPECT_TRUE(rel_close(gamma_of_t(t), expect, kDigits - 2));
}

TEST(LClosed, ExactSamples) {
  EXPECT_EQ(L_closed(0), Rational(8, 3));
  EXPECT_EQ(L_closed(1), Rational(2, 9));
  EXPECT_EQ(L_closed(2), Rational(11, 135));
  // the three l-terms of L(2)
  EXPECT_EQ(L_closed(2), Rational(40, 27) - 3 + Rational(8, 5));
  EXPECT_THROW(L_closed(-1), DomainError);
}

TEST(Expsum, Samples) {
  EXPECT_EQ(expsum(0, Rational(7, 3)), 1);
  EXPECT_EQ(expsum(1, Rational(-4)), -3);
  EXPECT_EQ(expsum(2, Rational(-3)), Rational(5, 2));
}

TEST(LQuad, ElementaryValues) {
  const auto l00 = L_quad(0, 0, kDigits);
  EXPECT_TRUE(rel_close(l00.value, exact(Rational(8, 3)), kDigits));
  EXPECT_EQ(l00.method, LMethod::quadrature);
  EXPECT_EQ(l00.digits, kDigits);
  EXPECT_TRUE(rel_close(L_quad(1, 0, kDigits).value, exact(Rational(2, 9)), kDigits));
}

TEST(LQuad, KOneVariationalCombination) {
  // L(0,1) + L(1,1) = 4 (989/540 - pi^2/9)
  const Precision prec = mp::working_precision(kDigits);
  const Real pi = mp::const_pi(prec);
  const Real expect = 4 * (Real(Rational(989, 540), prec) - pi * pi / 9);
  const Real got = L_quad(0, 1, kDigits).value + L_quad(1, 1, kDigits).value;
  EXPECT_TRUE(rel_close(got, expect, kDigits - 2));
  EXPECT_EQ(mp::to_sci(got, 9), "2.93943508e+00");
}

TEST(LQuad, BridgeToClosedForm) {
  const auto row = L_quad_row(20, 0, kDigits);
  ASSERT_EQ(row.size(), 21u);
  for (int k = 0; k <= 20; ++k) {
    EXPECT_TRUE(rel_close(row[k].value, exact(L_closed(k)), kDigits - 2)) << "k = " << k;
  }
}

TEST(LQuad, RowMatchesSingleEvaluations) {
  const auto row = L_quad_row(6, 3, kDigits);
  for (int k = 0; k <= 6; ++k) EXPECT_TRUE(rel_close(row[k].value, L_quad(k, 3, kDigits).value, kDigits - 2)) << k;
}

TEST(LQuad, PositiveButNotSymmetric) {
  // the (1+eta)^2 weight favours the gamma(-eta) side
  std::vector<std::vector<LIntegral>> rows;
  for (int k2 = 0; k2 < 5; ++k2) rows.push_back(L_quad_row(4, k2, kDigits));
  for (int k1 = 0; k1 < 5; ++k1) {
    for (int k2 = 0; k2 < 5; ++k2) EXPECT_GT(rows[k2][k1].value, 0) << k1 << "," << k2;
  }
  EXPECT_EQ(mp::to_sci(rows[0][1].value, 10), "2.222222222e-01");
  EXPECT_EQ(mp::to_sci(rows[1][0].value, 10), "2.888888889e+00");
  EXPECT_GT(rows[2][1].value, rows[1][2].value);
}

TEST(LQuad, EtaFormCrossCheck) {
  // L(2,1) directly in eta; the t form never sees the log endpoint
  const int d = 30;
  const Precision prec = mp::working_precision(d);
  auto f = [d](const Real& eta) {
    const Real g = gamma_eta(eta, d);
    const Real gr = gamma_eta(-eta, d);
    return (1 + eta) * (1 + eta) * g * g * gr;
  };
  const auto direct = mp::quad_finite(f, Real(-1, prec), Real(1, prec), d);
  EXPECT_TRUE(rel_close(direct.value, L_quad(2, 1, d).value, d - 5));
}

TEST(LQuad, NegativeIndexThrows) {
  EXPECT_THROW(L_quad(-1, 0, 20), DomainError);
  EXPECT_THROW(L_quad_row(3, -2, 20), DomainError);
}

TEST(Collapse, ExponentialSeriesSumsToMOfK) {
  for (int K : {0, 1, 2}) {
    const auto row = L_quad_row(40, K, kDigits);
    Real sum(row[0].value.precision());
    for (int k = 0; k <= 40; ++k) sum += row[k].value / Real(mp::factorial(k), sum.precision());
    const Real gap = mp::abs(sum - M_of_K(K, kDigits));
    EXPECT_LT(gap, mp::pow10(-10, sum.precision())) << "K = " << K;
  }
}

TEST(MOfK, Samples) {
  const Precision prec = mp::working_precision(kDigits);
  const Real e = mp::const_e(prec);
  EXPECT_TRUE(rel_close(M_of_K(0, kDigits), 8 / e, kDigits));
  EXPECT_TRUE(rel_close(M_of_K(1, kDigits), 8 / e, kDigits));
  EXPECT_TRUE(rel_close(M_of_K(3, kDigits), 48 / e, kDigits));
  EXPECT_EQ(mp::to_sci(M_of_K(0, kDigits), 8), "2.9430355e+00");
  EXPECT_EQ(mp::to_sci(M_of_K(3, kDigits), 8), "1.7658213e+01");
}

TEST(Laplace, Lambda2) {
  const Real l2 = laplace_lambda2(30);
  EXPECT_LT(l2, 0);
  EXPECT_EQ(mp::to_sci(l2, 8), "-1.5239659e+00");
}

TEST(Laplace, RatioApproachesOne) {
  const int d = 30;
  Real prev_gap(1.0, mp::working_precision(d));
  for (int K : {4, 8, 16}) {
    const Real ratio = L_quad(K + 1, K, d).value / laplace_L(K, 1, d).value;
    const Real gap = mp::abs(ratio - 1);
    EXPECT_LE(gap, Real(3.0 / K, ratio.precision())) << "K = " << K << " ratio " << mp::to_sci(ratio, 6);
    EXPECT_LT(gap, prev_gap) << "K = " << K;
    prev_gap = gap;
  }
}

TEST(Laplace, SecondOffset) {
  const int d = 30;
  const Real ratio = L_quad(10, 8, d).value / laplace_L(8, 2, d).value;
  EXPECT_LT(mp::abs(ratio - 1), Real(0.3, ratio.precision())) << mp::to_sci(ratio, 6);
  EXPECT_THROW(laplace_L(0, 1, d), DomainError);
}

TEST(Bounds, PAndQAtZero) {
  EXPECT_TRUE(rel_close(P_integral(0, kDigits).value, exact(Rational(32, 5)), kDigits));
  EXPECT_TRUE(rel_close(Q_integral(0, kDigits).value, exact(Rational(2)), kDigits));
  EXPECT_EQ(P_bound(0), Rational(32, 5));
}

TEST(Bounds, PBelowFactorialBound) {
  for (int m : {1, 2, 4, 6, 10}) {
    const Real P = P_integral(m, kDigits).value;
    EXPECT_LE(P, Real(P_bound(m), P.precision())) << "m = " << m;
  }
}

TEST(Bounds, SchwartzChain) {
  for (int K = 1; K <= 3; ++K) {
    for (int p = 1; p <= 3; ++p) {
      const BoundChain c = bound_chain(K, p, kDigits);
      const Real L = L_quad(K + p, K, kDigits).value;
      EXPECT_LE(L, c.schwartz) << K << "," << p;
      EXPECT_LE(c.P_2p, c.P_bound) << K << "," << p;
      // T~ majorizes L(K+p,K)/(K+p)!
      EXPECT_LE(L / Real(mp::factorial(K + p), L.precision()), c.T_tilde) << K << "," << p;
    }
  }
  EXPECT_THROW(bound_chain(0, 1, 20), DomainError);
}

TEST(Bounds, MajorantRatio) {
  const int d = 30;
  for (int K : {1, 4, 8}) {
    const Real Q = Q_integral(2 * K, d).value;
    for (int p = 1; p <= 10; ++p) {
      const Real r = T_tilde(K, p + 1, Q) / T_tilde(K, p, Q);
      EXPECT_LE(r, Real(Rational(2, 5), r.precision())) << K << "," << p;
    }
  }
}
