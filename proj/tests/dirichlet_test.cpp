#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "cesaro/dirichlet.hpp"
#include "cesaro/hadamard.hpp"

using namespace cesaro;

namespace {

CoeffSeq random_poly(std::mt19937_64& rng, std::size_t degree) {
  std::uniform_real_distribution<double> radius(0.0, 1.0), angle(0.0, 2.0 * std::numbers::pi);
  std::vector<complex> a(degree + 1);
  for (auto& x : a) x = std::polar(std::sqrt(radius(rng)), angle(rng));
  return CoeffSeq(a);
}

// Oracle for the restricted norm on D_{w1}: constants are orthogonal to
// z P_{N-1} and are scaled by c_0, while on {f(0) = 0} the tails
// t_i = sum_{k>i} a_k are free coordinates and M_h acts as T_c on them.
// Hence the value is max(|c_0|, ||T_c restricted to its first N columns||).
double restricted_norm_oracle(const SummabilityProfile& p, std::size_t N) {
  const Eigen::MatrixXd t = build_tc(p).dense();
  const auto cols = static_cast<Eigen::Index>(std::min<std::size_t>(N, p.n + 1));
  Eigen::BDCSVD<Eigen::MatrixXd> svd(t.leftCols(cols));
  return std::max(std::abs(p.weight(0)), svd.singularValues()(0));
}

double vanishing_norm_oracle(const SummabilityProfile& p, std::size_t N) {
  const Eigen::MatrixXd t = build_tc(p).dense();
  const auto cols = static_cast<Eigen::Index>(std::min<std::size_t>(N, p.n + 1));
  Eigen::BDCSVD<Eigen::MatrixXd> svd(t.leftCols(cols));
  return svd.singularValues()(0);
}

}  // namespace

TEST(Weight, Catalog) {
  const complex z(0.3, -0.4);
  EXPECT_NEAR(Weight::omega1()(z), (1 - 0.25) / std::norm(1.0 - z), 1e-15);
  EXPECT_EQ(Weight::constant_one()(z), 1.0);
  EXPECT_NEAR(Weight::one_minus_mod_sq()(z), 0.75, 1e-15);
  const complex zeta = std::polar(1.0, 2.0);
  EXPECT_NEAR(Weight::rotated_omega(zeta)(z), 0.75 / std::norm(zeta - z), 1e-15);
  EXPECT_THROW(Weight::rotated_omega({1.1, 0.0}), std::domain_error);
  EXPECT_TRUE(Weight::omega1().poisson_peak().has_value());
  EXPECT_FALSE(Weight::constant_one().poisson_peak().has_value());
}

TEST(Weight, Omega1PositiveInsideDisk) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const complex z = std::polar(0.999999 * std::sqrt(u(rng)), 2 * std::numbers::pi * u(rng));
    ASSERT_GT(Weight::omega1()(z), 0.0);
  }
}

TEST(EnergyTailSum, Examples) {
  const auto c = energy_tail_sum(CoeffSeq{complex(2, -1)});
  EXPECT_EQ(c.energy, 0.0);
  EXPECT_EQ(c.norm_sq, 5.0);
  EXPECT_EQ(energy_tail_sum(CoeffSeq{0.0, 1.0}).energy, 1.0);
  EXPECT_EQ(energy_tail_sum(CoeffSeq{0.0, 0.0, 1.0}).energy, 2.0);
  EXPECT_EQ(energy_tail_sum(CoeffSeq{0.0, 1.0, 1.0}).energy, 5.0);
  EXPECT_EQ(energy_tail_sum(CoeffSeq{0.0, 1.0}).method, EnergyMethod::tail_sum);
}

TEST(EnergyCoeffOracle, Examples) {
  EXPECT_NEAR(energy_coeff_oracle(CoeffSeq{0.0, 1.0}).energy, 1.0, 1e-15);
  EXPECT_NEAR(energy_coeff_oracle(CoeffSeq{0.0, 1.0, 1.0}).energy, 5.0, 1e-15);
  EXPECT_EQ(energy_coeff_oracle(CoeffSeq{3.0}).energy, 0.0);
  EXPECT_EQ(energy_coeff_oracle(CoeffSeq{3.0}).norm_sq, 9.0);
}

TEST(DirichletNorm, InvariantsHold) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    auto f = random_poly(rng, 1 + trial % 15);
    for (const auto& norm : {energy_tail_sum(f), energy_coeff_oracle(f)}) {
      ASSERT_GE(norm.energy, -1e-12);
      ASSERT_GE(norm.norm_sq, norm.energy);
    }
    std::vector<complex> a(f.begin(), f.end());
    a[0] = 0.0;
    const auto g = energy_tail_sum(CoeffSeq(a));
    ASSERT_EQ(g.norm_sq, g.energy);
  }
}

TEST(DirichletEnergy, TailSumMatchesCoefficientOracle) {
  std::mt19937_64 rng(0x5EED);
  std::uniform_int_distribution<std::size_t> deg(0, 20);
  for (int trial = 0; trial < 100; ++trial) {
    const CoeffSeq f = random_poly(rng, deg(rng));
    const double a = energy_tail_sum(f).energy;
    const double b = energy_coeff_oracle(f).energy;
    ASSERT_LE(std::abs(a - b), 1e-12 * std::max(1.0, a)) << trial;
  }
}

TEST(EnergyQuadrature, ClassicalWeightOnMonomials) {
  for (std::size_t k = 1; k <= 12; ++k) {
    const auto q = energy_quadrature(CoeffSeq::monomial(k), Weight::constant_one(), 64, 64);
    EXPECT_NEAR(q.energy, static_cast<double>(k), 1e-8) << k;
    EXPECT_EQ(q.method, EnergyMethod::quadrature);
  }
  EXPECT_NEAR(energy_quadrature(CoeffSeq{0.0, 1.0}, Weight::constant_one(), 16, 16).energy, 1.0, 1e-14);
  EXPECT_NEAR(energy_quadrature(CoeffSeq{0.0, 0.0, 1.0}, Weight::constant_one(), 16, 16).energy, 2.0,
              1e-13);
}

TEST(EnergyQuadrature, OneMinusModSqOnMonomials) {
  // \int k^2 |z|^{2k-2} (1 - |z|^2) dA = k^2 / (k (k+1)).
  for (std::size_t k = 1; k <= 10; ++k) {
    const auto q = energy_quadrature(CoeffSeq::monomial(k), Weight::one_minus_mod_sq(), 32, 32);
    EXPECT_NEAR(q.energy, k / (k + 1.0), 1e-12);
  }
}

TEST(EnergyQuadrature, NormalizedAreaMeasure) {
  // |f'| = 1 and w = 1 integrate to the disk's mass.
  const auto q = energy_quadrature(CoeffSeq{5.0, 1.0}, Weight::constant_one(), 16, 16);
  EXPECT_NEAR(q.energy, 1.0, 1e-14);
  EXPECT_NEAR(q.norm_sq, 26.0, 1e-13);
}

TEST(EnergyQuadrature, Omega1MatchesTailSum) {
  EXPECT_NEAR(energy_quadrature(CoeffSeq{0.0, 1.0}, Weight::omega1(), 256, 256).energy, 1.0, 1e-6);
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 5; ++trial) {
    const CoeffSeq f = random_poly(rng, 20);
    const auto q = energy_quadrature(f, Weight::omega1(), 1024, 1024);
    const double exact = energy_tail_sum(f).energy;
    EXPECT_LE(std::abs(q.energy - exact), 1e-6 * std::max(1.0, exact));
    ASSERT_TRUE(q.error_estimate.has_value());
    EXPECT_LE(*q.error_estimate, 1e-3 * std::max(1.0, exact));
  }
}

TEST(EnergyQuadrature, ConstantHasZeroEnergy) {
  const auto q = energy_quadrature(CoeffSeq{complex(1, 1)}, Weight::omega1(), 16, 16);
  EXPECT_EQ(q.energy, 0.0);
  EXPECT_EQ(q.norm_sq, 2.0);
}

TEST(EnergyQuadrature, RejectsTooFewNodes) {
  EXPECT_THROW(energy_quadrature(CoeffSeq{0.0, 1.0}, Weight::omega1(), 15, 64), std::invalid_argument);
  EXPECT_THROW(energy_quadrature(CoeffSeq{0.0, 1.0}, Weight::omega1(), 64, 8), std::invalid_argument);
}

TEST(EnergyQuadrature, NonFiniteIntegrandIsReported) {
  const CoeffSeq f{0.0, std::numeric_limits<double>::infinity()};
  EXPECT_THROW(energy_quadrature(f, Weight::constant_one(), 16, 16), std::domain_error);
}

TEST(RotateToOmega1, Examples) {
  const CoeffSeq f{1.0, complex(2, 1), -3.0};
  EXPECT_EQ(rotate_to_omega1(f, 1.0), f);
  const CoeffSeq r = rotate_to_omega1(CoeffSeq{0.0, 1.0}, complex(0, 1));
  EXPECT_EQ(r[0], 0.0);
  EXPECT_NEAR(std::abs(r[1] - complex(0, 1)), 0.0, 1e-16);
  EXPECT_THROW(rotate_to_omega1(f, complex(0.5, 0.0)), std::domain_error);

  const auto q = energy_quadrature(CoeffSeq{0.0, 1.0}, Weight::rotated_omega(-1.0), 256, 256);
  EXPECT_NEAR(q.energy, 1.0, 1e-6);
}

TEST(RotateToOmega1, PreservesEnergyUnderRotatedWeight) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (int trial = 0; trial < 6; ++trial) {
    const CoeffSeq f = random_poly(rng, 8 + trial);
    const complex zeta = std::polar(1.0, angle(rng));
    const double rotated = energy_tail_sum(rotate_to_omega1(f, zeta)).energy;
    const double quad = energy_quadrature(f, Weight::rotated_omega(zeta), 512, 512).energy;
    EXPECT_LE(std::abs(rotated - quad), 1e-5 * std::max(1.0, rotated)) << trial;
  }
}

TEST(SparseTailSum, MatchesDenseEvaluation) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<std::size_t> deg(0, 30);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 200; ++trial) {
    SparsePoly terms;
    std::vector<complex> dense(31, complex{});
    const int count = 1 + trial % 6;
    for (int t = 0; t < count; ++t) {
      const std::size_t d = deg(rng);
      const complex c(g(rng), g(rng));
      terms.emplace_back(d, c);
      dense[d] += c;
    }
    const double expected = energy_tail_sum(CoeffSeq(dense)).norm_sq;
    ASSERT_NEAR(norm_sq_tail_sum(terms), expected, 1e-12 * std::max(1.0, expected));
  }
}

TEST(InnerProduct, PolarizationIsSesquilinear) {
  std::mt19937_64 rng(10);
  const CoeffSeq p = random_poly(rng, 7);
  const CoeffSeq q = random_poly(rng, 9);
  const complex pq = inner_product(p, q);
  const complex qp = inner_product(q, p);
  EXPECT_LT(std::abs(pq - std::conj(qp)), 1e-12);
  EXPECT_NEAR(inner_product(p, p).real(), energy_tail_sum(p).norm_sq, 1e-12);
  EXPECT_NEAR(inner_product(p, p).imag(), 0.0, 1e-12);
  // Linear in the first argument.
  std::vector<complex> scaled(p.begin(), p.end());
  for (auto& x : scaled) x *= complex(0, 2);
  EXPECT_LT(std::abs(inner_product(CoeffSeq(scaled), q) - complex(0, 2) * pq), 1e-11);
}

TEST(GramMatrix, Examples) {
  const auto g1 = gram_matrix(1);
  EXPECT_EQ(g1.entries, Eigen::MatrixXd::Identity(2, 2));
  const auto g3 = gram_matrix(3);
  EXPECT_EQ(g3.entries(1, 2), 1.0);
  EXPECT_EQ(g3.entries(3, 3), 3.0);
  EXPECT_EQ(gram_matrix(0).entries(0, 0), 1.0);
}

TEST(GramMatrix, ClosedFormUpTo64) {
  for (std::size_t N : {2u, 17u, 64u}) {
    const auto g = gram_matrix(N);
    for (std::size_t j = 0; j <= N; ++j) {
      for (std::size_t k = 0; k <= N; ++k) {
        double expected = 0.0;
        if (j == 0 && k == 0) expected = 1.0;
        else if (j >= 1 && k >= 1) expected = static_cast<double>(std::min(j, k));
        ASSERT_EQ(g.entries(j, k), expected) << j << ',' << k;
      }
    }
  }
}

TEST(GramMatrix, MatchesCoefficientOracleInnerProducts) {
  // <z^j, z^k> from the oracle's bilinear form: j k / max(j, k) for j, k >= 1.
  const auto g = gram_matrix(20);
  for (std::size_t j = 1; j <= 20; ++j) {
    for (std::size_t k = 1; k <= 20; ++k) {
      const double oracle = static_cast<double>(j * k) / static_cast<double>(std::max(j, k));
      EXPECT_EQ(g.entries(j, k), oracle);
    }
  }
  Eigen::LLT<Eigen::MatrixXd> llt(g.entries);
  EXPECT_EQ(llt.info(), Eigen::Success);
}

TEST(MultiplierNorm, IdentityProfileHasNormOne) {
  for (std::size_t N : {1u, 5u, 50u}) {
    const auto r = multiplier_norm_restricted(partial_sum_weights(N), N);
    EXPECT_NEAR(r.value, 1.0, 1e-12);
    EXPECT_EQ(r.N, N);
  }
}

TEST(MultiplierNorm, MatchesTcColumnOracle) {
  std::vector<SummabilityProfile> profiles{fejer_weights(2),        riesz_weights(20, 0.5),
                                           riesz_weights(7, 2.0),   cesaro_weights(12, 0.75),
                                           partial_sum_weights(10), riesz_weights(30, 1.0)};
  for (const auto& p : profiles) {
    for (std::size_t N : {p.n, p.n + 1, 2 * p.n, 4 * p.n}) {
      const double expect = restricted_norm_oracle(p, N);
      EXPECT_NEAR(multiplier_norm_restricted(p, N).value, expect, 1e-10 * expect)
          << to_string(p.kind) << " n=" << p.n << " N=" << N;
      const double vanish = vanishing_norm_oracle(p, N);
      EXPECT_NEAR(multiplier_norm_restricted(p, N, PolySubspace::vanishing_at_origin).value, vanish,
                  1e-10 * std::max(vanish, 1.0));
    }
  }
}

TEST(MultiplierNorm, FejerDegreeTwo) {
  // Constants are fixed by the mean (c_0 = 1), so the full restricted norm is 1.
  for (std::size_t N : {2u, 20u, 200u}) {
    EXPECT_NEAR(multiplier_norm_restricted(fejer_weights(2), N).value, 1.0, 1e-12);
  }
  // On f(0) = 0 the restricted norms reach ||T_c|| = sqrt(2/3) once N >= n + 1.
  const double full = std::sqrt(2.0 / 3.0);
  const double at2 = multiplier_norm_restricted(fejer_weights(2), 2, PolySubspace::vanishing_at_origin).value;
  EXPECT_LT(at2, full);
  for (std::size_t N : {3u, 20u, 200u}) {
    EXPECT_NEAR(multiplier_norm_restricted(fejer_weights(2), N, PolySubspace::vanishing_at_origin).value,
                full, 1e-10);
  }
}

TEST(MultiplierNorm, MonotoneInN) {
  for (const auto& p : {riesz_weights(10, 0.5), partial_sum_weights(6), cesaro_weights(9, 0.6)}) {
    double prev = 0.0;
    for (std::size_t N : {p.n, 2 * p.n, 4 * p.n, 8 * p.n}) {
      const double v = multiplier_norm_restricted(p, N).value;
      EXPECT_GE(v, prev - 1e-12 * prev);
      prev = v;
    }
  }
}

TEST(MultiplierNorm, DominatedByOperatorNorm) {
  // ||M_h|| on D_{w1} is max(|c_0|, ||T_h||); restricted norms never exceed it.
  for (const auto& p : {riesz_weights(15, 0.5), riesz_weights(15, 0.75), fejer_weights(8),
                        cesaro_weights(11, 0.5), partial_sum_weights(9)}) {
    const double tc = tc_norm(build_tc(p)).value;
    const double bound = std::max(std::abs(p.weight(0)), tc);
    for (std::size_t N : {p.n, 3 * p.n, std::size_t{60}}) {
      EXPECT_LE(multiplier_norm_restricted(p, N).value, bound + 1e-6);
      EXPECT_LE(multiplier_norm_restricted(p, N, PolySubspace::vanishing_at_origin).value, tc + 1e-6);
    }
  }
}

TEST(MultiplierNorm, PartialSumsGrowWithDegree) {
  double prev = 0.0;
  for (std::size_t n : {2u, 5u, 10u, 20u}) {
    const double v = multiplier_norm_restricted(partial_sum_weights(n), 2 * n).value;
    EXPECT_NEAR(v, std::sqrt(n + 1.0), 1e-10);
    EXPECT_GT(v, prev);
    prev = v;
  }
}

TEST(MultiplierNorm, MaximizerAttainsValue) {
  for (const auto& p : {riesz_weights(12, 0.5), fejer_weights(2), cesaro_weights(6, 0.9)}) {
    const auto r = multiplier_norm_restricted(p, 3 * p.n);
    const double norm_f = energy_tail_sum(r.maximizer).norm_sq;
    EXPECT_NEAR(norm_f, 1.0, 1e-10);
    const double image = energy_tail_sum(apply_mean(p, r.maximizer)).norm_sq;
    EXPECT_NEAR(std::sqrt(image), r.value, 1e-10);
    EXPECT_LE(r.maximizer.size(), 3 * p.n + 1);
  }
}

TEST(MultiplierNorm, RejectsSmallN) {
  EXPECT_THROW(multiplier_norm_restricted(riesz_weights(10, 0.5), 9), std::invalid_argument);
}
