// Weighted Dirichlet energies D_w(f) = \int_D |f'|^2 w dA (dA normalized area
// measure) and Hadamard-multiplier norms on the local Dirichlet space D_{w1},
// w1(z) = (1 - |z|^2) / |1 - z|^2.
//
// Three independent evaluators of the w1 energy are provided:
//   * tail sums       sum_{i>=0} |sum_{k>i} a_k|^2                O(N)
//   * coefficient     sum_{j,k} b_j conj(b_k) / (max(j,k) + 1)      O(N^2)
//     oracle          where b_j = (j+1) a_{j+1} are the coefficients of f'
//   * quadrature      polar tensor rule on the disk                O(R M N)
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cesaro/quadrature.hpp"
#include "cesaro/series.hpp"

namespace cesaro {

// ---------------------------------------------------------------------------
// Weights
// ---------------------------------------------------------------------------

enum class WeightKind { omega1, rotated_omega, constant_one, one_minus_mod_sq };

/// Closed catalog of superharmonic weights on the unit disk.
class Weight {
 public:
  static Weight omega1() { return Weight(WeightKind::omega1, complex{1.0, 0.0}); }

  /// (1 - |z|^2) / |zeta - z|^2 for unimodular zeta.
  static Weight rotated_omega(complex zeta) {
    if (std::abs(std::abs(zeta) - 1.0) > 1e-12) {
      throw std::domain_error("rotated_omega: zeta must be unimodular");
    }
    return Weight(WeightKind::rotated_omega, zeta);
  }

  static Weight constant_one() { return Weight(WeightKind::constant_one, complex{}); }
  static Weight one_minus_mod_sq() { return Weight(WeightKind::one_minus_mod_sq, complex{}); }

  WeightKind kind() const noexcept { return kind_; }

  double operator()(complex z) const noexcept {
    const double one_minus = 1.0 - std::norm(z);
    switch (kind_) {
      case WeightKind::omega1:
      case WeightKind::rotated_omega: return one_minus / std::norm(zeta_ - z);
      case WeightKind::constant_one: return 1.0;
      case WeightKind::one_minus_mod_sq: return one_minus;
    }
    return 0.0;
  }

  /// Boundary point where a Poisson-kernel weight concentrates; empty for smooth weights.
  std::optional<complex> poisson_peak() const noexcept {
    if (kind_ == WeightKind::omega1 || kind_ == WeightKind::rotated_omega) return zeta_;
    return std::nullopt;
  }

 private:
  Weight(WeightKind kind, complex zeta) : kind_(kind), zeta_(zeta) {}

  WeightKind kind_;
  complex zeta_;
};

// ---------------------------------------------------------------------------
// Energies
// ---------------------------------------------------------------------------

enum class EnergyMethod { tail_sum, coeff_oracle, quadrature };

inline std::string_view to_string(EnergyMethod m) noexcept {
  switch (m) {
    case EnergyMethod::tail_sum: return "tail_sum";
    case EnergyMethod::coeff_oracle: return "coeff_oracle";
    case EnergyMethod::quadrature: return "quadrature";
  }
  return "unknown";
}

/// ||f||^2 = |f(0)|^2 + energy.
struct DirichletNorm {
  double energy = 0.0;
  double norm_sq = 0.0;
  EnergyMethod method = EnergyMethod::tail_sum;
  /// Quadrature only: |Q(R, M) - Q(R/2, M/2)|.
  std::optional<double> error_estimate;
};

namespace detail {
inline DirichletNorm make_norm(const CoeffSeq& f, double energy, EnergyMethod method) {
  return {energy, std::norm(f[0]) + energy, method, std::nullopt};
}
}  // namespace detail

/// D_{w1} energy by right-to-left tail sums: sum_{i>=0} |sum_{k>i} a_k|^2.
inline DirichletNorm energy_tail_sum(const CoeffSeq& f) {
  double energy = 0.0;
  complex tail{};
  for (std::size_t k = f.size() - 1; k >= 1; --k) {
    tail += f[k];  // tail = sum_{j>=k} a_j = t_{k-1}
    energy += std::norm(tail);
  }
  return detail::make_norm(f, energy, EnergyMethod::tail_sum);
}

/// D_{w1} energy by expanding 1/|1-z|^2 = sum z^m conj(z)^n and integrating
/// monomials against (1-|z|^2) dA:
///   \int |z|^{2N} (1 - |z|^2) dA = 1/((N+1)(N+2)),
/// which telescopes to 1/(max(j,k)+1) for the pair b_j z^j, conj(b_k z^k).
inline DirichletNorm energy_coeff_oracle(const CoeffSeq& f) {
  const std::size_t d = f.size() - 1;  // number of derivative coefficients
  std::vector<complex> b(d);
  for (std::size_t j = 0; j < d; ++j) b[j] = static_cast<double>(j + 1) * f[j + 1];
  complex sum{};
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = 0; k < d; ++k) {
      sum += b[j] * std::conj(b[k]) / static_cast<double>(std::max(j, k) + 1);
    }
  }
  return detail::make_norm(f, sum.real(), EnergyMethod::coeff_oracle);
}

namespace detail {

// Horner for p(z) = sum c_j z^j on split real/imag arrays (avoids the
// NaN-recovery path of std::complex multiplication in the hot loop).
inline void horner(std::span<const double> re, std::span<const double> im, double zr, double zi,
                   double& out_r, double& out_i) {
  double pr = 0.0, pi = 0.0;
  for (std::size_t j = re.size(); j-- > 0;) {
    const double tr = pr * zr - pi * zi + re[j];
    pi = pr * zi + pi * zr + im[j];
    pr = tr;
  }
  out_r = pr;
  out_i = pi;
}

inline complex eval_poly(std::span<const complex> c, complex z) {
  complex p{};
  for (std::size_t j = c.size(); j-- > 0;) p = p * z + c[j];
  return p;
}

inline std::vector<complex> derivative(std::span<const complex> c) {
  if (c.size() <= 1) return {};
  std::vector<complex> d(c.size() - 1);
  for (std::size_t j = 0; j + 1 < c.size(); ++j) d[j] = static_cast<double>(j + 1) * c[j + 1];
  return d;
}

// One pass of the polar tensor rule: Gauss-Legendre in s = r^2 on [0, 1]
// (dA = ds dtheta / 2pi) times the M-point trapezoid in theta.
//
// For Poisson-kernel weights P_r(theta - t0) the angular integrand is nearly
// singular as r -> 1, and the trapezoid aliases. The second-order Taylor
// model of g = |f'(r e^{i theta})|^2 at t0,
//   S(theta) = g(t0) + g'(t0) sin(theta - t0) + g''(t0) (1 - cos(theta - t0)),
// is integrated exactly (mean of P_r is 1, of cos is r, of sin is 0) and only
// (g - S) P_r goes through the trapezoid.
inline double polar_pass(std::span<const complex> fprime, const Weight& w, std::size_t radial,
                         std::size_t angular) {
  const QuadratureRule rule = gauss_legendre(radial, 0.0, 1.0);
  std::vector<double> re(fprime.size()), im(fprime.size());
  for (std::size_t j = 0; j < fprime.size(); ++j) {
    re[j] = fprime[j].real();
    im[j] = fprime[j].imag();
  }
  const std::vector<complex> f2 = derivative(fprime);
  const std::vector<complex> f3 = derivative(f2);

  std::vector<complex> unit(angular);
  for (std::size_t m = 0; m < angular; ++m) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(angular);
    unit[m] = {std::cos(theta), std::sin(theta)};
  }
  const std::optional<complex> peak = w.poisson_peak();
  // sin and cos of (theta_m - t0).
  std::vector<double> rel_sin, rel_cos;
  if (peak) {
    rel_sin.resize(angular);
    rel_cos.resize(angular);
    for (std::size_t m = 0; m < angular; ++m) {
      const complex rel = unit[m] * std::conj(*peak);
      rel_sin[m] = rel.imag();
      rel_cos[m] = rel.real();
    }
  }

  double total = 0.0;
  for (std::size_t i = 0; i < radial; ++i) {
    const double r = std::sqrt(rule.nodes[i]);
    double g0 = 0.0, g1 = 0.0, g2 = 0.0;
    if (peak) {
      const complex z0 = r * *peak;
      const complex f = eval_poly(fprime, z0);
      const complex zf1 = z0 * eval_poly(f2, z0);
      const complex z2f2 = z0 * z0 * eval_poly(f3, z0);
      g0 = std::norm(f);
      g1 = 2.0 * (std::conj(f) * complex{0.0, 1.0} * zf1).real();
      g2 = 2.0 * std::norm(zf1) - 2.0 * (std::conj(f) * (zf1 + z2f2)).real();
    }
    double ring = 0.0;
    for (std::size_t m = 0; m < angular; ++m) {
      const double zr = r * unit[m].real();
      const double zi = r * unit[m].imag();
      double fr, fi;
      horner(re, im, zr, zi, fr, fi);
      double g = fr * fr + fi * fi;
      if (peak) g -= g0 + g1 * rel_sin[m] + g2 * (1.0 - rel_cos[m]);
      ring += g * w(complex{zr, zi});
    }
    ring /= static_cast<double>(angular);
    if (peak) ring += g0 + g2 * (1.0 - r);
    if (!std::isfinite(ring)) {
      throw std::domain_error("energy_quadrature: non-finite integrand at r = " + std::to_string(r));
    }
    total += rule.weights[i] * ring;
  }
  return total;
}

}  // namespace detail

/// D_w(f) by polar tensor quadrature with `radial_nodes` Gauss-Legendre
/// nodes in r^2 and `angular_nodes` trapezoid nodes in theta. The error
/// estimate compares against the same rule with half the nodes.
inline DirichletNorm energy_quadrature(const CoeffSeq& f, const Weight& w, std::size_t radial_nodes,
                                       std::size_t angular_nodes) {
  if (radial_nodes < 16 || angular_nodes < 16) {
    throw std::invalid_argument("energy_quadrature: node counts must be at least 16");
  }
  if (f.size() == 1) {
    DirichletNorm out = detail::make_norm(f, 0.0, EnergyMethod::quadrature);
    out.error_estimate = 0.0;
    return out;
  }
  const std::vector<complex> fprime = detail::derivative(f.coeffs());
  const double fine = detail::polar_pass(fprime, w, radial_nodes, angular_nodes);
  const double coarse = detail::polar_pass(fprime, w, radial_nodes / 2, angular_nodes / 2);
  DirichletNorm out = detail::make_norm(f, fine, EnergyMethod::quadrature);
  out.error_estimate = std::abs(fine - coarse);
  return out;
}

/// Coefficients a_k zeta^k of f(zeta z). The w1-energy of the result equals
/// the energy of f for the weight (1 - |z|^2)/|zeta - z|^2.
inline CoeffSeq rotate_to_omega1(const CoeffSeq& f, complex zeta) {
  if (std::abs(std::abs(zeta) - 1.0) > 1e-12) {
    throw std::domain_error("rotate_to_omega1: zeta must be unimodular");
  }
  std::vector<complex> out(f.size());
  complex power{1.0, 0.0};
  for (std::size_t k = 0; k < f.size(); ++k) {
    out[k] = f[k] * power;
    power *= zeta;
  }
  return CoeffSeq(std::move(out));
}

// ---------------------------------------------------------------------------
// Inner products and the Gram matrix of monomials in D_{w1}
// ---------------------------------------------------------------------------

/// A polynomial given by (degree, coefficient) terms.
using SparsePoly = std::vector<std::pair<std::size_t, complex>>;

/// |f(0)|^2 + tail-sum energy for a sparse polynomial; the tails are piecewise
/// constant between consecutive degrees, so the cost is O(terms log terms).
inline double norm_sq_tail_sum(SparsePoly terms) {
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  double norm_sq = 0.0;
  complex tail{};
  for (std::size_t j = 0; j < terms.size(); ++j) {
    const auto [deg, coeff] = terms[j];
    if (deg == 0) {
      complex a0 = coeff;
      for (std::size_t l = j + 1; l < terms.size(); ++l) a0 += terms[l].second;
      norm_sq += std::norm(a0);
      break;
    }
    tail += coeff;
    std::size_t next = 0;
    while (j + 1 < terms.size() && terms[j + 1].first == deg) {
      tail += terms[++j].second;
    }
    if (j + 1 < terms.size()) next = terms[j + 1].first;
    norm_sq += std::norm(tail) * static_cast<double>(deg - next);
  }
  return norm_sq;
}

/// <p, q> in D_{w1} (linear in p) by polarization of the norm:
/// <p, q> = (1/4) sum_{m=0..3} i^m ||p + i^m q||^2.
inline complex inner_product_polarized(const SparsePoly& p, const SparsePoly& q) {
  static constexpr complex kUnits[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  complex sum{};
  for (const complex u : kUnits) {
    SparsePoly combo = p;
    for (const auto& [deg, c] : q) combo.emplace_back(deg, u * c);
    sum += u * norm_sq_tail_sum(std::move(combo));
  }
  return 0.25 * sum;
}

inline complex inner_product(const CoeffSeq& p, const CoeffSeq& q) {
  SparsePoly sp, sq;
  for (std::size_t k = 0; k < p.size(); ++k) sp.emplace_back(k, p[k]);
  for (std::size_t k = 0; k < q.size(); ++k) sq.emplace_back(k, q[k]);
  return inner_product_polarized(sp, sq);
}

/// Gram matrix of 1, z, ..., z^N in D_{w1}.
struct GramMatrix {
  std::size_t N = 0;
  Eigen::MatrixXd entries;  // (N+1) x (N+1)
};

/// Entries by polarization of the tail-sum norm; the result has the closed
/// form G_00 = 1, G_0k = 0 (k >= 1), G_jk = min(j, k) (j, k >= 1).
inline GramMatrix gram_matrix(std::size_t N) {
  const auto dim = static_cast<Eigen::Index>(N + 1);
  GramMatrix g{N, Eigen::MatrixXd(dim, dim)};
  for (std::size_t j = 0; j <= N; ++j) {
    for (std::size_t k = j; k <= N; ++k) {
      const double v = inner_product_polarized({{j, 1.0}}, {{k, 1.0}}).real();
      g.entries(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = v;
      g.entries(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = v;
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// Restricted Hadamard multiplier norms on D_{w1}
// ---------------------------------------------------------------------------

enum class PolySubspace {
  /// All polynomials of degree <= N.
  all,
  /// Polynomials of degree <= N with f(0) = 0; there ||f||^2 is the energy alone.
  vanishing_at_origin,
};

struct RestrictedNorm {
  double value = 0.0;
  std::size_t N = 0;
  /// Unit-norm polynomial attaining `value` (zero coefficients past degree N).
  CoeffSeq maximizer;
};

/// Norm of f -> h * f on polynomials of degree <= N in D_{w1}, where h has the
/// profile's weights (zero past degree n).
///
/// Solves D G D v = lambda G v with D = diag(weights) and G the Gram matrix:
/// G is factorized (Cholesky) and the pencil reduced to an ordinary
/// symmetric eigenproblem; the value is sqrt(lambda_max).
inline RestrictedNorm multiplier_norm_restricted(const SummabilityProfile& profile, std::size_t N,
                                                 PolySubspace subspace = PolySubspace::all) {
  if (N < profile.n) {
    throw std::invalid_argument("multiplier_norm_restricted: N (" + std::to_string(N) +
                                ") must be at least the profile degree n (" +
                                std::to_string(profile.n) + ")");
  }
  const GramMatrix gram = gram_matrix(N);
  const std::size_t first = subspace == PolySubspace::vanishing_at_origin ? 1 : 0;
  if (first > N) throw std::invalid_argument("multiplier_norm_restricted: empty subspace");
  const auto dim = static_cast<Eigen::Index>(N + 1 - first);
  const auto off = static_cast<Eigen::Index>(first);

  const Eigen::MatrixXd g = gram.entries.block(off, off, dim, dim);
  Eigen::VectorXd d(dim);
  for (Eigen::Index i = 0; i < dim; ++i) d(i) = profile.weight(static_cast<std::size_t>(i + off));
  const Eigen::MatrixXd a = d.asDiagonal() * g * d.asDiagonal();

  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      a, g, Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("multiplier_norm_restricted: generalized eigensolver failed");
  }
  const Eigen::Index top = dim - 1;  // eigenvalues ascend
  const double lambda = std::max(solver.eigenvalues()(top), 0.0);
  Eigen::VectorXd v = solver.eigenvectors().col(top);  // v^T G v = 1

  Eigen::Index pivot = 0;
  v.cwiseAbs().maxCoeff(&pivot);
  if (v(pivot) < 0.0) v = -v;

  std::vector<complex> coeffs(N + 1, complex{});
  for (Eigen::Index i = 0; i < dim; ++i) coeffs[static_cast<std::size_t>(i + off)] = v(i);
  return {std::sqrt(lambda), N, CoeffSeq(std::move(coeffs))};
}

}  // namespace cesaro
