// The upper-triangular matrix T_c built from first differences of a
// multiplier sequence c_1..c_n, its l2 operator norm, and closed-form bounds.
//
//        | c_1  c_2-c_1  c_3-c_2  ... |
//  T_c = |  0     c_2    c_3-c_2  ... |
//        |  0      0       c_3    ... |
//
// With c_k = 0 for k > n every row and column past n+1 vanishes, so the
// operator is stored as an (n+1) x (n+1) matrix. The coefficient c_0 of a
// multiplier never enters T_c.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cesaro/series.hpp"

namespace cesaro {

namespace detail {
template <class T>
struct is_complex : std::false_type {};
template <class T>
struct is_complex<std::complex<T>> : std::true_type {};

template <class Scalar>
Scalar conj(Scalar x) {
  if constexpr (is_complex<Scalar>::value) {
    return std::conj(x);
  } else {
    return x;
  }
}
}  // namespace detail

template <class Scalar>
concept TcScalar = std::is_same_v<Scalar, double> || std::is_same_v<Scalar, complex>;

/// Implicit T_c with O(n) products in both directions.
template <TcScalar Scalar>
class basic_tc_operator {
 public:
  using scalar_type = Scalar;

  /// `c` holds c_1..c_n (c_0 excluded).
  explicit basic_tc_operator(std::vector<Scalar> c) : c_(std::move(c)) {
    if (c_.empty()) throw std::invalid_argument("build_tc: empty coefficient sequence");
  }

  std::size_t n() const noexcept { return c_.size(); }
  std::size_t effective_dim() const noexcept { return c_.size() + 1; }

  /// c_k for 1-based k; zero for k > n.
  Scalar c(std::size_t k) const noexcept {
    return (k >= 1 && k <= c_.size()) ? c_[k - 1] : Scalar{};
  }
  std::span<const Scalar> coefficients() const noexcept { return c_; }

  /// y = T x.  y_i = c_i x_i + sum_{k>i} (c_k - c_{k-1}) x_k.
  void apply(std::span<const Scalar> x, std::span<Scalar> y) const {
    check_dims(x.size(), y.size());
    const std::size_t dim = effective_dim();
    // Right-to-left suffix of (c_k - c_{k-1}) x_k; 1-based index k maps to x[k-1].
    Scalar suffix{};
    for (std::size_t i = dim; i >= 1; --i) {
      const Scalar xi = x[i - 1];
      y[i - 1] = c(i) * xi + suffix;
      if (i >= 2) suffix += (c(i) - c(i - 1)) * xi;
    }
  }

  /// y = T* x.  y_k = conj(c_k) x_k + conj(c_k - c_{k-1}) sum_{i<k} x_i.
  void apply_adjoint(std::span<const Scalar> x, std::span<Scalar> y) const {
    check_dims(x.size(), y.size());
    const std::size_t dim = effective_dim();
    Scalar prefix{};
    for (std::size_t k = 1; k <= dim; ++k) {
      const Scalar xk = x[k - 1];
      y[k - 1] = detail::conj(c(k)) * xk;
      if (k >= 2) y[k - 1] += detail::conj(c(k) - c(k - 1)) * prefix;
      prefix += xk;
    }
  }

  std::vector<Scalar> operator*(std::span<const Scalar> x) const {
    std::vector<Scalar> y(x.size());
    apply(x, y);
    return y;
  }

  /// Dense (n+1) x (n+1) materialization; refused past 2048 rows.
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> dense() const {
    const std::size_t dim = effective_dim();
    if (dim > kMaxDenseDim) {
      throw std::length_error("TcOperator::dense: effective dimension " + std::to_string(dim) +
                              " exceeds " + std::to_string(kMaxDenseDim));
    }
    const auto d = static_cast<Eigen::Index>(dim);
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m =
        Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(d, d);
    for (std::size_t k = 1; k <= dim; ++k) {
      const auto col = static_cast<Eigen::Index>(k - 1);
      m(col, col) = c(k);
      if (k >= 2) {
        const Scalar diff = c(k) - c(k - 1);
        for (Eigen::Index row = 0; row < col; ++row) m(row, col) = diff;
      }
    }
    return m;
  }

  static constexpr std::size_t kMaxDenseDim = 2048;

 private:
  void check_dims(std::size_t nx, std::size_t ny) const {
    if (nx != effective_dim() || ny != effective_dim()) {
      throw std::invalid_argument("tc_matvec: dimension mismatch (expected " +
                                  std::to_string(effective_dim()) + ", got " +
                                  std::to_string(nx) + " -> " + std::to_string(ny) + ")");
    }
  }

  std::vector<Scalar> c_;
};

using TcOperator = basic_tc_operator<double>;
using ComplexTcOperator = basic_tc_operator<complex>;

/// T_c from c_1..c_n.
inline TcOperator build_tc(std::span<const double> c) {
  return TcOperator(std::vector<double>(c.begin(), c.end()));
}

inline ComplexTcOperator build_tc(std::span<const complex> c) {
  return ComplexTcOperator(std::vector<complex>(c.begin(), c.end()));
}

inline TcOperator build_tc(std::initializer_list<double> c) {
  return TcOperator(std::vector<double>(c));
}

/// T_h for a multiplier profile: drops c_0, keeps c_1..c_n.
inline TcOperator build_tc(const SummabilityProfile& profile) {
  if (profile.weights.size() < 2) {
    throw std::invalid_argument("build_tc: profile of degree 0 has no c_1..c_n");
  }
  return TcOperator(std::vector<double>(profile.weights.begin() + 1, profile.weights.end()));
}

// ---------------------------------------------------------------------------
// Operator norm
// ---------------------------------------------------------------------------

enum class NormMethod { power_iteration, dense_svd };

inline std::string_view to_string(NormMethod m) noexcept {
  return m == NormMethod::power_iteration ? "power_iteration" : "dense_svd";
}

struct NormEstimate {
  double value = 0.0;  // ||T||, not squared
  NormMethod method = NormMethod::power_iteration;
  std::int64_t iterations = 0;
  double residual = 0.0;  // ||T*T x - lambda x|| / lambda at the returned x
  std::optional<double> dense_check;  // dense SVD value when it was computed
};

struct PowerIterationOptions {
  double tol = 1e-10;
  std::int64_t max_iterations = 100000;
  std::uint64_t seed = 0x5EED;
  /// Run a dense SVD alongside when effective_dim <= this; 0 disables.
  std::size_t cross_check_dim = 512;
  /// Relative disagreement with the dense SVD that counts as failure.
  double cross_check_rtol = 1e-8;
};

/// Thrown when power iteration exhausts its budget; carries the best estimate.
class convergence_error : public std::runtime_error {
 public:
  convergence_error(const std::string& what, NormEstimate best)
      : std::runtime_error(what), best_(best) {}
  const NormEstimate& best_estimate() const noexcept { return best_; }

 private:
  NormEstimate best_;
};

/// Largest singular value from a dense SVD.
template <TcScalar Scalar>
NormEstimate tc_norm_dense(const basic_tc_operator<Scalar>& op) {
  const auto m = op.dense();
  Eigen::BDCSVD<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>> svd(m);
  NormEstimate est;
  est.value = svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
  est.method = NormMethod::dense_svd;
  return est;
}

namespace detail {

template <class Scalar>
double norm2(std::span<const Scalar> v) {
  double s = 0.0;
  for (const Scalar& x : v) s += std::norm(x);
  return std::sqrt(s);
}

// Power iteration on T*T from a given start vector. Returns the estimate and
// whether the residual test was met.
template <class Scalar>
std::pair<NormEstimate, bool> power_iterate(const basic_tc_operator<Scalar>& op,
                                            std::vector<Scalar> x, double tol,
                                            std::int64_t max_iterations) {
  const std::size_t dim = op.effective_dim();
  double cmax = 0.0;
  for (const Scalar& v : op.coefficients()) cmax = std::max(cmax, std::abs(v));
  // ||T x|| below this after one step means x is in ker T up to roundoff.
  const double kernel_floor = 1e-10 * cmax;
  std::vector<Scalar> tx(dim), ttx(dim);
  NormEstimate est;

  double xnorm = norm2<Scalar>(x);
  if (xnorm == 0.0) return {est, false};
  for (auto& v : x) v /= xnorm;

  for (std::int64_t it = 1; it <= max_iterations; ++it) {
    op.apply(x, tx);
    op.apply_adjoint(tx, ttx);
    // Rayleigh quotient of T*T at unit x.
    const double lambda = std::pow(norm2<Scalar>(tx), 2);
    est.iterations = it;
    est.value = std::sqrt(lambda);
    if (est.value <= kernel_floor) {
      // x lies in the kernel of T; this start vector carries no information.
      est.residual = 0.0;
      return {est, false};
    }
    double r2 = 0.0;
    for (std::size_t i = 0; i < dim; ++i) r2 += std::norm(ttx[i] - lambda * x[i]);
    est.residual = std::sqrt(r2) / lambda;
    if (est.residual <= tol) return {est, true};

    const double next_norm = norm2<Scalar>(ttx);
    for (std::size_t i = 0; i < dim; ++i) x[i] = ttx[i] / next_norm;
  }
  return {est, false};
}

}  // namespace detail

/// ||T_c : l2 -> l2|| by power iteration on T*T using the O(n) products.
///
/// Starts from the normalized all-ones vector, then restarts once from a
/// seeded random vector. All-ones is always in ker T (rows of T_c telescope
/// to zero), so the restart is what finds the top singular value; the better
/// of the two converged runs is returned.
template <TcScalar Scalar>
NormEstimate tc_norm(const basic_tc_operator<Scalar>& op, const PowerIterationOptions& opts = {}) {
  if (!(opts.tol > 0.0)) throw std::invalid_argument("tc_norm: tol must be positive");
  const std::size_t dim = op.effective_dim();

  bool all_zero = true;
  for (const Scalar& v : op.coefficients()) all_zero = all_zero && v == Scalar{};
  if (all_zero) {
    NormEstimate zero;
    zero.iterations = 0;
    return zero;
  }

  auto [from_ones, ones_ok] =
      detail::power_iterate(op, std::vector<Scalar>(dim, Scalar{1}), opts.tol, opts.max_iterations);

  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> gauss;
  std::vector<Scalar> start(dim);
  for (auto& v : start) {
    if constexpr (detail::is_complex<Scalar>::value) {
      const double re = gauss(rng);
      v = Scalar(re, gauss(rng));
    } else {
      v = gauss(rng);
    }
  }
  auto [from_random, random_ok] = detail::power_iterate(op, std::move(start), opts.tol,
                                                        opts.max_iterations);

  NormEstimate best;
  bool ok = false;
  if (random_ok && (!ones_ok || from_random.value >= from_ones.value)) {
    best = from_random;
    ok = true;
  } else if (ones_ok) {
    best = from_ones;
    ok = true;
  } else {
    best = from_random.value >= from_ones.value ? from_random : from_ones;
  }
  best.iterations = from_ones.iterations + from_random.iterations;

  if (!ok) {
    throw convergence_error("tc_norm: power iteration did not reach tol " +
                                std::to_string(opts.tol) + " within " +
                                std::to_string(opts.max_iterations) + " iterations (residual " +
                                std::to_string(best.residual) + ")",
                            best);
  }

  if (opts.cross_check_dim > 0 && dim <= opts.cross_check_dim) {
    const double dense = tc_norm_dense(op).value;
    best.dense_check = dense;
    const double scale = std::max(dense, std::numeric_limits<double>::min());
    if (std::abs(dense - best.value) > opts.cross_check_rtol * scale) {
      throw convergence_error("tc_norm: power iteration " + std::to_string(best.value) +
                                  " disagrees with dense SVD " + std::to_string(dense),
                              best);
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Closed-form bounds on ||T_c||^2
// ---------------------------------------------------------------------------

namespace detail {
// |c_{k+1} - c_k|^2 for 1-based k, with c_{n+1} = 0.
template <class Scalar>
double diff_sq(std::span<const Scalar> c, std::size_t k) {
  const auto at = [&](std::size_t j) { return j >= 1 && j <= c.size() ? c[j - 1] : Scalar{}; };
  return std::norm(at(k + 1) - at(k));
}
}  // namespace detail

namespace detail {
template <class Scalar>
double tc_upper_bound(std::span<const Scalar> c) {
  const std::size_t n = c.size();
  double sum = 0.0;
  for (std::size_t k = 1; k <= n; ++k) sum += detail::diff_sq(c, k);
  return static_cast<double>(n + 1) * sum;
}

template <class Scalar>
double tc_lower_bound(std::span<const Scalar> c, std::size_t m, std::size_t n) {
  if (m < 1 || m > n) {
    throw std::out_of_range("tc_lower_bound: need 1 <= m <= n, got m=" + std::to_string(m) +
                            ", n=" + std::to_string(n));
  }
  double sum = 0.0;
  for (std::size_t k = m; k <= n; ++k) sum += detail::diff_sq(c, k);
  return static_cast<double>(m) * sum;
}
}  // namespace detail

struct BestLowerBound {
  double value = 0.0;
  std::size_t m = 1;
};

namespace detail {
template <class Scalar>
BestLowerBound tc_best_lower(std::span<const Scalar> c) {
  const std::size_t n = c.size();
  BestLowerBound best{-1.0, 1};
  double tail = 0.0;  // sum_{k=m..n}, built right to left
  std::vector<double> tails(n + 2, 0.0);
  for (std::size_t k = n; k >= 1; --k) {
    tail += detail::diff_sq(c, k);
    tails[k] = tail;
  }
  for (std::size_t m = 1; m <= n; ++m) {
    const double v = static_cast<double>(m) * tails[m];
    if (v > best.value) best = {v, m};
  }
  if (best.value < 0.0) best = {0.0, 1};
  return best;
}
}  // namespace detail

/// (n+1) * sum_{k=1..n} |c_{k+1} - c_k|^2 with c_{n+1} = 0; an upper bound for ||T_c||^2.
inline double tc_upper_bound(std::span<const double> c) { return detail::tc_upper_bound(c); }
inline double tc_upper_bound(std::span<const complex> c) { return detail::tc_upper_bound(c); }

/// m * sum_{k=m..n} |c_{k+1} - c_k|^2: the squared norm of an m x (n-m+1)
/// block of T_c whose rows all repeat the differences, hence a lower bound
/// for ||T_c||^2 whenever 1 <= m <= n.
inline double tc_lower_bound(std::span<const double> c, std::size_t m, std::size_t n) {
  return detail::tc_lower_bound(c, m, n);
}
inline double tc_lower_bound(std::span<const complex> c, std::size_t m, std::size_t n) {
  return detail::tc_lower_bound(c, m, n);
}

/// max over 1 <= m <= n of tc_lower_bound(c, m, n), smallest m on ties. O(n).
inline BestLowerBound tc_best_lower(std::span<const double> c) { return detail::tc_best_lower(c); }
inline BestLowerBound tc_best_lower(std::span<const complex> c) { return detail::tc_best_lower(c); }

/// alpha^2 / (2 alpha - 1): the n-independent bound on ||T_{h_n}||^2 for the
/// Riesz multipliers h_n of order alpha > 1/2.
inline double alpha_bound(double alpha) {
  if (!(alpha > 0.5) || !std::isfinite(alpha)) {
    throw std::domain_error("alpha_bound: requires alpha > 1/2 (the bound has a pole at 1/2)");
  }
  return alpha * alpha / (2.0 * alpha - 1.0);
}

/// (1/8) log((n+1)/2): lower bound on ||T_{h_n}||^2 for the order-1/2 Riesz multiplier.
inline double halflog_bound(std::size_t n) {
  if (n < 1) throw std::domain_error("halflog_bound: requires n >= 1");
  return std::log((static_cast<double>(n) + 1.0) / 2.0) / 8.0;
}

}  // namespace cesaro
