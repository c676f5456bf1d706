// Coefficient sequences, Hadamard products and the summability means
// (Cesaro, discrete Riesz, Fejer, Taylor partial sums).
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

namespace cesaro {

using complex = std::complex<double>;

/// Finite Taylor coefficient sequence a_0, ..., a_N of a polynomial.
///
/// Always holds at least one coefficient. Trailing zeros are allowed and do
/// not affect equality, so (1, 2) == (1, 2, 0, 0).
class CoeffSeq {
 public:
  CoeffSeq() : coeffs_(1, complex{}) {}

  explicit CoeffSeq(std::vector<complex> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) {
      throw std::invalid_argument("CoeffSeq: at least one coefficient is required");
    }
  }

  CoeffSeq(std::initializer_list<complex> coeffs)
      : CoeffSeq(std::vector<complex>(coeffs)) {}

  static CoeffSeq from_real(std::span<const double> values) {
    return CoeffSeq(std::vector<complex>(values.begin(), values.end()));
  }

  /// Monomial z^degree scaled by `scale`.
  static CoeffSeq monomial(std::size_t degree, complex scale = 1.0) {
    std::vector<complex> c(degree + 1, complex{});
    c[degree] = scale;
    return CoeffSeq(std::move(c));
  }

  std::size_t size() const noexcept { return coeffs_.size(); }
  /// Nominal degree N (length - 1), trailing zeros included.
  std::size_t degree() const noexcept { return coeffs_.size() - 1; }

  complex operator[](std::size_t k) const noexcept { return coeffs_[k]; }
  /// Coefficient at k, or zero past the stored length.
  complex at_or_zero(std::size_t k) const noexcept {
    return k < coeffs_.size() ? coeffs_[k] : complex{};
  }

  std::span<const complex> coeffs() const noexcept { return coeffs_; }
  auto begin() const noexcept { return coeffs_.begin(); }
  auto end() const noexcept { return coeffs_.end(); }

  /// Length once trailing zeros are dropped (at least 1).
  std::size_t significant_size() const noexcept {
    std::size_t n = coeffs_.size();
    while (n > 1 && coeffs_[n - 1] == complex{}) --n;
    return n;
  }

  /// Keeps degrees 0..n (or everything, if shorter).
  CoeffSeq truncated(std::size_t n) const {
    const std::size_t len = std::min(coeffs_.size(), n + 1);
    return CoeffSeq(std::vector<complex>(coeffs_.begin(), coeffs_.begin() + len));
  }

  friend bool operator==(const CoeffSeq& a, const CoeffSeq& b) noexcept {
    const std::size_t n = std::max(a.size(), b.size());
    for (std::size_t k = 0; k < n; ++k) {
      if (a.at_or_zero(k) != b.at_or_zero(k)) return false;
    }
    return true;
  }

 private:
  std::vector<complex> coeffs_;
};

enum class MeanKind { cesaro, riesz, fejer, partial_sum };

inline std::string_view to_string(MeanKind kind) noexcept {
  switch (kind) {
    case MeanKind::cesaro: return "cesaro";
    case MeanKind::riesz: return "riesz";
    case MeanKind::fejer: return "fejer";
    case MeanKind::partial_sum: return "partial_sum";
  }
  return "unknown";
}

/// Multiplier coefficients c_0..c_n of a summability mean; c_k = 0 for k > n.
struct SummabilityProfile {
  MeanKind kind = MeanKind::partial_sum;
  std::optional<double> alpha;  // absent for fejer and partial_sum
  std::size_t n = 0;
  std::vector<double> weights;  // c_0..c_n

  double weight(std::size_t k) const noexcept {
    return k < weights.size() ? weights[k] : 0.0;
  }
};

// ---------------------------------------------------------------------------
// Generalized binomial coefficients
// ---------------------------------------------------------------------------

/// log binom(n + alpha, alpha) = log Gamma(n+alpha+1) - log Gamma(alpha+1) - log Gamma(n+1).
///
/// Uses the gamma-ratio Gamma(n+1)/Gamma(n+1+alpha) directly rather than a
/// difference of lgamma values, which cancels catastrophically for large n.
inline double log_gen_binomial(std::size_t n, double alpha) {
  if (!(alpha > -1.0)) {
    throw std::domain_error("gen_binomial: alpha must exceed -1");
  }
  if (n == 0 || alpha == 0.0) return 0.0;
  const double z = static_cast<double>(n) + 1.0;
  return -std::log(boost::math::tgamma_delta_ratio(z, alpha)) -
         boost::math::lgamma(alpha + 1.0);
}

/// Gamma(n+alpha+1) / (Gamma(alpha+1) Gamma(n+1)); finite for n up to ~1e6 and beyond.
inline double gen_binomial(std::size_t n, double alpha) {
  return std::exp(log_gen_binomial(n, alpha));
}

// ---------------------------------------------------------------------------
// Summability profiles
// ---------------------------------------------------------------------------

namespace detail {
inline void require_positive_order(double alpha, const char* what) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::domain_error(std::string(what) + ": order alpha must be positive and finite");
  }
}
}  // namespace detail

/// Weights binom(n-k+alpha, alpha) / binom(n+alpha, alpha) of the (C, alpha) mean.
///
/// Each weight is the ratio r(n) / r(n-k) with r(m) = Gamma(m+1)/Gamma(m+1+alpha),
/// so rounding error stays a few ulps for every k instead of growing with k.
inline SummabilityProfile cesaro_weights(std::size_t n, double alpha) {
  detail::require_positive_order(alpha, "cesaro_weights");
  const auto r = [alpha](std::size_t m) {
    return boost::math::tgamma_delta_ratio(static_cast<double>(m) + 1.0, alpha);
  };
  const double top = r(n);
  std::vector<double> w(n + 1);
  w[0] = 1.0;
  for (std::size_t k = 1; k <= n; ++k) w[k] = top / r(n - k);
  return {MeanKind::cesaro, alpha, n, std::move(w)};
}

/// Weights (1 - k/(n+1))^alpha of the discrete Riesz mean.
inline SummabilityProfile riesz_weights(std::size_t n, double alpha) {
  detail::require_positive_order(alpha, "riesz_weights");
  std::vector<double> w(n + 1);
  const double denom = static_cast<double>(n) + 1.0;
  for (std::size_t k = 0; k <= n; ++k) {
    w[k] = std::pow(1.0 - static_cast<double>(k) / denom, alpha);
  }
  return {MeanKind::riesz, alpha, n, std::move(w)};
}

/// Fejer weights 1 - k/(n+1).
inline SummabilityProfile fejer_weights(std::size_t n) {
  std::vector<double> w(n + 1);
  const double denom = static_cast<double>(n) + 1.0;
  for (std::size_t k = 0; k <= n; ++k) w[k] = 1.0 - static_cast<double>(k) / denom;
  return {MeanKind::fejer, std::nullopt, n, std::move(w)};
}

/// All-ones weights: the Taylor partial sum s_n. With n = N this is the
/// identity on polynomials of degree <= N.
inline SummabilityProfile partial_sum_weights(std::size_t n) {
  return {MeanKind::partial_sum, std::nullopt, n, std::vector<double>(n + 1, 1.0)};
}

// ---------------------------------------------------------------------------
// Hadamard products and means
// ---------------------------------------------------------------------------

/// Coefficientwise product; length is the shorter of the two inputs.
inline CoeffSeq hadamard_product(const CoeffSeq& h, const CoeffSeq& f) {
  const std::size_t len = std::min(h.size(), f.size());
  std::vector<complex> out(len);
  for (std::size_t k = 0; k < len; ++k) out[k] = h[k] * f[k];
  return CoeffSeq(std::move(out));
}

inline CoeffSeq hadamard_product(std::span<const double> h, const CoeffSeq& f) {
  const std::size_t len = std::min(h.size(), f.size());
  if (len == 0) return CoeffSeq{};
  std::vector<complex> out(len);
  for (std::size_t k = 0; k < len; ++k) out[k] = h[k] * f[k];
  return CoeffSeq(std::move(out));
}

/// The mean described by `profile` applied to f, i.e. h_n * (f truncated at degree n).
inline CoeffSeq apply_mean(const SummabilityProfile& profile, const CoeffSeq& f) {
  return hadamard_product(std::span<const double>(profile.weights), f.truncated(profile.n));
}

}  // namespace cesaro
