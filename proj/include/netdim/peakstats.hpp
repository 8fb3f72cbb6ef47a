#ifndef NETDIM_PEAKSTATS_HPP
#define NETDIM_PEAKSTATS_HPP

// High-confidence percentiles for small pools of homes and inhabitants.
//
// Averages describe a whole territory well but underestimate the worst case
// seen by equipment shared by a few dozen homes. The functions here return
// the 1 - eps percentile of the number of active users (binomial) or of the
// number of inhabitants (n-fold convolution of a household-size distribution)
// in a pool of n homes, plus a three-parameter closed form that interpolates
// those percentiles for fast evaluation.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/special_functions/erf.hpp>

#include "netdim/errors.hpp"

namespace netdim {

/// Tail mass below which occurrences are ignored when sizing equipment.
class ConfidenceLevel {
public:
  constexpr ConfidenceLevel() = default;

  explicit ConfidenceLevel(double epsilon) : epsilon_(epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
      throw DomainError("confidence epsilon must lie in (0, 1), got " +
                        std::to_string(epsilon));
  }

  constexpr double value() const noexcept { return epsilon_; }

  friend constexpr bool operator==(ConfidenceLevel, ConfidenceLevel) = default;

private:
  double epsilon_ = 1e-9;
};

/// Discrete distribution of the number of inhabitants per home.
class HouseholdDistribution {
public:
  static constexpr unsigned kMaxSupport = 64;

  explicit HouseholdDistribution(std::map<unsigned, double> probabilities)
      : probabilities_(std::move(probabilities)) {
    if (probabilities_.empty())
      throw DomainError("household distribution is empty");
    double total = 0.0;
    for (const auto &[size, p] : probabilities_) {
      if (size < 1 || size > kMaxSupport)
        throw DomainError("household size " + std::to_string(size) +
                          " outside [1, " + std::to_string(kMaxSupport) + "]");
      if (!(p >= 0.0))
        throw DomainError("household probability for size " +
                          std::to_string(size) + " is negative");
      total += p;
    }
    if (std::abs(total - 1.0) > 1e-12)
      throw DomainError("household probabilities sum to " +
                        std::to_string(total) + ", expected 1");

    // Trim zero-mass edges so the lattice starts and ends on real support.
    auto first = std::find_if(probabilities_.begin(), probabilities_.end(),
                              [](const auto &kv) { return kv.second > 0.0; });
    auto last = std::find_if(probabilities_.rbegin(), probabilities_.rend(),
                             [](const auto &kv) { return kv.second > 0.0; });
    min_size_ = first->first;
    max_size_ = last->first;
    pmf_.assign(max_size_ - min_size_ + 1, 0.0);
    for (const auto &[size, p] : probabilities_) {
      if (size >= min_size_ && size <= max_size_)
        pmf_[size - min_size_] = p;
      mean_ += size * p;
    }
    for (const auto &[size, p] : probabilities_)
      variance_ += p * (size - mean_) * (size - mean_);
  }

  /// Inhabitants per home in metropolitan France, 2019 (six or more folded into 6).
  static HouseholdDistribution france_2019() {
    return HouseholdDistribution({{1, 0.369},
                                  {2, 0.326},
                                  {3, 0.135},
                                  {4, 0.113},
                                  {5, 0.041},
                                  {6, 0.016}});
  }

  const std::map<unsigned, double> &probabilities() const noexcept {
    return probabilities_;
  }
  double mean() const noexcept { return mean_; }
  double variance() const noexcept { return variance_; }
  unsigned min_size() const noexcept { return min_size_; }
  unsigned max_size() const noexcept { return max_size_; }

  /// Dense masses for sizes min_size() .. max_size().
  const std::vector<double> &lattice() const noexcept { return pmf_; }

  friend bool operator==(const HouseholdDistribution &a,
                         const HouseholdDistribution &b) {
    return a.probabilities_ == b.probabilities_;
  }

private:
  std::map<unsigned, double> probabilities_;
  std::vector<double> pmf_;
  unsigned min_size_ = 1;
  unsigned max_size_ = 1;
  double mean_ = 0.0;
  double variance_ = 0.0;
};

/// Pools larger than this use the normal approximation of the binomial tail.
inline constexpr std::uint64_t kExactBinomialLimit = 100000;
/// Largest pool for which the n-fold convolution is computed exactly.
inline constexpr std::uint64_t kConvolutionCap = 4096;
/// Pool sizes interpolated by the closed-form approximation.
inline constexpr std::array<std::uint64_t, 3> kDefaultAnchors{16, 128, 1024};

namespace detail {

// Smallest integer q with P(X > q) < eps under N(mean, sd^2), continuity corrected.
inline double normal_tail_quantile(double mean, double sd, ConfidenceLevel eps) {
  const double z = std::sqrt(2.0) * boost::math::erfc_inv(2.0 * eps.value());
  return std::floor(mean + sd * z - 0.5) + 1.0;
}

// Masses on the integer lattice offset, offset+1, ...
struct Lattice {
  std::uint64_t offset = 0;
  std::vector<double> mass{1.0};
};

inline Lattice convolve(const Lattice &a, const Lattice &b) {
  Lattice out;
  out.offset = a.offset + b.offset;
  out.mass.assign(a.mass.size() + b.mass.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.mass.size(); ++i) {
    const double ai = a.mass[i];
    if (ai == 0.0)
      continue;
    for (std::size_t j = 0; j < b.mass.size(); ++j)
      out.mass[i + j] += ai * b.mass[j];
  }
  return out;
}

// Smallest q with P(S > q) < eps; summing from the top keeps tiny tails exact.
inline std::uint64_t upper_percentile(const Lattice &lattice, ConfidenceLevel eps) {
  double tail = 0.0;
  for (std::size_t k = lattice.mass.size(); k-- > 0;) {
    if (tail + lattice.mass[k] >= eps.value())
      return lattice.offset + k;
    tail += lattice.mass[k];
  }
  return lattice.offset;
}

} // namespace detail

/// n-fold convolution of the household distribution by square-and-multiply.
inline detail::Lattice household_sum_distribution(const HouseholdDistribution &dist,
                                                  std::uint64_t n) {
  detail::Lattice result;
  detail::Lattice base{dist.min_size(), dist.lattice()};
  while (n > 0) {
    if (n & 1u)
      result = detail::convolve(result, base);
    n >>= 1u;
    if (n > 0)
      base = detail::convolve(base, base);
  }
  return result;
}

/// 1 - eps percentile of Binomial(n, p): the smallest q <= n with P(X > q) < eps.
///
/// Exact upper-tail summation in log space up to kExactBinomialLimit, normal
/// approximation with continuity correction above it.
inline std::uint64_t binomial_quantile(std::uint64_t n, double p, ConfidenceLevel eps) {
  if (!(p >= 0.0 && p <= 1.0))
    throw DomainError("activity probability must lie in [0, 1], got " +
                      std::to_string(p));
  if (n == 0 || p == 0.0)
    return 0;
  if (p == 1.0)
    return n;

  const auto floor_mean = static_cast<std::uint64_t>(std::floor(n * p));
  if (n > kExactBinomialLimit) {
    const double mean = n * p;
    const double q =
        detail::normal_tail_quantile(mean, std::sqrt(mean * (1.0 - p)), eps);
    const auto clamped = static_cast<std::uint64_t>(std::clamp(q, 0.0, double(n)));
    return std::max(clamped, floor_mean);
  }

  // pmf(k-1) = pmf(k) * k / (n - k + 1) * (1 - p) / p, walked down from k = n.
  const double log_ratio = std::log1p(-p) - std::log(p);
  double log_pmf = n * std::log(p);
  double tail = 0.0;
  for (std::uint64_t k = n;; --k) {
    const double term = std::exp(log_pmf);
    if (tail + term >= eps.value() || k == 0)
      return k;
    tail += term;
    log_pmf += std::log(double(k)) - std::log(double(n - k + 1)) + log_ratio;
  }
}

/// Exact 1 - eps percentile of the total inhabitants of n homes.
inline std::uint64_t convolution_quantile(const HouseholdDistribution &dist,
                                          std::uint64_t n, ConfidenceLevel eps,
                                          std::uint64_t cap = kConvolutionCap) {
  if (n == 0)
    throw DomainError("convolution quantile needs at least one home");
  if (n > cap)
    throw CapacityError("exact convolution of " + std::to_string(n) +
                            " homes exceeds the cap of " + std::to_string(cap) +
                            "; use the fitted approximation or the Gaussian evaluator",
                        n, cap);
  return detail::upper_percentile(household_sum_distribution(dist, n), eps);
}

/// Central-limit estimate of the same percentile, for pools beyond the cap.
inline std::uint64_t gaussian_sum_quantile(const HouseholdDistribution &dist,
                                           std::uint64_t n, ConfidenceLevel eps) {
  if (n == 0)
    return 0;
  const double mean = n * dist.mean();
  const double q =
      detail::normal_tail_quantile(mean, std::sqrt(n * dist.variance()), eps);
  const double lo = std::max(std::floor(mean), double(n) * dist.min_size());
  const double hi = double(n) * dist.max_size();
  return static_cast<std::uint64_t>(std::clamp(q, lo, hi));
}

/// Household-sum percentile: exact below the cap, Gaussian above.
inline std::uint64_t household_sum_quantile(const HouseholdDistribution &dist,
                                            std::uint64_t n, ConfidenceLevel eps,
                                            std::uint64_t cap = kConvolutionCap) {
  if (n == 0)
    return 0;
  return n <= cap ? convolution_quantile(dist, n, eps, cap)
                  : gaussian_sum_quantile(dist, n, eps);
}

/// Percentile of active inhabitants in n homes: q_s applied to q_i(n).
inline std::uint64_t composite_quantile(const HouseholdDistribution &dist, double p,
                                        std::uint64_t n, ConfidenceLevel eps) {
  return binomial_quantile(household_sum_quantile(dist, n, eps), p, eps);
}

/// Closed form max(a n + b n^c, n mean) interpolating a percentile function.
struct QuantileApprox {
  double a = 0.0;
  double b = 0.0;
  double c = 1.0;
  double mean = 0.0;

  double operator()(double n) const {
    if (n <= 0.0)
      return 0.0;
    return std::max(a * n + b * std::pow(n, c), n * mean);
  }

  friend bool operator==(const QuantileApprox &, const QuantileApprox &) = default;
};

inline double eval_quantile_approx(const QuantileApprox &approx, double n) {
  return approx(n);
}

/// Interpolates `exact` at three anchors with a n + b n^c.
///
/// For a fixed c the anchors n1, n2 determine (a, b) linearly; c is then the
/// root of the residual at n3, bracketed on a grid over (0, 2) that skips the
/// degenerate c = 1 and refined by bisection.
template <class ExactFn>
QuantileApprox fit_quantile_approx(ExactFn &&exact,
                                   const std::array<std::uint64_t, 3> &anchors,
                                   double mean) {
  if (anchors[0] < 1 || !(anchors[0] < anchors[1] && anchors[1] < anchors[2]))
    throw DomainError("fit anchors must be strictly increasing and >= 1");

  const double n1 = double(anchors[0]), n2 = double(anchors[1]), n3 = double(anchors[2]);
  const std::array<double, 3> y{double(exact(anchors[0])), double(exact(anchors[1])),
                                double(exact(anchors[2]))};

  const double slope = y[0] / n1;
  const auto proportional = [&](double yi, double ni) {
    return std::abs(yi - slope * ni) <= 1e-12 * std::max(1.0, std::abs(yi));
  };
  if (proportional(y[1], n2) && proportional(y[2], n3))
    return {slope, 0.0, 1.0, mean};

  const auto coefficients = [&](double c) {
    const double p1 = std::pow(n1, c), p2 = std::pow(n2, c);
    const double det = n1 * p2 - n2 * p1;
    return std::pair{(y[0] * p2 - y[1] * p1) / det, (n1 * y[1] - n2 * y[0]) / det};
  };
  const auto residual = [&](double c) {
    const auto [a, b] = coefficients(c);
    return a * n3 + b * std::pow(n3, c) - y[2];
  };

  constexpr int kGrid = 400;
  constexpr double kTolerance = 1e-10;
  for (int k = 1; k + 1 < kGrid; ++k) {
    double lo = double(k) / (kGrid / 2), hi = double(k + 1) / (kGrid / 2);
    if (lo < 1.0 && hi > 1.0)
      continue;
    if (lo == 1.0)
      lo += 1e-9;
    if (hi == 1.0)
      hi -= 1e-9;
    double f_lo = residual(lo);
    const double f_hi = residual(hi);
    if (!std::isfinite(f_lo) || !std::isfinite(f_hi) || (f_lo > 0) == (f_hi > 0))
      continue;

    double best = lo, best_abs = std::abs(f_lo);
    for (int iter = 0; iter < 200 && best_abs > kTolerance; ++iter) {
      const double mid = 0.5 * (lo + hi);
      const double f_mid = residual(mid);
      if (std::abs(f_mid) < best_abs) {
        best = mid;
        best_abs = std::abs(f_mid);
      }
      if (mid == lo || mid == hi)
        break;
      if ((f_mid > 0) == (f_lo > 0)) {
        lo = mid;
        f_lo = f_mid;
      } else {
        hi = mid;
      }
    }

    const auto [a, b] = coefficients(best);
    const QuantileApprox fit{a, b, best, mean};
    bool reproduces = true;
    for (int i = 0; i < 3; ++i) {
      const double n = double(anchors[i]);
      const double raw = a * n + b * std::pow(n, best);
      reproduces = reproduces &&
                   std::abs(raw - y[i]) <= 1e-6 * std::max(1.0, std::abs(y[i]));
    }
    if (reproduces)
      return fit;
  }
  throw FitError("no exponent in (0, 2) interpolates anchor values " +
                     std::to_string(y[0]) + ", " + std::to_string(y[1]) + ", " +
                     std::to_string(y[2]),
                 y);
}

} // namespace netdim

#endif // NETDIM_PEAKSTATS_HPP
