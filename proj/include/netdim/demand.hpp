#ifndef NETDIM_DEMAND_HPP
#define NETDIM_DEMAND_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "netdim/errors.hpp"
#include "netdim/peakstats.hpp"

namespace netdim {

/// Sober Internet use that every scenario carries.
struct BaselineUsage {
  double r_b_mbps = 10.0;
  double s_b = 0.02; // share of subscriptions active at peak
  double monthly_volume_gb = 2.0;

  friend bool operator==(const BaselineUsage &, const BaselineUsage &) = default;
};

enum class VodMode {
  per_inhabitant, // s_v counts inhabitants; streams shared by `sharing` viewers
  per_subscriber, // s_v counts subscriptions
};

/// Video-on-demand streaming.
struct VodUsage {
  double r_v_mbps = 0.0;
  double s_v = 0.2;
  double sharing = 1.5; // viewers per stream
  double cdn_fraction = 0.8;
  double daily_hours = 3.2; // per subscription
  VodMode mode = VodMode::per_inhabitant;

  friend bool operator==(const VodUsage &, const VodUsage &) = default;
};

/// Large-file downloads, modelled per subscription with a relaxed confidence.
struct DownloadUsage {
  double r_v_mbps = 200.0;
  double s_v = 0.03;
  double epsilon = 1e-7;
  double monthly_volume_gb = 25.0;
  double cdn_fraction = 0.95;

  friend bool operator==(const DownloadUsage &, const DownloadUsage &) = default;
};

enum class CacheKind {
  home, // one DTT-filled caching box per home
  olt,  // one caching card per OLT
};

/// Local caching that removes part of the OTT usage.
struct CacheOption {
  CacheKind kind = CacheKind::home;
  double ott_reduction = 0.0;

  friend bool operator==(const CacheOption &, const CacheOption &) = default;
};

struct Scenario {
  std::string name;
  BaselineUsage baseline;
  std::optional<VodUsage> vod;
  std::optional<DownloadUsage> dl;
  std::optional<CacheOption> cache;
  double onu_off_fraction = 0.0; // share of ONUs switched off on average

  /// True when the usage needs the CDN and its fill traffic.
  bool service_active() const {
    return (vod && vod->r_v_mbps > 0.0 && vod->s_v > 0.0) ||
           (dl && dl->r_v_mbps > 0.0 && dl->s_v > 0.0);
  }

  double cdn_fraction() const {
    if (dl)
      return dl->cdn_fraction;
    return vod ? vod->cdn_fraction : 0.0;
  }

  friend bool operator==(const Scenario &, const Scenario &) = default;
};

/// Field-level checks; an empty result means the scenario is valid.
inline std::vector<FieldIssue> validate(const Scenario &s, const std::string &prefix) {
  std::vector<FieldIssue> issues;
  const auto fraction = [&](const std::string &field, double v) {
    if (!(v >= 0.0 && v <= 1.0))
      issues.push_back({prefix + field, "must be a fraction in [0, 1], got " +
                                            std::to_string(v)});
  };
  const auto non_negative = [&](const std::string &field, double v) {
    if (!(v >= 0.0) || !std::isfinite(v))
      issues.push_back({prefix + field, "must be >= 0, got " + std::to_string(v)});
  };

  if (s.name.empty())
    issues.push_back({prefix + "name", "must not be empty"});
  non_negative("baseline.r_b_mbps", s.baseline.r_b_mbps);
  fraction("baseline.s_b", s.baseline.s_b);
  non_negative("baseline.monthly_volume_gb", s.baseline.monthly_volume_gb);
  fraction("onu_off_fraction", s.onu_off_fraction);
  if (s.vod) {
    non_negative("vod.r_v_mbps", s.vod->r_v_mbps);
    fraction("vod.s_v", s.vod->s_v);
    if (!(s.vod->sharing >= 1.0))
      issues.push_back({prefix + "vod.sharing", "must be >= 1 viewer per stream"});
    fraction("vod.cdn_fraction", s.vod->cdn_fraction);
    if (!(s.vod->daily_hours >= 0.0 && s.vod->daily_hours <= 24.0))
      issues.push_back({prefix + "vod.daily_hours", "must lie in [0, 24]"});
  }
  if (s.dl) {
    non_negative("dl.r_v_mbps", s.dl->r_v_mbps);
    fraction("dl.s_v", s.dl->s_v);
    if (!(s.dl->epsilon > 0.0 && s.dl->epsilon < 1.0))
      issues.push_back({prefix + "dl.epsilon", "must lie in (0, 1)"});
    non_negative("dl.monthly_volume_gb", s.dl->monthly_volume_gb);
    fraction("dl.cdn_fraction", s.dl->cdn_fraction);
  }
  if (s.vod && s.dl)
    issues.push_back({prefix + "dl", "vod and dl usages cannot be combined"});
  if (s.cache) {
    fraction("cache.ott_reduction", s.cache->ott_reduction);
    if (!s.vod)
      issues.push_back({prefix + "cache", "caching variants need an active vod usage"});
  }
  return issues;
}

/// Percentile of simultaneously active users in a pool of homes.
///
/// Pool sizes up to the last fit anchor use the fitted closed form; larger
/// pools are evaluated exactly (or by the Gaussian limit) unless the fit is
/// explicitly extrapolated.
class PoolQuantile {
public:
  /// q_s(n): active subscriptions among n homes.
  static PoolQuantile subscribers(double share, ConfidenceLevel eps,
                                  const std::array<std::uint64_t, 3> &anchors,
                                  bool extrapolate = false) {
    PoolQuantile q(share, eps, std::nullopt, anchors, extrapolate);
    q.fit(share);
    return q;
  }

  /// q_s o q_i(n): active inhabitants among the inhabitants of n homes.
  static PoolQuantile inhabitants(const HouseholdDistribution &dist, double share,
                                  ConfidenceLevel eps,
                                  const std::array<std::uint64_t, 3> &anchors,
                                  bool extrapolate = false) {
    PoolQuantile q(share, eps, dist, anchors, extrapolate);
    q.fit(share * dist.mean());
    return q;
  }

  std::uint64_t exact(std::uint64_t n) const {
    if (share_ == 0.0)
      return 0;
    return households_ ? composite_quantile(*households_, share_, n, eps_)
                       : binomial_quantile(n, share_, eps_);
  }

  double operator()(double n) const {
    if (n <= 0.0 || share_ == 0.0)
      return 0.0;
    if (extrapolate_ || n <= fit_limit())
      return approx_(n);
    const auto pool = static_cast<std::uint64_t>(std::ceil(n));
    return std::max(double(exact(pool)), approx_(fit_limit()));
  }

  const QuantileApprox &approx() const noexcept { return approx_; }
  double fit_limit() const noexcept { return double(anchors_.back()); }
  double share() const noexcept { return share_; }

private:
  PoolQuantile(double share, ConfidenceLevel eps,
               std::optional<HouseholdDistribution> households,
               const std::array<std::uint64_t, 3> &anchors, bool extrapolate)
      : share_(share), eps_(eps), households_(std::move(households)),
        anchors_(anchors), extrapolate_(extrapolate) {
    if (!(share >= 0.0 && share <= 1.0))
      throw DomainError("activity share must lie in [0, 1], got " +
                        std::to_string(share));
  }

  void fit(double mean) {
    if (share_ == 0.0)
      return;
    approx_ = fit_quantile_approx([this](std::uint64_t n) { return exact(n); },
                                  anchors_, mean);
  }

  double share_;
  ConfidenceLevel eps_;
  std::optional<HouseholdDistribution> households_;
  std::array<std::uint64_t, 3> anchors_;
  bool extrapolate_;
  QuantileApprox approx_{0.0, 0.0, 1.0, 0.0};
};

struct DemandOptions {
  std::array<std::uint64_t, 3> anchors = kDefaultAnchors;
  bool extrapolate_fit = false;
};

/// Peak demand R(n), in Mbps, of a pool of n homes.
class DemandCurve {
public:
  struct Term {
    double rate_mbps;
    double divisor;
    PoolQuantile quantile;
  };

  explicit DemandCurve(std::vector<Term> terms) : terms_(std::move(terms)) {}

  double operator()(double homes) const {
    if (homes <= 0.0)
      return 0.0;
    double total = 0.0;
    for (const auto &term : terms_)
      total += term.rate_mbps * term.quantile(homes) / term.divisor;
    return total;
  }

  double gbps(double homes) const { return (*this)(homes) / 1000.0; }

  const std::vector<Term> &terms() const noexcept { return terms_; }

private:
  std::vector<Term> terms_;
};

/// Builds R(n) = r_v q_sv o q_i(n) / S + r_b q_sb(n), or its download variant
/// r_v q_sv(n) + r_b q_sb(n) where the first term uses the relaxed epsilon.
inline DemandCurve demand_curve(const Scenario &scenario,
                                const HouseholdDistribution &dist, ConfidenceLevel eps,
                                const DemandOptions &options = {}) {
  std::vector<DemandCurve::Term> terms;
  if (scenario.vod && scenario.vod->r_v_mbps > 0.0 && scenario.vod->s_v > 0.0) {
    const auto &vod = *scenario.vod;
    auto quantile = vod.mode == VodMode::per_inhabitant
                        ? PoolQuantile::inhabitants(dist, vod.s_v, eps, options.anchors,
                                                    options.extrapolate_fit)
                        : PoolQuantile::subscribers(vod.s_v, eps, options.anchors,
                                                    options.extrapolate_fit);
    terms.push_back({vod.r_v_mbps, vod.sharing, std::move(quantile)});
  }
  if (scenario.dl && scenario.dl->r_v_mbps > 0.0 && scenario.dl->s_v > 0.0) {
    const auto &dl = *scenario.dl;
    terms.push_back({dl.r_v_mbps, 1.0,
                     PoolQuantile::subscribers(dl.s_v, ConfidenceLevel(dl.epsilon),
                                               options.anchors,
                                               options.extrapolate_fit)});
  }
  if (scenario.baseline.r_b_mbps > 0.0 && scenario.baseline.s_b > 0.0) {
    terms.push_back({scenario.baseline.r_b_mbps, 1.0,
                     PoolQuantile::subscribers(scenario.baseline.s_b, eps,
                                               options.anchors,
                                               options.extrapolate_fit)});
  }
  return DemandCurve(std::move(terms));
}

} // namespace netdim

#endif // NETDIM_DEMAND_HPP
