#pragma once

// JSON forms of the reports. Keys keep insertion order so output is stable.

#include <cmath>
#include <json.hpp>

#include "arithstat/dependence.hpp"
#include "arithstat/deviation.hpp"
#include "arithstat/ergodic.hpp"
#include "arithstat/limit_dist.hpp"
#include "arithstat/prob_space.hpp"

namespace arithstat::json {

using Json = nlohmann::ordered_json;

/// NaN and infinities become null.
inline Json real(double x) { return std::isfinite(x) ? Json(x) : Json(); }

inline Json to_json(const EmpiricalMoments& m) {
  Json j;
  j["n"] = m.n;
  j["mean"] = real(m.mean);
  j["variance"] = real(m.variance);
  j["min_value"] = real(m.min_value);
  j["max_value"] = real(m.max_value);
  if (m.histogram) {
    Json h = Json::array();
    for (const auto& [value, count] : *m.histogram)
      h.push_back(Json::array({real(value), count}));
    j["histogram"] = std::move(h);
  } else {
    j["histogram"] = nullptr;
  }
  return j;
}

inline Json to_json(const EmpiricalCdf& c) {
  Json j;
  j["n"] = c.n;
  j["convention"] = "F(y) = P{f(k) < y}";
  Json pts = Json::array();
  for (std::size_t i = 0; i < c.support.size(); ++i)
    pts.push_back(Json::array({real(c.support[i]), real(c.cdf_at_support[i])}));
  pts.push_back(Json::array({"inf", real(c.cdf_at_support.back())}));
  j["cdf_below"] = std::move(pts);
  return j;
}

inline Json to_json(const StationarityReport& r) {
  Json j;
  j["kind"] = r.kind.name();
  j["n"] = r.n;
  j["checkpoints"] = r.checkpoints;
  Json traj = Json::array();
  for (double v : r.mean_trajectory) traj.push_back(real(v));
  j["mean_trajectory"] = std::move(traj);
  j["mean_limit_estimate"] = real(r.mean_limit_estimate);
  j["tail_oscillation"] = real(r.tail_oscillation);
  j["sup_abs_value"] = real(r.sup_abs_value);
  j["sup_unbounded"] = r.sup_unbounded;
  j["r_hat_zero"] = real(r.r_hat_zero);
  j["tested_lags"] = r.tested_lags;
  Json rh = Json::array();
  for (double v : r.tested_r_hat) rh.push_back(real(v));
  j["tested_r_hat"] = std::move(rh);
  j["covariance_stability"] = real(r.covariance_stability);
  j["verdict_2_2"] = r.verdict_2_2;
  j["verdict_2_3"] = r.verdict_2_3;
  j["verdict_2_4"] = r.verdict_2_4;
  Json t;
  t["oscillation_tolerance"] = r.thresholds.oscillation_tolerance;
  t["covariance_sigmas"] = r.thresholds.covariance_sigmas;
  t["first_tested_lag"] = r.thresholds.first_tested_lag;
  t["tested_lag_count"] = r.thresholds.tested_lag_count;
  t["windows"] = r.thresholds.windows;
  t["note"] = "thresholds are engineering configuration, not truth claims";
  j["thresholds"] = std::move(t);
  return j;
}

inline Json to_json(const SummabilityDiagnostic& d) {
  Json j;
  Json p = Json::array();
  for (double v : d.partial_sums) p.push_back(real(v));
  j["partial_sums"] = std::move(p);
  j["tail_slope"] = real(d.tail_slope);
  j["tail_growth"] = real(d.tail_growth);
  j["growth_threshold"] = real(d.growth_threshold);
  j["looks_bounded"] = d.looks_bounded;
  return j;
}

inline Json to_json(const NormalityReport& r, double threshold) {
  Json j;
  j["kind"] = r.kind.name();
  j["n"] = r.n;
  j["block_size"] = r.block_size;
  j["block_count"] = r.block_count;
  j["sample_mean"] = real(r.sample_mean);
  j["sample_sd"] = real(r.sample_sd);
  j["ks_statistic"] = real(r.ks_statistic);
  j["ks_threshold"] = threshold;
  j["pass"] = r.ks_statistic <= threshold;
  j["reading"] =
      "normality tested on disjoint block sums standardized by their own "
      "mean and sd; dependence between blocks inflates the statistic";
  return j;
}

inline Json to_json(const DeviationReport& r) {
  Json j;
  j["kind"] = r.kind.name();
  j["check"] = r.check;
  j["n_lo"] = r.n_lo;
  j["n_hi"] = r.n_hi;
  j["trend_constant"] = real(r.trend_constant);
  if (r.check == "counting")
    j["psi"] = r.psi_descriptor;
  else
    j["xi"] = real(r.xi);
  j["worst_ratio"] = real(r.worst_ratio);
  j["argmax_n"] = r.argmax_n;
  j["skipped"] = r.skipped;
  j["pass"] = r.pass;
  j["mean_reading"] = r.mean_reading;
  return j;
}

inline Json to_json(const VarianceGrowth& g) {
  Json j;
  j["block_size"] = g.block_size;
  Json pts = Json::array();
  for (const auto& p : g.points)
    pts.push_back(Json::array({p.n, real(p.h_hat)}));
  j["h_hat"] = std::move(pts);
  j["log_log_slope"] = real(g.log_log_slope);
  return j;
}

}  // namespace arithstat::json
