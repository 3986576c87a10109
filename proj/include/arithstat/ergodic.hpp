#pragma once

// Synthetic stationary sequences with atomic spectra,
//   x_j = m + sum_k z_k exp(i lambda_k j),
// moving-average sequences, and the ergodic averages of both. The spectral
// process is represented only through its realized jumps z_k.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "arithstat/dependence.hpp"
#include "arithstat/error.hpp"
#include "arithstat/rng.hpp"
#include "arithstat/summation.hpp"

namespace arithstat {

using Complex = std::complex<double>;

struct SpectralAtom {
  double lambda;  // frequency in [-pi, pi]
  double sigma2;  // variance of the jump, > 0
};

struct SpectralSpec {
  std::vector<SpectralAtom> atoms;
  Complex mean{0.0, 0.0};

  void validate() const {
    constexpr double pi = std::numbers::pi;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      const auto& a = atoms[i];
      detail::require(a.lambda >= -pi && a.lambda <= pi,
                      "atom frequency must lie in [-pi, pi]");
      detail::require(a.sigma2 > 0.0 && std::isfinite(a.sigma2),
                      "atom variance must be positive and finite");
      for (std::size_t j = 0; j < i; ++j)
        detail::require(atoms[j].lambda != a.lambda,
                        "atom frequencies must be distinct");
    }
  }

  double total_variance() const {
    double s = 0.0;
    for (const auto& a : atoms) s += a.sigma2;
    return s;
  }

  /// Index of the atom at frequency 0, or -1.
  std::ptrdiff_t zero_atom() const {
    for (std::size_t i = 0; i < atoms.size(); ++i)
      if (atoms[i].lambda == 0.0) return static_cast<std::ptrdiff_t>(i);
    return -1;
  }
};

struct SpectralRealization {
  SpectralSpec spec;
  std::uint64_t seed = 0;
  std::vector<Complex> z;  // one jump per atom
  std::vector<Complex> x;  // x_0 .. x_{n-1}
};

namespace detail {

inline Complex unit(double lambda, std::uint64_t j) {
  return std::polar(1.0, lambda * static_cast<double>(j));
}

/// Independent complex Gaussian jumps, E z = 0, E|z|^2 = sigma2.
inline std::vector<Complex> draw_jumps(const SpectralSpec& spec,
                                       rng::Engine& engine) {
  std::normal_distribution<double> normal;
  std::vector<Complex> z;
  z.reserve(spec.atoms.size());
  for (const auto& a : spec.atoms) {
    const double s = std::sqrt(a.sigma2 / 2.0);
    const double re = normal(engine);
    const double im = normal(engine);
    z.emplace_back(s * re, s * im);
  }
  return z;
}

/// (1/n) sum_{j<n} exp(i lambda j), summed term by term.
inline Complex geometric_average(double lambda, std::uint64_t n) {
  CompensatedSum re, im;
  for (std::uint64_t j = 0; j < n; ++j) {
    const Complex u = unit(lambda, j);
    re.add(u.real());
    im.add(u.imag());
  }
  const double dn = static_cast<double>(n);
  return {re.value() / dn, im.value() / dn};
}

}  // namespace detail

inline SpectralRealization sample_spectral(const SpectralSpec& spec,
                                           std::uint64_t n,
                                           std::uint64_t seed) {
  spec.validate();
  detail::require(!spec.atoms.empty(), "spectral spec has no atoms");
  detail::require(n >= 1, "n must be >= 1");
  SpectralRealization r;
  r.spec = spec;
  r.seed = seed;
  auto engine = rng::make_engine(seed);
  r.z = detail::draw_jumps(spec, engine);
  r.x.resize(n);
  for (std::uint64_t j = 0; j < n; ++j) {
    Complex v = spec.mean;
    for (std::size_t k = 0; k < r.z.size(); ++k)
      v += r.z[k] * detail::unit(spec.atoms[k].lambda, j);
    r.x[j] = v;
  }
  return r;
}

/// R(h) = sum_k sigma2_k exp(i lambda_k h).
inline Complex theoretical_covariance(const SpectralSpec& spec,
                                      std::int64_t h) {
  Complex r{0.0, 0.0};
  for (const auto& a : spec.atoms)
    r += a.sigma2 * std::polar(1.0, a.lambda * static_cast<double>(h));
  return r;
}

/// A_n = (1/n) sum_{j<n} x_j over the whole realization, evaluated atom by
/// atom: A_n = m + sum_k z_k (1/n) sum_j exp(i lambda_k j).
inline Complex ergodic_average(const SpectralRealization& r) {
  const auto n = static_cast<std::uint64_t>(r.x.size());
  detail::require(n >= 1, "empty realization");
  Complex a = r.spec.mean;
  for (std::size_t k = 0; k < r.z.size(); ++k)
    a += r.z[k] * detail::geometric_average(r.spec.atoms[k].lambda, n);
  return a;
}

/// Plain compensated time average of any complex sequence.
inline Complex time_average(std::span<const Complex> x) {
  detail::require(!x.empty(), "empty sequence");
  CompensatedSum re, im;
  for (const auto& v : x) {
    re.add(v.real());
    im.add(v.imag());
  }
  const double n = static_cast<double>(x.size());
  return {re.value() / n, im.value() / n};
}

/// The L^2 limit of the ergodic average: m + z at frequency 0 (if any).
inline Complex ergodic_target(const SpectralSpec& spec,
                              std::span<const Complex> z) {
  const auto idx = spec.zero_atom();
  return idx < 0 ? spec.mean : spec.mean + z[static_cast<std::size_t>(idx)];
}

struct MsePoint {
  std::uint64_t n;
  double mse;     // mean over replicates of |A_n - target|^2
  double median;  // median of the same squared errors
};

inline constexpr std::uint64_t kMinReplicates = 100;

/// Monte Carlo mean-square error of A_n against its limit. Replicate r
/// draws its jumps from stream r of `seed`.
inline std::vector<MsePoint> mse_study(const SpectralSpec& spec,
                                       std::span<const std::uint64_t> n_list,
                                       std::uint64_t replicates,
                                       std::uint64_t seed) {
  spec.validate();
  detail::require(!spec.atoms.empty(), "spectral spec has no atoms");
  detail::require(replicates >= kMinReplicates,
                  "mse_study needs at least 100 replicates");
  std::vector<std::vector<Complex>> weights;  // [n index][atom]
  for (std::uint64_t n : n_list) {
    detail::require(n >= 1, "n must be >= 1");
    std::vector<Complex> w;
    for (const auto& a : spec.atoms)
      w.push_back(detail::geometric_average(a.lambda, n));
    weights.push_back(std::move(w));
  }
  std::vector<std::vector<double>> errors(n_list.size());
  for (std::uint64_t r = 0; r < replicates; ++r) {
    auto engine = rng::make_engine(seed, r);
    const auto z = detail::draw_jumps(spec, engine);
    const Complex target = ergodic_target(spec, z);
    for (std::size_t i = 0; i < n_list.size(); ++i) {
      Complex a = spec.mean;
      for (std::size_t k = 0; k < z.size(); ++k) a += z[k] * weights[i][k];
      errors[i].push_back(std::norm(a - target));
    }
  }
  std::vector<MsePoint> out;
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    auto& e = errors[i];
    CompensatedSum s;
    for (double v : e) s.add(v);
    std::sort(e.begin(), e.end());
    const std::size_t mid = e.size() / 2;
    const double median =
        e.size() % 2 ? e[mid] : 0.5 * (e[mid - 1] + e[mid]);
    out.push_back({n_list[i], s.value() / static_cast<double>(e.size()),
                   median});
  }
  return out;
}

/// (1/n) sum_{k<n} R(k); tends to the spectral mass at frequency 0.
inline Complex covariance_average(const SpectralSpec& spec, std::uint64_t n) {
  spec.validate();
  detail::require(n >= 1, "n must be >= 1");
  CompensatedSum re, im;
  for (std::uint64_t k = 0; k < n; ++k) {
    const Complex r = theoretical_covariance(spec, static_cast<std::int64_t>(k));
    re.add(r.real());
    im.add(r.imag());
  }
  const double dn = static_cast<double>(n);
  return {re.value() / dn, im.value() / dn};
}

struct CovarianceComparison {
  std::uint64_t lag;
  Complex theoretical;
  Complex empirical;
  double standard_error;  // of the empirical estimate
};

/// Ensemble autocovariance E[(x_{j+h} - m) conj(x_j - m)] estimated from
/// `replicates` independent realizations of length `length`; the time
/// average inside each realization is then averaged over replicates.
/// A single realization of an atomic spectrum is not ergodic for its
/// covariance (it recovers |z_k|^2, not sigma2_k), hence the ensemble.
inline std::vector<CovarianceComparison> ensemble_autocovariance(
    const SpectralSpec& spec, std::uint64_t length, std::uint64_t replicates,
    std::span<const std::uint64_t> lags, std::uint64_t seed) {
  detail::require(replicates >= 2, "need at least two replicates");
  for (std::uint64_t h : lags)
    detail::require(h < length, "lag must be below the realization length");
  std::vector<std::vector<Complex>> per_lag(lags.size());
  for (std::uint64_t r = 0; r < replicates; ++r) {
    const auto real = sample_spectral(spec, length, rng::derive_seed(seed, r));
    for (std::size_t i = 0; i < lags.size(); ++i) {
      const std::uint64_t h = lags[i];
      CompensatedSum re, im;
      for (std::uint64_t j = 0; j + h < length; ++j) {
        const Complex p =
            (real.x[j + h] - spec.mean) * std::conj(real.x[j] - spec.mean);
        re.add(p.real());
        im.add(p.imag());
      }
      const double m = static_cast<double>(length - h);
      per_lag[i].emplace_back(re.value() / m, im.value() / m);
    }
  }
  std::vector<CovarianceComparison> out;
  const double dr = static_cast<double>(replicates);
  for (std::size_t i = 0; i < lags.size(); ++i) {
    Complex mean{0, 0};
    for (const auto& c : per_lag[i]) mean += c;
    mean /= dr;
    double var = 0.0;
    for (const auto& c : per_lag[i]) var += std::norm(c - mean);
    var /= (dr - 1.0);
    out.push_back({lags[i],
                   theoretical_covariance(spec, static_cast<std::int64_t>(lags[i])),
                   mean, std::sqrt(var / dr)});
  }
  return out;
}

/// y_j = m + sum_{k<=K} a_k xi_{j-k} with xi i.i.d. standard normal.
struct MovingAverageSpec {
  std::vector<double> coefficients;  // a_0 .. a_K
  double mean = 0.0;

  std::size_t order() const { return coefficients.size() - 1; }

  /// sum_j a_j a_{j+h}
  double covariance(std::uint64_t h) const {
    double s = 0.0;
    for (std::size_t j = 0; j + h < coefficients.size(); ++j)
      s += coefficients[j] * coefficients[j + h];
    return s;
  }
};

inline std::vector<double> sample_moving_average(const MovingAverageSpec& spec,
                                                 std::uint64_t n,
                                                 std::uint64_t seed) {
  detail::require(!spec.coefficients.empty(), "need at least a_0");
  const std::size_t k = spec.order();
  detail::require(n > 10 * k, "n must exceed 10 K");
  auto engine = rng::make_engine(seed);
  std::normal_distribution<double> normal;
  std::vector<double> xi(n + k);  // xi[i] is innovation at time i - K
  for (auto& v : xi) v = normal(engine);
  std::vector<double> y(n);
  for (std::uint64_t j = 0; j < n; ++j) {
    double s = spec.mean;
    for (std::size_t i = 0; i <= k; ++i) s += spec.coefficients[i] * xi[j + k - i];
    y[j] = s;
  }
  return y;
}

struct MovingAverageCheck {
  std::uint64_t lag;
  double theoretical;
  double empirical;
  double standard_error;  // Bartlett, Gaussian innovations
  bool within(double sigmas) const {
    return std::abs(empirical - theoretical) <= sigmas * standard_error;
  }
};

/// Compares the sample autocovariance of one moving-average path with the
/// convolution sum_j a_j a_{j+h}.
inline std::vector<MovingAverageCheck> moving_average_check(
    const MovingAverageSpec& spec, std::uint64_t n, std::uint64_t seed,
    std::span<const std::uint64_t> lags) {
  const auto y = sample_moving_average(spec, n, seed);
  const auto emp = detail::autocovariance_of(std::span<const double>(y), lags);
  const auto k = static_cast<std::int64_t>(spec.order());
  auto cov = [&](std::int64_t h) {
    return spec.covariance(static_cast<std::uint64_t>(std::abs(h)));
  };
  std::vector<MovingAverageCheck> out;
  for (std::size_t i = 0; i < lags.size(); ++i) {
    const auto h = static_cast<std::int64_t>(lags[i]);
    double v = 0.0;
    for (std::int64_t u = -2 * k - h; u <= 2 * k + h; ++u)
      v += cov(u) * cov(u) + cov(u + h) * cov(u - h);
    out.push_back({lags[i], spec.covariance(lags[i]), emp.r_hat[i],
                   std::sqrt(v / static_cast<double>(n))});
  }
  return out;
}

struct ArithmeticErgodicTrajectory {
  std::vector<std::uint64_t> checkpoints;
  std::vector<double> mean_deviation;    // S(n)/n - m
  std::vector<double> scaled_deviation;  // (S(n) - n m) / sqrt(n)
  double max_abs_scaled = 0.0;
  std::uint64_t argmax_n = 0;
};

/// Trajectories of S(n)/n - m and (S(n) - n m)/sqrt(n). No convergence is
/// asserted: for dependent kinds the trajectories are reported as is.
inline ArithmeticErgodicTrajectory arithmetic_ergodic_check(
    const SummationSeries& series, double m) {
  detail::require(series.size() >= 1, "no checkpoints");
  ArithmeticErgodicTrajectory t;
  t.checkpoints = series.checkpoints();
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double n = static_cast<double>(series.checkpoints()[i]);
    const double dev = series.value(i) - n * m;
    t.mean_deviation.push_back(series.value(i) / n - m);
    t.scaled_deviation.push_back(dev / std::sqrt(n));
    if (std::abs(t.scaled_deviation.back()) > t.max_abs_scaled ||
        t.argmax_n == 0) {
      t.max_abs_scaled = std::abs(t.scaled_deviation.back());
      t.argmax_n = series.checkpoints()[i];
    }
  }
  return t;
}

}  // namespace arithstat
