// Small shared utilities: deterministic RNG, compensated sums, dyadic
// scale grids, log-log regression.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace lab {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// Deterministic RNG. std::uniform_real_distribution is implementation
// defined, so experiments that promise byte-identical reports roll their own
// uniforms on top of splitmix64.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // uniform w.r.t. area in the disk |z| < radius
  Complex in_disk(double radius = 1.0) {
    double r = radius * std::sqrt(uniform());
    double t = 2.0 * kPi * uniform();
    return {r * std::cos(t), r * std::sin(t)};
  }

 private:
  std::uint64_t state_;
};

// ---------------------------------------------------------------------------
// Kahan-compensated accumulator; measure masses and arclengths are summed
// with it so totals are stable to ~1 ulp.
class KahanSum {
 public:
  void add(double x) {
    double y = x - c_;
    double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

inline double kahan_total(const std::vector<double>& xs) {
  KahanSum k;
  for (double x : xs) k.add(x);
  return k.value();
}

// ---------------------------------------------------------------------------
// Geometric scale grid: descending from r_max to r_min with `per_octave`
// points per factor-of-two (dyadic plus extra geometric subdivisions).
struct ScaleRange {
  double r_min = 0.0;
  double r_max = 0.0;
  int per_octave = 3;

  std::vector<double> scales() const {
    if (!(r_min > 0.0) || !(r_max >= r_min))
      throw std::invalid_argument("ScaleRange: need 0 < r_min <= r_max");
    if (per_octave < 1) throw std::invalid_argument("ScaleRange: per_octave < 1");
    std::vector<double> out;
    const double step = std::pow(2.0, -1.0 / per_octave);
    double r = r_max;
    while (r >= r_min * (1.0 - 1e-12)) {
      out.push_back(r);
      r *= step;
    }
    if (out.empty()) out.push_back(r_max);
    return out;  // descending
  }
};

// ---------------------------------------------------------------------------
// Least-squares slope of log(y) against log(x); pairs with y <= 0 are
// dropped. Returns false when fewer than two usable pairs remain.
inline bool loglog_slope(const std::vector<double>& x, const std::vector<double>& y,
                         double* slope) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) continue;
    double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) return false;
  double denom = n * sxx - sx * sx;
  if (denom == 0.0) return false;
  *slope = (n * sxy - sx * sy) / denom;
  return true;
}

}  // namespace lab
