#include "lab/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lab/curves.hpp"

namespace lab {

ScaleRange default_radii(const SampledCurve& c) {
  ScaleRange r;
  r.r_min = 2.0 * c.resolution();
  r.r_max = c.diameter();
  r.per_octave = 3;
  if (r.r_min >= r.r_max)
    throw ResolutionError("radius range empty after resolution floor; refine the curve");
  return r;
}

RegularityReport ahlfors_constant(const SampledCurve& c, const ScaleRange& radii,
                                  int grid_per_axis) {
  if (radii.r_min < 2.0 * c.resolution() * (1.0 - 1e-12))
    throw ResolutionError("ahlfors_constant: r_min below 2x curve resolution; refine the curve");
  std::vector<double> rs = radii.scales();          // descending
  std::sort(rs.begin(), rs.end());                  // ascending for sweep
  const std::size_t nr = rs.size();

  // centers: every curve point plus a coarse grid over the bounding box
  std::vector<Complex> centers = c.points();
  double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
  for (Complex p : c.points()) {
    xlo = std::min(xlo, p.real());
    xhi = std::max(xhi, p.real());
    ylo = std::min(ylo, p.imag());
    yhi = std::max(yhi, p.imag());
  }
  if (grid_per_axis > 1 && xhi > xlo && yhi > ylo) {
    for (int i = 0; i < grid_per_axis; ++i)
      for (int j = 0; j < grid_per_axis; ++j)
        centers.push_back({xlo + (xhi - xlo) * i / (grid_per_axis - 1.0),
                           ylo + (yhi - ylo) * j / (grid_per_axis - 1.0)});
  }

  RegularityReport rep;
  rep.r_min = rs.front();
  rep.r_max = rs.back();
  rep.profile.resize(nr);
  for (std::size_t k = 0; k < nr; ++k) rep.profile[k] = {rs[k], 0.0};

  std::vector<double> len_at(nr);       // clipped length at radius rs[k]
  std::vector<double> full_from(nr + 1);  // whole-segment length entering at rs[k]
  for (Complex z : centers) {
    std::fill(len_at.begin(), len_at.end(), 0.0);
    std::fill(full_from.begin(), full_from.end(), 0.0);
    for (std::size_t i = 0; i < c.segment_count(); ++i) {
      Complex a = c.segment_a(i), b = c.segment_b(i);
      double dmin = point_segment_distance(z, a, b);
      if (dmin > rs.back()) continue;
      double dmax = std::max(std::abs(a - z), std::abs(b - z));
      std::size_t k_full = static_cast<std::size_t>(
          std::lower_bound(rs.begin(), rs.end(), dmax) - rs.begin());
      full_from[k_full] += std::abs(b - a);
      std::size_t k0 = static_cast<std::size_t>(
          std::lower_bound(rs.begin(), rs.end(), dmin) - rs.begin());
      for (std::size_t k = k0; k < k_full; ++k)
        len_at[k] += segment_length_in_disk(a, b, {z, rs[k]});
    }
    double carry = 0.0;
    for (std::size_t k = 0; k < nr; ++k) {
      carry += full_from[k];
      double ratio = (len_at[k] + carry) / rs[k];
      if (ratio > rep.profile[k].value) rep.profile[k].value = ratio;
      if (ratio > rep.constant) {
        rep.constant = ratio;
        rep.argmax_center = z;
        rep.argmax_radius = rs[k];
      }
    }
  }
  return rep;
}

namespace {

double polyline_length(const std::vector<Complex>& p, bool closed) {
  KahanSum k;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) k.add(std::abs(p[i + 1] - p[i]));
  if (closed && p.size() > 1) k.add(std::abs(p.front() - p.back()));
  return k.value();
}

double point_diameter(const std::vector<Complex>& pts) {
  std::vector<Complex> p = pts;
  std::sort(p.begin(), p.end(), [](Complex a, Complex b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  p.erase(std::unique(p.begin(), p.end()), p.end());
  auto cross = [](Complex o, Complex a, Complex b) {
    return (a.real() - o.real()) * (b.imag() - o.imag()) -
           (a.imag() - o.imag()) * (b.real() - o.real());
  };
  std::vector<Complex> h(2 * p.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  for (std::size_t i = p.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  h.resize(k > 0 ? k - 1 : 0);
  double best = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i)
    for (std::size_t j = i + 1; j < h.size(); ++j) best = std::max(best, std::abs(h[i] - h[j]));
  return best;
}

}  // namespace

RegularityReport moebius_regularity(const SampledCurve& c, int samples, std::uint64_t seed,
                                    int* skipped) {
  Rng rng(seed);
  double clearance = 8.0 * c.resolution();
  int skip = 0;

  RegularityReport rep;
  const std::vector<Complex>& pts = c.points();
  std::vector<Complex> img(pts.size());

  auto consider = [&](const MoebiusDesc& md) {
    if (!md.affine) {
      if (distance_to_curve(md.pole, c) < clearance) {
        ++skip;
        return;
      }
      for (std::size_t i = 0; i < pts.size(); ++i)
        img[i] = (pts[i] - md.shift) / (pts[i] - md.pole);
    } else {
      for (std::size_t i = 0; i < pts.size(); ++i) img[i] = md.shift * pts[i] + md.pole;
    }
    double len = polyline_length(img, c.closed());
    double diam = point_diameter(img);
    if (!(diam > 0.0)) return;
    double ratio = len / diam;
    if (ratio > rep.constant) {
      rep.constant = ratio;
      rep.worst_map = md;
    }
  };

  // identity, then an inversion at the origin when the curve clears it
  consider({Complex(0, 0), Complex(1, 0), true});
  consider({Complex(0, 0), Complex(1, 0), false});

  double R = c.diameter();
  Complex lo{1e300, 1e300}, hi{-1e300, -1e300};
  for (Complex p : pts) {
    lo = {std::min(lo.real(), p.real()), std::min(lo.imag(), p.imag())};
    hi = {std::max(hi.real(), p.real()), std::max(hi.imag(), p.imag())};
  }
  Complex mid = 0.5 * (lo + hi);

  for (int s = 2; s < samples; ++s) {
    MoebiusDesc md;
    if (rng.uniform() < 0.2) {
      md.affine = true;
      double mag = std::exp(rng.uniform(-1.0, 1.0));
      double ph = rng.uniform(0.0, 2.0 * kPi);
      md.shift = Complex(mag * std::cos(ph), mag * std::sin(ph));
      md.pole = mid + rng.in_disk(R);
    } else {
      // inversion with a pole thrown near (but kept off) the curve
      md.affine = false;
      md.pole = mid + rng.in_disk(1.5 * R);
      md.shift = pts[static_cast<std::size_t>(rng.uniform() * pts.size()) % pts.size()];
    }
    consider(md);
  }
  if (skipped) *skipped = skip;
  return rep;
}

RegularityReport chord_arc_constant(const SampledCurve& c) {
  if (!c.closed()) throw InputError("chord_arc_constant: curve must be closed");
  if (self_intersects(c)) throw InputError("chord_arc_constant: self-intersecting curve");

  double total = c.total_length();
  const std::vector<Complex>& pts = c.points();
  std::size_t n = pts.size();

  RegularityReport rep;
  rep.r_min = 2.0 * c.resolution();
  rep.r_max = total / 2.0;

  for (double sep = total / 2.0; sep >= rep.r_min; sep /= 2.0) {
    double worst = 0.0;
    Complex worst_at;
    for (std::size_t i = 0; i < n; ++i) {
      Complex z1 = pts[i];
      Complex z2 = c.point_at_arclength(c.cum_length(i) + sep);
      double chord = std::abs(z2 - z1);
      if (chord <= 0.0) continue;
      double arc = std::min(sep, total - sep);
      double ratio = arc / chord;
      if (ratio > worst) {
        worst = ratio;
        worst_at = 0.5 * (z1 + z2);
      }
    }
    rep.profile.push_back({sep, worst});
    if (worst > rep.constant) {
      rep.constant = worst;
      rep.argmax_center = worst_at;
      rep.argmax_radius = sep;
    }
  }
  return rep;
}

std::vector<ProfilePoint> smoothness_profile(const SampledCurve& c) {
  if (!c.closed()) throw InputError("smoothness_profile: curve must be closed");
  if (self_intersects(c)) throw InputError("smoothness_profile: self-intersecting curve");

  double total = c.total_length();
  const std::vector<Complex>& pts = c.points();
  std::size_t n = pts.size();

  std::vector<double> scales;  // descending halvings, diameter -> floor
  double diam = c.diameter();
  for (double d = diam; d >= 2.0 * c.resolution(); d /= 2.0) scales.push_back(d);
  if (scales.empty()) throw ResolutionError("smoothness_profile: no scales above floor");
  std::vector<double> bucket_max(scales.size(), 0.0);
  const double inv_log2 = 1.0 / std::log(2.0);

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double chord = std::abs(pts[j] - pts[i]);
      if (chord <= 0.0) continue;
      double along = c.cum_length(j) - c.cum_length(i);
      double arc = std::min(along, total - along);
      double ratio = arc / chord;
      // deepest bucket whose scale still covers this chord
      int k = static_cast<int>(std::floor(std::log(diam / chord) * inv_log2));
      k = std::clamp(k, 0, static_cast<int>(scales.size()) - 1);
      if (scales[static_cast<std::size_t>(k)] < chord && k > 0) --k;
      if (ratio > bucket_max[static_cast<std::size_t>(k)])
        bucket_max[static_cast<std::size_t>(k)] = ratio;
    }
  }
  // profile(scale) = max over pairs with chord <= scale (suffix envelope)
  std::vector<ProfilePoint> profile(scales.size());
  double running = 0.0;
  for (std::size_t k = scales.size(); k-- > 0;) {
    running = std::max(running, bucket_max[k]);
    profile[k] = {scales[k], running};
  }
  return profile;
}

}  // namespace lab
