#include "lab/carleson.hpp"

#include <algorithm>
#include <cmath>

namespace lab {

ScaleRange default_carleson_radii(const AtomicMeasure& m, const SampledCurve& boundary) {
  ScaleRange r;
  r.r_min = 2.0 * m.base_resolution;
  r.r_max = boundary.diameter();
  r.per_octave = 3;
  if (!(r.r_min > 0.0)) r.r_min = r.r_max / 4096.0;
  if (r.r_min >= r.r_max)
    throw ResolutionError("carleson radius range empty; refine the measure");
  return r;
}

CarlesonReport boundary_norm(const AtomicMeasure& m, const SampledCurve& boundary,
                             const ScaleRange& radii) {
  if (radii.r_max > boundary.diameter() * (1.0 + 1e-9))
    throw InputError("boundary_norm: r_max exceeds boundary diameter");
  if (m.base_resolution > 0.0 && radii.r_min < 2.0 * m.base_resolution * (1.0 - 1e-12))
    throw ResolutionError("boundary_norm: r_min below 2x measure resolution");

  std::vector<double> rs = radii.scales();
  std::sort(rs.begin(), rs.end());
  const std::size_t nr = rs.size();

  CarlesonReport rep;
  rep.form = CarlesonForm::BoundaryDisk;
  rep.r_min = rs.front();
  rep.r_max = rs.back();
  rep.profile.resize(nr);
  for (std::size_t k = 0; k < nr; ++k) rep.profile[k] = {rs[k], 0.0};

  std::vector<double> bucket(nr + 1);
  for (Complex z : boundary.points()) {
    std::fill(bucket.begin(), bucket.end(), 0.0);
    // histogram atoms by the first radius that contains them (open disks)
    for (const Atom& a : m.atoms) {
      double d = std::abs(a.pos - z);
      std::size_t k = static_cast<std::size_t>(
          std::upper_bound(rs.begin(), rs.end(), d) - rs.begin());
      bucket[k] += a.mass;
    }
    double mass = 0.0;
    for (std::size_t k = 0; k < nr; ++k) {
      mass += bucket[k];
      double ratio = mass / rs[k];
      if (ratio > rep.profile[k].value) rep.profile[k].value = ratio;
      if (ratio > rep.norm) {
        rep.norm = ratio;
        rep.argmax_center = z;
        rep.argmax_scale = rs[k];
      }
    }
  }
  return rep;
}

ScaleRange default_sector_heights(const AtomicMeasure& m) {
  ScaleRange r;
  r.r_min = std::max(2.0 * m.base_resolution, 1.0 / 4096.0);
  r.r_max = 1.0;
  r.per_octave = 3;
  if (r.r_min >= r.r_max) throw ResolutionError("sector height range empty");
  return r;
}

CarlesonReport sector_norm(const AtomicMeasure& m, const ScaleRange& h_range) {
  for (const Atom& a : m.atoms)
    if (std::abs(a.pos) > 1.0 + 1e-12)
      throw InputError("sector_norm: atom outside the closed unit disk");
  if (h_range.r_max > 1.0 + 1e-12)
    throw InputError("sector_norm: sector height cannot exceed 1");
  if (m.base_resolution > 0.0 && h_range.r_min < 2.0 * m.base_resolution * (1.0 - 1e-12))
    throw ResolutionError("sector_norm: h_min below 2x measure resolution");

  CarlesonReport rep;
  rep.form = CarlesonForm::Sector;
  std::vector<double> hs = h_range.scales();  // descending
  rep.r_min = hs.back();
  rep.r_max = hs.front();

  for (double h : hs) {
    // theta grid of step h/2; accumulate masses of atoms with |z| >= 1-h
    // into every sector that holds them
    int nt = std::max(8, static_cast<int>(std::ceil(2.0 * kPi / (h / 2.0))));
    double step = 2.0 * kPi / nt;
    std::vector<double> masses(static_cast<std::size_t>(nt), 0.0);
    for (const Atom& a : m.atoms) {
      double r = std::abs(a.pos);
      if (r < 1.0 - h) continue;
      double t = std::arg(a.pos);
      // sectors with |t - t0| <= h, t0 = j*step
      int j_lo = static_cast<int>(std::ceil((t - h) / step));
      int j_hi = static_cast<int>(std::floor((t + h) / step));
      for (int j = j_lo; j <= j_hi; ++j) {
        int jj = ((j % nt) + nt) % nt;
        masses[static_cast<std::size_t>(jj)] += a.mass;
      }
    }
    double best = 0.0;
    int best_j = 0;
    for (int j = 0; j < nt; ++j)
      if (masses[static_cast<std::size_t>(j)] > best) {
        best = masses[static_cast<std::size_t>(j)];
        best_j = j;
      }
    double ratio = best / h;
    rep.profile.push_back({h, ratio});
    if (ratio > rep.norm) {
      rep.norm = ratio;
      rep.argmax_scale = h;
      rep.argmax_center = Complex(std::cos(best_j * step), std::sin(best_j * step));
    }
  }
  std::reverse(rep.profile.begin(), rep.profile.end());  // ascending scales
  return rep;
}

VanishingDiagnosis vanishing_diagnosis(const CarlesonReport& report, double threshold_slope) {
  if (report.profile.size() < 4)
    throw InputError("vanishing_diagnosis: need a profile with >= 4 scales");
  VanishingDiagnosis d;
  bool all_zero = true;
  for (const ProfilePoint& p : report.profile)
    if (p.value != 0.0) all_zero = false;
  if (all_zero) {
    d.vanishing = true;
    d.zero_profile = true;
    return d;
  }
  // profile is ascending in scale
  d.head = report.profile.front().value;
  d.tail = report.profile.back().value;
  std::vector<double> x, y;
  for (const ProfilePoint& p : report.profile) {
    x.push_back(p.scale);
    y.push_back(p.value);
  }
  double slope = 0.0;
  if (loglog_slope(x, y, &slope)) d.slope = slope;
  d.vanishing = (d.slope >= threshold_slope) && (d.head <= 0.5 * d.tail);
  return d;
}

}  // namespace lab
