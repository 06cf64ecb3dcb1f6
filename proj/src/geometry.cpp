#include "lab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lab {

SampledCurve::SampledCurve(std::vector<Complex> points, bool closed)
    : pts_(std::move(points)), closed_(closed) {
  if (pts_.size() < 2) throw InputError("SampledCurve: fewer than 2 points");
  for (std::size_t i = 0; i + 1 < pts_.size(); ++i)
    if (pts_[i] == pts_[i + 1]) throw InputError("SampledCurve: repeated consecutive point");
  if (closed_ && pts_.front() == pts_.back())
    throw InputError("SampledCurve: closed curve must not repeat its first point");

  cum_.resize(pts_.size());
  cum_[0] = 0.0;
  KahanSum acc;
  resolution_ = 0.0;
  for (std::size_t i = 1; i < pts_.size(); ++i) {
    double len = std::abs(pts_[i] - pts_[i - 1]);
    if (!(len > 0.0)) throw InputError("SampledCurve: zero-length segment");
    acc.add(len);
    cum_[i] = acc.value();
    resolution_ = std::max(resolution_, len);
  }
  total_ = cum_.back();
  if (closed_) {
    double len = std::abs(pts_.front() - pts_.back());
    if (!(len > 0.0)) throw InputError("SampledCurve: zero-length closing segment");
    acc.add(len);
    total_ = acc.value();
    resolution_ = std::max(resolution_, len);
  }
}

Complex SampledCurve::point_at_arclength(double s) const {
  if (closed_) {
    s = std::fmod(s, total_);
    if (s < 0) s += total_;
  } else {
    s = std::clamp(s, 0.0, total_);
  }
  // cum_ is strictly increasing; find segment containing s
  auto it = std::upper_bound(cum_.begin(), cum_.end(), s);
  std::size_t i = static_cast<std::size_t>(it - cum_.begin());
  if (i == 0) return pts_.front();
  if (i >= cum_.size()) {
    // closing segment of a closed curve
    double seg = total_ - cum_.back();
    double t = (s - cum_.back()) / seg;
    return pts_.back() + t * (pts_.front() - pts_.back());
  }
  double seg = cum_[i] - cum_[i - 1];
  double t = (s - cum_[i - 1]) / seg;
  return pts_[i - 1] + t * (pts_[i] - pts_[i - 1]);
}

namespace {

// Andrew monotone chain; returns hull vertices (counterclockwise).
std::vector<Complex> convex_hull(std::vector<Complex> p) {
  std::sort(p.begin(), p.end(), [](Complex a, Complex b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  p.erase(std::unique(p.begin(), p.end()), p.end());
  if (p.size() < 3) return p;
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
  h.resize(k - 1);
  return h;
}

}  // namespace

double SampledCurve::diameter() const {
  std::vector<Complex> h = convex_hull(pts_);
  double best = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i)
    for (std::size_t j = i + 1; j < h.size(); ++j)
      best = std::max(best, std::abs(h[i] - h[j]));
  return best;
}

SampledCurve SampledCurve::transformed(Complex scale_rot, Complex shift) const {
  std::vector<Complex> q(pts_.size());
  for (std::size_t i = 0; i < pts_.size(); ++i) q[i] = scale_rot * pts_[i] + shift;
  return SampledCurve(std::move(q), closed_);
}

double AtomicMeasure::total_mass() const {
  KahanSum k;
  for (const Atom& a : atoms) k.add(a.mass);
  return k.value();
}

AtomicMeasure AtomicMeasure::scaled(double factor) const {
  if (!(factor > 0.0)) throw InputError("AtomicMeasure::scaled: factor must be > 0");
  AtomicMeasure out = *this;
  for (Atom& a : out.atoms) a.mass *= factor;
  return out;
}

AtomicMeasure measure_sum(const AtomicMeasure& a, const AtomicMeasure& b) {
  AtomicMeasure out;
  out.atoms = a.atoms;
  out.atoms.insert(out.atoms.end(), b.atoms.begin(), b.atoms.end());
  out.provenance = (a.provenance == b.provenance) ? a.provenance : Provenance::Custom;
  out.base_resolution = std::max(a.base_resolution, b.base_resolution);
  return out;
}

std::string provenance_name(Provenance p) {
  switch (p) {
    case Provenance::CurveArclength: return "curve-arclength";
    case Provenance::AreaDensity: return "area-density";
    default: return "custom";
  }
}

Provenance provenance_from_name(const std::string& s) {
  if (s == "curve-arclength") return Provenance::CurveArclength;
  if (s == "area-density") return Provenance::AreaDensity;
  return Provenance::Custom;
}

AtomicMeasure discretize_arclength(const SampledCurve& c, int atoms_per_segment) {
  if (atoms_per_segment < 1)
    throw InputError("discretize_arclength: atoms_per_segment must be >= 1");
  AtomicMeasure m;
  m.provenance = Provenance::CurveArclength;
  m.base_resolution = c.resolution() / atoms_per_segment;
  m.atoms.reserve(c.segment_count() * static_cast<std::size_t>(atoms_per_segment));
  for (std::size_t i = 0; i < c.segment_count(); ++i) {
    Complex a = c.segment_a(i), b = c.segment_b(i);
    double len = std::abs(b - a);
    double sub = len / atoms_per_segment;
    for (int k = 0; k < atoms_per_segment; ++k) {
      double t = (k + 0.5) / atoms_per_segment;
      m.atoms.push_back({a + t * (b - a), sub});
    }
  }
  return m;
}

double mass_in_disk(const AtomicMeasure& m, const Disk& d) {
  KahanSum k;
  double r2 = d.radius * d.radius;
  for (const Atom& a : m.atoms) {
    Complex v = a.pos - d.center;
    if (v.real() * v.real() + v.imag() * v.imag() < r2) k.add(a.mass);
  }
  return k.value();
}

double point_segment_distance(Complex p, Complex a, Complex b) {
  Complex ab = b - a;
  double len2 = std::norm(ab);
  double t = ((p.real() - a.real()) * ab.real() + (p.imag() - a.imag()) * ab.imag()) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

double distance_to_curve(Complex w, const SampledCurve& c) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < c.segment_count(); ++i)
    best = std::min(best, point_segment_distance(w, c.segment_a(i), c.segment_b(i)));
  return best;
}

// Clip segment [a,b] to the closed disk: solve |a + t(b-a) - c|^2 <= r^2 on
// t in [0,1] and return the covered length.
double segment_length_in_disk(Complex a, Complex b, const Disk& d) {
  Complex u = a - d.center;
  Complex v = b - a;
  double A = std::norm(v);
  if (A == 0.0) return 0.0;
  double B = 2.0 * (u.real() * v.real() + u.imag() * v.imag());
  double C = std::norm(u) - d.radius * d.radius;
  double disc = B * B - 4.0 * A * C;
  if (disc < 0.0) return 0.0;
  double s = std::sqrt(disc);
  double t0 = (-B - s) / (2.0 * A);
  double t1 = (-B + s) / (2.0 * A);
  t0 = std::max(t0, 0.0);
  t1 = std::min(t1, 1.0);
  if (t1 <= t0) return 0.0;
  return (t1 - t0) * std::sqrt(A);
}

double curve_length_in_disk(const SampledCurve& c, const Disk& d) {
  KahanSum k;
  for (std::size_t i = 0; i < c.segment_count(); ++i)
    k.add(segment_length_in_disk(c.segment_a(i), c.segment_b(i), d));
  return k.value();
}

AtomicMeasure grid_area_measure(double cell) {
  if (!(cell > 0.0) || cell >= 1.0) throw InputError("grid_area_measure: bad cell size");
  AtomicMeasure m;
  m.provenance = Provenance::AreaDensity;
  m.base_resolution = cell;
  double area = cell * cell;
  int n = static_cast<int>(std::ceil(1.0 / cell));
  for (int i = -n; i <= n; ++i) {
    for (int j = -n; j <= n; ++j) {
      Complex z{(i + 0.5) * cell, (j + 0.5) * cell};
      if (std::abs(z) < 1.0) m.atoms.push_back({z, area});
    }
  }
  return m;
}

namespace {
double orient(Complex a, Complex b, Complex c) {
  return (b.real() - a.real()) * (c.imag() - a.imag()) -
         (b.imag() - a.imag()) * (c.real() - a.real());
}
bool on_segment(Complex a, Complex b, Complex p) {
  return std::min(a.real(), b.real()) <= p.real() && p.real() <= std::max(a.real(), b.real()) &&
         std::min(a.imag(), b.imag()) <= p.imag() && p.imag() <= std::max(a.imag(), b.imag());
}
}  // namespace

bool segments_intersect(Complex a, Complex b, Complex c, Complex d) {
  double o1 = orient(a, b, c), o2 = orient(a, b, d);
  double o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0)) && o1 != 0 && o2 != 0 && o3 != 0 &&
      o4 != 0)
    return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

bool point_inside(const SampledCurve& c, Complex p) {
  if (!c.closed()) throw InputError("point_inside: curve must be closed");
  // even-odd ray crossing along +x
  bool inside = false;
  for (std::size_t i = 0; i < c.segment_count(); ++i) {
    Complex a = c.segment_a(i), b = c.segment_b(i);
    if ((a.imag() > p.imag()) != (b.imag() > p.imag())) {
      double x = a.real() + (p.imag() - a.imag()) * (b.real() - a.real()) / (b.imag() - a.imag());
      if (x > p.real()) inside = !inside;
    }
  }
  return inside;
}

}  // namespace lab
