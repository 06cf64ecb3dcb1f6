// Plane-geometry substrate: sampled curves, disks, atomic measures, and the
// exact polyline/disk primitives everything upstream is built on.
#pragma once

#include <string>
#include <vector>

#include "lab/errors.hpp"
#include "lab/util.hpp"

namespace lab {

struct Disk {
  Complex center;
  double radius = 0.0;  // > 0, finite
};

// Arclength-parametrized polyline, open or closed. For closed curves the
// closing segment points.back() -> points.front() is implied and counted in
// total_length(). All curve-theoretic quantities downstream are defined on
// the polyline itself; refinement is the accuracy story.
class SampledCurve {
 public:
  SampledCurve(std::vector<Complex> points, bool closed);

  const std::vector<Complex>& points() const { return pts_; }
  bool closed() const { return closed_; }
  // cum_length(i) = arclength from points[0] to points[i]; strictly increasing.
  double cum_length(std::size_t i) const { return cum_[i]; }
  double total_length() const { return total_; }
  // max segment length (closing segment included for closed curves)
  double resolution() const { return resolution_; }

  std::size_t segment_count() const { return closed_ ? pts_.size() : pts_.size() - 1; }
  Complex segment_a(std::size_t i) const { return pts_[i]; }
  Complex segment_b(std::size_t i) const { return pts_[(i + 1) % pts_.size()]; }

  // point at arclength s from points[0]; closed curves wrap mod total_length
  Complex point_at_arclength(double s) const;

  // max pairwise distance between sample points
  double diameter() const;

  SampledCurve transformed(Complex scale_rot, Complex shift) const;

 private:
  std::vector<Complex> pts_;
  std::vector<double> cum_;
  bool closed_ = false;
  double total_ = 0.0;
  double resolution_ = 0.0;
};

enum class Provenance { CurveArclength, AreaDensity, Custom };

struct Atom {
  Complex pos;
  double mass = 0.0;  // > 0
};

// Finite positive point-mass measure. base_resolution is the length scale
// below which the discretization is not trusted; estimators refuse scales
// under a multiple of it.
struct AtomicMeasure {
  std::vector<Atom> atoms;
  Provenance provenance = Provenance::Custom;
  double base_resolution = 0.0;

  double total_mass() const;
  AtomicMeasure scaled(double factor) const;
};

AtomicMeasure measure_sum(const AtomicMeasure& a, const AtomicMeasure& b);

std::string provenance_name(Provenance p);
Provenance provenance_from_name(const std::string& s);

// --- operations -------------------------------------------------------------

// Arclength measure of a curve: atoms at uniform sub-midpoints of each
// segment, each carrying the covered sub-arclength.
AtomicMeasure discretize_arclength(const SampledCurve& c, int atoms_per_segment);

// Mass inside the open disk (strict inequality).
double mass_in_disk(const AtomicMeasure& m, const Disk& d);

// Exact point-to-polyline distance.
double distance_to_curve(Complex w, const SampledCurve& c);

// Exact arclength of the polyline inside the closed disk (per-segment clip).
double curve_length_in_disk(const SampledCurve& c, const Disk& d);

// Area measure of the unit disk: atoms at grid-cell centers with cell-area
// masses (cells whose center lies inside the disk).
AtomicMeasure grid_area_measure(double cell);

// --- low-level helpers ------------------------------------------------------

double point_segment_distance(Complex p, Complex a, Complex b);
double segment_length_in_disk(Complex a, Complex b, const Disk& d);
bool segments_intersect(Complex a, Complex b, Complex c, Complex d);
// winding test; curve must be closed
bool point_inside(const SampledCurve& c, Complex p);

}  // namespace lab
