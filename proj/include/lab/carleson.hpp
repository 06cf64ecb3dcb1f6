// Carleson-norm estimators in two forms: boundary-centered disks
// (mass-in-disk over radius, centers on the boundary samples) and unit-disk
// sectors (mass-in-sector over height). Estimates are lower bounds of the
// true suprema. The decay of the per-scale profile drives the vanishing
// diagnosis.
#pragma once

#include <vector>

#include "lab/geometry.hpp"
#include "lab/metrics.hpp"

namespace lab {

enum class CarlesonForm { BoundaryDisk, Sector };

struct CarlesonReport {
  double norm = 0.0;
  Complex argmax_center;      // disk form: center; sector form: e^{i theta0}
  double argmax_scale = 0.0;  // radius or sector height
  std::vector<ProfilePoint> profile;  // (scale, sup over centers at scale)
  CarlesonForm form = CarlesonForm::BoundaryDisk;
  double r_min = 0.0, r_max = 0.0;
};

// sup over boundary sample points z and probed radii of
// mass(open D(z,r)) / r.
CarlesonReport boundary_norm(const AtomicMeasure& m, const SampledCurve& boundary,
                             const ScaleRange& radii);

// Default radius range for a measure against a boundary:
// [2 * base_resolution, diameter(boundary)].
ScaleRange default_carleson_radii(const AtomicMeasure& m, const SampledCurve& boundary);

// sup over sectors {r e^{it}: 1-h <= r < 1, |t - t0| <= h} with t0 on a grid
// of step h/2, of mass(S) / h. Support must lie in the closed unit disk.
CarlesonReport sector_norm(const AtomicMeasure& m, const ScaleRange& h_range);

ScaleRange default_sector_heights(const AtomicMeasure& m);

struct VanishingDiagnosis {
  bool vanishing = false;
  bool zero_profile = false;
  double slope = 0.0;      // fitted log-log decay exponent (when not zero_profile)
  double head = 0.0;       // profile value at r_min
  double tail = 0.0;       // profile value at r_max
};

// True iff the log-log regression slope of the profile meets the threshold
// and the small-scale end has dropped to half the large-scale end. A zero
// profile is vanishing by convention.
VanishingDiagnosis vanishing_diagnosis(const CarlesonReport& report,
                                       double threshold_slope = 0.5);

}  // namespace lab
