// Curve-regularity estimators: Ahlfors constant (mass-in-disk over radius),
// Moebius-image length/diameter ratio, chord-arc constant, and the small-scale
// arc/chord smoothness profile. All reported constants are certified lower
// bounds of the true suprema: sampled centers, radii, and pairs only.
#pragma once

#include <optional>
#include <vector>

#include "lab/geometry.hpp"

namespace lab {

struct ProfilePoint {
  double scale = 0.0;
  double value = 0.0;
};

struct MoebiusDesc {
  Complex pole;     // b of (z - a) / (z - b); inversions have a = b + 1
  Complex shift;    // a
  bool affine = false;
};

struct RegularityReport {
  double constant = 0.0;
  Complex argmax_center;
  double argmax_radius = 0.0;
  std::vector<ProfilePoint> profile;  // (scale, worst ratio at that scale)
  double r_min = 0.0, r_max = 0.0;
  std::optional<MoebiusDesc> worst_map;
};

// sup over centers (curve points + coarse bounding-box grid) and a geometric
// radius sweep of arclength-in-closed-disk / radius.
RegularityReport ahlfors_constant(const SampledCurve& c, const ScaleRange& radii,
                                  int grid_per_axis = 17);

// Default radius range for a curve: [2 * resolution, diameter].
ScaleRange default_radii(const SampledCurve& c);

// max over sampled Moebius maps of image-length / image-diameter, both
// measured on the mapped polyline points. Samples whose pole falls within
// `pole_clearance` multiples of the resolution from the curve are skipped
// and counted.
RegularityReport moebius_regularity(const SampledCurve& c, int samples = 200,
                                    std::uint64_t seed = 1, int* skipped = nullptr);

// max over sampled point pairs of shorter-arc / chord; pairs run over all
// dyadic arclength separations at every sample-point rotation.
RegularityReport chord_arc_constant(const SampledCurve& c);

// upper envelope of arc/chord over pairs with chord <= scale, per scale;
// approaches 1 at small scales iff the sampled curve looks asymptotically
// smooth down to its resolution floor.
std::vector<ProfilePoint> smoothness_profile(const SampledCurve& c);

}  // namespace lab
