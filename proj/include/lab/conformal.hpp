// Numerical conformal mapping of the unit disk onto a polyline-bounded
// domain. The map is built as a composition chain of elementary invertible
// pieces (a base slit opener, geodesic-arc slit pieces, a final square-root
// corner opener, and a disk-to-half-plane Moebius), in the spirit of
// zipper-type boundary interpolation. Derivatives are exact chain-rule jets;
// the inverse walks the chain backwards. Also here: distortion-bound
// validation, the pre-Schwarzian Carleson density, and closed-form
// quasiconformal reflections of circles/ellipses with their dilatation
// fields.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lab/curves.hpp"
#include "lab/geometry.hpp"
#include "lab/json_io.hpp"

namespace lab {

enum class DomainKind { Bounded, UnboundedViaInversion };

struct Jet {
  Complex f;    // value
  Complex d1;   // first derivative
  Complex d2;   // second derivative
};

struct MapPiece {
  enum class Kind { Rotation, DiskToGap, Geodesic, Base, Unfold, Scale };
  Kind kind;
  Complex p0, p1;         // Base: z0, z1; Rotation: phase; Unfold: center;
                          // DiskToGap: u0, half-plane anchor
  double x0 = 0, x1 = 0;  // DiskToGap: q; Geodesic: inv_two_c, d; Scale: factor
};

struct FitInfo {
  double boundary_fit_error = 0.0;  // Hausdorff vs target polyline
  double roundtrip_worst = 0.0;     // worst |inv(map(z)) - z| over probe points
  int skipped_points = 0;           // data points dropped during construction
  double min_im_omega = 0.0;        // smallest upper-half-plane clearance seen
};

class ConformalMap {
 public:
  ConformalMap(std::vector<MapPiece> chain, Complex anchor, DomainKind kind, FitInfo info)
      : chain_(std::move(chain)), anchor_(anchor), kind_(kind), info_(info) {}

  Complex map(Complex z) const;       // disk -> domain
  Jet jet(Complex z) const;           // value + exact first/second derivatives
  Complex derivative(Complex z) const { return jet(z).d1; }
  Complex inverse(Complex w) const;   // domain -> disk

  Complex anchor() const { return anchor_; }
  DomainKind domain_kind() const { return kind_; }
  const FitInfo& info() const { return info_; }
  const std::vector<MapPiece>& chain() const { return chain_; }

 private:
  std::vector<MapPiece> chain_;
  Complex anchor_;
  DomainKind kind_ = DomainKind::Bounded;
  FitInfo info_;
};

// Fit a disk->interior map through the boundary samples, normalized so that
// map(0) = anchor and map'(0) > 0. Throws InputError for bad boundaries or
// anchors, FitError when the boundary budget (3x resolution) is missed.
ConformalMap fit(const SampledCurve& boundary, Complex anchor);

// Disk -> unbounded complement of the closed boundary, folded through
// w -> 1/(w - inversion_center) and recorded as such; inversion_center must
// lie strictly inside the bounded side.
ConformalMap fit_exterior(const SampledCurve& boundary, Complex inversion_center);

struct KoebeReport {
  double min_slack = 0.0;   // most binding relative slack over all inequalities
  int violations = 0;       // count beyond the tolerance
  bool contains_quarter_disk = true;
  bool pass = false;
};

// Distortion-bound gate: two-sided growth and derivative bounds at random
// interior points plus the quarter-disk containment corollary.
KoebeReport koebe_validate(const ConformalMap& map, const SampledCurve& target,
                           int test_points = 1000, std::uint64_t seed = 7,
                           double rel_tol = 1e-6);

// Measure on the disk with cell masses |phi''/phi'|^2 (1-|z|^2) * cell_area,
// sampled on a polar grid with |z| <= 1 - margin. Cells with non-finite
// values are excluded; *excluded_fraction reports how many.
AtomicMeasure pre_schwarzian_density(const ConformalMap& map, int rings = 64,
                                     int spokes = 256, double margin = 0.02,
                                     double* excluded_fraction = nullptr);

struct DilatationSample {
  Complex w;       // sample location in the domain
  Complex mu;      // complex dilatation of the reflection at w
  double dist;     // distance to the curve
  double area;     // attached cell area
};

struct DilatationField {
  std::vector<DilatationSample> samples;
  double stencil = 0.0;          // step used for the Wirtinger stencils
  int dropped = 0;               // samples lost to stencil clearance or range
  double base_resolution = 0.0;  // largest cell extent of the sampling grid
};

// Closed-form reflection across a circle or axis-aligned ellipse, sampled on
// an interior collar with dist in [collar_min, collar_max]. The circle uses
// inversion; the ellipse reflects through an explicit boundary-matched
// coordinate whose dilatation decays linearly at the curve.
DilatationField reflection_dilatation(const CurveSpec& boundary, double collar_min,
                                      double collar_max, int rings = 24, int spokes = 256,
                                      double stencil = 1e-5);

// Symbolically differentiated |mu| of the same reflection; test oracle.
double reflection_dilatation_magnitude(const CurveSpec& boundary, Complex w);

// Atoms (w, |mu|^2 / dist * area); exact-zero entries are dropped.
AtomicMeasure dilatation_to_measure(const DilatationField& field);

// map.json schema
Json map_to_json(const ConformalMap& m);
ConformalMap map_from_json(const Json& j);

}  // namespace lab
