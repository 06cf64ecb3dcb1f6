// Measure transport under a conformal map: push-forward weights atoms by
// |phi'|, pull-back divides by it; exact on atoms, all discretization error
// stays in the measure-construction step.
#pragma once

#include <string>

#include "lab/carleson.hpp"
#include "lab/conformal.hpp"
#include "lab/geometry.hpp"

namespace lab {

// atom (z, m) -> (phi(z), m * |phi'(z)|); supports must clear the boundary
// by twice the map's boundary uncertainty.
AtomicMeasure push_forward(const AtomicMeasure& nu, const ConformalMap& map);

// atom (w, m) -> (phi^{-1}(w), m / |phi'(phi^{-1}(w))|).
AtomicMeasure pull_back(const AtomicMeasure& mu, const ConformalMap& map);

struct TransportReport {
  double input_norm = 0.0;   // sector norm of the source on the disk
  double output_norm = 0.0;  // boundary-disk norm of the image
  double ratio = 0.0;
  bool defined = false;      // false when the input norm is zero
  std::string probe_id;
};

TransportReport norm_ratio(const AtomicMeasure& nu, const ConformalMap& map,
                           const SampledCurve& target_boundary,
                           const std::string& probe_id = "");

}  // namespace lab
