#include "lab/transport.hpp"

#include <cmath>

namespace lab {

namespace {

double admissible_radius(const ConformalMap& map) {
  // atoms must sit in the disk minus a collar of twice the boundary
  // uncertainty (derivatives are not trusted nearer than that)
  return 1.0 - 2.0 * map.info().boundary_fit_error;
}

}  // namespace

AtomicMeasure push_forward(const AtomicMeasure& nu, const ConformalMap& map) {
  double rmax = admissible_radius(map);
  AtomicMeasure out;
  out.provenance = nu.provenance;
  out.atoms.reserve(nu.atoms.size());
  double res_scale = 0.0;
  for (std::size_t i = 0; i < nu.atoms.size(); ++i) {
    const Atom& a = nu.atoms[i];
    if (std::abs(a.pos) > rmax)
      throw InputError("push_forward: atom " + std::to_string(i) +
                       " outside the admissible region");
    Jet j = map.jet(a.pos);
    double scale = std::abs(j.d1);
    if (!(scale > 0.0) || !std::isfinite(scale))
      throw InputError("push_forward: derivative degenerate at atom " + std::to_string(i));
    out.atoms.push_back({j.f, a.mass * scale});
    res_scale = std::max(res_scale, scale);
  }
  out.base_resolution = nu.base_resolution * res_scale;
  return out;
}

AtomicMeasure pull_back(const AtomicMeasure& mu, const ConformalMap& map) {
  double rmax = admissible_radius(map);
  AtomicMeasure out;
  out.provenance = mu.provenance;
  out.atoms.reserve(mu.atoms.size());
  double res_scale = 0.0;
  for (std::size_t i = 0; i < mu.atoms.size(); ++i) {
    const Atom& a = mu.atoms[i];
    Complex z = map.inverse(a.pos);
    if (!(std::abs(z) < 1.0) || std::abs(z) > rmax)
      throw InputError("pull_back: atom " + std::to_string(i) +
                       " lands outside the admissible region");
    double scale = std::abs(map.derivative(z));
    if (!(scale > 0.0) || !std::isfinite(scale))
      throw InputError("pull_back: derivative degenerate at atom " + std::to_string(i));
    out.atoms.push_back({z, a.mass / scale});
    res_scale = std::max(res_scale, 1.0 / scale);
  }
  out.base_resolution = mu.base_resolution * res_scale;
  return out;
}

TransportReport norm_ratio(const AtomicMeasure& nu, const ConformalMap& map,
                           const SampledCurve& target_boundary, const std::string& probe_id) {
  TransportReport rep;
  rep.probe_id = probe_id;
  rep.input_norm = sector_norm(nu, default_sector_heights(nu)).norm;
  if (!(rep.input_norm > 0.0)) {
    rep.defined = false;
    return rep;
  }
  AtomicMeasure image = push_forward(nu, map);
  rep.output_norm =
      boundary_norm(image, target_boundary, default_carleson_radii(image, target_boundary)).norm;
  rep.ratio = rep.output_norm / rep.input_norm;
  rep.defined = true;
  return rep;
}

}  // namespace lab
