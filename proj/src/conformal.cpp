#include "lab/conformal.hpp"
#include <cstdlib>

#include <algorithm>
#include <cmath>
#include <limits>

namespace lab {

namespace {

constexpr double kBoundaryNudge = 1e-8;  // radius pull-in for boundary evaluation

inline bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Branch of the square root with the cut along [0, inf), continuous from the
// upper side; maps C minus the cut into the closed upper half plane.
inline Complex sqrt_upper(Complex z) {
  Complex r = std::sqrt(-z);
  return Complex(-r.imag(), r.real());  // i * sqrt(-z)
}

// ---- piece evaluation, map direction (disk -> domain) ----------------------

Complex eval_forward(const MapPiece& p, Complex w) {
  switch (p.kind) {
    case MapPiece::Kind::Rotation:
      return p.p0 * w;
    case MapPiece::Kind::DiskToGap: {
      // composite final piece: disk -> half plane minus the closure gap,
      // parametrized so values near the crowded seam stay cancellation-free
      Complex u0 = p.p0, anc = p.p1;
      double q = p.x0;
      Complex cb = std::conj(u0) / u0;
      Complex beta = 1.0 - cb * cb;
      Complex gamma = q * q / (q - anc);
      Complex x = beta * w / (1.0 - w);
      Complex S = std::sqrt(1.0 + x);
      Complex r = x / (1.0 + S);
      Complex u = u0 * (1.0 + r);
      Complex den = gamma + u0 * r;
      return q * u / den;
    }
    case MapPiece::Kind::Geodesic: {
      Complex u = sqrt_upper(w * w - p.x1 * p.x1);
      return u / (1.0 + u * p.x0);
    }
    case MapPiece::Kind::Base: {
      Complex w2 = w * w;
      return (p.p0 * w2 + p.p1) / (w2 + 1.0);
    }
    case MapPiece::Kind::Unfold:
      return p.p0 + 1.0 / w;
    case MapPiece::Kind::Scale:
      return w / p.x0;
  }
  return w;
}

Jet jet_forward(const MapPiece& p, const Jet& in) {
  // compose piece(f(w)): value, p'(f) f', p''(f) f'^2 + p'(f) f''
  Complex x = in.f, v, d1, d2;
  switch (p.kind) {
    case MapPiece::Kind::Rotation:
      v = p.p0 * x;
      d1 = p.p0;
      d2 = 0;
      break;
    case MapPiece::Kind::DiskToGap: {
      Complex u0 = p.p0, anc = p.p1;
      double q = p.x0;
      Complex cb = std::conj(u0) / u0;
      Complex beta = 1.0 - cb * cb;
      Complex gamma = q * q / (q - anc);
      Complex om = 1.0 - x;
      Complex xv = beta * x / om;
      Complex dx = beta / (om * om);
      Complex ddx = 2.0 * beta / (om * om * om);
      Complex S = std::sqrt(1.0 + xv);
      Complex dS = dx / (2.0 * S);
      Complex ddS = ddx / (2.0 * S) - dx * dx / (4.0 * S * S * S);
      Complex r = xv / (1.0 + S);
      Complex u = u0 * (1.0 + r);
      Complex du = u0 * dS;
      Complex ddu = u0 * ddS;
      Complex den = gamma + u0 * r;  // = q + u, stable
      Complex zu = q * q / (den * den);
      Complex zuu = -2.0 * q * q / (den * den * den);
      v = q * u / den;
      d1 = zu * du;
      d2 = zuu * du * du + zu * ddu;
      break;
    }
    case MapPiece::Kind::Geodesic: {
      double d = p.x1;
      Complex u = sqrt_upper(x * x - d * d);
      Complex du = x / u;
      Complex ddu = -(d * d) / (u * u * u);
      Complex den = 1.0 + u * p.x0;
      Complex zv = u / den;
      Complex dz = 1.0 / (den * den);
      Complex ddz = -2.0 * p.x0 / (den * den * den);
      v = zv;
      d1 = dz * du;
      d2 = ddz * du * du + dz * ddu;
      break;
    }
    case MapPiece::Kind::Base: {
      Complex w2 = x * x;
      Complex den = w2 + 1.0;
      Complex diff = p.p0 - p.p1;
      v = (p.p0 * w2 + p.p1) / den;
      d1 = 2.0 * x * diff / (den * den);
      d2 = 2.0 * diff * (1.0 - 3.0 * w2) / (den * den * den);
      break;
    }
    case MapPiece::Kind::Unfold:
      v = p.p0 + 1.0 / x;
      d1 = -1.0 / (x * x);
      d2 = 2.0 / (x * x * x);
      break;
    case MapPiece::Kind::Scale:
      v = x / p.x0;
      d1 = 1.0 / p.x0;
      d2 = 0;
      break;
  }
  return {v, d1 * in.d1, d2 * in.d1 * in.d1 + d1 * in.d2};
}

// ---- piece evaluation, inverse direction (domain -> disk) ------------------

Complex eval_reverse(const MapPiece& p, Complex z) {
  switch (p.kind) {
    case MapPiece::Kind::Rotation:
      return std::conj(p.p0) * z;
    case MapPiece::Kind::DiskToGap: {
      Complex u0 = p.p0, anc = p.p1;
      double q = p.x0;
      Complex cb = std::conj(u0) / u0;
      Complex beta = 1.0 - cb * cb;
      Complex u = q * z / (q - z);
      // x = (u^2 - u0^2)/u0^2 through the cancellation-free difference
      Complex diff = q * q * (z - anc) / ((q - z) * (q - anc));
      Complex x = diff * (u + u0) / (u0 * u0);
      return x / (beta + x);
    }
    case MapPiece::Kind::Geodesic: {
      Complex mu = z / (1.0 - z * p.x0);
      return sqrt_upper(mu * mu + p.x1 * p.x1);
    }
    case MapPiece::Kind::Base: {
      Complex i(0, 1);
      return i * std::sqrt((z - p.p1) / (z - p.p0));
    }
    case MapPiece::Kind::Unfold:
      return 1.0 / (z - p.p0);
    case MapPiece::Kind::Scale:
      return z * p.x0;
  }
  return z;
}

}  // namespace

Complex ConformalMap::map(Complex z) const {
  for (const MapPiece& p : chain_) z = eval_forward(p, z);
  return z;
}

Jet ConformalMap::jet(Complex z) const {
  Jet j{z, Complex(1, 0), Complex(0, 0)};
  for (const MapPiece& p : chain_) j = jet_forward(p, j);
  return j;
}

Complex ConformalMap::inverse(Complex w) const {
  Complex z = w;
  for (auto it = chain_.rbegin(); it != chain_.rend(); ++it) z = eval_reverse(*it, z);
  // polish away round-off accumulated along the chain
  for (int it = 0; it < 2; ++it) {
    if (!finite(z) || std::abs(z) >= 1.0) break;
    Jet j = jet(z);
    if (!finite(j.d1) || std::abs(j.d1) == 0.0) break;
    Complex step = (w - j.f) / j.d1;
    if (!finite(step) || !(std::abs(step) < 0.1)) break;
    z += step;
  }
  return z;
}

namespace {

double curve_orientation(const SampledCurve& c) {
  // shoelace; positive = counterclockwise
  double area2 = 0.0;
  const std::vector<Complex>& p = c.points();
  for (std::size_t i = 0; i < p.size(); ++i) {
    Complex a = p[i], b = p[(i + 1) % p.size()];
    area2 += a.real() * b.imag() - b.real() * a.imag();
  }
  return area2 >= 0.0 ? 1.0 : -1.0;
}

double hausdorff_fit_error(const ConformalMap& phi, const SampledCurve& target,
                           DomainKind kind) {
  // direction 1: images of uniform boundary samples must hug the polyline
  std::size_t m = std::max<std::size_t>(1024, target.points().size());
  double worst = 0.0;
  double rad = 1.0 - kBoundaryNudge;
  for (std::size_t i = 0; i < m; ++i) {
    double t = 2.0 * kPi * (i + 0.5) / m;
    Complex w = phi.map(Complex(rad * std::cos(t), rad * std::sin(t)));
    if (!finite(w)) continue;  // exterior maps blow up near the seam of infinity
    worst = std::max(worst, distance_to_curve(w, target));
  }

  // direction 2: every vertex must be reached by the map. Probe just inside
  // the domain along the interior bisector, pull back, re-map the radial
  // boundary projection, and compare with the vertex.
  const std::vector<Complex>& pts = target.points();
  std::size_t n = pts.size();
  double orient = curve_orientation(target);
  double side = (kind == DomainKind::Bounded) ? orient : -orient;
  for (std::size_t k = 0; k < n; ++k) {
    Complex prev = pts[(k + n - 1) % n], next = pts[(k + 1) % n];
    Complex tp = pts[k] - prev, tn = next - pts[k];
    Complex bis = tp / std::abs(tp) + tn / std::abs(tn);
    double bn = std::abs(bis);
    if (!(bn > 1e-9)) continue;  // cusp; no usable interior direction
    Complex inward = Complex(0, side) * bis / bn;
    double delta = 0.25 * std::min(std::abs(tp), std::abs(tn));
    double dev = std::numeric_limits<double>::infinity();
    for (int attempt = 0; attempt < 3; ++attempt, delta *= 0.25) {
      Complex q = pts[k] + delta * inward;
      Complex w = phi.inverse(q);
      if (!finite(w)) continue;
      double mod = std::abs(w);
      if (!(mod > 0.0)) continue;
      Complex img = phi.map(w * (rad / mod));
      if (!finite(img)) continue;
      dev = std::abs(img - pts[k]);
      break;
    }
    worst = std::max(worst, dev);
  }
  return worst;
}

ConformalMap fit_impl(const SampledCurve& boundary, Complex anchor,
                      const SampledCurve& error_target, DomainKind kind,
                      const MapPiece* unfold) {
  if (!boundary.closed()) throw InputError("fit: boundary must be closed");
  if (boundary.points().size() < 16) throw InputError("fit: need at least 16 boundary samples");
  if (self_intersects(boundary)) throw InputError("fit: boundary self-intersects");
  if (!point_inside(boundary, anchor)) throw InputError("fit: anchor not strictly inside");

  // Subdivide the closing segment so the final closure arc spans only a
  // small fraction of one sample gap (the closure is the one boundary piece
  // interpolated by a bare geodesic arc).
  std::vector<Complex> pts = boundary.points();
  {
    const int gap_div = 8;
    Complex pl = pts.back(), pf = pts.front();
    for (int j = 1; j < gap_div; ++j)
      pts.push_back(pl + (static_cast<double>(j) / gap_div) * (pf - pl));
  }
  std::size_t n = pts.size();

  // Unzip the boundary: transport the images of the not-yet-consumed data
  // points, the anchor, and the seam point (start vertex, real axis).
  std::vector<Complex> img(pts.begin() + 2, pts.end());
  Complex anc = anchor;

  // The final closure piece needs the unzipped position of the start vertex
  // as seen from inside the domain. Track an interior probe hugging pts[0]
  // between the closing and opening segments.
  Complex seam_probe;
  {
    Complex tp = pts[0] - pts[n - 1], tn = pts[1] - pts[0];
    Complex bis = tp / std::abs(tp) + tn / std::abs(tn);
    double bn = std::abs(bis);
    if (!(bn > 1e-12)) throw InputError("fit: cusp at the start vertex");
    Complex inward = Complex(0, 1) * bis / bn;
    double eps0 = 0.1 * std::min(std::abs(tp), std::abs(tn));
    seam_probe = pts[0] + eps0 * inward;
    if (!point_inside(boundary, seam_probe)) seam_probe = pts[0] - eps0 * inward;
    if (!point_inside(boundary, seam_probe))
      throw FitError("fit: could not place an interior probe at the start vertex");
  }

  MapPiece base{MapPiece::Kind::Base, pts[0], pts[1], 0, 0};
  for (Complex& z : img) z = eval_reverse(base, z);
  anc = eval_reverse(base, anc);
  seam_probe = eval_reverse(base, seam_probe);

  FitInfo info;
  info.min_im_omega = std::numeric_limits<double>::infinity();
  std::vector<MapPiece> unzip;  // geodesic/scale pieces in construction order
  unzip.reserve(n + n / 4);

  for (std::size_t k = 0; k < img.size(); ++k) {
    // renormalize so each slit piece operates at unit scale; the frame
    // otherwise drifts over thousands of compositions and taxes precision
    double cur_mod = std::abs(img[k]);
    if (std::isfinite(cur_mod) && cur_mod > 0.0 && (cur_mod > 4.0 || cur_mod < 0.25)) {
      MapPiece sc{MapPiece::Kind::Scale, 0, 0, 1.0 / cur_mod, 0};
      for (std::size_t j = k; j < img.size(); ++j) img[j] = eval_reverse(sc, img[j]);
      anc = eval_reverse(sc, anc);
      seam_probe = eval_reverse(sc, seam_probe);
      unzip.push_back(sc);
    }
    Complex omega = img[k];
    double a = omega.real(), b = omega.imag();
    double mod2 = a * a + b * b;
    if (!(b > 0.0) || !(mod2 > 0.0) || !std::isfinite(mod2)) {
      ++info.skipped_points;
      continue;
    }
    MapPiece g{MapPiece::Kind::Geodesic, 0, 0, a / mod2, mod2 / b};
    if (!std::isfinite(g.x0) || !std::isfinite(g.x1)) {
      ++info.skipped_points;
      continue;
    }
    info.min_im_omega = std::min(info.min_im_omega, b / std::sqrt(mod2));
    for (std::size_t j = k + 1; j < img.size(); ++j) img[j] = eval_reverse(g, img[j]);
    anc = eval_reverse(g, anc);
    seam_probe = eval_reverse(g, seam_probe);
    unzip.push_back(g);
  }

  if (!finite(seam_probe) || seam_probe.real() == 0.0 || !(seam_probe.imag() > 0.0))
    throw FitError("fit: seam probe degenerated during unzipping");
  if (!(anc.imag() > 0.0)) throw FitError("fit: anchor left the half plane during unzipping");

  // The probe locates the seam to O(probe depth); refine the closure
  // parameter by minimizing the interpolation deviation at the two gap ends.
  auto make_gap_piece = [&](double q) -> MapPiece {
    Complex u0 = q * anc / (q - anc);
    return MapPiece{MapPiece::Kind::DiskToGap, u0, anc, q, 0};
  };
  auto seam_deviation = [&](double q) -> double {
    MapPiece gap = make_gap_piece(q);
    Complex cb = std::conj(gap.p0) / gap.p0;
    Complex beta = 1.0 - cb * cb;
    if (!finite(beta) || std::abs(beta) == 0.0)
      return std::numeric_limits<double>::infinity();
    std::vector<MapPiece> ch;
    ch.reserve(unzip.size() + 2);
    ch.push_back(gap);
    for (auto it = unzip.rbegin(); it != unzip.rend(); ++it) ch.push_back(*it);
    ch.push_back(base);
    ConformalMap cand(ch, anchor, kind, FitInfo{});
    double rad = 1.0 - 1e-7;
    // seam vertex pts[0] pulls back to w = 1; the last consumed vertex to
    // the preimage of the half-plane origin, w = 1/(1-beta)
    Complex dev1 = cand.map(Complex(rad, 0)) - pts[0];
    Complex w_last = 1.0 / (1.0 - beta);
    double ml = std::abs(w_last);
    Complex dev2 = ml > 0 ? cand.map(w_last * (rad / ml)) - pts[n - 1] : Complex(1e9, 0);
    if (!finite(dev1) || !finite(dev2)) return std::numeric_limits<double>::infinity();
    return std::max(std::abs(dev1), std::abs(dev2));
  };

  double q_seam = seam_probe.real();
  {
    double lo = std::log(std::abs(q_seam) / 3.0), hi = std::log(std::abs(q_seam) * 3.0);
    double sgn_q = q_seam > 0 ? 1.0 : -1.0;
    const double gr = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = seam_deviation(sgn_q * std::exp(x1));
    double f2 = seam_deviation(sgn_q * std::exp(x2));
    for (int it = 0; it < 60; ++it) {
      if (f1 <= f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - gr * (b - a);
        f1 = seam_deviation(sgn_q * std::exp(x1));
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + gr * (b - a);
        f2 = seam_deviation(sgn_q * std::exp(x2));
      }
    }
    double q_best = sgn_q * std::exp(0.5 * (a + b));
    if (seam_deviation(q_best) < seam_deviation(q_seam)) q_seam = q_best;
  }

  // Assemble the disk -> domain chain.
  MapPiece gap = make_gap_piece(q_seam);
  {
    Complex cb = std::conj(gap.p0) / gap.p0;
    if (!finite(cb) || std::abs(1.0 - cb * cb) == 0.0)
      throw FitError("fit: anchor landed on the seam divide");
  }
  std::vector<MapPiece> chain;
  chain.reserve(unzip.size() + 3);
  chain.push_back({MapPiece::Kind::Rotation, Complex(1, 0), 0, 0, 0});
  chain.push_back(gap);
  for (auto it = unzip.rbegin(); it != unzip.rend(); ++it) chain.push_back(*it);
  chain.push_back(base);
  if (unfold) chain.push_back(*unfold);

  // normalize the rotation so the derivative at the origin is positive real
  {
    ConformalMap probe(chain, anchor, kind, info);
    Complex d = probe.jet(Complex(0, 0)).d1;
    if (!finite(d) || std::abs(d) == 0.0) throw FitError("fit: derivative at origin degenerate");
    chain.front().p0 = std::conj(d) / std::abs(d);
  }

  ConformalMap result(std::move(chain), anchor, kind, info);

  // round-trip and boundary checks
  Rng rng(12345);
  double worst_rt = 0.0;
  for (int i = 0; i < 1000; ++i) {
    Complex z = rng.in_disk(0.99);
    Complex back = result.inverse(result.map(z));
    if (!finite(back)) {
      worst_rt = std::numeric_limits<double>::infinity();
      break;
    }
    worst_rt = std::max(worst_rt, std::abs(back - z));
  }
  FitInfo fi = result.info();
  fi.roundtrip_worst = worst_rt;
  fi.boundary_fit_error = hausdorff_fit_error(result, error_target, kind);

  ConformalMap final_map(result.chain(), anchor, kind, fi);
  double budget = 3.0 * error_target.resolution();
  if (std::getenv("LAB_FIT_RELAX")) return final_map;  // debug escape
  if (!(fi.boundary_fit_error <= budget)) {
    throw FitError("fit: boundary error " + std::to_string(fi.boundary_fit_error) +
                   " exceeds budget " + std::to_string(budget) + " (skipped " +
                   std::to_string(fi.skipped_points) + " points, min clearance " +
                   std::to_string(fi.min_im_omega) + ")");
  }
  if (!(fi.roundtrip_worst <= 1e-8))
    throw FitError("fit: round-trip error " + std::to_string(fi.roundtrip_worst) +
                   " exceeds 1e-8");
  return final_map;
}

}  // namespace

ConformalMap fit(const SampledCurve& boundary, Complex anchor) {
  return fit_impl(boundary, anchor, boundary, DomainKind::Bounded, nullptr);
}

ConformalMap fit_exterior(const SampledCurve& boundary, Complex inversion_center) {
  if (!boundary.closed()) throw InputError("fit_exterior: boundary must be closed");
  if (!point_inside(boundary, inversion_center))
    throw InputError("fit_exterior: inversion center must lie inside the bounded side");
  std::vector<Complex> inv_pts;
  inv_pts.reserve(boundary.points().size());
  for (Complex p : boundary.points()) inv_pts.push_back(1.0 / (p - inversion_center));
  SampledCurve folded(std::move(inv_pts), true);
  MapPiece unfold{MapPiece::Kind::Unfold, inversion_center, 0, 0, 0};

  // The folded image of the unbounded side contains 0 = image of infinity.
  return fit_impl(folded, Complex(0, 0), boundary, DomainKind::UnboundedViaInversion, &unfold);
}

KoebeReport koebe_validate(const ConformalMap& map, const SampledCurve& target,
                           int test_points, std::uint64_t seed, double rel_tol) {
  if (map.domain_kind() != DomainKind::Bounded)
    throw InputError("koebe_validate: bounded maps only");
  Rng rng(seed);
  Jet j0 = map.jet(Complex(0, 0));
  double d0 = std::abs(j0.d1);
  Complex f0 = j0.f;

  KoebeReport rep;
  rep.min_slack = std::numeric_limits<double>::infinity();
  double tiny = 1e-300;
  auto check = [&](double value, double lo, double hi) {
    double slack_lo = (value - lo) / std::max(lo, tiny);
    double slack_hi = (hi - value) / std::max(hi, tiny);
    double s = std::min(slack_lo, slack_hi);
    rep.min_slack = std::min(rep.min_slack, s);
    if (s < -rel_tol) ++rep.violations;
  };

  for (int i = 0; i < test_points; ++i) {
    Complex z = rng.in_disk(0.999);
    double r = std::abs(z);
    if (r < 1e-12) continue;
    Jet j = map.jet(z);
    double one_m = 1.0 - r, one_p = 1.0 + r;
    check(std::abs(j.f - f0), d0 * r / (one_p * one_p), d0 * r / (one_m * one_m));
    check(std::abs(j.d1), d0 * one_m / (one_p * one_p * one_p),
          d0 * one_p / (one_m * one_m * one_m));
  }
  double clearance = distance_to_curve(f0, target);
  rep.contains_quarter_disk = clearance >= 0.25 * d0 * (1.0 - rel_tol);
  rep.pass = rep.violations == 0 && rep.contains_quarter_disk;
  return rep;
}

AtomicMeasure pre_schwarzian_density(const ConformalMap& map, int rings, int spokes,
                                     double margin, double* excluded_fraction) {
  if (rings < 2 || spokes < 8) throw InputError("pre_schwarzian_density: grid too coarse");
  if (!(margin > 0.0) || margin >= 1.0) throw InputError("pre_schwarzian_density: bad margin");
  AtomicMeasure m;
  m.provenance = Provenance::AreaDensity;
  double rmax = 1.0 - margin;
  double dr = rmax / rings;
  double dth = 2.0 * kPi / spokes;
  m.base_resolution = std::max(dr, rmax * dth);
  long excluded = 0, total = 0;
  for (int i = 0; i < rings; ++i) {
    double r = (i + 0.5) * dr;
    for (int k = 0; k < spokes; ++k) {
      double t = (k + 0.5) * dth;
      Complex z(r * std::cos(t), r * std::sin(t));
      ++total;
      Jet j = map.jet(z);
      Complex pre = j.d2 / j.d1;
      double mass = std::norm(pre) * (1.0 - r * r) * (dr * r * dth);
      if (!std::isfinite(mass)) {
        ++excluded;
        continue;
      }
      if (mass > 0.0) m.atoms.push_back({z, mass});
    }
  }
  if (excluded_fraction)
    *excluded_fraction = total > 0 ? static_cast<double>(excluded) / total : 0.0;
  return m;
}

// ---- closed-form reflections ------------------------------------------------

namespace {

struct EllipseFrame {
  double a, b, alpha, beta;
};

EllipseFrame frame_of(const CurveSpec& spec) {
  if (spec.kind == CurveKind::Circle) return {1.0, 1.0, 1.0, 0.0};
  if (spec.kind == CurveKind::InternalCircle) {
    double r = 1.0 - std::pow(2.0, -spec.level);
    return {r, r, r, 0.0};
  }
  if (spec.kind == CurveKind::Ellipse)
    return {spec.a, spec.b, 0.5 * (spec.a + spec.b), 0.5 * (spec.a - spec.b)};
  throw InputError("reflection: closed-form reflection needs a circle or ellipse");
}

// boundary-matched interior coordinate: zeta |-> alpha zeta + beta conj(zeta)(2 - |zeta|^2)
Complex interior_coord(const EllipseFrame& e, Complex zeta) {
  return e.alpha * zeta + e.beta * std::conj(zeta) * (2.0 - std::norm(zeta));
}

void interior_coord_derivs(const EllipseFrame& e, Complex zeta, Complex* dz, Complex* dzb) {
  *dz = e.alpha - e.beta * std::conj(zeta) * std::conj(zeta);
  *dzb = 2.0 * e.beta * (1.0 - std::norm(zeta));
}

Complex interior_coord_inverse(const EllipseFrame& e, Complex w, Complex seed) {
  Complex zeta = seed;
  for (int it = 0; it < 60; ++it) {
    Complex res = w - interior_coord(e, zeta);
    if (std::abs(res) < 1e-14 * (1.0 + std::abs(w))) break;
    Complex dz, dzb;
    interior_coord_derivs(e, zeta, &dz, &dzb);
    double det = std::norm(dz) - std::norm(dzb);
    if (det <= 0.0) throw FitError("reflection: interior coordinate not invertible here");
    zeta += (std::conj(dz) * res - dzb * std::conj(res)) / det;
  }
  return zeta;
}

Complex exterior_coord(const EllipseFrame& e, Complex zeta) {
  return e.alpha * zeta + e.beta / zeta;
}

// the reflection itself: fold through the interior coordinate, invert in the
// unit circle, come back through the exterior coordinate
Complex reflect_point(const EllipseFrame& e, Complex w, Complex seed) {
  Complex zeta = interior_coord_inverse(e, w, seed);
  return exterior_coord(e, 1.0 / std::conj(zeta));
}

}  // namespace

double reflection_dilatation_magnitude(const CurveSpec& boundary, Complex w) {
  EllipseFrame e = frame_of(boundary);
  Complex seed(w.real() / e.a, w.imag() / e.b);
  Complex zeta = interior_coord_inverse(e, w, seed);
  Complex dz, dzb;
  interior_coord_derivs(e, zeta, &dz, &dzb);
  return std::abs(dzb) / std::abs(dz);
}

DilatationField reflection_dilatation(const CurveSpec& boundary, double collar_min,
                                      double collar_max, int rings, int spokes,
                                      double stencil) {
  EllipseFrame e = frame_of(boundary);
  if (!(collar_min > 0.0) || !(collar_max > collar_min))
    throw InputError("reflection_dilatation: bad collar range");
  if (collar_max > 0.45 * e.b)
    throw InputError("reflection_dilatation: collar too deep for this boundary");
  if (!(stencil > 0.0) || stencil > 0.1 * collar_min)
    throw InputError("reflection_dilatation: stencil must be well under the collar");

  SampledCurve curve = generate(
      e.beta == 0.0
          ? (std::abs(e.a - 1.0) < 1e-15 ? CurveSpec::circle(4096)
                                         : CurveSpec::ellipse(e.a, e.b, 4096))
          : CurveSpec::ellipse(e.a, e.b, 4096));

  DilatationField field;
  field.stencil = stencil;

  // log-spaced distance rings; cell extents recorded for area weights
  double lmin = std::log(collar_min), lmax = std::log(collar_max);
  double dth = 2.0 * kPi / spokes;
  double max_extent = 0.0;
  for (int i = 0; i < rings; ++i) {
    double lm = lmin + (lmax - lmin) * (i + 0.5) / rings;
    double delta = std::exp(lm);
    double delta_lo = std::exp(lmin + (lmax - lmin) * i / rings);
    double delta_hi = std::exp(lmin + (lmax - lmin) * (i + 1.0) / rings);
    for (int k = 0; k < spokes; ++k) {
      double t = (k + 0.5) * dth;
      Complex dir(std::cos(t), std::sin(t));
      // normal stretch of the interior coordinate at the boundary point
      double stretch = std::abs(e.alpha - e.beta * std::conj(dir * dir));
      double rho = 1.0 - delta / stretch;
      if (!(rho > 0.5)) {
        ++field.dropped;
        continue;
      }
      Complex zeta = rho * dir;
      Complex w = interior_coord(e, zeta);
      double dist = distance_to_curve(w, curve);
      if (dist < 4.0 * stencil || dist < 0.25 * collar_min || dist > 4.0 * collar_max) {
        ++field.dropped;
        continue;
      }
      // five-point cross stencil of the reflection
      double h = stencil;
      Complex fr = reflect_point(e, w + Complex(h, 0), zeta);
      Complex fl = reflect_point(e, w - Complex(h, 0), zeta);
      Complex fu = reflect_point(e, w + Complex(0, h), zeta);
      Complex fd = reflect_point(e, w - Complex(0, h), zeta);
      Complex fx = (fr - fl) / (2.0 * h);
      Complex fy = (fu - fd) / (2.0 * h);
      Complex dw = 0.5 * (fx - Complex(0, 1) * fy);
      Complex dwb = 0.5 * (fx + Complex(0, 1) * fy);
      if (!finite(dw) || !finite(dwb) || std::abs(dwb) == 0.0) {
        ++field.dropped;
        continue;
      }
      Complex mu = dw / dwb;
      Complex dz, dzb;
      interior_coord_derivs(e, zeta, &dz, &dzb);
      double jac = std::norm(dz) - std::norm(dzb);
      double cell_rho = (delta_hi - delta_lo) / stretch;
      double area = jac * cell_rho * rho * dth;
      max_extent = std::max(max_extent, std::max(cell_rho, rho * dth * std::max(e.a, e.b)));
      field.samples.push_back({w, mu, dist, area});
    }
  }
  field.base_resolution = max_extent;
  return field;
}

AtomicMeasure dilatation_to_measure(const DilatationField& field) {
  AtomicMeasure m;
  m.provenance = Provenance::Custom;
  m.base_resolution = field.base_resolution;
  for (const DilatationSample& s : field.samples) {
    double mass = std::norm(s.mu) / s.dist * s.area;
    if (mass > 0.0 && std::isfinite(mass)) m.atoms.push_back({s.w, mass});
  }
  return m;
}

// ---- serialization ----------------------------------------------------------

Json map_to_json(const ConformalMap& m) {
  Json j;
  j["schema"] = "conformal-map/1";
  j["domain_kind"] =
      m.domain_kind() == DomainKind::Bounded ? "bounded" : "unbounded-via-inversion";
  j["anchor"] = Json::array({m.anchor().real(), m.anchor().imag()});
  j["boundary_fit_error"] = m.info().boundary_fit_error;
  j["roundtrip_worst"] = m.info().roundtrip_worst;
  j["skipped_points"] = m.info().skipped_points;
  j["min_im_omega"] = m.info().min_im_omega;
  Json chain = Json::array();
  for (const MapPiece& p : m.chain()) {
    Json pj;
    switch (p.kind) {
      case MapPiece::Kind::Rotation:
        pj["type"] = "rotation";
        pj["phase"] = Json::array({p.p0.real(), p.p0.imag()});
        break;
      case MapPiece::Kind::DiskToGap:
        pj["type"] = "disk_to_gap";
        pj["u0"] = Json::array({p.p0.real(), p.p0.imag()});
        pj["anchor_h"] = Json::array({p.p1.real(), p.p1.imag()});
        pj["q"] = p.x0;
        break;
      case MapPiece::Kind::Geodesic:
        pj["type"] = "geodesic";
        pj["inv_two_c"] = p.x0;
        pj["d"] = p.x1;
        break;
      case MapPiece::Kind::Base:
        pj["type"] = "base";
        pj["z0"] = Json::array({p.p0.real(), p.p0.imag()});
        pj["z1"] = Json::array({p.p1.real(), p.p1.imag()});
        break;
      case MapPiece::Kind::Unfold:
        pj["type"] = "unfold";
        pj["center"] = Json::array({p.p0.real(), p.p0.imag()});
        break;
      case MapPiece::Kind::Scale:
        pj["type"] = "scale";
        pj["factor"] = p.x0;
        break;
    }
    chain.push_back(std::move(pj));
  }
  j["chain"] = std::move(chain);
  return j;
}

ConformalMap map_from_json(const Json& j) {
  std::vector<MapPiece> chain;
  for (const auto& pj : j.at("chain")) {
    std::string type = pj.at("type").get<std::string>();
    MapPiece p{};
    if (type == "rotation") {
      p.kind = MapPiece::Kind::Rotation;
      p.p0 = Complex(pj.at("phase").at(0).get<double>(), pj.at("phase").at(1).get<double>());
    } else if (type == "disk_to_gap") {
      p.kind = MapPiece::Kind::DiskToGap;
      p.p0 = Complex(pj.at("u0").at(0).get<double>(), pj.at("u0").at(1).get<double>());
      p.p1 = Complex(pj.at("anchor_h").at(0).get<double>(), pj.at("anchor_h").at(1).get<double>());
      p.x0 = pj.at("q").get<double>();
    } else if (type == "geodesic") {
      p.kind = MapPiece::Kind::Geodesic;
      p.x0 = pj.at("inv_two_c").get<double>();
      p.x1 = pj.at("d").get<double>();
    } else if (type == "base") {
      p.kind = MapPiece::Kind::Base;
      p.p0 = Complex(pj.at("z0").at(0).get<double>(), pj.at("z0").at(1).get<double>());
      p.p1 = Complex(pj.at("z1").at(0).get<double>(), pj.at("z1").at(1).get<double>());
    } else if (type == "unfold") {
      p.kind = MapPiece::Kind::Unfold;
      p.p0 = Complex(pj.at("center").at(0).get<double>(), pj.at("center").at(1).get<double>());
    } else if (type == "scale") {
      p.kind = MapPiece::Kind::Scale;
      p.x0 = pj.at("factor").get<double>();
    } else {
      throw InputError("map json: unknown piece type " + type);
    }
    chain.push_back(p);
  }
  Complex anchor(j.at("anchor").at(0).get<double>(), j.at("anchor").at(1).get<double>());
  DomainKind kind = j.at("domain_kind").get<std::string>() == "bounded"
                        ? DomainKind::Bounded
                        : DomainKind::UnboundedViaInversion;
  FitInfo info;
  info.boundary_fit_error = j.at("boundary_fit_error").get<double>();
  info.roundtrip_worst = j.at("roundtrip_worst").get<double>();
  info.skipped_points = j.at("skipped_points").get<int>();
  info.min_im_omega = j.at("min_im_omega").get<double>();
  return ConformalMap(std::move(chain), anchor, kind, info);
}

}  // namespace lab
