#include "lab/curves.hpp"

#include <algorithm>
#include <cmath>

namespace lab {

CurveSpec CurveSpec::circle(int samples) {
  CurveSpec s;
  s.kind = CurveKind::Circle;
  s.samples = samples;
  return s;
}

CurveSpec CurveSpec::segment(int samples) {
  CurveSpec s;
  s.kind = CurveKind::Segment;
  s.samples = samples;
  return s;
}

CurveSpec CurveSpec::ellipse(double a, double b, int samples) {
  CurveSpec s;
  s.kind = CurveKind::Ellipse;
  s.a = a;
  s.b = b;
  s.samples = samples;
  return s;
}

CurveSpec CurveSpec::polygon(std::vector<Complex> vertices, int samples) {
  CurveSpec s;
  s.kind = CurveKind::Polygon;
  s.vertices = std::move(vertices);
  s.samples = samples;
  return s;
}

CurveSpec CurveSpec::internal_circle(int level, int samples) {
  CurveSpec s;
  s.kind = CurveKind::InternalCircle;
  s.level = level;
  s.samples = samples;
  return s;
}

CurveSpec CurveSpec::snowflake(int depth, SnowflakePolicy policy, int samples) {
  CurveSpec s;
  s.kind = CurveKind::Snowflake;
  s.depth = depth;
  s.policy = policy;
  s.samples = samples;
  return s;
}

CurveSpec CurveSpec::graph_sin_x2(double x_max, int samples) {
  CurveSpec s;
  s.kind = CurveKind::GraphSinX2;
  s.x_max = x_max;
  s.samples = samples;
  return s;
}

CurveSpec CurveSpec::log_spiral(double turns, int samples) {
  CurveSpec s;
  s.kind = CurveKind::LogSpiral;
  s.turns = turns;
  s.samples = samples;
  return s;
}

CurveSpec CurveSpec::perturbed_circle(double amplitude, double frequency, int samples) {
  CurveSpec s;
  s.kind = CurveKind::PerturbedCircle;
  s.amplitude = amplitude;
  s.frequency = frequency;
  s.samples = samples;
  return s;
}

std::string curve_kind_name(CurveKind k) {
  switch (k) {
    case CurveKind::Circle: return "circle";
    case CurveKind::Segment: return "segment";
    case CurveKind::Ellipse: return "ellipse";
    case CurveKind::Polygon: return "polygon";
    case CurveKind::InternalCircle: return "internal_circle";
    case CurveKind::Snowflake: return "snowflake";
    case CurveKind::GraphSinX2: return "graph_sin_x2";
    case CurveKind::LogSpiral: return "logarithmic_spiral";
    case CurveKind::PerturbedCircle: return "perturbed_circle";
  }
  return "unknown";
}

namespace {

void validate(const CurveSpec& s) {
  if (s.samples < 16) throw InputError("CurveSpec: samples must be >= 16");
  switch (s.kind) {
    case CurveKind::Ellipse:
      if (!(s.a > 0.0) || !(s.b > 0.0)) throw InputError("ellipse: semi-axes must be > 0");
      break;
    case CurveKind::Polygon:
      if (s.vertices.size() < 3) throw InputError("polygon: need >= 3 vertices");
      break;
    case CurveKind::InternalCircle:
      if (s.level < 1 || s.level > 60) throw InputError("internal_circle: level out of range");
      break;
    case CurveKind::Snowflake:
      if (s.depth < 0 || s.depth > 10) throw InputError("snowflake: depth out of range");
      break;
    case CurveKind::GraphSinX2:
      if (!(s.x_max > 0.0) || s.x_max > 40.0) throw InputError("graph_sin_x2: x_max out of range");
      break;
    case CurveKind::LogSpiral:
      if (!(s.turns > 0.0) || s.turns > 8.0) throw InputError("log_spiral: turns out of range");
      break;
    case CurveKind::PerturbedCircle:
      if (std::abs(s.amplitude) >= 0.5) throw InputError("perturbed_circle: |amplitude| < 0.5");
      break;
    default: break;
  }
}

// Subdivide each edge of a vertex chain into near-equal pieces of length
// <= target_h; original vertices are preserved exactly.
std::vector<Complex> subdivide_edges(const std::vector<Complex>& verts, bool closed,
                                     double target_h) {
  std::vector<Complex> out;
  std::size_t n = verts.size();
  std::size_t edges = closed ? n : n - 1;
  for (std::size_t i = 0; i < edges; ++i) {
    Complex a = verts[i], b = verts[(i + 1) % n];
    double len = std::abs(b - a);
    int k = std::max(1, static_cast<int>(std::ceil(len / target_h)));
    for (int j = 0; j < k; ++j) out.push_back(a + (static_cast<double>(j) / k) * (b - a));
  }
  if (!closed) out.push_back(verts.back());
  return out;
}

double chain_length(const std::vector<Complex>& v, bool closed) {
  KahanSum k;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) k.add(std::abs(v[i + 1] - v[i]));
  if (closed) k.add(std::abs(v.front() - v.back()));
  return k.value();
}

SampledCurve from_vertices(std::vector<Complex> verts, bool closed, int samples) {
  double total = chain_length(verts, closed);
  double h = total / samples;
  return SampledCurve(subdivide_edges(verts, closed, h), closed);
}

// March a parametric curve with steps of near-constant arclength. For open
// curves the endpoint f(t1) is appended; closed curves stop short of t1 and
// the closing segment is implied.
template <typename F, typename Speed>
std::vector<Complex> march(F f, Speed speed, double t0, double t1, int samples, bool open) {
  // first pass: total length by fine quadrature of |f'|
  int fine = std::max(20 * samples, 4000);
  double dt = (t1 - t0) / fine;
  KahanSum len;
  for (int i = 0; i < fine; ++i) len.add(speed(t0 + (i + 0.5) * dt) * dt);
  int steps = open ? samples - 1 : samples;
  double h = len.value() / (open ? samples - 1 : samples);
  // second pass: emit points every h of arclength
  std::vector<Complex> pts;
  pts.push_back(f(t0));
  double carried = 0.0;
  for (int i = 0; i < fine; ++i) {
    double tm = t0 + (i + 0.5) * dt;
    carried += speed(tm) * dt;
    if (carried >= h && static_cast<int>(pts.size()) < steps) {
      pts.push_back(f(t0 + (i + 1) * dt));
      carried -= h;
    }
  }
  if (open) pts.push_back(f(t1));
  return pts;
}

std::vector<Complex> snowflake_vertices(int depth, SnowflakePolicy policy) {
  // unit-circumradius equilateral triangle, counterclockwise from the top;
  // the retained side under LeftFixed is the first one (top -> lower left).
  std::vector<Complex> v = {Complex(std::cos(kPi / 2), std::sin(kPi / 2)),
                            Complex(std::cos(kPi / 2 + 2 * kPi / 3), std::sin(kPi / 2 + 2 * kPi / 3)),
                            Complex(std::cos(kPi / 2 + 4 * kPi / 3), std::sin(kPi / 2 + 4 * kPi / 3))};
  std::vector<char> frozen = {policy == SnowflakePolicy::LeftFixed ? char(1) : char(0), 0, 0};
  for (int it = 0; it < depth; ++it) {
    std::vector<Complex> nv;
    std::vector<char> nf;
    nv.reserve(4 * v.size());
    std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
      Complex a = v[i], b = v[(i + 1) % n];
      if (frozen[i]) {
        nv.push_back(a);
        nf.push_back(1);
        continue;
      }
      Complex d = (b - a) / 3.0;
      // outward bump: for a counterclockwise curve the exterior is to the
      // right of travel, i.e. -i * direction
      Complex tip = a + 1.5 * d - Complex(0, 1) * d * (std::sqrt(3.0) / 2.0);
      nv.push_back(a);
      nv.push_back(a + d);
      nv.push_back(tip);
      nv.push_back(a + 2.0 * d);
      for (int k = 0; k < 4; ++k) nf.push_back(0);
    }
    v = std::move(nv);
    frozen = std::move(nf);
  }
  return v;
}

}  // namespace

long snowflake_side_count(int depth, SnowflakePolicy policy) {
  long sides = 3;
  for (int i = 0; i < depth; ++i)
    sides = (policy == SnowflakePolicy::LeftFixed) ? (sides - 1) * 4 + 1 : sides * 4;
  return sides;
}

SampledCurve generate(const CurveSpec& s) {
  validate(s);
  switch (s.kind) {
    case CurveKind::Circle:
    case CurveKind::InternalCircle: {
      double r = s.kind == CurveKind::Circle ? 1.0 : 1.0 - std::pow(2.0, -s.level);
      std::vector<Complex> pts(s.samples);
      for (int i = 0; i < s.samples; ++i) {
        double t = 2.0 * kPi * i / s.samples;
        pts[i] = Complex(r * std::cos(t), r * std::sin(t));
      }
      return SampledCurve(std::move(pts), true);
    }
    case CurveKind::Segment: {
      std::vector<Complex> pts(s.samples + 1);
      for (int i = 0; i <= s.samples; ++i) pts[i] = Complex(static_cast<double>(i) / s.samples, 0.0);
      return SampledCurve(std::move(pts), false);
    }
    case CurveKind::Ellipse: {
      double a = s.a, b = s.b;
      auto f = [a, b](double t) { return Complex(a * std::cos(t), b * std::sin(t)); };
      auto v = [a, b](double t) {
        return std::hypot(a * std::sin(t), b * std::cos(t));
      };
      return SampledCurve(march(f, v, 0.0, 2.0 * kPi, s.samples, false), true);
    }
    case CurveKind::Polygon:
      return from_vertices(s.vertices, true, s.samples);
    case CurveKind::Snowflake: {
      std::vector<Complex> v = snowflake_vertices(s.depth, s.policy);
      int samples = std::max<long>(s.samples, static_cast<long>(v.size()));
      return from_vertices(std::move(v), true, static_cast<int>(samples));
    }
    case CurveKind::GraphSinX2: {
      auto f = [](double x) { return Complex(x, std::sin(x * x)); };
      auto v = [](double x) {
        double d = 2.0 * x * std::cos(x * x);
        return std::sqrt(1.0 + d * d);
      };
      return SampledCurve(march(f, v, 0.0, s.x_max, s.samples, true), false);
    }
    case CurveKind::LogSpiral: {
      // r = exp(k t), doubling per turn, rescaled to unit outer radius
      double k = std::log(2.0) / (2.0 * kPi);
      double t1 = 2.0 * kPi * s.turns;
      double scale = std::exp(-k * t1);
      auto f = [k, scale](double t) {
        double r = scale * std::exp(k * t);
        return Complex(r * std::cos(t), r * std::sin(t));
      };
      auto v = [k, scale](double t) { return scale * std::exp(k * t) * std::sqrt(1.0 + k * k); };
      return SampledCurve(march(f, v, 0.0, t1, s.samples, true), false);
    }
    case CurveKind::PerturbedCircle: {
      double A = s.amplitude, w = s.frequency;
      auto f = [A, w](double t) {
        double r = 1.0 + A * std::cos(w * t);
        return Complex(r * std::cos(t), r * std::sin(t));
      };
      auto v = [A, w](double t) {
        double r = 1.0 + A * std::cos(w * t);
        double dr = -A * w * std::sin(w * t);
        return std::hypot(r, dr);
      };
      return SampledCurve(march(f, v, 0.0, 2.0 * kPi, s.samples, false), true);
    }
  }
  throw InputError("generate: unknown curve kind");
}

bool self_intersects(const SampledCurve& c) {
  std::size_t n = c.segment_count();
  std::size_t pts = c.points().size();
  for (std::size_t i = 0; i < n; ++i) {
    Complex a = c.segment_a(i), b = c.segment_b(i);
    double alox = std::min(a.real(), b.real()), ahix = std::max(a.real(), b.real());
    double aloy = std::min(a.imag(), b.imag()), ahiy = std::max(a.imag(), b.imag());
    for (std::size_t j = i + 2; j < n; ++j) {
      // adjacent segments share an endpoint; skip them (incl. wraparound)
      if (c.closed() && i == 0 && j == n - 1) continue;
      if (!c.closed() && j >= pts - 1) break;
      Complex p = c.segment_a(j), q = c.segment_b(j);
      if (std::max(p.real(), q.real()) < alox || std::min(p.real(), q.real()) > ahix ||
          std::max(p.imag(), q.imag()) < aloy || std::min(p.imag(), q.imag()) > ahiy)
        continue;
      if (segments_intersect(a, b, p, q)) return true;
    }
  }
  return false;
}

std::vector<Complex> spiral_channel_vertices(double turns, double width) {
  if (!(turns >= 1.0) || turns > 8.0) throw InputError("spiral_channel: turns out of range");
  if (!(width > 0.0) || width >= 0.5) throw InputError("spiral_channel: width out of range");
  // Archimedean corridor: outer wall r = c*t out, inner wall r = c*t - gap
  // back, joined by caps; c chosen so successive walls clear each other.
  double t0 = 2.0 * kPi;
  double t1 = 2.0 * kPi * (turns + 1.0);
  double c = 1.0 / t1;  // outer radius 1
  double gap = width * 2.0 * kPi * c;  // fraction of one turn's pitch
  int per_turn = 96;
  int n = static_cast<int>(per_turn * turns) + 1;
  std::vector<Complex> v;
  for (int i = 0; i <= n; ++i) {  // outer wall, outward
    double t = t0 + (t1 - t0) * i / n;
    v.push_back(Complex((c * t) * std::cos(t), (c * t) * std::sin(t)));
  }
  for (int i = n; i >= 0; --i) {  // inner wall, back
    double t = t0 + (t1 - t0) * i / n;
    double r = c * t - gap;
    v.push_back(Complex(r * std::cos(t), r * std::sin(t)));
  }
  // implied closing segment is the radial cap at angle t0
  return v;
}

}  // namespace lab
