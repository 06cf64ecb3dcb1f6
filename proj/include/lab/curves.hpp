// Generators for the curve corpus: circles, segments, ellipses, polygons,
// interior level circles, snowflakes, oscillating graphs, spirals, and
// perturbed circles, all emitted as near-equal-arclength polylines.
#pragma once

#include <string>
#include <vector>

#include "lab/geometry.hpp"

namespace lab {

enum class CurveKind {
  Circle,
  Segment,
  Ellipse,
  Polygon,
  InternalCircle,
  Snowflake,
  GraphSinX2,
  LogSpiral,
  PerturbedCircle,
};

enum class SnowflakePolicy { AllSides, LeftFixed };

struct CurveSpec {
  CurveKind kind = CurveKind::Circle;
  int samples = 1024;  // target point count, >= 16

  double a = 1.0, b = 1.0;            // ellipse semi-axes
  std::vector<Complex> vertices;      // polygon
  int level = 1;                      // internal circle: radius 1 - 2^-level
  int depth = 0;                      // snowflake iterations, <= 10
  SnowflakePolicy policy = SnowflakePolicy::AllSides;
  double x_max = 10.0;                // graph of sin(x^2) on [0, x_max], <= 40
  double turns = 4.0;                 // log spiral turns, <= 8
  double amplitude = 0.1;             // perturbed circle r = 1 + A cos(f t)
  double frequency = 5.0;

  static CurveSpec circle(int samples);
  static CurveSpec segment(int samples);
  static CurveSpec ellipse(double a, double b, int samples);
  static CurveSpec polygon(std::vector<Complex> vertices, int samples);
  static CurveSpec internal_circle(int level, int samples);
  static CurveSpec snowflake(int depth, SnowflakePolicy policy, int samples);
  static CurveSpec graph_sin_x2(double x_max, int samples);
  static CurveSpec log_spiral(double turns, int samples);
  static CurveSpec perturbed_circle(double amplitude, double frequency, int samples);
};

SampledCurve generate(const CurveSpec& spec);

// True iff any two non-adjacent segments intersect (exact pair test).
bool self_intersects(const SampledCurve& c);

// Number of straight sides of the snowflake construction before resampling.
long snowflake_side_count(int depth, SnowflakePolicy policy);

// Closed spiral-channel polygon (boundary of a rolled-up corridor); used as
// a bounded domain whose interior level curves grow long.
std::vector<Complex> spiral_channel_vertices(double turns, double width);

std::string curve_kind_name(CurveKind k);

}  // namespace lab
