#pragma once

#include <cmath>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "pantskit/errors.hpp"
#include "pantskit/mobius.hpp"
#include "pantskit/segments.hpp"

namespace pantskit {

// 2x2 product kept at unit max-entry norm together with the log of the
// factored-out scale, so holonomies of developments thousands of units long
// stay finite.  Factors are assumed unit-determinant: the represented matrix
// is e^{log_scale} * m.
struct ScaledIsometry {
  Mat2c m = Mat2c::Identity();
  double log_scale = 0.0;

  static ScaledIsometry from(const Mat2c& mm);
  ScaledIsometry operator*(const ScaledIsometry& rhs) const;
  ScaledIsometry operator*(const Mat2c& rhs) const;
};

// Image of the basepoint j = (0,0,1): boundary coordinate plus log-height,
// valid far beyond the range where the height itself is representable.
struct ImageOfBase {
  Complex zeta;
  double log_z = 0.0;
};
ImageOfBase image_of_base(const ScaledIsometry& g);
double distance_to_image(const ScaledIsometry& g);
Vec3 direction_to_image(const ScaledIsometry& g);
ComplexLength scaled_complex_length(const ScaledIsometry& g);

// Distance from p to the geodesic segment with endpoints a, b.
double distance_to_segment(const UhsPoint& p, const UhsPoint& a, const UhsPoint& b);

struct ChainParams {
  double L = 0.0;
  double theta = 0.0;
  double delta = 0.0;
};

// A consecutive sequence of framed segments.  Two storage conventions:
//  - positioned: junctions empty, consecutive endpoints genuinely coincide in
//    the upper half space (a cycle that does not close up geometrically needs
//    closing_rotation);
//  - local: junctions non-empty (m-1 entries, m when cyclic); each segment is
//    written in its own chart and junction k holds the departure frame of
//    segment k+1 in the arrival-frame basis (n, b, t) of segment k.  This is
//    the only form that can hold developments beyond double range.
struct Chain {
  std::vector<FramedSegment> segments;
  ChainParams params;
  bool cyclic = false;
  std::vector<Mat3> junctions;
  std::optional<Mat3> closing_rotation;
};

struct Interval {
  double center = 0.0, radius = 0.0;
  double lo() const { return center - radius; }
  double hi() const { return center + radius; }
  bool contains(double x) const { return std::abs(x - center) <= radius; }
  bool contains_mod_2pi(double x) const {
    return std::abs(std::remainder(x - center, 2.0 * M_PI)) <= radius;
  }
};

struct ChainBounds {
  Interval length;
  Interval phase;
  HypothesesViolated hypotheses;
};

std::vector<double> chain_bending_angles(const Chain& chain);
std::vector<double> chain_framing_gaps(const Chain& chain);

// Exact geodesic segment between the chain's endpoints with closest-normal
// framings.  Requires the development to stay within double range.
FramedSegment reduced_concatenation(const Chain& chain);

// (length, phase) of the reduced concatenation through the scale-safe route;
// works at any development size.
std::pair<double, double> reduced_length_phase(const Chain& chain);

// Complex length of the closed geodesic carrying the cyclic concatenation.
ComplexLength reduced_cyclic_concatenation(const Chain& cycle);

// Holonomy of a cycle in the initial frame of its first segment.
ScaledIsometry chain_holonomy(const Chain& cycle);

ChainBounds chain_length_phase_bounds(const Chain& chain);
ChainBounds cycle_length_phase_bounds(const Chain& cycle);

struct DriftReport {
  double drift = 0.0;
  double bound = 0.0;
  HypothesesViolated hypotheses;
};
DriftReport initial_frame_drift(const Chain& chain);

struct NeighborhoodReport {
  double max_distance = 0.0;
  int samples = 0;
  HypothesesViolated hypotheses;
};
// Samples the closed geodesic at 32 points per unit length and reports the
// largest distance to the union of the carrier segments.
NeighborhoodReport cycle_neighborhood_check(const Chain& cycle);

struct MidpointStep {
  double t_length = 0.0;       // l(t_i), midpoint to midpoint
  double two_thirds_sum = 0.0; // (2/3)(d(y_i, x_{i+1}) + d(x_{i+1}, y_{i+1}))
  double length_floor = 0.0;   // L/3
  bool length_ok = false;
  double angle = 0.0;          // at y_{i+1}, between y_i and y_{i+2}
  double angle_floor = 0.0;    // 2 theta
  bool angle_ok = false;       // trivially true on the final step
};
struct TameChainReport {
  double oracle_length = 0.0;
  double half_sum = 0.0;
  bool pass = false;
  std::vector<MidpointStep> steps;
  HypothesesViolated hypotheses;
};
// Checks the halved-sum lower bound for chains mixing long and short
// segments, exposing the midpoint-chain construction behind it.
TameChainReport tame_chain_lower_bound_check(const Chain& chain);

// Seeded generators used by the test sweeps and CLI suites.  Tame chains draw
// lengths uniformly from [2L, 2L+10], bendings from [0, theta), framing gaps
// within delta.  Mixed chains alternate long segments (>= L) and shorter ones
// with the bending ranges the lower-bound check requires.
Chain random_tame_chain(std::mt19937_64& rng, const ChainParams& params, int m, bool cyclic);
Chain random_mixed_chain(std::mt19937_64& rng, double L, double theta, int m);

// Positions a local-form chain in the upper half space.  Throws OutOfDomain
// when the development leaves double range.
Chain develop(const Chain& chain);

}  // namespace pantskit
