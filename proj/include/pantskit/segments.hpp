#pragma once

#include "pantskit/frames.hpp"

namespace pantskit {

// Oriented geodesic segment with unit normal framings at both endpoints.
// n_ini is perpendicular to the initial direction, n_ter to the terminal
// direction (the direction parallel-transported to the far end).
struct FramedSegment {
  UhsPoint p_ini;
  Vec3 dir_ini = Vec3(0, 0, 1);
  double length = 0.0;
  Vec3 n_ini = Vec3(1, 0, 0);
  Vec3 n_ter = Vec3(1, 0, 0);

  Frame initial_frame() const { return Frame{p_ini, dir_ini, n_ini}; }
  Frame terminal_frame() const;
  UhsPoint terminal_point() const;
  Vec3 terminal_direction() const;
};

// Orthonormalizes the inputs: directions normalized, normals projected off the
// directions.  Throws DegenerateConfiguration when a normal is parallel to its
// direction.
FramedSegment make_framed_segment(const UhsPoint& p, const Vec3& dir, double length,
                                  const Vec3& n_ini, const Vec3& n_ter);

// Segment with the given initial frame whose terminal framing realizes the
// requested phase.
FramedSegment make_segment(const Frame& start, double length, double phase);

// Signed angle in (-pi, pi] from the parallel transport of n_ini to n_ter,
// measured about the terminal direction.
double phase(const FramedSegment& s);

// Carrier reversed, framings swapped.  An involution.
FramedSegment orientation_reversal(const FramedSegment& s);

// Rotates both framings by phi about their respective directions.  Leaves the
// phase unchanged.
FramedSegment frame_rotation(const FramedSegment& s, double phi);

// Angle in [0, pi] between the terminal direction of s1 and the initial
// direction of s2.  Throws EndpointMismatch unless s2 starts where s1 ends.
double bending_angle(const FramedSegment& s1, const FramedSegment& s2);

// Angle between the terminal framing of s1 and the initial framing of s2.
double framing_gap(const FramedSegment& s1, const FramedSegment& s2);

// True when the endpoints coincide and the framing gap is at most delta.
bool is_delta_consecutive(const FramedSegment& s1, const FramedSegment& s2, double delta);

// Length lost at a bend of angle theta: 2 log sec(theta/2).  Domain [0, pi).
double bending_inefficiency(double theta);

}  // namespace pantskit
