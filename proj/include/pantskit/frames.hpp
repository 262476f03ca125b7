#pragma once

#include "pantskit/mobius.hpp"

namespace pantskit {

// Orthonormal frame: basepoint, unit tangent t, unit normal n; the binormal
// t x n is implicit.
struct Frame {
  UhsPoint base;
  Vec3 t = Vec3(0, 0, 1);
  Vec3 n = Vec3(1, 0, 0);

  Vec3 binormal() const { return t.cross(n); }
};

// A frame is equivalently an isometry g with g(j) = base whose pushforward at
// j carries z-hat to t and x-hat to n.  These two views convert exactly.
Isometry frame_to_isometry(const Frame& f);
Frame frame_from_isometry(const Isometry& g);

// Coordinate matrix [n | b | t] of a frame's vectors.
Mat3 frame_matrix(const Frame& f);

// Rotation-angle distance between frames at the same basepoint, in [0, pi].
// Throws BasePointMismatch if the basepoints differ.
double frame_distance(const Frame& f, const Frame& g);

// Parallel transport of a frame along the geodesic from its basepoint with
// the given unit direction and length.  The frame need not be adapted to the
// direction.  Throws BasePointMismatch when `from` is not f.base.
Frame parallel_transport(const Frame& f, const UhsPoint& from, const Vec3& direction,
                         double length);

// Rotation of the (t, n) pair about t by phi: n -> cos(phi) n + sin(phi) t x n.
Frame rotate_about_tangent(const Frame& f, double phi);

// SU(2) element whose SO(3) image maps the frame axes (n, b, t) of `from`
// onto those of `to`; both frames must share a basepoint conceptually, the
// basepoints themselves are ignored.
Mat2c relative_rotation(const Frame& from, const Frame& to);

}  // namespace pantskit
