#include "pantskit/segments.hpp"

#include <cmath>

#include "pantskit/errors.hpp"
#include "pantskit/mobius.hpp"

namespace pantskit {

namespace {

constexpr double kEndpointTol = 1e-9;

Frame transported_frame(const FramedSegment& s) {
  return parallel_transport(s.initial_frame(), s.p_ini, s.dir_ini, s.length);
}

Vec3 rotate_about(const Vec3& v, const Vec3& axis, double angle) {
  return Eigen::AngleAxisd(angle, axis) * v;
}

}  // namespace

Frame FramedSegment::terminal_frame() const {
  Frame moved = transported_frame(*this);
  moved.n = n_ter;
  return moved;
}

UhsPoint FramedSegment::terminal_point() const { return transported_frame(*this).base; }

Vec3 FramedSegment::terminal_direction() const { return transported_frame(*this).t; }

FramedSegment make_framed_segment(const UhsPoint& p, const Vec3& dir, double length,
                                  const Vec3& n_ini, const Vec3& n_ter) {
  if (!(length >= 0.0)) throw Error(ErrorCode::OutOfDomain, "negative segment length");
  FramedSegment s;
  s.p_ini = p;
  s.dir_ini = dir.normalized();
  s.length = length;
  const Vec3 ni = n_ini - n_ini.dot(s.dir_ini) * s.dir_ini;
  if (ni.norm() < 1e-12)
    throw Error(ErrorCode::DegenerateConfiguration, "initial framing parallel to direction");
  s.n_ini = ni.normalized();
  const Vec3 td = s.terminal_direction();
  const Vec3 nt = n_ter - n_ter.dot(td) * td;
  if (nt.norm() < 1e-12)
    throw Error(ErrorCode::DegenerateConfiguration, "terminal framing parallel to direction");
  s.n_ter = nt.normalized();
  return s;
}

FramedSegment make_segment(const Frame& start, double length, double phase) {
  FramedSegment s;
  s.p_ini = start.base;
  s.dir_ini = start.t;
  s.length = length;
  s.n_ini = start.n;
  Frame moved = parallel_transport(start, start.base, start.t, length);
  s.n_ter = rotate_about(moved.n, moved.t, phase);
  return s;
}

double phase(const FramedSegment& s) {
  Frame moved = transported_frame(s);
  const Vec3& nt = moved.n;
  const Vec3& t = moved.t;
  return std::atan2(t.dot(nt.cross(s.n_ter)), nt.dot(s.n_ter));
}

FramedSegment orientation_reversal(const FramedSegment& s) {
  Frame end = transported_frame(s);
  FramedSegment r;
  r.p_ini = end.base;
  r.dir_ini = -end.t;
  r.length = s.length;
  r.n_ini = s.n_ter;
  r.n_ter = s.n_ini;
  return r;
}

FramedSegment frame_rotation(const FramedSegment& s, double phi) {
  FramedSegment r = s;
  r.n_ini = rotate_about(s.n_ini, s.dir_ini, phi);
  r.n_ter = rotate_about(s.n_ter, s.terminal_direction(), phi);
  return r;
}

double bending_angle(const FramedSegment& s1, const FramedSegment& s2) {
  if (uhs_distance(s1.terminal_point(), s2.p_ini) > kEndpointTol)
    throw Error(ErrorCode::EndpointMismatch, "segments are not consecutive");
  const Vec3 a = s1.terminal_direction();
  const Vec3& b = s2.dir_ini;
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

double framing_gap(const FramedSegment& s1, const FramedSegment& s2) {
  if (uhs_distance(s1.terminal_point(), s2.p_ini) > kEndpointTol)
    throw Error(ErrorCode::EndpointMismatch, "segments are not consecutive");
  const Vec3& a = s1.n_ter;
  const Vec3& b = s2.n_ini;
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

bool is_delta_consecutive(const FramedSegment& s1, const FramedSegment& s2, double delta) {
  if (uhs_distance(s1.terminal_point(), s2.p_ini) > kEndpointTol) return false;
  return framing_gap(s1, s2) <= delta;
}

double bending_inefficiency(double theta) {
  if (!(theta >= 0.0 && theta < M_PI))
    throw Error(ErrorCode::OutOfDomain, "bend angle outside [0, pi)");
  return -2.0 * std::log(std::cos(theta / 2.0));
}

}  // namespace pantskit
