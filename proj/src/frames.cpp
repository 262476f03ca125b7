#include "pantskit/frames.hpp"

#include <cmath>

namespace pantskit {

namespace {

constexpr double kBaseTol = 1e-9;

Mat2c point_shift(const UhsPoint& p) {
  Mat2c t;
  const double r = std::sqrt(p.z);
  t << r, p.zeta() / r, 0.0, 1.0 / r;
  return t;
}

bool same_point(const UhsPoint& p, const UhsPoint& q) {
  return std::abs(p.x - q.x) < kBaseTol && std::abs(p.y - q.y) < kBaseTol &&
         std::abs(p.z - q.z) < kBaseTol * std::max(p.z, q.z);
}

}  // namespace

Mat3 frame_matrix(const Frame& f) {
  Mat3 c;
  c.col(0) = f.n;
  c.col(1) = f.binormal();
  c.col(2) = f.t;
  return c;
}

Isometry frame_to_isometry(const Frame& f) {
  const Mat2c u = su2_from_rotation(frame_matrix(f));
  return Isometry(point_shift(f.base) * u);
}

Frame frame_from_isometry(const Isometry& g) {
  Frame f;
  f.base = apply_isometry(g, UhsPoint(0, 0, 1));
  f.t = pushforward(g, UhsPoint(0, 0, 1), Vec3(0, 0, 1));
  f.n = pushforward(g, UhsPoint(0, 0, 1), Vec3(1, 0, 0));
  return f;
}

double frame_distance(const Frame& f, const Frame& g) {
  if (!same_point(f.base, g.base)) throw Error(ErrorCode::BasePointMismatch, "frames at different points");
  return rotation_angle(frame_matrix(f).transpose() * frame_matrix(g));
}

Frame parallel_transport(const Frame& f, const UhsPoint& from, const Vec3& direction,
                         double length) {
  if (!same_point(f.base, from)) throw Error(ErrorCode::BasePointMismatch, "frame not based at segment start");
  if (length == 0.0) return f;
  Vec3 t = direction.normalized();
  Vec3 helper = std::abs(t.z()) < 0.9 ? Vec3(0, 0, 1) : Vec3(1, 0, 0);
  Vec3 n = (helper - helper.dot(t) * t).normalized();
  Frame adapted{from, t, n};
  const Isometry a = frame_to_isometry(adapted);
  const Isometry g = a * segment_op(length) * a.inverse();
  Frame out;
  out.base = apply_isometry(g, f.base);
  out.t = pushforward(g, f.base, f.t);
  out.n = pushforward(g, f.base, f.n);
  return out;
}

Frame rotate_about_tangent(const Frame& f, double phi) {
  Frame out = f;
  out.n = std::cos(phi) * f.n + std::sin(phi) * f.binormal();
  return out;
}

Mat2c relative_rotation(const Frame& from, const Frame& to) {
  return su2_from_rotation(frame_matrix(from).transpose() * frame_matrix(to));
}

}  // namespace pantskit
