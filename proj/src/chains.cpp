#include "pantskit/chains.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace pantskit {

namespace {

constexpr double kEndpointTol = 1e-9;
constexpr double kLog2 = M_LN2;

double max_abs(const Mat2c& m) {
  return std::max(std::max(std::abs(m(0, 0)), std::abs(m(0, 1))),
                  std::max(std::abs(m(1, 0)), std::abs(m(1, 1))));
}

}  // namespace

ScaledIsometry ScaledIsometry::from(const Mat2c& mm) {
  const double s = max_abs(mm);
  if (!(s > 0.0)) throw Error(ErrorCode::DegenerateConfiguration, "zero matrix");
  ScaledIsometry out;
  out.m = mm / s;
  out.log_scale = std::log(s);
  return out;
}

ScaledIsometry ScaledIsometry::operator*(const ScaledIsometry& rhs) const {
  const Mat2c prod = m * rhs.m;
  const double s = max_abs(prod);
  ScaledIsometry out;
  out.m = prod / s;
  out.log_scale = log_scale + rhs.log_scale + std::log(s);
  return out;
}

ScaledIsometry ScaledIsometry::operator*(const Mat2c& rhs) const {
  return *this * ScaledIsometry::from(rhs);
}

ImageOfBase image_of_base(const ScaledIsometry& g) {
  const Complex a = g.m(0, 0), b = g.m(0, 1), c = g.m(1, 0), d = g.m(1, 1);
  // |c|^2 + |d|^2 underflows long before |c|, |d| do, so the bottom-row
  // magnitude is factored out before squaring.  A denormal bottom row means
  // the development left the representable envelope.
  const double M = std::max(std::abs(c), std::abs(d));
  if (!(M >= std::numeric_limits<double>::min()))
    throw Error(ErrorCode::OutOfDomain,
                "bottom row of the product underflowed; development out of range");
  const Complex ch = c / M, dh = d / M;
  const double Dh = std::norm(ch) + std::norm(dh);
  ImageOfBase out;
  out.zeta = (b * std::conj(dh) + a * std::conj(ch)) / (Dh * M);
  out.log_z = -2.0 * (g.log_scale + std::log(M)) - std::log(Dh);
  return out;
}

double distance_to_image(const ScaledIsometry& g) {
  const ImageOfBase im = image_of_base(g);
  // s = |zeta|^2 + (1-z)^2 assembled in logs: |zeta| can reach e^700 and z can
  // be way past either end of double range.
  const double ah = std::abs(im.zeta);
  const double t1 = ah > 0.0 ? 2.0 * std::log(ah) : -HUGE_VAL;
  double t2;
  if (im.log_z > 1.0) {
    t2 = 2.0 * (im.log_z + std::log1p(-std::exp(-im.log_z)));
  } else {
    const double em = std::expm1(im.log_z);
    t2 = em == 0.0 ? -HUGE_VAL : 2.0 * std::log(std::abs(em));
  }
  if (t1 == -HUGE_VAL && t2 == -HUGE_VAL) return 0.0;
  const double mx = std::max(t1, t2);
  const double log_s = mx + std::log(std::exp(t1 - mx) + std::exp(t2 - mx));
  return uhs_distance_log(log_s, 0.0, im.log_z);
}

Vec3 direction_to_image(const ScaledIsometry& g) {
  const ImageOfBase im = image_of_base(g);
  const double h = std::abs(im.zeta);
  if (h < 1e-300) {
    if (std::abs(im.log_z) < 1e-300)
      throw Error(ErrorCode::DegenerateConfiguration, "image coincides with the basepoint");
    return Vec3(0, 0, im.log_z > 0.0 ? 1.0 : -1.0);
  }
  double c;
  if (2.0 * im.log_z > 700.0 || h > 1e150) {
    const double lc = 2.0 * im.log_z - std::log(2.0 * h);
    if (lc > 700.0) return Vec3(0, 0, 1);
    c = std::exp(lc) + 0.5 * h - 0.5 / h;
  } else {
    c = (h * h + std::exp(2.0 * im.log_z) - 1.0) / (2.0 * h);
  }
  const double r = std::hypot(1.0, c);
  return Vec3(im.zeta.real() / h / r, im.zeta.imag() / h / r, c / r);
}

ComplexLength scaled_complex_length(const ScaledIsometry& g) {
  Complex tr = g.m.trace();
  if (tr.real() < 0.0 || (tr.real() == 0.0 && tr.imag() < 0.0)) tr = -tr;
  const Complex half = tr / 2.0;
  const double mag = std::abs(half);
  if (!(mag > 0.0)) throw Error(ErrorCode::NotLoxodromic, "traceless holonomy");
  Complex hl;
  if (g.log_scale + std::log(mag) > 20.0) {
    const Complex inv_w2 = std::exp(-2.0 * g.log_scale) / (half * half);
    hl = g.log_scale + std::log(half) + std::log(1.0 + std::sqrt(1.0 - inv_w2));
  } else {
    hl = std::acosh(std::exp(g.log_scale) * half);
  }
  const double l = 2.0 * hl.real();
  if (!(l > 1e-6)) throw Error(ErrorCode::NotLoxodromic, "no positive translation length");
  double theta = std::remainder(2.0 * hl.imag(), 2.0 * M_PI);
  if (theta <= -M_PI) theta += 2.0 * M_PI;
  return ComplexLength{l, theta};
}

double distance_to_segment(const UhsPoint& p, const UhsPoint& a, const UhsPoint& b) {
  const double lab = uhs_distance(a, b);
  if (lab < 1e-12) return uhs_distance(p, a);
  Frame f;
  f.base = a;
  f.t = geodesic_direction(a, b);
  const Vec3 helper = std::abs(f.t.z()) < 0.9 ? Vec3(0, 0, 1) : Vec3(1, 0, 0);
  f.n = (helper - helper.dot(f.t) * f.t).normalized();
  const UhsPoint q = apply_isometry(frame_to_isometry(f).inverse(), p);
  const double nq = std::sqrt(q.x * q.x + q.y * q.y + q.z * q.z);
  const double t = std::min(std::exp(lab), std::max(1.0, nq));
  return uhs_distance(q, UhsPoint(0, 0, t));
}

// ---------------------------------------------------------------------------
// local form

namespace {

struct LocalChain {
  std::vector<double> lengths;
  std::vector<double> phases;
  std::vector<Mat3> junctions;  // m-1 entries, m when cyclic
  ChainParams params;
  bool cyclic = false;
  int m() const { return static_cast<int>(lengths.size()); }
};

Mat3 junction_between(const FramedSegment& s1, const FramedSegment& s2) {
  if (uhs_distance(s1.terminal_point(), s2.p_ini) > kEndpointTol)
    throw Error(ErrorCode::EndpointMismatch, "segments are not consecutive");
  return frame_matrix(s1.terminal_frame()).transpose() * frame_matrix(s2.initial_frame());
}

LocalChain to_local(const Chain& chain) {
  if (chain.segments.empty()) throw Error(ErrorCode::DegenerateChain, "empty chain");
  LocalChain lc;
  lc.params = chain.params;
  lc.cyclic = chain.cyclic;
  for (const FramedSegment& s : chain.segments) {
    lc.lengths.push_back(s.length);
    lc.phases.push_back(phase(s));
  }
  const int m = lc.m();
  const int want = chain.cyclic ? m : m - 1;
  if (!chain.junctions.empty()) {
    if (static_cast<int>(chain.junctions.size()) != want)
      throw Error(ErrorCode::DegenerateChain, "junction count does not match segment count");
    lc.junctions = chain.junctions;
    return lc;
  }
  for (int i = 0; i + 1 < m; ++i)
    lc.junctions.push_back(junction_between(chain.segments[i], chain.segments[i + 1]));
  if (chain.cyclic) {
    if (chain.closing_rotation) {
      lc.junctions.push_back(*chain.closing_rotation);
    } else if (uhs_distance(chain.segments[m - 1].terminal_point(), chain.segments[0].p_ini) <=
               kEndpointTol) {
      lc.junctions.push_back(junction_between(chain.segments[m - 1], chain.segments[0]));
    } else {
      throw Error(ErrorCode::EndpointMismatch, "cycle does not close and has no closing rotation");
    }
  }
  return lc;
}

double junction_bending(const Mat3& j) {
  return std::atan2(std::hypot(j(0, 2), j(1, 2)), j(2, 2));
}

double junction_gap(const Mat3& j) {
  return std::atan2(std::hypot(j(1, 0), j(2, 0)), j(0, 0));
}

Mat2c seg_op(double l, double phi) { return segment_op(Complex(l, phi)).m; }

// S(l_1 + i phi_1) U_1 ... S(l_m + i phi_m) [U_m]
ScaledIsometry position_product(const LocalChain& lc, bool with_closing) {
  ScaledIsometry p = ScaledIsometry::from(seg_op(lc.lengths[0], lc.phases[0]));
  for (int i = 1; i < lc.m(); ++i) {
    p = p * su2_from_rotation(lc.junctions[i - 1]);
    p = p * seg_op(lc.lengths[i], lc.phases[i]);
  }
  if (with_closing) p = p * su2_from_rotation(lc.junctions.back());
  return p;
}

// holonomy written in the chart of segment `start` (cycles only)
ScaledIsometry rotated_product(const LocalChain& lc, int start) {
  const int m = lc.m();
  ScaledIsometry p = ScaledIsometry::from(seg_op(lc.lengths[start], lc.phases[start]));
  p = p * su2_from_rotation(lc.junctions[start]);
  for (int k = 1; k < m; ++k) {
    const int i = (start + k) % m;
    p = p * seg_op(lc.lengths[i], lc.phases[i]);
    p = p * su2_from_rotation(lc.junctions[i]);
  }
  return p;
}

double safe_inefficiency(double theta) {
  return bending_inefficiency(std::min(theta, M_PI - 1e-9));
}

std::string tame_violations(const LocalChain& lc, double l_min, const char* l_msg,
                            bool check_gaps, bool check_m_le_l) {
  std::string v;
  const double th = lc.params.theta;
  if (!(th > 0.0 && th < M_PI)) v += "theta outside (0, pi); ";
  if (!(lc.params.L >= l_min)) v += std::string(l_msg) + "; ";
  bool short_seen = false, bend_seen = false, gap_seen = false;
  for (double l : lc.lengths)
    if (l < 2.0 * lc.params.L - 1e-12 && !short_seen) {
      v += "segment shorter than 2L; ";
      short_seen = true;
    }
  for (const Mat3& j : lc.junctions) {
    if (!bend_seen && junction_bending(j) > th + 1e-12) {
      v += "bending angle above theta; ";
      bend_seen = true;
    }
    if (check_gaps && !gap_seen && junction_gap(j) > lc.params.delta + 1e-12) {
      v += "framing gap above delta; ";
      gap_seen = true;
    }
  }
  if (check_m_le_l && lc.m() > lc.params.L) v += "more segments than L; ";
  return v;
}

ChainBounds bounds_impl(const LocalChain& lc, bool cyclic) {
  const double L = lc.params.L, th = lc.params.theta, de = lc.params.delta;
  const double ith = (th > 0.0 && th < M_PI) ? bending_inefficiency(th) : 0.0;
  std::string viol =
      tame_violations(lc, ith + 10.0 * kLog2, "L below I(theta) + 10 log 2", true, false);

  const int nj = cyclic ? lc.m() : lc.m() - 1;
  double sum_l = 0.0, sum_phi = 0.0, sum_i = 0.0;
  for (double l : lc.lengths) sum_l += l;
  for (double p : lc.phases) sum_phi += p;
  for (int i = 0; i < nj; ++i) sum_i += safe_inefficiency(junction_bending(lc.junctions[i]));

  const double e = std::exp((-L + 10.0 * kLog2) / 2.0) * std::sin(th / 2.0);
  ChainBounds out;
  out.length = Interval{sum_l - sum_i, nj * e / (L - kLog2)};
  out.phase = Interval{sum_phi, nj * (de + e)};
  out.hypotheses = HypothesesViolated{!viol.empty(), viol};
  return out;
}

}  // namespace

std::vector<double> chain_bending_angles(const Chain& chain) {
  const LocalChain lc = to_local(chain);
  std::vector<double> out;
  for (const Mat3& j : lc.junctions) out.push_back(junction_bending(j));
  return out;
}

std::vector<double> chain_framing_gaps(const Chain& chain) {
  const LocalChain lc = to_local(chain);
  std::vector<double> out;
  for (const Mat3& j : lc.junctions) out.push_back(junction_gap(j));
  return out;
}

Chain develop(const Chain& chain) {
  const LocalChain lc = to_local(chain);
  Chain out;
  out.params = chain.params;
  out.cyclic = chain.cyclic;
  Frame f;
  for (int k = 0; k < lc.m(); ++k) {
    const FramedSegment s = make_segment(f, lc.lengths[k], lc.phases[k]);
    out.segments.push_back(s);
    if (k + 1 < lc.m()) {
      const Frame arr = s.terminal_frame();
      if (std::abs(std::log(arr.base.z)) > 600.0)
        throw Error(ErrorCode::OutOfDomain, "development leaves double range");
      const Mat3 cdep = frame_matrix(arr) * lc.junctions[k];
      f = Frame{arr.base, cdep.col(2), cdep.col(0)};
    }
  }
  if (chain.cyclic) out.closing_rotation = lc.junctions.back();
  return out;
}

FramedSegment reduced_concatenation(const Chain& chain) {
  const Chain* src = &chain;
  Chain dev;
  if (!chain.junctions.empty()) {
    dev = develop(chain);
    src = &dev;
  } else {
    for (size_t i = 0; i + 1 < chain.segments.size(); ++i)
      if (uhs_distance(chain.segments[i].terminal_point(), chain.segments[i + 1].p_ini) >
          kEndpointTol)
        throw Error(ErrorCode::EndpointMismatch, "segments are not consecutive");
  }
  if (src->segments.empty()) throw Error(ErrorCode::DegenerateChain, "empty chain");
  const FramedSegment& first = src->segments.front();
  const FramedSegment& last = src->segments.back();
  const UhsPoint a = first.p_ini;
  const UhsPoint b = last.terminal_point();
  const double d = uhs_distance(a, b);
  if (d < kEndpointTol) throw Error(ErrorCode::DegenerateChain, "chain endpoints coincide");
  return make_framed_segment(a, geodesic_direction(a, b), d, first.n_ini, last.n_ter);
}

std::pair<double, double> reduced_length_phase(const Chain& chain) {
  const LocalChain lc = to_local(chain);
  const ScaledIsometry p = position_product(lc, false);
  const double d = distance_to_image(p);
  if (d < kEndpointTol) throw Error(ErrorCode::DegenerateChain, "chain endpoints coincide");
  const Vec3 tp = direction_to_image(p);
  Vec3 np = Vec3(1, 0, 0) - tp.x() * tp;
  if (np.norm() < 1e-12)
    throw Error(ErrorCode::DegenerateConfiguration, "framing parallel to reduced direction");
  np.normalize();
  const Isometry gp = frame_to_isometry(Frame{UhsPoint(0, 0, 1), tp, np});
  const ScaledIsometry q = ScaledIsometry::from(gp.inverse().m) * p;
  // The relative rotation at the far endpoint is S(-d) * q; its first row is
  // the numerically clean one (no cancellation), SU(2) structure fills in the
  // second, and the overall scale drops out under normalization.
  Complex alpha = q.m(0, 0), beta = q.m(0, 1);
  const double nrm = std::sqrt(std::norm(alpha) + std::norm(beta));
  alpha /= nrm;
  beta /= nrm;
  Mat2c y;
  y << alpha, beta, -std::conj(beta), std::conj(alpha);
  const Vec3 nt = rotation_from_su2(y).col(0);
  return {d, std::atan2(nt.y(), nt.x())};
}

ScaledIsometry chain_holonomy(const Chain& cycle) {
  if (!cycle.cyclic) throw Error(ErrorCode::DegenerateChain, "holonomy requires a cycle");
  return position_product(to_local(cycle), true);
}

ComplexLength reduced_cyclic_concatenation(const Chain& cycle) {
  const ScaledIsometry h = chain_holonomy(cycle);
  try {
    return scaled_complex_length(h);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotLoxodromic)
      throw Error(ErrorCode::NullHomotopic, "cycle holonomy has no translation length");
    throw;
  }
}

ChainBounds chain_length_phase_bounds(const Chain& chain) {
  if (chain.cyclic) throw Error(ErrorCode::DegenerateChain, "expected a chain, not a cycle");
  return bounds_impl(to_local(chain), false);
}

ChainBounds cycle_length_phase_bounds(const Chain& cycle) {
  if (!cycle.cyclic) throw Error(ErrorCode::DegenerateChain, "expected a cycle");
  return bounds_impl(to_local(cycle), true);
}

DriftReport initial_frame_drift(const Chain& chain) {
  const LocalChain lc = to_local(chain);
  DriftReport rep;
  rep.bound = 8.0 * std::exp(-lc.params.L);
  const double ith =
      (lc.params.theta > 0.0 && lc.params.theta < M_PI) ? bending_inefficiency(lc.params.theta) : 0.0;
  const std::string viol =
      tame_violations(lc, ith + 10.0 * kLog2, "L below I(theta) + 10 log 2", true, false);
  rep.hypotheses = HypothesesViolated{!viol.empty(), viol};
  if (lc.m() == 1) return rep;
  const ScaledIsometry p = position_product(lc, false);
  const Vec3 tp = direction_to_image(p);
  Vec3 np = Vec3(1, 0, 0) - tp.x() * tp;
  if (np.norm() < 1e-12)
    throw Error(ErrorCode::DegenerateConfiguration, "framing parallel to reduced direction");
  np.normalize();
  Mat3 c;
  c.col(0) = np;
  c.col(1) = tp.cross(np);
  c.col(2) = tp;
  rep.drift = rotation_angle(c);
  return rep;
}

namespace {

struct ProjPoint {
  Complex w;
  bool inf = false;
};

std::pair<ProjPoint, ProjPoint> axis_endpoints(const ScaledIsometry& g) {
  const Complex a = g.m(0, 0), b = g.m(0, 1), c = g.m(1, 0), d = g.m(1, 1);
  const Complex tr = a + d;
  const Complex det = std::exp(-2.0 * g.log_scale);
  Complex sq = std::sqrt(tr * tr - 4.0 * det);
  if ((std::conj(tr) * sq).real() < 0.0) sq = -sq;
  const Complex lp = (tr + sq) / 2.0;
  const Complex lm = det / lp;
  const auto evec = [&](const Complex& lam) -> ProjPoint {
    const Complex v1x = b, v1y = lam - a;
    const Complex v2x = lam - d, v2y = c;
    const bool use1 = std::abs(v1x) + std::abs(v1y) >= std::abs(v2x) + std::abs(v2y);
    const Complex vx = use1 ? v1x : v2x;
    const Complex vy = use1 ? v1y : v2y;
    if (std::abs(vy) < 1e-14 * std::abs(vx)) return ProjPoint{Complex(0, 0), true};
    return ProjPoint{vx / vy, false};
  };
  return {evec(lm), evec(lp)};  // repelling, attracting
}

// maps (0, infinity) to (repel, attract)
Isometry axis_chart(const ProjPoint& repel, const ProjPoint& attract) {
  Mat2c w;
  if (!attract.inf && !repel.inf)
    w << attract.w, repel.w, Complex(1), Complex(1);
  else if (attract.inf)
    w << Complex(1), repel.w, Complex(0), Complex(1);
  else
    w << attract.w, Complex(1), Complex(1), Complex(0);
  Isometry g(w);
  g.normalize();
  return g;
}

double dist_to_vertical_segment(const UhsPoint& q, double length) {
  const double nq = std::sqrt(q.x * q.x + q.y * q.y + q.z * q.z);
  const double t = std::min(std::exp(length), std::max(1.0, nq));
  return uhs_distance(q, UhsPoint(0, 0, t));
}

}  // namespace

NeighborhoodReport cycle_neighborhood_check(const Chain& cycle) {
  if (!cycle.cyclic) throw Error(ErrorCode::DegenerateChain, "expected a cycle");
  const LocalChain lc = to_local(cycle);
  const int m = lc.m();
  for (double l : lc.lengths)
    if (l > 600.0) throw Error(ErrorCode::OutOfDomain, "segment too long to position");

  NeighborhoodReport rep;
  const double th = lc.params.theta;
  const double ith = (th > 0.0 && th < M_PI) ? bending_inefficiency(th) : 0.0;
  const std::string viol = tame_violations(lc, 4.0 * (ith + 10.0 * kLog2),
                                           "L below 4(I(theta) + 10 log 2)", false, true);
  rep.hypotheses = HypothesesViolated{!viol.empty(), viol};

  try {
    scaled_complex_length(rotated_product(lc, 0));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotLoxodromic)
      throw Error(ErrorCode::NullHomotopic, "cycle holonomy has no translation length");
    throw;
  }

  for (int k = 0; k < m; ++k) {
    const auto [fp_rep, fp_att] = axis_endpoints(rotated_product(lc, k));
    const Isometry w = axis_chart(fp_rep, fp_att);
    const Isometry winv = w.inverse();
    const auto foot = [&](const UhsPoint& p) {
      const UhsPoint q = apply_isometry(winv, p);
      return std::sqrt(q.x * q.x + q.y * q.y + q.z * q.z);
    };
    double ta = foot(UhsPoint(0, 0, 1));
    double tb = foot(UhsPoint(0, 0, std::exp(lc.lengths[k])));
    if (tb < ta) std::swap(ta, tb);
    const double arc = std::log(tb / ta);
    const int n = std::max(2, static_cast<int>(std::ceil(32.0 * arc)) + 1);

    const int knext = (k + 1) % m;
    const int kprev = (k - 1 + m) % m;
    const Isometry to_next = (Isometry(seg_op(lc.lengths[k], lc.phases[k])) *
                              Isometry(su2_from_rotation(lc.junctions[k])))
                                 .inverse();
    const Isometry to_prev = Isometry(seg_op(lc.lengths[kprev], lc.phases[kprev])) *
                             Isometry(su2_from_rotation(lc.junctions[kprev]));

    for (int i = 0; i < n; ++i) {
      const double t = ta * std::exp(arc * i / (n - 1));
      const UhsPoint p = apply_isometry(w, UhsPoint(0, 0, t));
      double best = dist_to_vertical_segment(p, lc.lengths[k]);
      best = std::min(best, dist_to_vertical_segment(apply_isometry(to_next, p), lc.lengths[knext]));
      best = std::min(best, dist_to_vertical_segment(apply_isometry(to_prev, p), lc.lengths[kprev]));
      rep.max_distance = std::max(rep.max_distance, best);
    }
    rep.samples += n;
  }
  return rep;
}

TameChainReport tame_chain_lower_bound_check(const Chain& chain) {
  const LocalChain lc = to_local(chain);
  const int m = lc.m();
  const double L = lc.params.L, th = lc.params.theta;
  for (double l : lc.lengths)
    if (l > 600.0) throw Error(ErrorCode::OutOfDomain, "segment too long to position");

  TameChainReport rep;
  std::string viol;
  if (!(th > 0.0 && th < M_PI / 2.0)) viol += "theta outside (0, pi/2); ";
  const double l_min =
      std::max(12.0 * safe_inefficiency(M_PI - th) + 80.0 * kLog2,
               24.0 * kLog2 - 16.0 * std::log(std::max(M_PI / 2.0 - th, 1e-300)));
  if (!(L >= l_min)) viol += "L below the mixed-chain threshold; ";
  for (int i = 0; i + 1 < m; ++i) {
    const bool long_a = lc.lengths[i] >= L;
    const bool long_b = lc.lengths[i + 1] >= L;
    const double beta = junction_bending(lc.junctions[i]);
    if (long_a && long_b) {
      if (beta > M_PI - th + 1e-12) viol += "long-long bending above pi - theta; ";
    } else if (long_a != long_b) {
      if (beta > M_PI / 2.0 - th + 1e-12) viol += "long-short bending above pi/2 - theta; ";
    } else {
      viol += "two consecutive short segments; ";
    }
  }
  rep.hypotheses = HypothesesViolated{!viol.empty(), viol};

  double sum = 0.0;
  for (double l : lc.lengths) sum += l;
  rep.half_sum = sum / 2.0;
  rep.oracle_length = m == 1 ? lc.lengths[0] : distance_to_image(position_product(lc, false));
  rep.pass = rep.oracle_length >= rep.half_sum;

  if (m < 2) return rep;

  // y_0 = start, y_i = midpoint of segment i (0 < i < m-1), y_{m-1} = end;
  // chart index of y_i equals i except that y_{m-1} lives in chart m-1.
  const auto y_height = [&](int i) {
    if (i == 0) return 0.0;
    if (i == m - 1) return lc.lengths[m - 1];
    return lc.lengths[i] / 2.0;
  };
  const auto step_iso = [&](int i) {  // chart i+1 -> chart i
    return Isometry(seg_op(lc.lengths[i], lc.phases[i])) *
           Isometry(su2_from_rotation(lc.junctions[i]));
  };

  for (int i = 0; i + 1 < m; ++i) {
    MidpointStep st;
    const UhsPoint yi(0, 0, std::exp(y_height(i)));
    const UhsPoint ynext_own(0, 0, std::exp(y_height(i + 1)));
    const UhsPoint ynext = apply_isometry(step_iso(i), ynext_own);
    st.t_length = uhs_distance(yi, ynext);
    const double d1 = i == 0 ? lc.lengths[0] : lc.lengths[i] / 2.0;
    const double d2 = i + 1 == m - 1 ? lc.lengths[m - 1] : lc.lengths[i + 1] / 2.0;
    st.two_thirds_sum = 2.0 / 3.0 * (d1 + d2);
    st.length_floor = L / 3.0;
    st.length_ok = st.t_length >= st.two_thirds_sum - 1e-9 && st.t_length >= st.length_floor - 1e-9;
    st.angle_floor = 2.0 * th;
    if (i + 2 < m) {
      const UhsPoint yhere(0, 0, std::exp(y_height(i + 1)));
      const UhsPoint yprev = apply_isometry(step_iso(i).inverse(), yi);
      const UhsPoint yfar_own(0, 0, std::exp(y_height(i + 2)));
      const UhsPoint yfar = apply_isometry(step_iso(i + 1), yfar_own);
      const Vec3 u = geodesic_direction(yhere, yprev);
      const Vec3 v = geodesic_direction(yhere, yfar);
      st.angle = std::atan2(u.cross(v).norm(), u.dot(v));
      st.angle_ok = st.angle >= st.angle_floor - 1e-9;
    } else {
      st.angle = 0.0;
      st.angle_ok = true;
    }
    rep.steps.push_back(st);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// generators

namespace {

double uniform_in(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Vec3 rotate_about(const Vec3& v, const Vec3& axis, double angle) {
  return Eigen::AngleAxisd(angle, axis) * v;
}

// Junction in the arrival basis (n = e1, t = e3) with the requested bending
// and a framing gap within gap_budget (unconstrained when the budget is >= 1).
Mat3 sample_junction(std::mt19937_64& rng, double beta, double gap_budget) {
  const Vec3 t(0, 0, 1), n(1, 0, 0);
  double psi;
  const double sb = std::sin(beta);
  if (gap_budget >= 1.0 || beta < 1e-12 || sb <= std::sin(0.98 * gap_budget)) {
    psi = uniform_in(rng, -M_PI, M_PI);
  } else {
    const double cap = std::asin(std::sin(0.98 * gap_budget) / sb);
    psi = uniform_in(rng, -cap, cap);
    if (uniform_in(rng, 0.0, 1.0) < 0.5) psi += M_PI;
  }
  const Vec3 axis = rotate_about(n, t, psi);
  const Vec3 tp = rotate_about(t, axis, beta);
  Vec3 np = (n - n.dot(tp) * tp).normalized();
  const double gap0 = std::atan2(n.cross(np).norm(), n.dot(np));
  if (gap_budget < 1.0) {
    const double room = gap_budget - gap0;
    if (room > 0.0) {
      const double eta = uniform_in(rng, -0.95 * room, 0.95 * room);
      const Vec3 cand = rotate_about(np, tp, eta);
      if (std::atan2(n.cross(cand).norm(), n.dot(cand)) <= gap_budget) np = cand;
    }
  } else {
    np = rotate_about(np, tp, uniform_in(rng, -M_PI, M_PI));
  }
  Mat3 j;
  j.col(0) = np;
  j.col(1) = tp.cross(np);
  j.col(2) = tp;
  return j;
}

}  // namespace

Chain random_tame_chain(std::mt19937_64& rng, const ChainParams& params, int m, bool cyclic) {
  if (m < 1) throw Error(ErrorCode::DegenerateChain, "need at least one segment");
  Chain c;
  c.params = params;
  c.cyclic = cyclic;
  for (int k = 0; k < m; ++k) {
    const double l = uniform_in(rng, 2.0 * params.L, 2.0 * params.L + 10.0);
    const double phi = uniform_in(rng, -M_PI, M_PI);
    c.segments.push_back(make_segment(Frame{}, l, phi));
  }
  const int nj = cyclic ? m : m - 1;
  for (int k = 0; k < nj; ++k) {
    const double beta = uniform_in(rng, 0.0, params.theta) * 0.9999;
    c.junctions.push_back(sample_junction(rng, beta, params.delta * 0.98));
  }
  return c;
}

Chain random_mixed_chain(std::mt19937_64& rng, double L, double theta, int m) {
  if (m < 1) throw Error(ErrorCode::DegenerateChain, "need at least one segment");
  Chain c;
  c.params = ChainParams{L, theta, 0.0};
  std::vector<bool> is_long(m);
  is_long[0] = uniform_in(rng, 0.0, 1.0) < 0.7;
  for (int k = 1; k < m; ++k)
    is_long[k] = !is_long[k - 1] ? true : uniform_in(rng, 0.0, 1.0) < 0.55;
  for (int k = 0; k < m; ++k) {
    const double l =
        is_long[k] ? uniform_in(rng, L, L + 8.0) : uniform_in(rng, 0.5, 0.8 * L);
    c.segments.push_back(make_segment(Frame{}, l, 0.0));
  }
  for (int k = 0; k + 1 < m; ++k) {
    const double cap = (is_long[k] && is_long[k + 1]) ? M_PI - theta : M_PI / 2.0 - theta;
    const double beta = uniform_in(rng, 0.0, cap);
    c.junctions.push_back(sample_junction(rng, beta, 2.0));
  }
  return c;
}

}  // namespace pantskit
