#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pantskit/chains.hpp"
#include "test_util.hpp"

using namespace pantskit;
using namespace pantskit::testutil;

namespace {

FramedSegment bend_from(const FramedSegment& s, double beta, double psi, double l2) {
  const Frame a = s.terminal_frame();
  const Vec3 axis = Eigen::AngleAxisd(psi, a.t) * a.n;
  const Vec3 t2 = Eigen::AngleAxisd(beta, axis) * a.t;
  const Vec3 n2 = (a.n - a.n.dot(t2) * t2).normalized();
  return make_framed_segment(a.base, t2, l2, n2, n2);
}

FramedSegment with_phase_twist(const FramedSegment& s, double alpha) {
  const Vec3 rotated = Eigen::AngleAxisd(alpha, s.terminal_direction()) * s.n_ter;
  return make_framed_segment(s.p_ini, s.dir_ini, s.length, s.n_ini, rotated);
}

// Positioned coordinates condition like e^(total length), so positioned test
// chains stay short; long chains are exercised in local form.
Chain random_positioned_chain(Rng& rng, int m) {
  Chain c;
  c.params = ChainParams{2.0, 1.2, 0.2};
  c.segments.push_back(
      make_segment(random_frame(rng), uniform(rng, 0.7, 2.0), uniform(rng, -3.0, 3.0)));
  for (int k = 1; k < m; ++k) {
    FramedSegment s = bend_from(c.segments.back(), uniform(rng, 0.0, 1.0),
                                uniform(rng, -M_PI, M_PI), uniform(rng, 0.7, 2.0));
    c.segments.push_back(with_phase_twist(s, uniform(rng, -3.0, 3.0)));
  }
  return c;
}

Mat3 bend_junction(double beta, double psi, double twist) {
  const Vec3 t(0, 0, 1), n(1, 0, 0);
  const Vec3 axis = Eigen::AngleAxisd(psi, t) * n;
  const Vec3 tp = Eigen::AngleAxisd(beta, axis) * t;
  Vec3 np = (n - n.dot(tp) * tp).normalized();
  np = Eigen::AngleAxisd(twist, tp) * np;
  Mat3 j;
  j.col(0) = np;
  j.col(1) = tp.cross(np);
  j.col(2) = tp;
  return j;
}

Chain random_short_local_chain(Rng& rng, int m) {
  Chain c;
  c.params = ChainParams{0.3, 1.3, 1.0};
  for (int k = 0; k < m; ++k)
    c.segments.push_back(make_segment(Frame{}, uniform(rng, 0.7, 2.0), uniform(rng, -3.0, 3.0)));
  for (int k = 0; k + 1 < m; ++k)
    c.junctions.push_back(bend_junction(uniform(rng, 0.0, 1.2), uniform(rng, -M_PI, M_PI),
                                        uniform(rng, -0.5, 0.5)));
  return c;
}

}  // namespace

TEST_CASE("scaled isometry products") {
  Rng rng(31);
  for (int it = 0; it < 50; ++it) {
    const Mat2c a = random_isometry(rng).m;
    const Mat2c b = random_isometry(rng).m;
    const ScaledIsometry s = ScaledIsometry::from(a) * ScaledIsometry::from(b);
    const Mat2c direct = a * b;
    const Mat2c recon = std::exp(s.log_scale) * s.m;
    CHECK((recon - direct).cwiseAbs().maxCoeff() < 1e-12 * direct.cwiseAbs().maxCoeff());
  }

  // products far beyond double range stay finite
  ScaledIsometry big = ScaledIsometry::from(segment_op(Complex(500.0, 0.3)).m);
  for (int k = 1; k < 8; ++k) big = big * segment_op(Complex(500.0, 0.3)).m;
  CHECK(big.log_scale == doctest::Approx(2000.0).epsilon(1e-12));
  CHECK(std::isfinite(big.m.cwiseAbs().maxCoeff()));
  const ComplexLength cl = scaled_complex_length(big);
  CHECK(cl.l == doctest::Approx(4000.0).epsilon(1e-12));
  CHECK(cl.theta == doctest::Approx(std::remainder(8 * 0.3, 2 * M_PI)).epsilon(1e-9));
}

TEST_CASE("image of the base point, dual route") {
  Rng rng(32);
  for (int it = 0; it < 200; ++it) {
    const Isometry g = random_isometry(rng);
    const ScaledIsometry s = ScaledIsometry::from(g.m);
    const ImageOfBase im = image_of_base(s);
    const UhsPoint p = apply_isometry(g, UhsPoint(0, 0, 1));
    CHECK(std::abs(im.zeta - p.zeta()) < 1e-12 * (1.0 + std::abs(p.zeta())));
    CHECK(std::exp(im.log_z) == doctest::Approx(p.z).epsilon(1e-12));
    const double d = uhs_distance(UhsPoint(0, 0, 1), p);
    CHECK(distance_to_image(s) == doctest::Approx(d).epsilon(1e-9));
    if (d > 1e-3) {
      const Vec3 dir = geodesic_direction(UhsPoint(0, 0, 1), p);
      CHECK((direction_to_image(s) - dir).norm() < 1e-9);
    }
  }

  // single far translation
  const ScaledIsometry lift = ScaledIsometry::from(segment_op(Complex(600.0, 0.0)).m);
  CHECK(distance_to_image(lift) == doctest::Approx(600.0).epsilon(1e-12));
  CHECK((direction_to_image(lift) - Vec3(0, 0, 1)).norm() < 1e-12);

  // five segments of length 600 bent by right angles: total loss is 4 I(pi/2)
  const Mat2c u = su2_from_rotation(Mat3(Eigen::AngleAxisd(M_PI / 2, Vec3(0, 1, 0))));
  ScaledIsometry far = lift;
  for (int k = 1; k < 5; ++k) far = (far * u) * segment_op(Complex(600.0, 0.0)).m;
  CHECK(distance_to_image(far) == doctest::Approx(3000.0 - 4 * std::log(2.0)).epsilon(1e-12));
  CHECK((direction_to_image(far) - Vec3(0, 0, 1)).norm() < 1e-9);

  // a pure translation of length 1200 pushes the bottom row out of double
  // range entirely; that is outside the supported envelope
  const ScaledIsometry deep = lift * segment_op(Complex(600.0, 0.0)).m;
  CHECK_THROWS_AS(image_of_base(deep), Error);
}

TEST_CASE("scaled complex length matches the plain route") {
  Rng rng(33);
  for (int it = 0; it < 200; ++it) {
    const Isometry g = random_loxodromic(rng);
    const ComplexLength plain = complex_translation_length(g);
    const ComplexLength scaled = scaled_complex_length(ScaledIsometry::from(g.m));
    CHECK(scaled.l == doctest::Approx(plain.l).epsilon(1e-11));
    CHECK(std::abs(std::remainder(scaled.theta - plain.theta, 2 * M_PI)) < 1e-9);
  }
}

TEST_CASE("distance to a segment") {
  const UhsPoint a(0, 0, 1), b(0, 0, std::exp(2.0));

  CHECK(distance_to_segment(UhsPoint(0, 0, std::exp(1.0)), a, b) < 1e-12);
  CHECK(distance_to_segment(UhsPoint(0, 0, std::exp(3.0)), a, b) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(distance_to_segment(UhsPoint(0, 0, std::exp(-1.5)), a, b) ==
        doctest::Approx(1.5).epsilon(1e-12));

  // interior foot: for the vertical line, sinh(dist) = |zeta| / z
  const UhsPoint side(3, 4, 5);
  CHECK(distance_to_segment(side, a, b) == doctest::Approx(std::asinh(1.0)).epsilon(1e-12));

  Rng rng(34);
  for (int it = 0; it < 100; ++it) {
    const Isometry g = random_isometry(rng);
    const UhsPoint p = random_point(rng);
    const UhsPoint qa = random_point(rng), qb = random_point(rng);
    const double d1 = distance_to_segment(p, qa, qb);
    const double d2 = distance_to_segment(apply_isometry(g, p), apply_isometry(g, qa),
                                          apply_isometry(g, qb));
    CHECK(d1 == doctest::Approx(d2).epsilon(1e-9));
  }
}

TEST_CASE("reduced concatenation basics") {
  SUBCASE("single segment is returned unchanged") {
    const FramedSegment s = make_segment(Frame{}, 2.3, 0.7);
    Chain c;
    c.segments = {s};
    const FramedSegment r = reduced_concatenation(c);
    CHECK(r.length == doctest::Approx(s.length).epsilon(1e-12));
    CHECK(uhs_distance(r.p_ini, s.p_ini) < 1e-12);
    CHECK((r.n_ini - s.n_ini).norm() < 1e-12);
    CHECK(phase(r) == doctest::Approx(phase(s)).epsilon(1e-9));
  }

  SUBCASE("aligned segments add lengths and phases") {
    const FramedSegment s1 = make_segment(Frame{}, 1.3, 0.4);
    const FramedSegment s2 = make_segment(s1.terminal_frame(), 2.1, -0.9);
    Chain c;
    c.segments = {s1, s2};
    const FramedSegment r = reduced_concatenation(c);
    CHECK(r.length == doctest::Approx(3.4).epsilon(1e-12));
    CHECK(phase(r) == doctest::Approx(0.4 - 0.9).epsilon(1e-9));
    const auto [len, ph] = reduced_length_phase(c);
    CHECK(len == doctest::Approx(3.4).epsilon(1e-12));
    CHECK(ph == doctest::Approx(-0.5).epsilon(1e-9));
  }

  SUBCASE("positioned route and local route agree") {
    Rng rng(35);
    for (int it = 0; it < 100; ++it) {
      const Chain c = random_positioned_chain(rng, 2 + static_cast<int>(uniform(rng, 0, 4)));
      const FramedSegment r = reduced_concatenation(c);
      const auto [len, ph] = reduced_length_phase(c);
      CHECK(r.length == doctest::Approx(len).epsilon(1e-9));
      CHECK(std::abs(std::remainder(phase(r) - ph, 2 * M_PI)) < 1e-9);
    }
  }

  SUBCASE("degenerate chain throws") {
    Chain c;
    CHECK_THROWS_AS(reduced_concatenation(c), Error);
  }
}

TEST_CASE("two segments of length forty bent at a right angle") {
  const FramedSegment s1 = make_segment(Frame{}, 40.0, 0.0);
  const FramedSegment s2 = bend_from(s1, M_PI / 2, 0.0, 40.0);
  Chain c;
  c.segments = {s1, s2};
  c.params = ChainParams{20.0, M_PI / 2, 0.0};

  const ChainBounds b = chain_length_phase_bounds(c);
  CHECK(!b.hypotheses.violated);
  CHECK(b.length.center == doctest::Approx(80.0 - std::log(2.0)).epsilon(1e-12));
  const double radius =
      std::exp((-20.0 + 10.0 * std::log(2.0)) / 2.0) * std::sin(M_PI / 4) / (20.0 - std::log(2.0));
  CHECK(b.length.radius == doctest::Approx(radius).epsilon(1e-12));
  CHECK(radius < 7.6e-5);

  // law-of-cosines oracle: cosh c = cosh a cosh b for a right-angle bend
  const double closed_form = std::acosh(std::cosh(40.0) * std::cosh(40.0));
  const auto [len, ph] = reduced_length_phase(c);
  CHECK(len == doctest::Approx(closed_form).epsilon(1e-11));
  CHECK(b.length.contains(len));
  CHECK(b.phase.contains_mod_2pi(ph));
  CHECK(reduced_concatenation(c).length == doctest::Approx(closed_form).epsilon(1e-11));
}

TEST_CASE("cycles") {
  SUBCASE("diagonal holonomy reproduces its complex length") {
    Chain c;
    c.segments = {make_segment(Frame{}, 1.7, 0.6)};
    c.cyclic = true;
    c.closing_rotation = Mat3::Identity();
    const ComplexLength cl = reduced_cyclic_concatenation(c);
    CHECK(cl.l == doctest::Approx(1.7).epsilon(1e-12));
    CHECK(cl.theta == doctest::Approx(0.6).epsilon(1e-12));
  }

  SUBCASE("doubling back and forth is null-homotopic") {
    const FramedSegment s = make_segment(Frame{}, 2.5, 0.0);
    Chain c;
    c.segments = {s, orientation_reversal(s)};
    c.cyclic = true;
    try {
      reduced_cyclic_concatenation(c);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NullHomotopic);
    }
  }

  SUBCASE("a chain followed by its reversal is null-homotopic") {
    Rng rng(36);
    Chain fwd = random_positioned_chain(rng, 3);
    Chain c;
    c.segments = fwd.segments;
    for (int k = 2; k >= 0; --k) c.segments.push_back(orientation_reversal(fwd.segments[k]));
    c.cyclic = true;
    try {
      reduced_cyclic_concatenation(c);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NullHomotopic);
    }
  }

  SUBCASE("open cycle without closing rotation throws") {
    Chain c;
    c.segments = {make_segment(Frame{}, 2.0, 0.0)};
    c.cyclic = true;
    CHECK_THROWS_AS(reduced_cyclic_concatenation(c), Error);
  }
}

TEST_CASE("develop and local form round trip") {
  Rng rng(37);
  for (int it = 0; it < 30; ++it) {
    const Chain local = random_short_local_chain(rng, 5);
    const Chain dev = develop(local);
    CHECK(dev.junctions.empty());

    const auto ba_local = chain_bending_angles(local);
    const auto ba_dev = chain_bending_angles(dev);
    const auto gap_local = chain_framing_gaps(local);
    const auto gap_dev = chain_framing_gaps(dev);
    REQUIRE(ba_local.size() == ba_dev.size());
    for (size_t i = 0; i < ba_local.size(); ++i) {
      CHECK(ba_local[i] == doctest::Approx(ba_dev[i]).epsilon(1e-8));
      CHECK(std::abs(gap_local[i] - gap_dev[i]) < 1e-8);
    }

    const auto [l1, p1] = reduced_length_phase(local);
    const auto [l2, p2] = reduced_length_phase(dev);
    CHECK(l1 == doctest::Approx(l2).epsilon(1e-9));
    CHECK(std::abs(std::remainder(p1 - p2, 2 * M_PI)) < 1e-8);
  }
}

TEST_CASE("length and phase windows hold on random tame chains") {
  const ChainParams params{20.0, M_PI / 2, 0.01};
  Rng rng(38);

  SUBCASE("m=1 chain gives zero-radius intervals") {
    Chain c;
    c.segments = {make_segment(Frame{}, 41.0, 1.1)};
    c.params = params;
    const ChainBounds b = chain_length_phase_bounds(c);
    CHECK(b.length.radius == doctest::Approx(0.0));
    CHECK(b.length.center == doctest::Approx(41.0).epsilon(1e-12));
    CHECK(b.phase.center == doctest::Approx(1.1).epsilon(1e-12));
  }

  SUBCASE("chains") {
    for (int it = 0; it < 150; ++it) {
      const int m = 2 + static_cast<int>(uniform(rng, 0.0, 19.0));
      const Chain c = random_tame_chain(rng, params, m, false);
      const ChainBounds b = chain_length_phase_bounds(c);
      REQUIRE(!b.hypotheses.violated);
      const auto [len, ph] = reduced_length_phase(c);
      CHECK(b.length.contains(len));
      CHECK(b.phase.contains_mod_2pi(ph));
    }
  }

  SUBCASE("cycles") {
    for (int it = 0; it < 100; ++it) {
      const int m = 1 + static_cast<int>(uniform(rng, 0.0, 20.0));
      const Chain c = random_tame_chain(rng, params, m, true);
      const ChainBounds b = cycle_length_phase_bounds(c);
      REQUIRE(!b.hypotheses.violated);
      const ComplexLength cl = reduced_cyclic_concatenation(c);
      CHECK(b.length.contains(cl.l));
      CHECK(b.phase.contains_mod_2pi(cl.theta));
    }
  }

  SUBCASE("wrong kind throws") {
    Chain c = random_tame_chain(rng, params, 3, true);
    CHECK_THROWS_AS(chain_length_phase_bounds(c), Error);
    Chain o = random_tame_chain(rng, params, 3, false);
    CHECK_THROWS_AS(cycle_length_phase_bounds(o), Error);
  }
}

TEST_CASE("initial frame drift") {
  SUBCASE("single segment has no drift") {
    Chain c;
    c.segments = {make_segment(Frame{}, 45.0, 0.3)};
    c.params = ChainParams{20.0, M_PI / 2, 0.01};
    CHECK(initial_frame_drift(c).drift == doctest::Approx(0.0));
  }

  SUBCASE("aligned chain has no drift") {
    const FramedSegment s1 = make_segment(Frame{}, 41.0, 0.0);
    const FramedSegment s2 = make_segment(s1.terminal_frame(), 43.0, 0.0);
    Chain c;
    c.segments = {s1, s2};
    c.params = ChainParams{20.0, M_PI / 2, 0.01};
    CHECK(initial_frame_drift(c).drift < 1e-12);
  }

  SUBCASE("random tame chains stay under the bound") {
    Rng rng(39);
    const ChainParams params{20.0, M_PI / 2, 0.01};
    for (int it = 0; it < 100; ++it) {
      const int m = 2 + static_cast<int>(uniform(rng, 0.0, 19.0));
      const Chain c = random_tame_chain(rng, params, m, false);
      const DriftReport rep = initial_frame_drift(c);
      REQUIRE(!rep.hypotheses.violated);
      CHECK(rep.bound == doctest::Approx(8.0 * std::exp(-20.0)).epsilon(1e-12));
      CHECK(rep.drift <= rep.bound);
    }
  }
}

TEST_CASE("closed geodesic stays near the cycle") {
  SUBCASE("single segment cycle lies on its own axis") {
    Chain c;
    c.segments = {make_segment(Frame{}, 65.0, 0.0)};
    c.params = ChainParams{31.0, M_PI / 2, 0.01};
    c.cyclic = true;
    c.closing_rotation = Mat3::Identity();
    const NeighborhoodReport rep = cycle_neighborhood_check(c);
    CHECK(!rep.hypotheses.violated);
    CHECK(rep.max_distance < 1e-9);
    CHECK(rep.samples > 0);
  }

  SUBCASE("two-segment cycles with small bending") {
    Rng rng(40);
    for (int it = 0; it < 10; ++it) {
      const Chain c = random_tame_chain(rng, ChainParams{31.0, 0.3, 0.01}, 2, true);
      const NeighborhoodReport rep = cycle_neighborhood_check(c);
      REQUIRE(!rep.hypotheses.violated);
      CHECK(rep.max_distance <= 1.0);
    }
  }

  SUBCASE("random admissible cycles") {
    Rng rng(41);
    for (int it = 0; it < 15; ++it) {
      const int m = 1 + static_cast<int>(uniform(rng, 0.0, 6.0));
      const Chain c = random_tame_chain(rng, ChainParams{31.0, M_PI / 2, 0.01}, m, true);
      const NeighborhoodReport rep = cycle_neighborhood_check(c);
      REQUIRE(!rep.hypotheses.violated);
      CHECK(rep.max_distance <= 1.0);
    }
  }

  SUBCASE("undersized L is flagged") {
    Rng rng(42);
    const Chain c = random_tame_chain(rng, ChainParams{10.0, M_PI / 2, 0.01}, 2, true);
    const NeighborhoodReport rep = cycle_neighborhood_check(c);
    CHECK(rep.hypotheses.violated);
  }
}

TEST_CASE("midpoint lower bound check") {
  const double theta = 0.2;
  const double L = 111.0;

  SUBCASE("aligned long segments") {
    Chain c;
    c.params = ChainParams{L, theta, 0.0};
    FramedSegment s = make_segment(Frame{}, 112.0, 0.0);
    c.segments = {s};
    for (int k = 1; k < 3; ++k) {
      s = make_segment(s.terminal_frame(), 112.0, 0.0);
      c.segments.push_back(s);
    }
    const TameChainReport rep = tame_chain_lower_bound_check(c);
    CHECK(!rep.hypotheses.violated);
    CHECK(rep.pass);
    CHECK(rep.oracle_length == doctest::Approx(336.0).epsilon(1e-12));
    CHECK(rep.half_sum == doctest::Approx(168.0).epsilon(1e-12));
    for (const MidpointStep& st : rep.steps) {
      CHECK(st.length_ok);
      CHECK(st.angle_ok);
    }
  }

  SUBCASE("targeted long-short-long at the bending caps") {
    Chain c;
    c.params = ChainParams{L, theta, 0.0};
    const double cap = M_PI / 2 - theta - 1e-6;
    const FramedSegment s1 = make_segment(Frame{}, 112.0, 0.0);
    const FramedSegment s2 = bend_from(s1, cap, 0.7, 30.0);
    const FramedSegment s3 = bend_from(s2, cap, -1.9, 115.0);
    c.segments = {s1, s2, s3};
    const TameChainReport rep = tame_chain_lower_bound_check(c);
    REQUIRE(!rep.hypotheses.violated);
    CHECK(rep.pass);
    CHECK(rep.oracle_length >= rep.half_sum);
    REQUIRE(rep.steps.size() == 2);
    for (const MidpointStep& st : rep.steps) {
      CHECK(st.length_ok);
      CHECK(st.t_length >= L / 3.0);
      CHECK(st.angle_ok);
    }
  }

  SUBCASE("alternating long and short segments") {
    Chain c;
    c.params = ChainParams{L, theta, 0.0};
    const double cap = M_PI / 2 - theta - 1e-6;
    Rng rng(43);
    for (int k = 0; k < 9; ++k)
      c.segments.push_back(make_segment(Frame{}, (k % 2 == 1) ? 25.0 : 112.0, 0.0));
    for (int k = 0; k + 1 < 9; ++k)
      c.junctions.push_back(
          bend_junction(cap * uniform(rng, 0.9, 1.0), uniform(rng, -M_PI, M_PI), 0.0));
    const TameChainReport rep = tame_chain_lower_bound_check(c);
    REQUIRE(!rep.hypotheses.violated);
    CHECK(rep.pass);
    for (const MidpointStep& st : rep.steps) {
      CHECK(st.length_ok);
      CHECK(st.angle_ok);
    }
  }

  SUBCASE("random admissible chains") {
    Rng rng(44);
    for (int it = 0; it < 100; ++it) {
      const int m = 1 + static_cast<int>(uniform(rng, 0.0, 12.0));
      const Chain c = random_mixed_chain(rng, L, theta, m);
      const TameChainReport rep = tame_chain_lower_bound_check(c);
      REQUIRE(!rep.hypotheses.violated);
      CHECK(rep.pass);
      for (const MidpointStep& st : rep.steps) {
        CHECK(st.length_ok);
        CHECK(st.angle_ok);
      }
    }
  }

  SUBCASE("two consecutive short segments are flagged") {
    Chain c;
    c.params = ChainParams{L, theta, 0.0};
    const FramedSegment s1 = make_segment(Frame{}, 30.0, 0.0);
    const FramedSegment s2 = bend_from(s1, 0.5, 0.0, 35.0);
    c.segments = {s1, s2};
    const TameChainReport rep = tame_chain_lower_bound_check(c);
    CHECK(rep.hypotheses.violated);
  }
}

TEST_CASE("generator output ranges") {
  Rng rng(45);
  const ChainParams params{20.0, M_PI / 2, 0.01};
  for (int it = 0; it < 50; ++it) {
    const Chain c = random_tame_chain(rng, params, 6, it % 2 == 0);
    for (const FramedSegment& s : c.segments) {
      CHECK(s.length >= 2 * params.L);
      CHECK(s.length <= 2 * params.L + 10.0);
    }
    for (double b : chain_bending_angles(c)) CHECK(b <= params.theta + 1e-12);
    for (double g : chain_framing_gaps(c)) CHECK(g <= params.delta + 1e-12);
  }
  for (int it = 0; it < 30; ++it) {
    const Chain c = random_mixed_chain(rng, 111.0, 0.2, 8);
    const auto bends = chain_bending_angles(c);
    for (int k = 0; k + 1 < 8; ++k) {
      const bool ll = c.segments[k].length >= 111.0 && c.segments[k + 1].length >= 111.0;
      CHECK(bends[k] <= (ll ? M_PI - 0.2 : M_PI / 2 - 0.2) + 1e-12);
      CHECK((c.segments[k].length >= 111.0 || c.segments[k + 1].length >= 111.0));
    }
  }
}
