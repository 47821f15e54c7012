#include <stdexcept>
#include <cmath>
#include <set>

#include "doctest.h"
#include "sharp/rng.hpp"
#include "sharp/space.hpp"

using namespace sharp;

TEST_CASE("continuum ball measure is 2^{d-m} h^d") {
  CHECK(Space::continuum(1, 0).ball_measure(1.0) == 2.0);
  CHECK(Space::continuum(2, 0).ball_measure(1.0) == 4.0);
  CHECK(Space::continuum(2, 1).ball_measure(1.5) == doctest::Approx(4.5).epsilon(1e-15));
  CHECK(Space::continuum(3, 2).ball_measure(2.0) == 16.0);
}

TEST_CASE("lattice ball count is (K+1)^m (2K+1)^{d-m} with K = ceil(h) - 1") {
  CHECK(Space::lattice(1, 0).ball_count(1.5) == 3);
  CHECK(Space::lattice(2, 0).ball_count(1.5) == 9);
  CHECK(Space::lattice(2, 0).ball_count(2.0) == 9);  // the ball is open: |x| < 2
  CHECK(Space::lattice(2, 0).ball_count(2.01) == 25);
  CHECK(Space::lattice(2, 1).ball_count(3.0) == 3 * 5);
  CHECK(Space::lattice(3, 2).ball_count(1.5) == 2 * 2 * 3);
}

TEST_CASE("lattice radii must exceed 1") {
  CHECK_THROWS_AS(Space::lattice(1, 0).require_valid_radius(1.0), std::invalid_argument);
  CHECK_THROWS_AS(Space::lattice(2, 1).ball_count(0.5), std::invalid_argument);
  CHECK_NOTHROW(Space::continuum(1, 0).require_valid_radius(0.01));
  CHECK_THROWS_AS(Space::continuum(1, 0).require_valid_radius(0.0), std::invalid_argument);
  CHECK_THROWS_AS(Space::continuum(3, 4), std::invalid_argument);
}

TEST_CASE("points validate their coordinates") {
  const Space half = Space::lattice(2, 1);
  CHECK_THROWS_AS(half.point({-1.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(half.point({0.5, 0.0}), std::invalid_argument);
  CHECK(half.contains(Point{2.0, -3.0}));
  CHECK_FALSE(half.contains(Point{2.0}));
}

TEST_CASE("translated lattice balls keep their count") {
  for (auto [d, m] : {std::pair{1, 0}, {2, 0}, {2, 1}, {3, 2}}) {
    const Space s = Space::lattice(d, m);
    for (double h : {1.5, 2.0, 3.2}) {
      const auto ball = s.enumerate_ball(h);
      CHECK(static_cast<std::int64_t>(ball.size()) == s.ball_count(h));
      std::set<std::vector<double>> seen;
      for (const Point& u : ball) {
        CHECK(s.norm(u) < h);
        seen.insert({u.coords().begin(), u.coords().end()});
      }
      CHECK(seen.size() == ball.size());
      const CounterRng rng(7, static_cast<std::uint64_t>(d * 10 + m));
      for (std::uint64_t k = 0; k < 20; ++k) {
        std::vector<double> c(d);
        for (int i = 0; i < d; ++i)
          c[i] = static_cast<double>(rng.below(k * 8 + i, 9)) - (i < m ? 0.0 : 4.0);
        const Point x(c);
        std::size_t inside = 0;
        for (const Point& u : ball) inside += s.contains(s.translate(x, u));
        CHECK(inside == ball.size());
      }
    }
  }
}

TEST_CASE("distance is translation invariant") {
  for (auto [d, m] : {std::pair{1, 0}, {2, 0}, {2, 1}, {3, 2}}) {
    for (bool lattice : {false, true}) {
      const Space s = lattice ? Space::lattice(d, m) : Space::continuum(d, m);
      const CounterRng rng(3, 100 + d * 10 + m + (lattice ? 1 : 0));
      for (std::uint64_t k = 0; k < 200; ++k) {
        std::vector<double> a(d), b(d);
        for (int i = 0; i < d; ++i) {
          a[i] = 6.0 * rng.uniform(4 * k + 2 * i) - (i < m ? 0.0 : 3.0);
          b[i] = 6.0 * rng.uniform(4 * k + 2 * i + 1) - (i < m ? 0.0 : 3.0);
          if (lattice) {
            a[i] = std::round(a[i]);
            b[i] = std::round(b[i]);
          }
        }
        const Point x(a), y(b);
        CHECK(s.distance(s.translate(x, y), x) == doctest::Approx(s.norm(y)).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("ball measure is monotone in h") {
  const Space c = Space::continuum(2, 1);
  const Space l = Space::lattice(2, 1);
  double prev_c = 0.0;
  std::int64_t prev_l = 0;
  for (double h = 1.05; h < 6.0; h += 0.1) {
    CHECK(c.ball_measure(h) > prev_c);
    CHECK(l.ball_count(h) >= prev_l);
    prev_c = c.ball_measure(h);
    prev_l = l.ball_count(h);
  }
}

TEST_CASE("ball samples stay in the ball and are reproducible") {
  const Space s = Space::continuum(3, 1);
  const auto a = s.sample_ball(1.5, 500, 42);
  const auto b = s.sample_ball(1.5, 500, 42);
  CHECK(a == b);
  for (const Point& p : a) {
    CHECK(s.contains(p));
    CHECK(s.norm(p) < 1.5);
  }
  CHECK(s.sample_ball_point(1.5, 42, 17) == a[17]);
}
