#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "broadwell/errors.hpp"
#include "broadwell/fields.hpp"

using namespace broadwell;

namespace {

const SpaceTimeBox kUnit(0, 1, 0, 1, 1);

template <class F>
Field4 tabulate(const GridSpec& g, F f) {
  Field4 out(g);
  for (int s = 1; s <= 4; ++s)
    for (int k = 0; k < g.nt(); ++k)
      for (int i = 0; i < g.nx(); ++i)
        for (int j = 0; j < g.ny(); ++j) out.at(s, k, i, j) = f(s, g.t(k), g.x(i), g.y(j));
  return out;
}

}  // namespace

TEST_CASE("grid covers the box exactly") {
  const SpaceTimeBox box(-0.3, 0.7, 0.1, 2.2, 0.9);
  const GridSpec g(box, 7, 9, 11);
  CHECK(g.t(0) == 0.0);
  CHECK(g.t(6) == 0.9);
  CHECK(g.x(0) == -0.3);
  CHECK(g.x(8) == 0.7);
  CHECK(g.y(10) == 2.2);
  CHECK(g.dx() == doctest::Approx(0.125));
  CHECK(g.label() == "7x9x11");
  CHECK_THROWS_AS(GridSpec(box, 1, 3, 3), UsageError);
}

TEST_CASE("sampling") {
  const GridSpec g(kUnit, 5, 6, 7);
  const Field4 c(g, 0.3);
  CHECK(c.sample(2, 0.123, 0.77, 0.31) == doctest::Approx(0.3));

  const Field4 affine = tabulate(g, [](int, double, double x, double y) { return x + y; });
  CHECK(affine.sample(1, 0.5, 0.1, 0.25) == doctest::Approx(0.35));
  CHECK(affine.sample(1, 0.5, 1.0 + 1e-13, 0.25) == doctest::Approx(1.25));
  CHECK_THROWS_AS(affine.sample(1, 0.5, 1.0 + 1e-6, 0.25), DomainError);
  CHECK_THROWS_AS(affine.sample(1, -1e-6, 0.5, 0.25), DomainError);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const Field4 noise = tabulate(g, [&](int, double, double, double) { return u(rng); });
  for (int s = 1; s <= 4; ++s)
    for (int k = 0; k < g.nt(); ++k)
      for (int i = 0; i < g.nx(); ++i)
        for (int j = 0; j < g.ny(); ++j)
          CHECK(noise.sample(s, g.t(k), g.x(i), g.y(j)) == noise.at(s, k, i, j));

  const Field4 tri = tabulate(g, [](int s, double t, double x, double y) {
    return s * (1 + 2 * t - 3 * x + 0.5 * y);
  });
  for (int trial = 0; trial < 200; ++trial) {
    const double t = 0.5 + 0.5 * u(rng), x = 0.5 + 0.5 * u(rng), y = 0.5 + 0.5 * u(rng);
    const State st = tri.sample4(t, x, y);
    for (int s = 1; s <= 4; ++s) CHECK(st[s - 1] == doctest::Approx(s * (1 + 2 * t - 3 * x + 0.5 * y)));
  }
}

TEST_CASE("sup norm") {
  const GridSpec g(kUnit, 3, 3, 3);
  CHECK(sup_norm(Field4(g)) == 0.0);
  Field4 f(g);
  f.at(3, 1, 2, 0) = -2.5;
  CHECK(sup_norm(f) == 2.5);
  const Field4 levels = tabulate(g, [](int s, double, double, double) { return 0.1 * s; });
  CHECK(sup_norm(levels) == doctest::Approx(0.4));

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const Field4 a = tabulate(g, [&](int, double, double, double) { return u(rng); });
    const Field4 b = tabulate(g, [&](int, double, double, double) { return u(rng); });
    const double lambda = 3.0 * u(rng);
    CHECK(sup_norm(lambda * a) == doctest::Approx(std::abs(lambda) * sup_norm(a)));
    CHECK(sup_norm(a + b) <= sup_norm(a) + sup_norm(b) + 1e-15);
  }
}

TEST_CASE("finite-difference partials") {
  const GridSpec g(kUnit, 5, 11, 4);
  const FieldPartials zero = fd_partials(Field4(g, 0.7));
  CHECK(sup_norm(zero.dt) == 0.0);
  CHECK(sup_norm(zero.dx) == 0.0);
  CHECK(sup_norm(zero.dy) == 0.0);

  const Field4 lin = tabulate(g, [](int s, double t, double x, double y) {
    return s == 1 ? 2 * t : -0.5 * t + 3 * x - y;
  });
  const FieldPartials lp = fd_partials(lin);
  for (int k = 0; k < g.nt(); ++k)
    for (int i = 0; i < g.nx(); ++i)
      for (int j = 0; j < g.ny(); ++j) {
        CHECK(lp.dt.at(1, k, i, j) == doctest::Approx(2.0));
        CHECK(lp.dt.at(2, k, i, j) == doctest::Approx(-0.5));
        CHECK(lp.dx.at(3, k, i, j) == doctest::Approx(3.0));
        CHECK(lp.dy.at(4, k, i, j) == doctest::Approx(-1.0));
      }

  const Field4 quad = tabulate(g, [](int, double, double x, double) { return x * x; });
  CHECK(fd_partials(quad).dx.at(1, 2, 5, 1) == doctest::Approx(1.0).epsilon(1e-14));

  CHECK_THROWS_AS(fd_partials(Field4(GridSpec(kUnit, 2, 5, 5))), UsageError);
}

TEST_CASE("V functional") {
  const GridSpec g(kUnit, 5, 5, 5);
  CHECK(v_functional(Field4(g), fd_partials(Field4(g))) == 0.0);
  const Field4 c(g, 0.7);
  CHECK(v_functional(c, fd_partials(c)) == doctest::Approx(0.7));
  const Field4 f = tabulate(g, [](int s, double t, double, double) { return s == 1 ? 3 * t : 0.0; });
  CHECK(v_functional(f, fd_partials(f)) == doctest::Approx(3.0));
  CHECK_THROWS_AS(v_functional(f, fd_partials(Field4(GridSpec(kUnit, 4, 5, 5)))), UsageError);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const Field4 r = tabulate(g, [&](int, double, double, double) { return u(rng); });
    CHECK(v_functional(r, fd_partials(r)) >= sup_norm(r));
  }
}

TEST_CASE("C1 norm") {
  auto zero = [](double, double) { return 0.0; };
  CHECK(c1_norm(zero, zero, zero, Rect{}, 16) == 0.0);
  auto level = [](double, double) { return 0.003; };
  CHECK(c1_norm(level, zero, zero, Rect{}, 16) == doctest::Approx(0.003));
  auto g = [](double x, double) { return std::sin(std::numbers::pi * x); };
  auto gx = [](double x, double) { return std::numbers::pi * std::cos(std::numbers::pi * x); };
  CHECK(c1_norm(g, gx, zero, Rect{}, 256) == doctest::Approx(std::numbers::pi));
}

TEST_CASE("CSV snapshot") {
  const GridSpec g(kUnit, 2, 2, 3);
  Field4 f(g, 0.1);
  f.at(4, 1, 1, 2) = 1.0 / 3.0;
  std::ostringstream os;
  write_csv_slice(os, f, 1);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "t,x,y,N1,N2,N3,N4");
  int rows = 0;
  std::string last;
  while (std::getline(in, line)) {
    ++rows;
    last = line;
  }
  CHECK(rows == 6);
  CHECK(last == "1,1,1,0.1,0.1,0.1,0.3333333333333333");
  CHECK(std::stod(last.substr(last.rfind(',') + 1)) == 1.0 / 3.0);
  CHECK_THROWS_AS(write_csv_slice(os, f, 2), UsageError);
}
