#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "pgmt/geometry.hpp"
#include "pgmt/measure.hpp"
#include "pgmt/numerics.hpp"

using namespace pgmt;

namespace {

// time segment [0,1] on R^{1,0}
PolyhedralChain time_segment() { return segment_chain({0.0}, {1.0}, true); }

// straight 2-d track in R^{1,2}: segment of length len moving with velocity v
PolyhedralChain moving_segment(double tmax, double len, double vx, double vy, int res = 16) {
  PolyhedralChain c(2, 3, true);
  std::vector<std::vector<int>> grid(res + 1, std::vector<int>(res + 1));
  for (int i = 0; i <= res; ++i)
    for (int j = 0; j <= res; ++j) {
      const double t = tmax * i / res;
      const double s = len * j / res;
      const double p[3] = {t, s + vx * t, vy * t};
      grid[i][j] = c.add_vertex(p);
    }
  for (int i = 0; i < res; ++i)
    for (int j = 0; j < res; ++j) {
      const int a[3] = {grid[i][j], grid[i][j + 1], grid[i + 1][j + 1]};
      const int b[3] = {grid[i][j], grid[i + 1][j + 1], grid[i + 1][j]};
      c.add_simplex(a);
      c.add_simplex(b);
    }
  return c;
}

}  // namespace

TEST_CASE("grid cover counts for the unit time segment") {
  auto seg = time_segment();
  for (int m : {4, 8}) {
    auto boxes = par_grid_cover(seg, 1.0 / m);
    CHECK(boxes.size() >= static_cast<std::size_t>(m * m));
    CHECK(boxes.size() <= static_cast<std::size_t>(m * m + 2));
  }
}

TEST_CASE("grid cover of a single point touches at most 2^(n+1) cells") {
  PolyhedralChain pt(0, 3, true);
  const double p[3] = {0.25, 0.5, 0.125};
  pt.add_vertex(p);
  Simplex s;
  s.verts[0] = 0;
  pt.simplices.push_back(s);
  auto boxes = par_grid_cover(pt, 0.25);
  CHECK(boxes.size() >= 1);
  CHECK(boxes.size() <= 8);
}

TEST_CASE("grid cover of a unit spatial segment") {
  // {0} x [0,1] e1 in R^{1,1}
  auto seg = segment_chain({0.125, 0.0}, {0.125, 1.0}, true);
  for (int m : {4, 8}) {
    auto boxes = par_grid_cover(seg, 1.0 / m);
    CHECK(boxes.size() >= static_cast<std::size_t>(m));
    CHECK(boxes.size() <= static_cast<std::size_t>(2 * (m + 2)));
  }
}

TEST_CASE("grid cover rejects bad arguments") {
  auto seg = time_segment();
  CHECK_THROWS_AS(par_grid_cover(seg, 0.0), std::invalid_argument);
  auto spatial = segment_chain({0, 0}, {1, 0}, false);
  CHECK_THROWS_AS(par_grid_cover(spatial, 0.5), std::invalid_argument);
}

TEST_CASE("content of the time axis is pi/4") {
  auto est = par_content(time_segment(), 2.0, {dyadic_ladder(3, 7), -1});
  for (const auto& e : est.ladder) CHECK(e.value == doctest::Approx(kPi / 4).epsilon(0.02));
  CHECK(est.extrapolated == doctest::Approx(kPi / 4).epsilon(1e-3));
}

TEST_CASE("content matches the raw cover formula when rotations are off") {
  auto seg = segment_chain({0.1, 0.2}, {0.35, 0.9}, true);
  const double delta = 1.0 / 8;
  auto boxes = par_grid_cover(seg, delta);
  double direct = 0.0;
  for (const auto& b : boxes)
    direct += alpha_norm(2.0) * std::pow(b.par_diam / 2.0, 2.0) * b.mult;
  ContentOptions opts;
  opts.ladder = {delta};
  opts.rotations = 0;
  auto est = par_content(seg, 2.0, opts);
  CHECK(est.ladder[0].value == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("fixed-time square has vanishing s=3 content") {
  auto sq = spatial_square_chain(0.2, 1.0, 4);
  auto est = par_content(sq, 3.0, {dyadic_ladder(3, 7), 4});
  // values fall off linearly in delta
  for (std::size_t i = 1; i < est.ladder.size(); ++i) {
    const double ratio = est.ladder[i].value / est.ladder[i - 1].value;
    CHECK(ratio > 0.35);
    CHECK(ratio < 0.65);
  }
  CHECK(std::fabs(est.extrapolated) < 2e-2);
}

TEST_CASE("parabolic scaling carries content by lambda^(k+2) on rescaled ladders") {
  auto set = moving_segment(0.5, 1.0, 0.6, 0.3, 8);
  auto base = par_content(set, 3.0, {dyadic_ladder(3, 5), 4});
  for (double l : {0.5, 2.0}) {
    auto scaled = pushforward(set, {ScalingKind::Parabolic, l});
    std::vector<double> ladder;
    for (int j = 3; j <= 5; ++j) ladder.push_back(l * std::ldexp(1.0, -j));
    std::sort(ladder.begin(), ladder.end(), std::greater<>());
    auto est = par_content(scaled, 3.0, {ladder, 4});
    const double expect = std::pow(l, 3.0) * base.extrapolated;
    CHECK(est.extrapolated == doctest::Approx(expect).epsilon(2e-2));
  }
}

TEST_CASE("top-dimensional content is proportional to T*L^k") {
  // boxes [0,T] x [0,L] in R^{1,1}
  const double shapes[5][2] = {{1, 1}, {0.5, 2}, {2, 0.5}, {1, 0.618}, {0.37, 1.37}};
  std::vector<double> consts;
  for (const auto& sh : shapes) {
    auto box = product_box_chain(0.0, sh[0], 0.0, sh[1], 1, 0, 4);
    auto est = par_content(box, 3.0, {dyadic_ladder(3, 6), -1});
    consts.push_back(est.extrapolated / (sh[0] * sh[1]));
  }
  const double mean = [&] {
    double s = 0;
    for (double c : consts) s += c;
    return s / consts.size();
  }();
  for (double c : consts) CHECK(std::fabs(c - mean) / mean < 0.02);
}

TEST_CASE("ladder converges on a positive-measure set") {
  auto box = product_box_chain(0.0, 1.0, 0.0, 1.0, 1, 0, 2);
  auto est = par_content(box, 3.0, {dyadic_ladder(3, 8), -1});
  const auto& lad = est.ladder;
  const double a = lad[lad.size() - 2].value;
  const double b = lad[lad.size() - 1].value;
  CHECK(std::fabs(b - a) / b < 0.01);
}

TEST_CASE("vertical Lipschitz curve content approaches (pi/4) * length of [a,b]") {
  // increasing vertical curve t -> (t, 0.8 t) over [0,1] in R^{1,1}
  std::vector<std::vector<double>> pts;
  const int m = 64;
  for (int i = 0; i <= m; ++i) {
    const double t = static_cast<double>(i) / m;
    pts.push_back({t, 0.8 * t});
  }
  auto curve = polyline_chain(pts, false, true);
  auto est = par_content(curve, 2.0, {dyadic_ladder(3, 7), -1});
  CHECK(est.extrapolated == doctest::Approx(kPi / 4).epsilon(0.02));
}

TEST_CASE("absolute continuity: content bounded by a fixed multiple of mass") {
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int it = 0; it < 10; ++it) {
    const double v1 = 2.0 * u(gen), v2 = 2.0 * u(gen);
    auto set = moving_segment(0.4 + 0.4 * std::fabs(u(gen)), 0.5 + std::fabs(u(gen)), v1, v2, 8);
    auto est = par_content(set, 3.0, {dyadic_ladder(3, 5), 4});
    const double mass = chain_mass(set);
    CHECK(est.ladder.back().value <= 8.0 * mass);
    CHECK(est.ladder.back().value >= 0.0);
  }
}

TEST_CASE("slice of a static cylinder is the circle") {
  // cylinder [0,1] x circle in R^{1,2}
  const int m = 64;
  PolyhedralChain cyl(2, 3, true);
  std::vector<int> bot(m), top(m);
  for (int i = 0; i < m; ++i) {
    const double a = 2 * kPi * i / m;
    const double p0[3] = {0.0, std::cos(a), std::sin(a)};
    const double p1[3] = {1.0, std::cos(a), std::sin(a)};
    bot[i] = cyl.add_vertex(p0);
    top[i] = cyl.add_vertex(p1);
  }
  for (int i = 0; i < m; ++i) {
    const int j = (i + 1) % m;
    const int t1[3] = {bot[i], bot[j], top[j]};
    const int t2[3] = {bot[i], top[j], top[i]};
    cyl.add_simplex(t1);
    cyl.add_simplex(t2);
  }
  auto sl = slice_at_time(cyl, 0.5);
  CHECK(sl.dim == 1);
  CHECK(sl.ambient == 2);
  const double polygon_len = 2 * m * std::sin(kPi / m);
  CHECK(chain_mass(sl) == doctest::Approx(polygon_len).epsilon(1e-9));
  CHECK(chain_mass(sl) == doctest::Approx(2 * kPi).epsilon(1e-2));

  CHECK(slice_at_time(cyl, 2.0).empty());
  CHECK(slice_at_time(cyl, -0.5).empty());

  // slices at the extent endpoints: bottom uses the half-open rule, the
  // chain's maximal time keeps the top face
  CHECK(chain_mass(slice_at_time(cyl, 0.0)) == doctest::Approx(polygon_len).epsilon(1e-9));
  CHECK(chain_mass(slice_at_time(cyl, 1.0)) == doctest::Approx(polygon_len).epsilon(1e-9));
}

TEST_CASE("slice of a tetrahedral box is a spatial rectangle") {
  auto box = product_box3_chain(0.0, 1.0, 1.0, 1.0, 2);
  auto sl = slice_at_time(box, 0.37);
  CHECK(sl.dim == 2);
  CHECK(chain_mass(sl) == doctest::Approx(1.0).epsilon(1e-9));
}
