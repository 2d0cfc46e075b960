#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "pgmt/geometry.hpp"
#include "pgmt/numerics.hpp"

using namespace pgmt;

namespace {

SpaceTimePoint stp(double t, std::vector<double> x) { return SpaceTimePoint(t, std::move(x)); }

PolyhedralChain random_loft(std::mt19937_64& gen) {
  // random polygon lofted over a short time interval: a 2-chain in R^{1,2}
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int m = 6 + static_cast<int>(gen() % 5);
  PolyhedralChain c(2, 3, true);
  std::vector<int> bottom(m), top(m);
  const double dt = 0.05 + 0.2 * std::fabs(u(gen));
  for (int i = 0; i < m; ++i) {
    const double a = 2 * kPi * i / m;
    const double r = 1.0 + 0.3 * u(gen);
    const double p0[3] = {0.0, r * std::cos(a), r * std::sin(a)};
    const double p1[3] = {dt, r * std::cos(a) + 0.1 * u(gen), r * std::sin(a) + 0.1 * u(gen)};
    bottom[i] = c.add_vertex(p0);
    top[i] = c.add_vertex(p1);
  }
  for (int i = 0; i < m; ++i) {
    const int j = (i + 1) % m;
    const int t1[3] = {bottom[i], bottom[j], top[j]};
    const int t2[3] = {bottom[i], top[j], top[i]};
    c.add_simplex(t1);
    c.add_simplex(t2);
  }
  return c;
}

}  // namespace

TEST_CASE("par_dist basic values") {
  CHECK(par_dist(stp(0, {0}), stp(1, {0})) == doctest::Approx(1.0));
  CHECK(par_dist(stp(0, {0}), stp(0.25, {0.3})) == doctest::Approx(0.5));
  CHECK(par_dist(stp(1, {0.2, 0.4}), stp(1, {1.2, 0.4})) == doctest::Approx(1.0));
  CHECK_THROWS_AS(par_dist(stp(0, {0}), stp(0, {0, 0})), std::invalid_argument);
}

TEST_CASE("par_dist is a metric and scales under eta_lambda") {
  std::mt19937_64 gen(12345);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int it = 0; it < 10000; ++it) {
    SpaceTimePoint p = stp(u(gen), {u(gen), u(gen)});
    SpaceTimePoint q = stp(u(gen), {u(gen), u(gen)});
    SpaceTimePoint r = stp(u(gen), {u(gen), u(gen)});
    const double pq = par_dist(p, q), qr = par_dist(q, r), pr = par_dist(p, r);
    CHECK(pr <= pq + qr + 1e-12);
    CHECK(par_dist(p, q) == doctest::Approx(par_dist(q, p)));

    const double l = 0.25 + 3.0 * std::fabs(u(gen)) / 5.0;
    ScalingMap eta{ScalingKind::Parabolic, l};
    const double lhs = par_dist(apply_scaling(eta, p), apply_scaling(eta, q));
    CHECK(lhs == doctest::Approx(l * pq).epsilon(1e-12));
  }
}

TEST_CASE("apply_scaling formulas") {
  ScalingMap eta{ScalingKind::Parabolic, 2.0};
  auto p = apply_scaling(eta, stp(1, {1, 0}));
  CHECK(p.t == doctest::Approx(4.0));
  CHECK(p.x[0] == doctest::Approx(2.0));

  ScalingMap kappa{ScalingKind::Cylindrical, 0.1};
  auto q = apply_scaling(kappa, stp(10, {0.7}));
  CHECK(q.t == doctest::Approx(1.0));
  CHECK(q.x[0] == doctest::Approx(0.7));

  ScalingMap id{ScalingKind::Parabolic, 1.0};
  auto r = apply_scaling(id, stp(0.3, {0.4}));
  CHECK(r.t == doctest::Approx(0.3));
  CHECK(r.x[0] == doctest::Approx(0.4));
}

TEST_CASE("chain_mass basics") {
  auto seg = segment_chain({0, 0}, {1, 0}, false);
  CHECK(chain_mass(seg) == doctest::Approx(1.0));

  PolyhedralChain tri(2, 2, false);
  const double a[2] = {0, 0}, b[2] = {1, 0}, c[2] = {0, 1};
  const int idx[3] = {tri.add_vertex(a), tri.add_vertex(b), tri.add_vertex(c)};
  tri.add_simplex(idx, 1);
  CHECK(chain_mass(tri) == doctest::Approx(0.5));
  tri.simplices[0].mult = 2;
  CHECK(chain_mass(tri) == doctest::Approx(1.0));
}

TEST_CASE("mass scales like lambda^k under S_lambda") {
  std::mt19937_64 gen(777);
  std::uniform_real_distribution<double> u(0.3, 3.0);
  for (int it = 0; it < 50; ++it) {
    auto c = random_loft(gen);
    const double l = u(gen);
    const double m0 = chain_mass(c);
    const double m1 = chain_mass(pushforward(c, {ScalingKind::Euclidean, l}));
    CHECK(m1 == doctest::Approx(l * l * m0).epsilon(1e-11));
  }
}

TEST_CASE("boundary of a triangle is its three oriented edges") {
  PolyhedralChain tri(2, 2, false);
  const double a[2] = {0, 0}, b[2] = {1, 0}, c[2] = {0, 1};
  const int idx[3] = {tri.add_vertex(a), tri.add_vertex(b), tri.add_vertex(c)};
  tri.add_simplex(idx, 1);
  auto bd = chain_boundary(tri);
  CHECK(bd.dim == 1);
  CHECK(bd.simplices.size() == 3);
  CHECK(chain_mass(bd) == doctest::Approx(2.0 + std::sqrt(2.0)));
}

TEST_CASE("boundary of a closed polygon vanishes") {
  std::vector<std::vector<double>> pts;
  for (int i = 0; i < 12; ++i) {
    const double a = 2 * kPi * i / 12;
    pts.push_back({std::cos(a), std::sin(a)});
  }
  auto cyc = polyline_chain(pts, true, false);
  CHECK(chain_boundary(cyc).empty());
}

TEST_CASE("boundary of boundary vanishes") {
  std::mt19937_64 gen(99);
  for (int it = 0; it < 30; ++it) {
    auto c = random_loft(gen);
    auto bd = chain_boundary(c);
    CHECK(chain_boundary(bd).empty());
  }
}

TEST_CASE("chain_add cancels exact opposites") {
  auto seg = segment_chain({0, 0}, {1, 1}, false);
  auto sum = chain_add(seg, chain_negate(seg));
  CHECK(sum.empty());
}

TEST_CASE("degenerate simplices are rejected") {
  PolyhedralChain c(1, 2, false);
  const double a[2] = {0, 0};
  const int i0 = c.add_vertex(a);
  const int idx[2] = {i0, i0};
  CHECK_THROWS_AS(c.add_simplex(idx), std::invalid_argument);

  PolyhedralChain tri(2, 2, false);
  const double p[2] = {0, 0}, q[2] = {1, 1}, r[2] = {2, 2};
  const int jdx[3] = {tri.add_vertex(p), tri.add_vertex(q), tri.add_vertex(r)};
  CHECK_THROWS_AS(tri.add_simplex(jdx), std::invalid_argument);
}

TEST_CASE("chain json round trip") {
  std::mt19937_64 gen(5);
  auto c = random_loft(gen);
  nlohmann::json j = c;
  auto back = j.get<PolyhedralChain>();
  CHECK(back.dim == c.dim);
  CHECK(back.ambient == c.ambient);
  CHECK(back.time_flag == c.time_flag);
  CHECK(back.vertices == c.vertices);
  CHECK(back.simplices.size() == c.simplices.size());
  CHECK(chain_mass(back) == doctest::Approx(chain_mass(c)));
}

TEST_CASE("clip_time_slab keeps the clipped part only") {
  auto box = product_box_chain(0.0, 1.0, 0.0, 1.0, 1, 0, 4);
  auto half = clip_time_slab(box, 0.0, 0.5);
  CHECK(chain_mass(half) == doctest::Approx(0.5).epsilon(1e-9));
  auto nothing = clip_time_slab(box, 2.0, 3.0);
  CHECK(nothing.empty());
}

TEST_CASE("drop_time projects and cancels degenerate images") {
  // vertical strip over a static segment projects to zero area
  PolyhedralChain strip(2, 3, true);
  const double p00[3] = {0, 0, 0}, p01[3] = {0, 1, 0}, p10[3] = {1, 0, 0}, p11[3] = {1, 1, 0};
  const int v00 = strip.add_vertex(p00), v01 = strip.add_vertex(p01);
  const int v10 = strip.add_vertex(p10), v11 = strip.add_vertex(p11);
  const int t1[3] = {v00, v01, v11}, t2[3] = {v00, v11, v10};
  strip.add_simplex(t1);
  strip.add_simplex(t2);
  auto proj = drop_time(strip);
  CHECK(chain_mass(proj) == doctest::Approx(0.0));
}
