#include "pgmt/coarea.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "pgmt/numerics.hpp"

namespace pgmt {

namespace {

double domain_diameter(const VerticalMap& f) {
  double d2 = (f.t1 - f.t0) * (f.t1 - f.t0);
  for (int i = 0; i < f.k; ++i) d2 += (f.hi[i] - f.lo[i]) * (f.hi[i] - f.lo[i]);
  return std::sqrt(d2);
}

// Jacobian by central differences, no domain checks; callers that expose the
// operation validate the stencil themselves.
double jacobian_at(const VerticalMap& f, double t, std::span<const double> x, double h) {
  const int k = f.k, n = f.n;
  std::vector<double> xp(x.begin(), x.end()), xm(x.begin(), x.end());
  std::vector<double> d(static_cast<std::size_t>(n) * k);
  for (int j = 0; j < k; ++j) {
    xp[j] = x[j] + h;
    xm[j] = x[j] - h;
    const auto fp = f.eval(t, xp);
    const auto fm = f.eval(t, xm);
    for (int i = 0; i < n; ++i) d[i * k + j] = (fp[i] - fm[i]) / (2.0 * h);
    xp[j] = x[j];
    xm[j] = x[j];
  }
  double gram[9];
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      double s = 0;
      for (int i = 0; i < n; ++i) s += d[i * k + a] * d[i * k + b];
      gram[a * k + b] = s;
    }
  const double det = det_small(gram, k);
  return det > 0 ? std::sqrt(det) : 0.0;
}

double weighted_slice_integral(const PolyhedralChain& slice, const Weight& g, double t) {
  if (slice.simplices.empty()) return 0.0;
  const int k = slice.dim;
  double total = 0.0;
  std::vector<double> pt(slice.ambient);
  for (const auto& s : slice.simplices) {
    const double vol = simplex_volume(slice, s);
    double avg = 0.0;
    if (k == 0) {
      auto v = slice.vertex(s.verts[0]);
      avg = g ? g(t, v) : 1.0;
    } else if (k == 1) {
      auto a = slice.vertex(s.verts[0]);
      auto b = slice.vertex(s.verts[1]);
      for (int q = 0; q < 5; ++q) {
        const double u = Gauss5::node[q];
        for (int j = 0; j < slice.ambient; ++j) pt[j] = a[j] + u * (b[j] - a[j]);
        avg += Gauss5::weight[q] * (g ? g(t, pt) : 1.0);
      }
    } else if (k == 2) {
      auto a = slice.vertex(s.verts[0]);
      auto b = slice.vertex(s.verts[1]);
      auto c = slice.vertex(s.verts[2]);
      for (const auto& node : tri7_rule()) {
        const double l1 = node[0], l2 = node[1], l3 = 1.0 - l1 - l2;
        for (int j = 0; j < slice.ambient; ++j) pt[j] = l1 * a[j] + l2 * b[j] + l3 * c[j];
        avg += node[2] * (g ? g(t, pt) : 1.0);
      }
    } else {
      throw std::invalid_argument("slice integral: slice dimension > 2 unsupported");
    }
    total += static_cast<double>(s.mult) * vol * avg;
  }
  return total;
}

}  // namespace

PolyhedralChain VerticalMap::domain_chain(int res) const {
  if (res <= 0) res = 8;
  if (k == 1) return product_box_chain(t0, t1, lo[0], hi[0], 1, 0, res);
  if (k == 2) {
    // shifted product_box3 covers [lo,hi]^2 boxes with lo possibly nonzero
    PolyhedralChain c = product_box3_chain(t0, t1, hi[0] - lo[0], hi[1] - lo[1], res);
    for (int i = 0; i < c.vertex_count(); ++i) {
      double* v = c.vertices.data() + static_cast<std::size_t>(i) * c.ambient;
      v[1] += lo[0];
      v[2] += lo[1];
    }
    return c;
  }
  throw std::invalid_argument("VerticalMap: k must be 1 or 2");
}

PolyhedralChain VerticalMap::image_chain(int res) const {
  if (res <= 0) res = image_res;
  PolyhedralChain c(k + 1, n + 1, true);
  if (k == 1) {
    std::vector<std::vector<int>> grid(res + 1, std::vector<int>(res + 1));
    std::vector<double> p(n + 1), x(1);
    for (int i = 0; i <= res; ++i)
      for (int j = 0; j <= res; ++j) {
        const double t = t0 + (t1 - t0) * i / res;
        x[0] = lo[0] + (hi[0] - lo[0]) * j / res;
        const auto y = eval(t, x);
        p[0] = t;
        std::copy(y.begin(), y.end(), p.begin() + 1);
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
  if (k == 2) {
    const int m = res;
    std::vector<double> p(n + 1), x(2);
    for (int i = 0; i <= m; ++i)
      for (int j = 0; j <= m; ++j)
        for (int l = 0; l <= m; ++l) {
          const double t = t0 + (t1 - t0) * i / m;
          x[0] = lo[0] + (hi[0] - lo[0]) * j / m;
          x[1] = lo[1] + (hi[1] - lo[1]) * l / m;
          const auto y = eval(t, x);
          p[0] = t;
          std::copy(y.begin(), y.end(), p.begin() + 1);
          c.add_vertex(p);
        }
    auto vid = [&](int i, int j, int l) { return (i * (m + 1) + j) * (m + 1) + l; };
    static const int tets[6][4][3] = {
        {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {1, 1, 1}}, {{0, 0, 0}, {1, 0, 0}, {1, 0, 1}, {1, 1, 1}},
        {{0, 0, 0}, {0, 1, 0}, {1, 1, 0}, {1, 1, 1}}, {{0, 0, 0}, {0, 1, 0}, {0, 1, 1}, {1, 1, 1}},
        {{0, 0, 0}, {0, 0, 1}, {1, 0, 1}, {1, 1, 1}}, {{0, 0, 0}, {0, 0, 1}, {0, 1, 1}, {1, 1, 1}}};
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int l = 0; l < m; ++l)
          for (const auto& tet : tets) {
            int idx[4];
            for (int v = 0; v < 4; ++v)
              idx[v] = vid(i + tet[v][0], j + tet[v][1], l + tet[v][2]);
            c.add_simplex(idx);
          }
    return c;
  }
  throw std::invalid_argument("VerticalMap: k must be 1 or 2");
}

double horizontal_jacobian(const VerticalMap& f, const SpaceTimePoint& p, double h_fd) {
  if (p.spatial_dim() != f.k) throw std::invalid_argument("horizontal_jacobian: bad point");
  if (h_fd <= 0) h_fd = 1e-4 * domain_diameter(f);
  for (int i = 0; i < f.k; ++i)
    if (p.x[i] - h_fd < f.lo[i] || p.x[i] + h_fd > f.hi[i])
      throw std::invalid_argument("horizontal_jacobian: stencil leaves the domain");
  return jacobian_at(f, p.t, p.x, h_fd);
}

MeasureEstimate coarea_lhs_estimate(const PolyhedralChain& set, const Weight& g,
                                    const CoareaOptions& opts) {
  const double s = set.dim + 1;
  return par_content_weighted(set, s, {g}, opts.content)[0];
}

double coarea_lhs(const PolyhedralChain& set, const Weight& g, const CoareaOptions& opts) {
  return coarea_lhs_estimate(set, g, opts).extrapolated;
}

double coarea_rhs(const PolyhedralChain& set, const Weight& g, const CoareaOptions& opts) {
  if (set.simplices.empty()) return 0.0;
  const auto [tlo, thi] = set.time_extent();
  if (!(thi > tlo)) return 0.0;
  const auto f = [&](double t) {
    return weighted_slice_integral(slice_at_time(set, t), g, t);
  };
  return (kPi / 4.0) * simpson_integrate(f, tlo, thi, opts.time_nodes);
}

CoareaRatioReport coarea_ratio(const PolyhedralChain& set, const Weight& g,
                               const CoareaOptions& opts) {
  CoareaRatioReport r;
  r.lhs = coarea_lhs(set, g, opts);
  r.rhs = coarea_rhs(set, g, opts);
  r.degenerate = r.rhs == 0.0;
  r.ratio = r.degenerate ? 0.0 : r.lhs / r.rhs;
  return r;
}

std::vector<CoareaRatioReport> coarea_ratio_matrix(const PolyhedralChain& set,
                                                   const std::string& set_name,
                                                   const std::vector<NamedWeight>& weights,
                                                   const CoareaOptions& opts) {
  const double s = set.dim + 1;
  std::vector<Weight> fns;
  for (const auto& w : weights) fns.push_back(w.fn);
  const auto lhs = par_content_weighted(set, s, fns, opts.content);

  std::vector<double> rhs(weights.size(), 0.0);
  const auto [tlo, thi] = set.time_extent();
  if (thi > tlo) {
    int nt = opts.time_nodes;
    if (nt < 2) nt = 2;
    if (nt % 2) ++nt;
    const double h = (thi - tlo) / nt;
    for (int i = 0; i <= nt; ++i) {
      const double t = tlo + i * h;
      const double simpson_w = (i == 0 || i == nt) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      const auto slice = slice_at_time(set, t);
      for (std::size_t w = 0; w < weights.size(); ++w)
        rhs[w] += simpson_w * weighted_slice_integral(slice, weights[w].fn, t);
    }
    for (auto& v : rhs) v *= (kPi / 4.0) * h / 3.0;
  }

  std::vector<CoareaRatioReport> out;
  for (std::size_t w = 0; w < weights.size(); ++w) {
    CoareaRatioReport r;
    r.set_name = set_name;
    r.weight_name = weights[w].name;
    r.lhs = lhs[w].extrapolated;
    r.rhs = rhs[w];
    r.degenerate = r.rhs == 0.0;
    r.ratio = r.degenerate ? 0.0 : r.lhs / r.rhs;
    out.push_back(r);
  }
  return out;
}

double reference_content(int k, int n, const ContentOptions& opts) {
  std::ostringstream key;
  key << k << "|" << n << "|" << opts.rotations;
  for (double d : opts.ladder.empty() ? default_ladder() : opts.ladder) key << "|" << d;
  static std::map<std::string, double> cache;
  auto it = cache.find(key.str());
  if (it != cache.end()) return it->second;

  PolyhedralChain box;
  if (k == 1) {
    box = product_box_chain(0.0, 1.0, 0.0, 1.0, n, 0, 8);
  } else if (k == 2) {
    if (n < 2) throw std::invalid_argument("reference_content: need n >= 2 for k = 2");
    box = product_box3_chain(0.0, 1.0, 1.0, 1.0, 4);
    if (n > 2) {
      PolyhedralChain wide(3, n + 1, true);
      std::vector<double> p(n + 1, 0.0);
      for (int i = 0; i < box.vertex_count(); ++i) {
        auto v = box.vertex(i);
        std::copy(v.begin(), v.end(), p.begin());
        wide.add_vertex(p);
      }
      wide.simplices = box.simplices;
      box = std::move(wide);
    }
  } else {
    throw std::invalid_argument("reference_content: k must be 1 or 2");
  }
  // generic spatial offset so the box does not sit on grid planes
  for (int i = 0; i < box.vertex_count(); ++i) {
    double* v = box.vertices.data() + static_cast<std::size_t>(i) * box.ambient;
    v[0] += 0.06283185307;
    for (int j = 1; j < box.ambient; ++j) v[j] += 0.1394 + 0.0771 * j;
  }
  const double value = par_content(box, k + 2, opts).extrapolated;
  cache[key.str()] = value;
  return value;
}

CalibrationReport calibrate_c1(int k, int n, const CoareaOptions& opts) {
  CalibrationReport rep;
  rep.k = k;
  rep.ambient = n;
  const double shapes[5][2] = {{1.0, 1.0}, {0.5, 1.5}, {1.5, 0.7}, {0.8, 1.1}, {0.6, 0.8}};
  for (const auto& sh : shapes) {
    const double T = sh[0], L = sh[1];
    PolyhedralChain box;
    if (k == 1) {
      box = product_box_chain(0.0, T, 0.0, L, n, 0, 8);
    } else {
      box = product_box3_chain(0.0, T, L, L, 4);
    }
    for (int i = 0; i < box.vertex_count(); ++i) {
      double* v = box.vertices.data() + static_cast<std::size_t>(i) * box.ambient;
      v[0] += 0.0451;
      for (int j = 1; j < box.ambient; ++j) v[j] += 0.2113 + 0.0531 * j;
    }
    const double lhs = coarea_lhs(box, Weight{}, opts);
    const double rhs = coarea_rhs(box, Weight{}, opts);
    rep.boxes.push_back({T, L, lhs / rhs});
  }
  double mn = rep.boxes[0].c1, mx = mn, mean = 0.0;
  for (const auto& b : rep.boxes) {
    mn = std::min(mn, b.c1);
    mx = std::max(mx, b.c1);
    mean += b.c1;
  }
  mean /= rep.boxes.size();
  rep.c1 = mean;
  rep.spread = (mx - mn) / mean;
  return rep;
}

VolumeEstimateReport volume_estimate_check(const VerticalMap& f, const CoareaOptions& opts,
                                           double tol) {
  VolumeEstimateReport rep;
  rep.map_name = f.name;
  rep.m = f.lipschitz_horizontal;
  const double s = f.k + 2;
  const auto domain = f.domain_chain();
  const auto image = f.image_chain();
  const double dom = par_content(domain, s, opts.content).extrapolated /
                     reference_content(f.k, f.k, opts.content);
  const double img = par_content(image, s, opts.content).extrapolated /
                     reference_content(f.k, f.n, opts.content);
  rep.lhs = img;
  rep.rhs = std::max(std::pow(rep.m, f.k), std::pow(rep.m, f.k + 2)) * dom;
  rep.ratio = rep.rhs > 0 ? rep.lhs / rep.rhs : 0.0;
  rep.holds = rep.lhs <= rep.rhs * (1.0 + tol);
  return rep;
}

namespace {

void check_injective(const VerticalMap& f) {
  // sampled collision test on a uniform domain grid
  const int per_axis = f.k == 1 ? 33 : 13;
  std::vector<std::vector<double>> samples;
  std::vector<std::vector<double>> args;
  std::vector<double> x(f.k);
  const int kt = per_axis;
  for (int i = 0; i <= kt; ++i) {
    const double t = f.t0 + (f.t1 - f.t0) * i / kt;
    const int m = per_axis;
    std::vector<int> idx(f.k, 0);
    while (true) {
      for (int a = 0; a < f.k; ++a) x[a] = f.lo[a] + (f.hi[a] - f.lo[a]) * idx[a] / m;
      auto y = f.eval(t, x);
      std::vector<double> arg(1 + f.k);
      arg[0] = t;
      std::copy(x.begin(), x.end(), arg.begin() + 1);
      samples.push_back(y);
      args.push_back(arg);
      int a = 0;
      while (a < f.k && ++idx[a] > m) idx[a++] = 0;
      if (a == f.k) break;
    }
  }
  const double diam = domain_diameter(f);
  // same time slice only: vertical maps cannot collide across slices
  std::unordered_map<long long, std::vector<std::size_t>> buckets;
  const double cell = 1e-5 * std::max(diam, 1.0);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    long long key = static_cast<long long>(std::floor(args[i][0] / (1e-9 + (f.t1 - f.t0) / kt)));
    for (double v : samples[i]) key = key * 1315423911ll + static_cast<long long>(std::floor(v / cell));
    buckets[key].push_back(i);
  }
  for (const auto& [key, members] : buckets) {
    for (std::size_t a = 0; a < members.size(); ++a)
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        const std::size_t i = members[a], j = members[b];
        if (args[i][0] != args[j][0]) continue;
        double dy = 0, dx = 0;
        for (std::size_t c = 0; c < samples[i].size(); ++c) {
          const double d = samples[i][c] - samples[j][c];
          dy += d * d;
        }
        for (int c = 1; c <= f.k; ++c) {
          const double d = args[i][c] - args[j][c];
          dx += d * d;
        }
        if (dy < 1e-12 * diam * diam && dx > 1e-6 * diam * diam)
          throw std::invalid_argument("area_formula_check: map is not injective (" + f.name + ")");
      }
  }
}

}  // namespace

AreaFormulaReport area_formula_check(const VerticalMap& f, const Weight& g,
                                     const CoareaOptions& opts) {
  check_injective(f);
  AreaFormulaReport rep;
  rep.map_name = f.name;
  const double s = f.k + 2;
  const double h = 1e-4 * domain_diameter(f);
  Weight w_dom = [&](double t, std::span<const double> x) {
    const double jac = jacobian_at(f, t, x, h);
    if (!g) return jac;
    const auto y = f.eval(t, x);
    return jac * g(t, y);
  };
  const auto domain = f.domain_chain();
  const auto image = f.image_chain();
  rep.lhs = par_content_weighted(domain, s, {w_dom}, opts.content)[0].extrapolated /
            reference_content(f.k, f.k, opts.content);
  rep.rhs = par_content_weighted(image, s, {g}, opts.content)[0].extrapolated /
            reference_content(f.k, f.n, opts.content);
  rep.ratio = rep.rhs != 0 ? rep.lhs / rep.rhs : 0.0;
  return rep;
}

std::vector<VerticalMap> standard_map_registry() {
  std::vector<VerticalMap> maps;
  auto add = [&](VerticalMap m) { maps.push_back(std::move(m)); };

  VerticalMap identity;
  identity.name = "identity";
  identity.k = identity.n = 1;
  identity.lo = {0.0};
  identity.hi = {1.0};
  identity.eval = [](double, std::span<const double> x) { return std::vector<double>{x[0]}; };
  add(identity);

  VerticalMap embed;
  embed.name = "isometric_embedding";
  embed.k = 1;
  embed.n = 2;
  embed.lo = {0.0};
  embed.hi = {1.0};
  embed.eval = [](double, std::span<const double> x) {
    const double c = 0.86232120512438, s = 0.50636564110976;  // fixed rotation angle
    return std::vector<double>{c * x[0] + 0.2, s * x[0] + 0.1};
  };
  add(embed);

  VerticalMap dil;
  dil.name = "dilation_2x";
  dil.k = dil.n = 1;
  dil.lo = {0.0};
  dil.hi = {1.0};
  dil.lipschitz_full = dil.lipschitz_horizontal = 2.0;
  dil.eval = [](double, std::span<const double> x) { return std::vector<double>{2.0 * x[0]}; };
  add(dil);

  VerticalMap con;
  con.name = "contraction_half";
  con.k = con.n = 1;
  con.lo = {0.0};
  con.hi = {1.0};
  con.lipschitz_full = 1.0;
  con.lipschitz_horizontal = 0.5;
  con.eval = [](double, std::span<const double> x) { return std::vector<double>{0.5 * x[0]}; };
  add(con);

  VerticalMap shear;
  shear.name = "shear";
  shear.k = shear.n = 1;
  shear.lo = {0.0};
  shear.hi = {1.0};
  shear.lipschitz_full = 1.7;
  shear.lipschitz_horizontal = 1.0;
  shear.eval = [](double t, std::span<const double> x) {
    return std::vector<double>{x[0] + 0.7 * t};
  };
  add(shear);

  VerticalMap diag22;
  diag22.name = "diag_22";
  diag22.k = diag22.n = 2;
  diag22.lo = {0.0, 0.0};
  diag22.hi = {1.0, 1.0};
  diag22.lipschitz_full = diag22.lipschitz_horizontal = 2.0;
  diag22.image_res = 6;
  diag22.eval = [](double, std::span<const double> x) {
    return std::vector<double>{2.0 * x[0], 2.0 * x[1]};
  };
  add(diag22);

  VerticalMap rott;
  rott.name = "rotation_t";
  rott.k = rott.n = 2;
  rott.lo = {0.0, 0.0};
  rott.hi = {1.0, 1.0};
  rott.lipschitz_full = 2.5;
  rott.lipschitz_horizontal = 1.0;
  rott.image_res = 8;
  rott.eval = [](double t, std::span<const double> x) {
    const double c = std::cos(t), s = std::sin(t);
    return std::vector<double>{c * x[0] - s * x[1], s * x[0] + c * x[1]};
  };
  add(rott);

  VerticalMap graph;
  graph.name = "graph_tx";
  graph.k = 1;
  graph.n = 2;
  graph.lo = {0.0};
  graph.hi = {1.0};
  graph.lipschitz_full = 2.0;
  graph.lipschitz_horizontal = std::sqrt(2.0);
  graph.image_res = 96;
  graph.eval = [](double t, std::span<const double> x) {
    return std::vector<double>{x[0], t * x[0]};
  };
  add(graph);

  VerticalMap fold;
  fold.name = "fold";  // negative control, not injective
  fold.k = fold.n = 1;
  fold.lo = {0.0};
  fold.hi = {1.0};
  fold.injective = false;
  fold.eval = [](double, std::span<const double> x) {
    return std::vector<double>{std::fabs(x[0] - 0.5)};
  };
  add(fold);

  return maps;
}

PolyhedralChain analytic_shrinking_circle_track(double r0, int angular, int rings) {
  PolyhedralChain c(2, 3, true);
  std::vector<int> prev(angular), cur(angular);
  for (int ring = 0; ring <= rings; ++ring) {
    const double r = r0 * (1.0 - static_cast<double>(ring) / rings);
    const double t = (r0 * r0 - r * r) / 2.0;
    if (ring == rings) {
      // apex: a single point at extinction
      const double p[3] = {t, 0.0, 0.0};
      const int apex = c.add_vertex(p);
      for (int i = 0; i < angular; ++i) {
        const int j = (i + 1) % angular;
        const int tri[3] = {prev[i], prev[j], apex};
        c.add_simplex(tri);
      }
      break;
    }
    for (int i = 0; i < angular; ++i) {
      const double a = 2 * kPi * i / angular;
      const double p[3] = {t, r * std::cos(a), r * std::sin(a)};
      cur[i] = c.add_vertex(p);
    }
    if (ring > 0) {
      for (int i = 0; i < angular; ++i) {
        const int j = (i + 1) % angular;
        const int t1[3] = {prev[i], prev[j], cur[j]};
        const int t2[3] = {prev[i], cur[j], cur[i]};
        c.add_simplex(t1);
        c.add_simplex(t2);
      }
    }
    prev = cur;
  }
  return c;
}

namespace {

PolyhedralChain moving_segment_set(double tmax, double len, double vx, double vy, int res) {
  PolyhedralChain c(2, 3, true);
  std::vector<std::vector<int>> grid(res + 1, std::vector<int>(res + 1));
  for (int i = 0; i <= res; ++i)
    for (int j = 0; j <= res; ++j) {
      const double t = tmax * i / res;
      const double s = len * j / res;
      const double p[3] = {t, 0.171 + s + vx * t, 0.093 + vy * t};
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

std::vector<NamedSet> standard_coarea_sets() {
  std::vector<NamedSet> sets;
  sets.push_back({"product_box", moving_segment_set(1.0, 1.0, 0.0, 0.0, 8)});
  sets.push_back({"product_box_wide", moving_segment_set(0.5, 1.6, 0.0, 0.0, 8)});
  sets.push_back({"tilted_graph_perp", moving_segment_set(1.0, 1.0, 0.0, 0.7, 12)});
  sets.push_back({"tilted_graph_along", moving_segment_set(1.0, 1.0, 0.6, 0.0, 12)});
  {
    // image of the graph map (t, x, t x) as a chain
    auto maps = standard_map_registry();
    for (const auto& m : maps)
      if (m.name == "graph_tx") sets.push_back({"graph_tx_image", m.image_chain(64)});
  }
  sets.push_back({"shrinking_circle_track", analytic_shrinking_circle_track(1.0, 96, 96)});
  return sets;
}

std::vector<NamedWeight> standard_weights() {
  std::vector<NamedWeight> w;
  w.push_back({"one", Weight{}});
  w.push_back({"t", [](double t, std::span<const double>) { return t; }});
  w.push_back({"abs_x", [](double, std::span<const double> x) {
                 double s = 0;
                 for (double v : x) s += v * v;
                 return std::sqrt(s);
               }});
  return w;
}

}  // namespace pgmt
