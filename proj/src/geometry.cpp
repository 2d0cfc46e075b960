#include "pgmt/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "pgmt/numerics.hpp"

namespace pgmt {

double par_dist(const SpaceTimePoint& p, const SpaceTimePoint& q) {
  if (p.x.size() != q.x.size())
    throw std::invalid_argument("par_dist: ambient dimension mismatch");
  const double dt = std::sqrt(std::fabs(p.t - q.t));
  const double dx = euclid_dist(p.x, q.x);
  return std::max(dt, dx);
}

SpaceTimePoint apply_scaling(const ScalingMap& map, const SpaceTimePoint& p) {
  if (!(map.parameter > 0.0)) throw std::invalid_argument("scaling parameter must be positive");
  const double l = map.parameter;
  SpaceTimePoint out = p;
  switch (map.kind) {
    case ScalingKind::Parabolic:
      out.t = l * l * p.t;
      for (auto& v : out.x) v *= l;
      break;
    case ScalingKind::Euclidean:
      out.t = l * p.t;
      for (auto& v : out.x) v *= l;
      break;
    case ScalingKind::Cylindrical:
      out.t = l * p.t;
      break;
  }
  return out;
}

int PolyhedralChain::add_vertex(std::span<const double> coords) {
  if (static_cast<int>(coords.size()) != ambient)
    throw std::invalid_argument("add_vertex: wrong coordinate count");
  vertices.insert(vertices.end(), coords.begin(), coords.end());
  return vertex_count() - 1;
}

void PolyhedralChain::add_simplex(std::span<const int> idx, std::int64_t mult, int sign) {
  if (static_cast<int>(idx.size()) != dim + 1)
    throw std::invalid_argument("add_simplex: wrong vertex count");
  if (mult == 0) throw std::invalid_argument("add_simplex: zero multiplicity");
  if (sign != 1 && sign != -1) throw std::invalid_argument("add_simplex: sign must be +-1");
  Simplex s;
  for (int i = 0; i <= dim; ++i) {
    if (idx[i] < 0 || idx[i] >= vertex_count())
      throw std::invalid_argument("add_simplex: vertex index out of range");
    for (int j = 0; j < i; ++j)
      if (idx[i] == idx[j]) throw std::invalid_argument("add_simplex: repeated vertex");
    s.verts[i] = idx[i];
  }
  if (mult < 0) {
    mult = -mult;
    sign = -sign;
  }
  s.mult = mult;
  s.sign = static_cast<std::int8_t>(sign);
  if (dim > 0 && simplex_volume(*this, s) <= 0.0)
    throw std::invalid_argument("add_simplex: degenerate simplex");
  simplices.push_back(s);
}

std::pair<double, double> PolyhedralChain::time_extent() const {
  double lo = 0.0, hi = 0.0;
  bool first = true;
  for (const auto& s : simplices)
    for (int i = 0; i <= dim; ++i) {
      const double t = vertices[static_cast<std::size_t>(s.verts[i]) * ambient];
      if (first) {
        lo = hi = t;
        first = false;
      } else {
        lo = std::min(lo, t);
        hi = std::max(hi, t);
      }
    }
  return {lo, hi};
}

double simplex_volume(const PolyhedralChain& c, const Simplex& s) {
  const int k = c.dim;
  if (k == 0) return 1.0;
  double edges[3][4];
  const auto v0 = c.vertex(s.verts[0]);
  for (int i = 1; i <= k; ++i) {
    const auto vi = c.vertex(s.verts[i]);
    for (int j = 0; j < c.ambient; ++j) edges[i - 1][j] = vi[j] - v0[j];
  }
  double gram[9];
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      double d = 0.0;
      for (int a = 0; a < c.ambient; ++a) d += edges[i][a] * edges[j][a];
      gram[i * k + j] = d;
    }
  const double det = det_small(gram, k);
  if (det <= 0.0) return 0.0;
  double fact = 1.0;
  for (int i = 2; i <= k; ++i) fact *= i;
  return std::sqrt(det) / fact;
}

double chain_mass(const PolyhedralChain& c) {
  double m = 0.0;
  for (const auto& s : c.simplices) m += static_cast<double>(s.mult) * simplex_volume(c, s);
  return m;
}

namespace {

// Sorts a vertex tuple ascending and reports the permutation parity.
int canonical_sort(std::vector<int>& v) {
  int parity = 1;
  for (std::size_t i = 1; i < v.size(); ++i)
    for (std::size_t j = i; j > 0 && v[j - 1] > v[j]; --j) {
      std::swap(v[j - 1], v[j]);
      parity = -parity;
    }
  return parity;
}

struct TupleHash {
  std::size_t operator()(const std::vector<int>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (int x : v) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace

PolyhedralChain chain_boundary(const PolyhedralChain& c) {
  if (c.dim < 1) throw std::invalid_argument("chain_boundary: dim must be >= 1");
  PolyhedralChain out(c.dim - 1, c.ambient, c.time_flag);
  out.vertices = c.vertices;

  std::unordered_map<std::vector<int>, std::int64_t, TupleHash> acc;
  std::vector<int> face(c.dim);
  for (const auto& s : c.simplices) {
    const std::int64_t w = s.mult * s.sign;
    for (int drop = 0; drop <= c.dim; ++drop) {
      int m = 0;
      for (int i = 0; i <= c.dim; ++i)
        if (i != drop) face[m++] = s.verts[i];
      std::vector<int> key = face;
      const int parity = canonical_sort(key);
      const std::int64_t contrib = w * parity * ((drop % 2) ? -1 : 1);
      acc[key] += contrib;
    }
  }
  for (const auto& [key, net] : acc) {
    if (net == 0) continue;
    Simplex s;
    for (std::size_t i = 0; i < key.size(); ++i) s.verts[i] = key[i];
    s.mult = std::llabs(net);
    s.sign = static_cast<std::int8_t>(net > 0 ? 1 : -1);
    out.simplices.push_back(s);
  }
  std::sort(out.simplices.begin(), out.simplices.end(), [](const Simplex& a, const Simplex& b) {
    return std::lexicographical_compare(a.verts.begin(), a.verts.end(), b.verts.begin(),
                                        b.verts.end());
  });
  return out;
}

PolyhedralChain pushforward(const PolyhedralChain& c, const ScalingMap& map) {
  if (!(map.parameter > 0.0)) throw std::invalid_argument("scaling parameter must be positive");
  if (!c.time_flag && map.kind != ScalingKind::Euclidean)
    throw std::invalid_argument("pushforward: map needs a time coordinate");
  PolyhedralChain out = c;
  const double l = map.parameter;
  const int nv = c.vertex_count();
  for (int i = 0; i < nv; ++i) {
    double* v = out.vertices.data() + static_cast<std::size_t>(i) * c.ambient;
    switch (map.kind) {
      case ScalingKind::Parabolic:
        v[0] *= l * l;
        for (int j = 1; j < c.ambient; ++j) v[j] *= l;
        break;
      case ScalingKind::Euclidean:
        for (int j = 0; j < c.ambient; ++j) v[j] *= l;
        break;
      case ScalingKind::Cylindrical:
        v[0] *= l;
        break;
    }
  }
  return out;
}

PolyhedralChain chain_negate(PolyhedralChain c) {
  for (auto& s : c.simplices) s.sign = -s.sign;
  return c;
}

namespace {

struct CoordKey {
  std::vector<double> c;
  bool operator==(const CoordKey& o) const { return c == o.c; }
};

struct CoordKeyHash {
  std::size_t operator()(const CoordKey& k) const {
    std::size_t h = 14695981039346656037ull;
    for (double d : k.c) {
      std::uint64_t bits;
      std::memcpy(&bits, &d, sizeof(bits));
      h ^= bits;
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace

PolyhedralChain chain_add(const PolyhedralChain& a, const PolyhedralChain& b) {
  if (a.dim != b.dim || a.ambient != b.ambient || a.time_flag != b.time_flag)
    throw std::invalid_argument("chain_add: incompatible chains");
  PolyhedralChain out(a.dim, a.ambient, a.time_flag);
  std::unordered_map<CoordKey, int, CoordKeyHash> pool;
  auto intern = [&](std::span<const double> coords) {
    CoordKey key{{coords.begin(), coords.end()}};
    auto it = pool.find(key);
    if (it != pool.end()) return it->second;
    const int idx = out.add_vertex(coords);
    pool.emplace(std::move(key), idx);
    return idx;
  };
  std::unordered_map<std::vector<int>, std::int64_t, TupleHash> acc;
  auto fold = [&](const PolyhedralChain& c) {
    std::vector<int> key(c.dim + 1);
    for (const auto& s : c.simplices) {
      for (int i = 0; i <= c.dim; ++i) key[i] = intern(c.vertex(s.verts[i]));
      std::vector<int> canon = key;
      const int parity = canonical_sort(canon);
      acc[canon] += s.mult * s.sign * parity;
    }
  };
  fold(a);
  fold(b);
  for (const auto& [key, net] : acc) {
    if (net == 0) continue;
    Simplex s;
    for (std::size_t i = 0; i < key.size(); ++i) s.verts[i] = key[i];
    s.mult = std::llabs(net);
    s.sign = static_cast<std::int8_t>(net > 0 ? 1 : -1);
    out.simplices.push_back(s);
  }
  return out;
}

namespace {

// Clip helper shared by clip_time_slab: convex polytope described by the
// ordered vertex list of a simplex, cut by one or two time planes, then
// fan-triangulated back into simplices. Cut vertices along a shared edge are
// produced with identical arithmetic so neighbouring simplices agree bitwise.
struct ClipPool {
  PolyhedralChain* out;
  std::unordered_map<CoordKey, int, CoordKeyHash> map;
  int intern(std::span<const double> coords) {
    CoordKey key{{coords.begin(), coords.end()}};
    auto it = map.find(key);
    if (it != map.end()) return it->second;
    const int idx = out->add_vertex(coords);
    map.emplace(std::move(key), idx);
    return idx;
  }
};

std::vector<double> lerp_time(std::span<const double> a, std::span<const double> b, double t) {
  // Interpolates on the time coordinate; endpoint order is canonicalized by
  // the caller so shared edges produce bit-identical points.
  const double u = (t - a[0]) / (b[0] - a[0]);
  std::vector<double> p(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) p[j] = a[j] + u * (b[j] - a[j]);
  p[0] = t;
  return p;
}

}  // namespace

PolyhedralChain clip_time_slab(const PolyhedralChain& c, double t0, double t1) {
  if (!c.time_flag) throw std::invalid_argument("clip_time_slab: chain has no time coordinate");
  if (t1 < t0) throw std::invalid_argument("clip_time_slab: empty interval");
  PolyhedralChain out(c.dim, c.ambient, true);
  ClipPool pool{&out, {}};

  const int k = c.dim;
  // Vertices of the clipped polytope in barycentric-free form: points plus
  // original index when untouched (-1 for cut points).
  struct P {
    std::vector<double> coords;
    int orig;
  };
  std::vector<P> poly, next;
  for (const auto& s : c.simplices) {
    poly.clear();
    for (int i = 0; i <= k; ++i) {
      auto v = c.vertex(s.verts[i]);
      poly.push_back({{v.begin(), v.end()}, s.verts[i]});
    }
    // For k <= 2 the ordered list is a segment/triangle and half-space
    // clipping keeps it a convex polygon. k==3 tracks are not clipped here.
    if (k > 2) throw std::invalid_argument("clip_time_slab: dim > 2 not supported");
    auto clip = [&](double bound, int keep_sign) {
      next.clear();
      const std::size_t m = poly.size();
      for (std::size_t i = 0; i < m; ++i) {
        const P& a = poly[i];
        const P& b = poly[(i + 1) % m];
        const double fa = keep_sign * (a.coords[0] - bound);
        const double fb = keep_sign * (b.coords[0] - bound);
        if (fa >= 0) next.push_back(a);
        if ((fa >= 0) != (fb >= 0)) {
          // canonical edge direction for bit-stable shared cuts
          const bool swap_ab = a.orig >= 0 && b.orig >= 0 ? a.orig > b.orig
                                                          : a.coords > b.coords;
          auto p = swap_ab ? lerp_time(b.coords, a.coords, bound)
                           : lerp_time(a.coords, b.coords, bound);
          next.push_back({std::move(p), -1});
        }
      }
      poly.swap(next);
    };
    if (k == 1) {
      // segment: parametric clip
      P a = poly[0], b = poly[1];
      double ta = a.coords[0], tb = b.coords[0];
      if (std::max(ta, tb) < t0 || std::min(ta, tb) > t1) continue;
      auto clamp_pt = [&](const P& lo, const P& hi, double bound) {
        const bool swap_ab = lo.orig >= 0 && hi.orig >= 0 ? lo.orig > hi.orig
                                                          : lo.coords > hi.coords;
        return P{swap_ab ? lerp_time(hi.coords, lo.coords, bound)
                         : lerp_time(lo.coords, hi.coords, bound),
                 -1};
      };
      if (ta > tb) std::swap(a, b);
      if (a.coords[0] < t0) a = clamp_pt(a, b, t0);
      if (b.coords[0] > t1) b = clamp_pt(a, b, t1);
      poly = {a, b};
    } else {
      clip(t0, +1);
      if (poly.size() < 2) continue;
      clip(t1, -1);
    }
    if (static_cast<int>(poly.size()) < k + 1) continue;
    // fan-triangulate, preserving orientation of the source simplex
    std::vector<int> ids(poly.size());
    for (std::size_t i = 0; i < poly.size(); ++i)
      ids[i] = poly[i].orig >= 0 ? pool.intern(c.vertex(poly[i].orig))
                                 : pool.intern(poly[i].coords);
    for (std::size_t i = 1; i + 1 < poly.size() || (k == 1 && i == 1); ++i) {
      if (k == 1) {
        const int tri[2] = {ids[0], ids[1]};
        if (tri[0] != tri[1]) {
          Simplex ns;
          ns.verts[0] = tri[0];
          ns.verts[1] = tri[1];
          ns.mult = s.mult;
          ns.sign = s.sign;
          if (simplex_volume(out, ns) > 0.0) out.simplices.push_back(ns);
        }
        break;
      }
      const int tri[3] = {ids[0], ids[i], ids[i + 1]};
      if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) continue;
      Simplex ns;
      ns.verts[0] = tri[0];
      ns.verts[1] = tri[1];
      ns.verts[2] = tri[2];
      ns.mult = s.mult;
      ns.sign = s.sign;
      if (simplex_volume(out, ns) > 0.0) out.simplices.push_back(ns);
    }
  }
  return out;
}

PolyhedralChain drop_time(const PolyhedralChain& c) {
  if (!c.time_flag) throw std::invalid_argument("drop_time: chain has no time coordinate");
  PolyhedralChain out(c.dim, c.ambient - 1, false);
  ClipPool pool{&out, {}};
  std::unordered_map<std::vector<int>, std::int64_t, TupleHash> acc;
  std::vector<double> coords(c.ambient - 1);
  std::vector<int> ids(c.dim + 1);
  for (const auto& s : c.simplices) {
    bool degenerate = false;
    for (int i = 0; i <= c.dim; ++i) {
      auto v = c.vertex(s.verts[i]);
      std::copy(v.begin() + 1, v.end(), coords.begin());
      ids[i] = pool.intern(coords);
      for (int j = 0; j < i && !degenerate; ++j) degenerate = ids[j] == ids[i];
    }
    if (degenerate) continue;
    Simplex probe;
    for (int i = 0; i <= c.dim; ++i) probe.verts[i] = ids[i];
    if (c.dim > 0 && simplex_volume(out, probe) <= 0.0) continue;
    std::vector<int> canon = ids;
    const int parity = canonical_sort(canon);
    acc[canon] += s.mult * s.sign * parity;
  }
  for (const auto& [key, net] : acc) {
    if (net == 0) continue;
    Simplex s;
    for (std::size_t i = 0; i < key.size(); ++i) s.verts[i] = key[i];
    s.mult = std::llabs(net);
    s.sign = static_cast<std::int8_t>(net > 0 ? 1 : -1);
    out.simplices.push_back(s);
  }
  return out;
}

void to_json(nlohmann::json& j, const PolyhedralChain& c) {
  j = nlohmann::json::object();
  j["dim"] = c.dim;
  j["ambient"] = c.ambient;
  j["time_flag"] = c.time_flag;
  auto verts = nlohmann::json::array();
  for (int i = 0; i < c.vertex_count(); ++i) {
    auto v = c.vertex(i);
    verts.push_back(std::vector<double>(v.begin(), v.end()));
  }
  j["vertices"] = std::move(verts);
  auto simp = nlohmann::json::array();
  for (const auto& s : c.simplices) {
    nlohmann::json e;
    e["verts"] = std::vector<int>(s.verts.begin(), s.verts.begin() + c.dim + 1);
    e["mult"] = s.mult;
    e["sign"] = static_cast<int>(s.sign);
    simp.push_back(std::move(e));
  }
  j["simplices"] = std::move(simp);
}

void from_json(const nlohmann::json& j, PolyhedralChain& c) {
  c = PolyhedralChain(j.at("dim").get<int>(), j.at("ambient").get<int>(),
                      j.at("time_flag").get<bool>());
  for (const auto& v : j.at("vertices")) {
    const auto coords = v.get<std::vector<double>>();
    c.add_vertex(coords);
  }
  for (const auto& e : j.at("simplices")) {
    const auto idx = e.at("verts").get<std::vector<int>>();
    c.add_simplex(idx, e.at("mult").get<std::int64_t>(), e.at("sign").get<int>());
  }
}

PolyhedralChain segment_chain(const std::vector<double>& a, const std::vector<double>& b,
                              bool time_flag, std::int64_t mult) {
  PolyhedralChain c(1, static_cast<int>(a.size()), time_flag);
  const int i0 = c.add_vertex(a);
  const int i1 = c.add_vertex(b);
  const int idx[2] = {i0, i1};
  c.add_simplex(idx, mult);
  return c;
}

PolyhedralChain polyline_chain(const std::vector<std::vector<double>>& pts, bool closed,
                               bool time_flag) {
  if (pts.size() < 2) throw std::invalid_argument("polyline_chain: need at least two points");
  PolyhedralChain c(1, static_cast<int>(pts[0].size()), time_flag);
  std::vector<int> ids;
  for (const auto& p : pts) ids.push_back(c.add_vertex(p));
  const std::size_t m = pts.size();
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const int idx[2] = {ids[i], ids[i + 1]};
    c.add_simplex(idx);
  }
  if (closed) {
    const int idx[2] = {ids[m - 1], ids[0]};
    c.add_simplex(idx);
  }
  return c;
}

PolyhedralChain product_box_chain(double t0, double t1, double a, double b, int n, int axis,
                                  int res) {
  if (axis < 0 || axis >= n) throw std::invalid_argument("product_box_chain: bad axis");
  PolyhedralChain c(2, n + 1, true);
  std::vector<std::vector<int>> grid(res + 1, std::vector<int>(res + 1));
  std::vector<double> p(n + 1, 0.0);
  for (int i = 0; i <= res; ++i)
    for (int j = 0; j <= res; ++j) {
      p[0] = t0 + (t1 - t0) * i / res;
      p[1 + axis] = a + (b - a) * j / res;
      grid[i][j] = c.add_vertex(p);
    }
  for (int i = 0; i < res; ++i)
    for (int j = 0; j < res; ++j) {
      const int v00 = grid[i][j], v01 = grid[i][j + 1];
      const int v10 = grid[i + 1][j], v11 = grid[i + 1][j + 1];
      const int t1i[3] = {v00, v01, v11};
      const int t2i[3] = {v00, v11, v10};
      c.add_simplex(t1i);
      c.add_simplex(t2i);
    }
  return c;
}

PolyhedralChain product_box3_chain(double t0, double t1, double l1, double l2, int res) {
  PolyhedralChain c(3, 3, true);
  const int m = res;
  auto vid = [&](int i, int j, int k) { return (i * (m + 1) + j) * (m + 1) + k; };
  std::vector<double> p(3);
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j <= m; ++j)
      for (int k = 0; k <= m; ++k) {
        p[0] = t0 + (t1 - t0) * i / m;
        p[1] = l1 * j / m;
        p[2] = l2 * k / m;
        c.add_vertex(p);
      }
  // six tetrahedra per cube
  static const int tets[6][4][3] = {
      {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {1, 1, 1}}, {{0, 0, 0}, {1, 0, 0}, {1, 0, 1}, {1, 1, 1}},
      {{0, 0, 0}, {0, 1, 0}, {1, 1, 0}, {1, 1, 1}}, {{0, 0, 0}, {0, 1, 0}, {0, 1, 1}, {1, 1, 1}},
      {{0, 0, 0}, {0, 0, 1}, {1, 0, 1}, {1, 1, 1}}, {{0, 0, 0}, {0, 0, 1}, {0, 1, 1}, {1, 1, 1}}};
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (const auto& tet : tets) {
          int idx[4];
          for (int v = 0; v < 4; ++v)
            idx[v] = vid(i + tet[v][0], j + tet[v][1], k + tet[v][2]);
          c.add_simplex(idx);
        }
  return c;
}

PolyhedralChain spatial_square_chain(double t0, double side, int res) {
  PolyhedralChain c(2, 3, true);
  std::vector<std::vector<int>> grid(res + 1, std::vector<int>(res + 1));
  std::vector<double> p(3);
  for (int i = 0; i <= res; ++i)
    for (int j = 0; j <= res; ++j) {
      p[0] = t0;
      p[1] = side * i / res;
      p[2] = side * j / res;
      grid[i][j] = c.add_vertex(p);
    }
  for (int i = 0; i < res; ++i)
    for (int j = 0; j < res; ++j) {
      const int t1i[3] = {grid[i][j], grid[i][j + 1], grid[i + 1][j + 1]};
      const int t2i[3] = {grid[i][j], grid[i + 1][j + 1], grid[i + 1][j]};
      c.add_simplex(t1i);
      c.add_simplex(t2i);
    }
  return c;
}

}  // namespace pgmt
