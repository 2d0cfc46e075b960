#include "pgmt/measure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "pgmt/numerics.hpp"

namespace pgmt {

namespace {

constexpr double kTol = 1e-12;  // absolute tolerance on plane tests

struct Frame {
  std::vector<double> rot;  // n x n row major; empty means identity
  double toff = 0.0;
  std::vector<double> xoff;
};

double frac(double x) { return x - std::floor(x); }

// Stratified grid orientations with generic offsets. rotations == 0 gives the
// raw anchored grid used by par_grid_cover.
std::vector<Frame> make_frames(int n, int rotations, double delta) {
  std::vector<Frame> frames;
  if (rotations <= 0) {
    Frame f;
    f.xoff.assign(std::max(n, 0), 0.0);
    frames.push_back(std::move(f));
    return frames;
  }
  const double phi = 0.6180339887498949;
  for (int i = 0; i < rotations; ++i) {
    Frame f;
    f.toff = delta * delta * frac(0.5 + phi * (i + 1));
    f.xoff.resize(n);
    for (int j = 0; j < n; ++j)
      f.xoff[j] = delta * frac(0.30028310600077 + phi * phi * (i + 1) + 0.17541160919383 * j);
    if (n == 2 && rotations > 1) {
      const double th = (i + 0.5) * (kPi / 2.0) / rotations;
      f.rot = {std::cos(th), -std::sin(th), std::sin(th), std::cos(th)};
    } else if (n >= 3 && rotations > 1) {
      // seeded orthogonal frame (Gram-Schmidt of a Gaussian matrix)
      std::mt19937_64 gen(0x9176u + 7919u * static_cast<unsigned>(i));
      std::normal_distribution<double> nd;
      std::vector<double> m(n * n);
      for (auto& v : m) v = nd(gen);
      for (int r = 0; r < n; ++r) {
        for (int p = 0; p < r; ++p) {
          double d = 0;
          for (int c = 0; c < n; ++c) d += m[r * n + c] * m[p * n + c];
          for (int c = 0; c < n; ++c) m[r * n + c] -= d * m[p * n + c];
        }
        double nrm = 0;
        for (int c = 0; c < n; ++c) nrm += m[r * n + c] * m[r * n + c];
        nrm = std::sqrt(nrm);
        for (int c = 0; c < n; ++c) m[r * n + c] /= nrm;
      }
      f.rot = std::move(m);
    }
    frames.push_back(std::move(f));
  }
  return frames;
}

int resolve_rotations(int requested, int n) {
  if (requested >= 0) return requested;
  return n <= 1 ? 1 : 8;
}

std::uint64_t pack_key(const std::int64_t* idx, int n) {
  std::uint64_t key = 0;
  for (int j = 0; j < n; ++j) {
    const std::int64_t shifted = idx[j] + (1ll << 20);
    if (shifted < 0 || shifted >= (1ll << 21))
      throw std::runtime_error("par grid: coordinates out of supported range");
    key = (key << 21) | static_cast<std::uint64_t>(shifted);
  }
  return key;
}

void unpack_key(std::uint64_t key, int n, std::int64_t* idx) {
  for (int j = n - 1; j >= 0; --j) {
    idx[j] = static_cast<std::int64_t>(key & ((1ull << 21) - 1)) - (1ll << 20);
    key >>= 21;
  }
}

// Clips the convex polygon held in `pts` (flat, stride d) against
// coordinate `coord` {>=,<=} bound, with tolerance. Result goes to `out`.
void clip_poly_coord(const std::vector<double>& pts, int d, int coord, double bound,
                     int keep_sign, std::vector<double>& out) {
  out.clear();
  const int m = static_cast<int>(pts.size()) / d;
  for (int i = 0; i < m; ++i) {
    const double* a = pts.data() + i * d;
    const double* b = pts.data() + ((i + 1) % m) * d;
    const double fa = keep_sign * (a[coord] - bound) + kTol;
    const double fb = keep_sign * (b[coord] - bound) + kTol;
    if (fa >= 0) out.insert(out.end(), a, a + d);
    if ((fa >= 0) != (fb >= 0)) {
      const double u = (bound - a[coord]) / (b[coord] - a[coord]);
      for (int j = 0; j < d; ++j) out.push_back(a[j] + u * (b[j] - a[j]));
    }
  }
}

struct PolyBufs {
  std::vector<double> a, b;
};

// True when the triangle (3 x d coords) meets the product box
// [t_lo,t_hi] x prod_j [lo_j, hi_j].
bool triangle_meets_box(const double* tri, int d, double t_lo, double t_hi,
                        const double* lo, const double* hi, PolyBufs& bufs) {
  bufs.a.assign(tri, tri + 3 * d);
  clip_poly_coord(bufs.a, d, 0, t_lo, +1, bufs.b);
  if (bufs.b.empty()) return false;
  clip_poly_coord(bufs.b, d, 0, t_hi, -1, bufs.a);
  if (bufs.a.empty()) return false;
  for (int j = 1; j < d; ++j) {
    clip_poly_coord(bufs.a, d, j, lo[j - 1], +1, bufs.b);
    if (bufs.b.empty()) return false;
    clip_poly_coord(bufs.b, d, j, hi[j - 1], -1, bufs.a);
    if (bufs.a.empty()) return false;
  }
  return true;
}

// Barycentric membership of p in the k-simplex spanned by verts (k+1 x d).
bool point_in_simplex(const double* verts, int k, int d, const double* p) {
  double edges[3][4];
  for (int i = 1; i <= k; ++i)
    for (int j = 0; j < d; ++j) edges[i - 1][j] = verts[i * d + j] - verts[j];
  double rhs0[4];
  for (int j = 0; j < d; ++j) rhs0[j] = p[j] - verts[j];
  double gram[9], rhs[3];
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      double s = 0;
      for (int a = 0; a < d; ++a) s += edges[i][a] * edges[j][a];
      gram[i * k + j] = s;
    }
    double s = 0;
    for (int a = 0; a < d; ++a) s += edges[i][a] * rhs0[a];
    rhs[i] = s;
  }
  if (!solve_small(gram, rhs, k)) return false;
  double sum = 0;
  const double bary_tol = 1e-10;
  for (int i = 0; i < k; ++i) {
    if (rhs[i] < -bary_tol) return false;
    sum += rhs[i];
  }
  if (sum > 1.0 + bary_tol) return false;
  if (d > k) {  // point must also lie on the affine span
    double res2 = 0;
    for (int a = 0; a < d; ++a) {
      double r = rhs0[a];
      for (int i = 0; i < k; ++i) r -= rhs[i] * edges[i][a];
      res2 += r * r;
    }
    if (res2 > 1e-18) return false;
  }
  return true;
}

// Clip the parameter interval [u0,u1] of a + u (b - a) to coord in [lo, hi].
bool clip_param(double a, double b, double lo, double hi, double& u0, double& u1) {
  const double dir = b - a;
  if (std::fabs(dir) < 1e-300) return a >= lo && a <= hi;
  double ua = (lo - a) / dir, ub = (hi - a) / dir;
  if (ua > ub) std::swap(ua, ub);
  u0 = std::max(u0, ua);
  u1 = std::min(u1, ub);
  return u0 <= u1;
}

// Per-slab sweep over occupied cells of the parabolic grid at scale delta.
// sink(slab_index, spatial_cell_indices, max multiplicity) fires once per
// occupied cell.
template <class Sink>
void sweep_cells(const PolyhedralChain& set, double delta, const Frame& fr, Sink&& sink) {
  if (!set.time_flag) throw std::invalid_argument("parabolic grid: set has no time coordinate");
  if (!(delta > 0)) throw std::invalid_argument("parabolic grid: delta must be positive");
  const int d = set.ambient;
  const int n = d - 1;
  const int k = set.dim;
  if (k > 3) throw std::invalid_argument("parabolic grid: simplex dimension > 3 unsupported");
  if (n > 3) throw std::invalid_argument("parabolic grid: spatial dimension > 3 unsupported");
  const double h = delta * delta;
  if (set.simplices.empty()) return;

  // transformed vertex pool
  std::vector<double> tv(set.vertices.size());
  const int nv = set.vertex_count();
  for (int i = 0; i < nv; ++i) {
    const double* src = set.vertices.data() + static_cast<std::size_t>(i) * d;
    double* dst = tv.data() + static_cast<std::size_t>(i) * d;
    dst[0] = src[0] + fr.toff;
    if (fr.rot.empty()) {
      for (int j = 0; j < n; ++j) dst[1 + j] = src[1 + j] + fr.xoff[j];
    } else {
      for (int r = 0; r < n; ++r) {
        double acc = fr.xoff[r];
        for (int c = 0; c < n; ++c) acc += fr.rot[r * n + c] * src[1 + c];
        dst[1 + r] = acc;
      }
    }
  }

  struct Rec {
    double tmin, tmax;
    std::int32_t si;
  };
  std::vector<Rec> recs;
  recs.reserve(set.simplices.size());
  for (std::size_t si = 0; si < set.simplices.size(); ++si) {
    const auto& s = set.simplices[si];
    double tmin = std::numeric_limits<double>::infinity(), tmax = -tmin;
    for (int i = 0; i <= k; ++i) {
      const double t = tv[static_cast<std::size_t>(s.verts[i]) * d];
      tmin = std::min(tmin, t);
      tmax = std::max(tmax, t);
    }
    recs.push_back({tmin, tmax, static_cast<std::int32_t>(si)});
  }
  std::sort(recs.begin(), recs.end(), [](const Rec& a, const Rec& b) { return a.tmin < b.tmin; });

  std::unordered_map<std::uint64_t, std::int64_t> cellmap;
  cellmap.reserve(1024);
  std::vector<Rec> active;
  std::size_t next = 0;
  std::int64_t slab = static_cast<std::int64_t>(std::floor((recs[0].tmin - kTol) / h));
  PolyBufs bufs;
  std::vector<double> poly, poly2;
  std::int64_t clo[3], chi[3], cidx[3];
  double bb_lo[3], bb_hi[3], cell_lo[3], cell_hi[3];

  auto mark = [&](const std::int64_t* idx, std::int64_t mult) {
    auto [it, inserted] = cellmap.try_emplace(pack_key(idx, n), mult);
    if (!inserted && it->second < mult) it->second = mult;
  };

  while (next < recs.size() || !active.empty()) {
    const double t_lo = slab * h;
    const double t_hi = t_lo + h;
    while (next < recs.size() && recs[next].tmin <= t_hi + kTol) active.push_back(recs[next++]);
    std::erase_if(active, [&](const Rec& r) { return r.tmax < t_lo - kTol; });
    if (active.empty()) {
      if (next >= recs.size()) break;
      slab = static_cast<std::int64_t>(std::floor((recs[next].tmin - kTol) / h));
      continue;
    }
    cellmap.clear();
    for (const Rec& rec : active) {
      const auto& s = set.simplices[rec.si];
      const double* v[4];
      for (int i = 0; i <= k; ++i) v[i] = tv.data() + static_cast<std::size_t>(s.verts[i]) * d;
      const std::int64_t mult = s.mult;

      if (k == 0) {
        for (int j = 0; j < n; ++j) {
          clo[j] = static_cast<std::int64_t>(std::floor((v[0][1 + j] - kTol) / delta));
          chi[j] = static_cast<std::int64_t>(std::floor((v[0][1 + j] + kTol) / delta));
        }
        for (std::int64_t i0 = (n > 0 ? clo[0] : 0); i0 <= (n > 0 ? chi[0] : 0); ++i0)
          for (std::int64_t i1 = (n > 1 ? clo[1] : 0); i1 <= (n > 1 ? chi[1] : 0); ++i1)
            for (std::int64_t i2 = (n > 2 ? clo[2] : 0); i2 <= (n > 2 ? chi[2] : 0); ++i2) {
              cidx[0] = i0;
              cidx[1] = i1;
              cidx[2] = i2;
              mark(cidx, mult);
            }
        continue;
      }

      if (k == 1) {
        double u0 = 0.0, u1 = 1.0;
        if (!clip_param(v[0][0], v[1][0], t_lo - kTol, t_hi + kTol, u0, u1)) continue;
        for (int j = 0; j < n; ++j) {
          const double x0 = v[0][1 + j] + u0 * (v[1][1 + j] - v[0][1 + j]);
          const double x1 = v[0][1 + j] + u1 * (v[1][1 + j] - v[0][1 + j]);
          bb_lo[j] = std::min(x0, x1);
          bb_hi[j] = std::max(x0, x1);
          clo[j] = static_cast<std::int64_t>(std::floor((bb_lo[j] - kTol) / delta));
          chi[j] = static_cast<std::int64_t>(std::floor((bb_hi[j] + kTol) / delta));
        }
        for (std::int64_t i0 = (n > 0 ? clo[0] : 0); i0 <= (n > 0 ? chi[0] : 0); ++i0)
          for (std::int64_t i1 = (n > 1 ? clo[1] : 0); i1 <= (n > 1 ? chi[1] : 0); ++i1)
            for (std::int64_t i2 = (n > 2 ? clo[2] : 0); i2 <= (n > 2 ? chi[2] : 0); ++i2) {
              cidx[0] = i0;
              cidx[1] = i1;
              cidx[2] = i2;
              double w0 = u0, w1 = u1;
              bool ok = true;
              for (int j = 0; j < n && ok; ++j)
                ok = clip_param(v[0][1 + j], v[1][1 + j], cidx[j] * delta - kTol,
                                (cidx[j] + 1) * delta + kTol, w0, w1);
              if (ok) mark(cidx, mult);
            }
        continue;
      }

      if (k == 2) {
        poly.assign(v[0], v[0] + d);
        poly.insert(poly.end(), v[1], v[1] + d);
        poly.insert(poly.end(), v[2], v[2] + d);
        clip_poly_coord(poly, d, 0, t_lo, +1, poly2);
        if (poly2.empty()) continue;
        clip_poly_coord(poly2, d, 0, t_hi, -1, poly);
        if (poly.empty()) continue;
        const int m = static_cast<int>(poly.size()) / d;
        for (int j = 0; j < n; ++j) {
          double lo = poly[1 + j], hi = poly[1 + j];
          for (int i = 1; i < m; ++i) {
            lo = std::min(lo, poly[i * d + 1 + j]);
            hi = std::max(hi, poly[i * d + 1 + j]);
          }
          clo[j] = static_cast<std::int64_t>(std::floor((lo - kTol) / delta));
          chi[j] = static_cast<std::int64_t>(std::floor((hi + kTol) / delta));
        }
        std::vector<double>& base = poly;
        for (std::int64_t i0 = clo[0]; i0 <= chi[0]; ++i0)
          for (std::int64_t i1 = (n > 1 ? clo[1] : 0); i1 <= (n > 1 ? chi[1] : 0); ++i1)
            for (std::int64_t i2 = (n > 2 ? clo[2] : 0); i2 <= (n > 2 ? chi[2] : 0); ++i2) {
              cidx[0] = i0;
              cidx[1] = i1;
              cidx[2] = i2;
              bufs.a = base;
              bool ok = true;
              for (int j = 0; j < n && ok; ++j) {
                clip_poly_coord(bufs.a, d, 1 + j, cidx[j] * delta, +1, bufs.b);
                if (bufs.b.empty()) {
                  ok = false;
                  break;
                }
                clip_poly_coord(bufs.b, d, 1 + j, (cidx[j] + 1) * delta, -1, bufs.a);
                if (bufs.a.empty()) ok = false;
              }
              if (ok) mark(cidx, mult);
            }
        continue;
      }

      // k == 3: candidate bbox from vertices inside the slab plus edge
      // crossings of the slab planes, then a full box-tetrahedron test.
      {
        bool any = false;
        auto extend = [&](const double* p) {
          for (int j = 0; j < n; ++j) {
            if (!any) {
              bb_lo[j] = bb_hi[j] = p[1 + j];
            } else {
              bb_lo[j] = std::min(bb_lo[j], p[1 + j]);
              bb_hi[j] = std::max(bb_hi[j], p[1 + j]);
            }
          }
          any = true;
        };
        double tmp[4];
        for (int i = 0; i <= 3; ++i)
          if (v[i][0] >= t_lo - kTol && v[i][0] <= t_hi + kTol) extend(v[i]);
        for (int i = 0; i <= 3; ++i)
          for (int j = i + 1; j <= 3; ++j)
            for (double plane : {t_lo, t_hi}) {
              const double ta = v[i][0], tb = v[j][0];
              if ((ta - plane) * (tb - plane) <= 0 && ta != tb) {
                const double u = (plane - ta) / (tb - ta);
                if (u >= -kTol && u <= 1 + kTol) {
                  for (int a = 0; a < d; ++a) tmp[a] = v[i][a] + u * (v[j][a] - v[i][a]);
                  extend(tmp);
                }
              }
            }
        if (!any) continue;
        for (int j = 0; j < n; ++j) {
          clo[j] = static_cast<std::int64_t>(std::floor((bb_lo[j] - kTol) / delta));
          chi[j] = static_cast<std::int64_t>(std::floor((bb_hi[j] + kTol) / delta));
        }
        double tet[4 * 4];
        for (int i = 0; i <= 3; ++i)
          for (int a = 0; a < d; ++a) tet[i * d + a] = v[i][a];
        for (std::int64_t i0 = clo[0]; i0 <= chi[0]; ++i0)
          for (std::int64_t i1 = (n > 1 ? clo[1] : 0); i1 <= (n > 1 ? chi[1] : 0); ++i1)
            for (std::int64_t i2 = (n > 2 ? clo[2] : 0); i2 <= (n > 2 ? chi[2] : 0); ++i2) {
              cidx[0] = i0;
              cidx[1] = i1;
              cidx[2] = i2;
              for (int j = 0; j < n; ++j) {
                cell_lo[j] = cidx[j] * delta;
                cell_hi[j] = (cidx[j] + 1) * delta;
              }
              bool hit = false;
              for (int i = 0; i <= 3 && !hit; ++i) {
                bool inside = v[i][0] >= t_lo - kTol && v[i][0] <= t_hi + kTol;
                for (int j = 0; j < n && inside; ++j)
                  inside = v[i][1 + j] >= cell_lo[j] - kTol && v[i][1 + j] <= cell_hi[j] + kTol;
                hit = inside;
              }
              if (!hit) {
                // box corners against the tetrahedron
                double corner[4];
                const int corners = 1 << d;
                for (int b = 0; b < corners && !hit; ++b) {
                  corner[0] = (b & 1) ? t_hi : t_lo;
                  for (int j = 0; j < n; ++j)
                    corner[1 + j] = (b & (2 << j)) ? cell_hi[j] : cell_lo[j];
                  hit = point_in_simplex(tet, 3, d, corner);
                }
              }
              if (!hit) {
                double tri[3 * 4];
                for (int drop = 0; drop <= 3 && !hit; ++drop) {
                  int m = 0;
                  for (int i = 0; i <= 3; ++i) {
                    if (i == drop) continue;
                    for (int a = 0; a < d; ++a) tri[m * d + a] = v[i][a];
                    ++m;
                  }
                  hit = triangle_meets_box(tri, d, t_lo, t_hi, cell_lo, cell_hi, bufs);
                }
              }
              if (hit) mark(cidx, mult);
            }
      }
    }
    for (const auto& [key, mult] : cellmap) {
      unpack_key(key, n, cidx);
      sink(slab, cidx, mult);
    }
    ++slab;
  }
}

}  // namespace

std::vector<double> dyadic_ladder(int lo, int hi) {
  std::vector<double> out;
  for (int j = lo; j <= hi; ++j) out.push_back(std::ldexp(1.0, -j));
  return out;
}

std::vector<double> default_ladder() { return dyadic_ladder(3, 9); }

std::vector<ParabolicBox> par_grid_cover(const PolyhedralChain& set, double delta) {
  if (!(delta > 0)) throw std::invalid_argument("par_grid_cover: delta must be positive");
  const int n = set.ambient - 1;
  Frame raw;
  raw.xoff.assign(std::max(n, 0), 0.0);
  std::vector<ParabolicBox> boxes;
  const double h = delta * delta;
  const double pd = delta * std::max(1.0, std::sqrt(std::max(n, 0)));
  sweep_cells(set, delta, raw, [&](std::int64_t slab, const std::int64_t* idx, std::int64_t mult) {
    ParabolicBox b;
    b.t0 = slab * h;
    b.h = h;
    b.w = delta;
    b.par_diam = pd;
    b.mult = mult;
    b.corner.resize(n);
    for (int j = 0; j < n; ++j) b.corner[j] = idx[j] * delta;
    boxes.push_back(std::move(b));
  });
  return boxes;
}

std::vector<MeasureEstimate> par_content_weighted(const PolyhedralChain& set, double s,
                                                  const std::vector<Weight>& weights,
                                                  const ContentOptions& opts) {
  if (!set.time_flag)
    throw std::invalid_argument("par_content: set has no time coordinate");
  std::vector<double> ladder = opts.ladder.empty() ? default_ladder() : opts.ladder;
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    if (!(ladder[i] > 0)) throw std::invalid_argument("par_content: deltas must be positive");
    if (i && !(ladder[i] < ladder[i - 1]))
      throw std::invalid_argument("par_content: ladder must be strictly decreasing");
  }
  const int n = set.ambient - 1;
  const int rots = resolve_rotations(opts.rotations, n);
  const std::size_t nw = weights.size();

  std::vector<std::vector<double>> values(nw, std::vector<double>(ladder.size(), 0.0));
  std::vector<double> xc(std::max(n, 0));
  for (std::size_t li = 0; li < ladder.size(); ++li) {
    const double delta = ladder[li];
    const double h = delta * delta;
    const double pd = delta * std::max(1.0, std::sqrt(std::max(n, 0)));
    const double base = alpha_norm(s) * std::pow(pd / 2.0, s);
    const auto frames = make_frames(n, rots, delta);
    std::vector<double> acc(nw, 0.0);
    for (const Frame& fr : frames) {
      sweep_cells(set, delta, fr,
                  [&](std::int64_t slab, const std::int64_t* idx, std::int64_t mult) {
                    const double tc = (slab + 0.5) * h - fr.toff;
                    for (int j = 0; j < n; ++j) {
                      const double cj = (idx[j] + 0.5) * delta - fr.xoff[j];
                      xc[j] = cj;
                    }
                    if (!fr.rot.empty()) {
                      double tmpv[3];
                      for (int j = 0; j < n; ++j) {
                        double v = 0;
                        for (int r = 0; r < n; ++r)
                          v += fr.rot[r * n + j] * ((idx[r] + 0.5) * delta - fr.xoff[r]);
                        tmpv[j] = v;
                      }
                      for (int j = 0; j < n; ++j) xc[j] = tmpv[j];
                    }
                    const double contrib = base * static_cast<double>(mult);
                    for (std::size_t w = 0; w < nw; ++w)
                      acc[w] += weights[w] ? contrib * weights[w](tc, xc) : contrib;
                  });
    }
    for (std::size_t w = 0; w < nw; ++w) values[w][li] = acc[w] / frames.size();
  }

  std::ostringstream conv;
  conv << "alpha(s)*(par_diam/2)^s over occupied dyadic parabolic grid cells";
  if (rots > 1) conv << ", stratified spatial rotation average (R=" << rots << ")";
  std::vector<MeasureEstimate> out(nw);
  for (std::size_t w = 0; w < nw; ++w) {
    out[w].s = s;
    out[w].convention = conv.str();
    for (std::size_t li = 0; li < ladder.size(); ++li)
      out[w].ladder.push_back({ladder[li], values[w][li]});
    out[w].extrapolated = extrapolate_first_order(ladder, values[w]);
  }
  return out;
}

MeasureEstimate par_content(const PolyhedralChain& set, double s, const ContentOptions& opts) {
  std::vector<Weight> unit(1);  // null weight integrates 1
  return par_content_weighted(set, s, unit, opts)[0];
}

void to_json(nlohmann::json& j, const MeasureEstimate& e) {
  j = nlohmann::json::object();
  j["s"] = e.s;
  j["convention"] = e.convention;
  auto ladder = nlohmann::json::array();
  for (const auto& entry : e.ladder)
    ladder.push_back(nlohmann::json{{"delta", entry.delta}, {"value", entry.value}});
  j["ladder"] = std::move(ladder);
  j["extrapolated"] = e.extrapolated;
}

std::string measure_estimate_csv(const MeasureEstimate& e) {
  std::ostringstream os;
  os.precision(17);
  os << "delta,value\n";
  for (const auto& entry : e.ladder) os << entry.delta << "," << entry.value << "\n";
  return os.str();
}

PolyhedralChain slice_at_time(const PolyhedralChain& track, double t) {
  if (!track.time_flag) throw std::invalid_argument("slice_at_time: no time coordinate");
  if (track.dim < 1) throw std::invalid_argument("slice_at_time: dim must be >= 1");
  const int d = track.ambient;
  const int k = track.dim;
  PolyhedralChain out(k - 1, d - 1, false);
  if (track.simplices.empty()) return out;
  const auto [global_lo, global_hi] = track.time_extent();
  if (t < global_lo || t > global_hi) return out;
  const bool at_top = t == global_hi;

  std::unordered_map<std::uint64_t, int> pool;
  auto intern = [&](const double* p) {
    // hash on exact bit patterns of the spatial coordinates
    std::uint64_t hsh = 1469598103934665603ull;
    for (int j = 1; j < d; ++j) {
      std::uint64_t bits;
      std::memcpy(&bits, &p[j], sizeof(bits));
      hsh ^= bits;
      hsh *= 1099511628211ull;
    }
    auto it = pool.find(hsh);
    if (it != pool.end()) {
      const double* q = out.vertices.data() + static_cast<std::size_t>(it->second) * (d - 1);
      bool same = true;
      for (int j = 1; j < d && same; ++j) same = q[j - 1] == p[j];
      if (same) return it->second;
    }
    std::vector<double> coords(p + 1, p + d);
    const int idx = out.add_vertex(coords);
    pool[hsh] = idx;
    return idx;
  };

  std::vector<double> cut;
  for (const auto& s : track.simplices) {
    const double* v[4];
    double tmin = std::numeric_limits<double>::infinity(), tmax = -tmin;
    for (int i = 0; i <= k; ++i) {
      v[i] = track.vertices.data() + static_cast<std::size_t>(s.verts[i]) * d;
      tmin = std::min(tmin, v[i][0]);
      tmax = std::max(tmax, v[i][0]);
    }
    const bool crosses = tmin <= t && t < tmax;
    const bool top_face = at_top && tmax == t && tmin < t;
    if (!crosses && !top_face) continue;

    // collect section points: vertices at t plus edge crossings
    cut.clear();
    auto push_point = [&](const double* p) { cut.insert(cut.end(), p, p + d); };
    for (int i = 0; i <= k; ++i)
      if (v[i][0] == t) push_point(v[i]);
    double tmp[4];
    for (int i = 0; i <= k; ++i)
      for (int j = i + 1; j <= k; ++j) {
        const double ta = v[i][0], tb = v[j][0];
        if ((ta < t && tb > t) || (tb < t && ta > t)) {
          const double* a = v[i];
          const double* b = v[j];
          if (s.verts[j] < s.verts[i]) std::swap(a, b);  // bit-stable shared cuts
          const double u = (t - a[0]) / (b[0] - a[0]);
          for (int c = 0; c < d; ++c) tmp[c] = a[c] + u * (b[c] - a[c]);
          push_point(tmp);
        }
      }
    const int m = static_cast<int>(cut.size()) / d;
    if (m < k) continue;  // single-point contact of a triangle, etc.

    auto emit = [&](const int* ids, int count) {
      Simplex ns;
      bool dup = false;
      for (int i = 0; i < count; ++i) {
        ns.verts[i] = ids[i];
        for (int j = 0; j < i; ++j) dup |= ids[i] == ids[j];
      }
      if (dup) return;
      ns.mult = s.mult;
      ns.sign = s.sign;
      if (out.dim > 0 && simplex_volume(out, ns) <= 0.0) return;
      out.simplices.push_back(ns);
    };

    if (k == 1) {
      const int id = intern(cut.data());
      emit(&id, 1);
    } else if (k == 2) {
      int ids[2] = {intern(cut.data()), intern(cut.data() + d)};
      emit(ids, 2);
    } else {
      // tetrahedron: 3 or 4 section points; 4 points form a quadrilateral
      // whose corners are ordered so consecutive ones share a face
      if (m == 3) {
        int ids[3] = {intern(cut.data()), intern(cut.data() + d), intern(cut.data() + 2 * d)};
        emit(ids, 3);
      } else if (m >= 4) {
        // classify vertices to order the quad p-r, p-s, q-s, q-r
        int below[4], above[4], nb = 0, na = 0;
        for (int i = 0; i <= k; ++i) {
          if (v[i][0] < t) below[nb++] = i;
          else if (v[i][0] > t) above[na++] = i;
        }
        if (nb == 2 && na == 2) {
          auto cross = [&](int i, int j) {
            const double* a = v[i];
            const double* b = v[j];
            if (s.verts[j] < s.verts[i]) std::swap(a, b);
            const double u = (t - a[0]) / (b[0] - a[0]);
            static thread_local double buf[4];
            for (int c = 0; c < d; ++c) buf[c] = a[c] + u * (b[c] - a[c]);
            return intern(buf);
          };
          const int q0 = cross(below[0], above[0]);
          const int q1 = cross(below[0], above[1]);
          const int q2 = cross(below[1], above[1]);
          const int q3 = cross(below[1], above[0]);
          const int tri1[3] = {q0, q1, q2};
          const int tri2[3] = {q0, q2, q3};
          emit(tri1, 3);
          emit(tri2, 3);
        }
      }
    }
  }
  return out;
}

}  // namespace pgmt
