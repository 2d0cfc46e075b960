#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace pgmt {

// A point (t, x) of R^{1,n}; t is the time coordinate, x the spatial part.
struct SpaceTimePoint {
  double t = 0.0;
  std::vector<double> x;

  SpaceTimePoint() = default;
  SpaceTimePoint(double t_, std::vector<double> x_) : t(t_), x(std::move(x_)) {}
  int spatial_dim() const { return static_cast<int>(x.size()); }
};

// max(sqrt|t-s|, |x-y|); throws on mismatched spatial dimension.
double par_dist(const SpaceTimePoint& p, const SpaceTimePoint& q);

enum class ScalingKind {
  Parabolic,    // (t,x) -> (l^2 t, l x)
  Euclidean,    // (t,x) -> (l t, l x)
  Cylindrical,  // (z,x) -> (l z, x)
};

struct ScalingMap {
  ScalingKind kind = ScalingKind::Parabolic;
  double parameter = 1.0;
};

SpaceTimePoint apply_scaling(const ScalingMap& map, const SpaceTimePoint& p);

struct Simplex {
  std::array<std::int32_t, 4> verts{};  // first dim+1 entries are used
  std::int64_t mult = 1;                // positive magnitude
  std::int8_t sign = 1;                 // orientation, +1 or -1
};

// Oriented simplicial chain with integer multiplicities. Vertices live in a
// shared indexed pool; when time_flag is set, coordinate 0 is the time
// coordinate and the chain sits in R^{1,ambient-1}.
struct PolyhedralChain {
  int dim = 0;
  int ambient = 0;
  bool time_flag = false;
  std::vector<double> vertices;  // vertex_count * ambient, row major
  std::vector<Simplex> simplices;

  PolyhedralChain() = default;
  PolyhedralChain(int dim_, int ambient_, bool time_flag_)
      : dim(dim_), ambient(ambient_), time_flag(time_flag_) {}

  int vertex_count() const { return ambient ? static_cast<int>(vertices.size()) / ambient : 0; }
  std::span<const double> vertex(int i) const {
    return {vertices.data() + static_cast<std::size_t>(i) * ambient,
            static_cast<std::size_t>(ambient)};
  }
  int add_vertex(std::span<const double> coords);
  // Throws on repeated vertex indices or an exactly degenerate simplex.
  void add_simplex(std::span<const int> idx, std::int64_t mult = 1, int sign = 1);
  bool empty() const { return simplices.empty(); }
  int spatial_dim() const { return time_flag ? ambient - 1 : ambient; }
  // Min/max of coordinate 0 over vertices referenced by simplices.
  std::pair<double, double> time_extent() const;
};

double simplex_volume(const PolyhedralChain& c, const Simplex& s);

// Sum over simplices of |mult| * Euclidean dim-volume (a 0-simplex counts 1).
double chain_mass(const PolyhedralChain& c);

// Simplicial boundary with orientation-induced signs; opposite faces cancel
// exactly through integer arithmetic on canonically sorted vertex tuples.
PolyhedralChain chain_boundary(const PolyhedralChain& c);

PolyhedralChain pushforward(const PolyhedralChain& c, const ScalingMap& map);

PolyhedralChain chain_negate(PolyhedralChain c);

// Formal sum a + b. Vertex pools are merged by exact coordinates and
// coinciding simplices with opposite orientations cancel.
PolyhedralChain chain_add(const PolyhedralChain& a, const PolyhedralChain& b);

// Restriction of a time-flagged chain to the slab {t0 <= t <= t1}; clipped
// polytopes are re-triangulated, shared cut vertices are deduplicated.
PolyhedralChain clip_time_slab(const PolyhedralChain& c, double t0, double t1);

// Forget the time coordinate; returns a chain in R^n. Exactly degenerate
// images are dropped. Orientation-paired duplicates cancel when exact.
PolyhedralChain drop_time(const PolyhedralChain& c);

void to_json(nlohmann::json& j, const PolyhedralChain& c);
void from_json(const nlohmann::json& j, PolyhedralChain& c);

// Builders used throughout the test suites.
PolyhedralChain segment_chain(const std::vector<double>& a, const std::vector<double>& b,
                              bool time_flag, std::int64_t mult = 1);
PolyhedralChain polyline_chain(const std::vector<std::vector<double>>& pts, bool closed,
                               bool time_flag);
// [t0,t1] x [a,b] e_axis product rectangle in R^{1,n}, two triangles per cell.
PolyhedralChain product_box_chain(double t0, double t1, double a, double b, int n, int axis,
                                  int res = 8);
// [t0,t1] x [0,l1] x [0,l2] box in R^{1,2}, tessellated into tetrahedra.
PolyhedralChain product_box3_chain(double t0, double t1, double l1, double l2, int res = 4);
// Fixed-time unit square {t0} x [0,s]^2 in R^{1,2}.
PolyhedralChain spatial_square_chain(double t0, double side, int res = 8);

}  // namespace pgmt
