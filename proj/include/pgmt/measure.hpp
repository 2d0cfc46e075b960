#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "pgmt/geometry.hpp"

namespace pgmt {

// One cell of the parabolic grid at scale w: time side h = w^2, spatial cube
// of side w. par_diam = max(sqrt(h), w*sqrt(n)).
struct ParabolicBox {
  double t0 = 0.0;
  double h = 0.0;
  std::vector<double> corner;  // spatial corner (size n)
  double w = 0.0;
  double par_diam = 0.0;
  std::int64_t mult = 1;  // max |multiplicity| among intersecting simplices
};

struct LadderEntry {
  double delta = 0.0;
  double value = 0.0;
};

struct MeasureEstimate {
  double s = 0.0;
  std::string convention;
  std::vector<LadderEntry> ladder;
  double extrapolated = 0.0;
};

void to_json(nlohmann::json& j, const MeasureEstimate& e);
std::string measure_estimate_csv(const MeasureEstimate& e);

using Weight = std::function<double(double t, std::span<const double> x)>;

struct ContentOptions {
  std::vector<double> ladder;  // strictly decreasing; empty -> default_ladder()
  // Number of spatial grid orientations averaged per rung. 0 requests the raw
  // anchored grid with no offsets; -1 picks 1 for n <= 1 and 8 otherwise.
  int rotations = -1;
};

// Dyadic ladder 2^-lo .. 2^-hi.
std::vector<double> dyadic_ladder(int lo = 3, int hi = 9);
std::vector<double> default_ladder();

// Every cell of the anchored parabolic grid (time step delta^2, space step
// delta) whose closed cell intersects a simplex of the set.
std::vector<ParabolicBox> par_grid_cover(const PolyhedralChain& set, double delta);

// Grid content Sum alpha(s) (par_diam/2)^s * mult over occupied cells, one
// value per ladder rung, averaged over stratified spatial grid orientations,
// with first-order Richardson extrapolation attached.
MeasureEstimate par_content(const PolyhedralChain& set, double s,
                            const ContentOptions& opts = {});

// Same ladder machinery with weights evaluated at (rotated-back) cell
// centers; entry i of the result integrates weights[i].
std::vector<MeasureEstimate> par_content_weighted(const PolyhedralChain& set, double s,
                                                  const std::vector<Weight>& weights,
                                                  const ContentOptions& opts = {});

// Exact section of a time-flagged chain with {time = t}: a (dim-1)-chain in
// R^n inheriting multiplicities. Simplices count when t_min <= t < t_max
// (closed at the chain's maximal time); t outside the extent gives an empty
// chain.
PolyhedralChain slice_at_time(const PolyhedralChain& track, double t);

}  // namespace pgmt
