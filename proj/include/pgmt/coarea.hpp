#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "pgmt/geometry.hpp"
#include "pgmt/measure.hpp"

namespace pgmt {

// Time-preserving Lipschitz map F : R^{1,k} -> R^{1,n} over a product box
// domain, with Euclidean Lipschitz constant M and slice-wise constant m.
struct VerticalMap {
  std::string name;
  int k = 1;
  int n = 1;
  double t0 = 0.0, t1 = 1.0;
  std::vector<double> lo, hi;  // spatial box, size k
  // evaluator returns the spatial image; time component is t by construction
  std::function<std::vector<double>(double t, std::span<const double> x)> eval;
  double lipschitz_full = 1.0;
  double lipschitz_horizontal = 1.0;
  bool injective = true;
  int image_res = 64;  // tessellation resolution of the image chain

  PolyhedralChain domain_chain(int res = 0) const;
  PolyhedralChain image_chain(int res = 0) const;
};

// Jacobian sqrt(det(D^T D)) of the fixed-time restriction, central finite
// differences on the spatial coordinates. Throws when the stencil would
// leave the domain box.
double horizontal_jacobian(const VerticalMap& f, const SpaceTimePoint& p, double h_fd = -1.0);

struct CoareaOptions {
  ContentOptions content{dyadic_ladder(3, 6), -1};
  int time_nodes = 800;  // composite Simpson resolution for the slice route
};

// Weighted parabolic grid content of the set at s = dim + 1.
MeasureEstimate coarea_lhs_estimate(const PolyhedralChain& set, const Weight& g,
                                    const CoareaOptions& opts = {});
double coarea_lhs(const PolyhedralChain& set, const Weight& g, const CoareaOptions& opts = {});

// (pi/4) * integral over t of the weighted Euclidean slice mass, composite
// Simpson in time with exact polynomial quadrature on slices.
double coarea_rhs(const PolyhedralChain& set, const Weight& g, const CoareaOptions& opts = {});

struct CoareaRatioReport {
  std::string set_name, weight_name;
  double lhs = 0.0, rhs = 0.0, ratio = 0.0;
  bool degenerate = false;  // rhs == 0 (spatial set)
};

CoareaRatioReport coarea_ratio(const PolyhedralChain& set, const Weight& g,
                               const CoareaOptions& opts = {});

struct NamedWeight {
  std::string name;
  Weight fn;
};

// Ratio reports for a whole weight family in one grid sweep; slices are
// shared across weights on the Euclidean side.
std::vector<CoareaRatioReport> coarea_ratio_matrix(const PolyhedralChain& set,
                                                   const std::string& set_name,
                                                   const std::vector<NamedWeight>& weights,
                                                   const CoareaOptions& opts = {});

// Extrapolated content of the unit reference box [0,1] x [0,1]^k embedded
// with a generic offset in R^{1,n}; cached per (k, n, ladder, rotations).
// Contents divided by this value are comparable across ambients.
double reference_content(int k, int n, const ContentOptions& opts);

struct CalibrationBox {
  double T = 0.0, L = 0.0;
  double c1 = 0.0;
};

struct CalibrationReport {
  int k = 1, ambient = 1;
  std::vector<CalibrationBox> boxes;
  double c1 = 0.0;      // mean of per-box ratios
  double spread = 0.0;  // (max - min) / mean
};

// Empirical co-area constant from product boxes embedded in R^{1,n}.
CalibrationReport calibrate_c1(int k, int n, const CoareaOptions& opts = {});

struct VolumeEstimateReport {
  std::string map_name;
  double lhs = 0.0, rhs = 0.0, ratio = 0.0;
  double m = 0.0;
  bool holds = false;
};

// H_par(F(A)) <= max(m^k, m^(k+2)) H_par(A), both sides in calibrated units.
VolumeEstimateReport volume_estimate_check(const VerticalMap& f, const CoareaOptions& opts = {},
                                           double tol = 0.05);

struct AreaFormulaReport {
  std::string map_name;
  double lhs = 0.0, rhs = 0.0, ratio = 0.0;
};

// Integral of (J^h F)(g o F) over the domain against the weighted content of
// the image; ratio is 1 when the horizontal area formula holds. Throws when
// the sampled collision test detects non-injectivity.
AreaFormulaReport area_formula_check(const VerticalMap& f, const Weight& g,
                                     const CoareaOptions& opts = {});

// Named maps used by the suites and the CLI registry.
std::vector<VerticalMap> standard_map_registry();

// Ruled space-time track of a circle shrinking by curvature, r(t) =
// sqrt(r0^2 - 2 t), sampled uniformly in radius; an exact-oracle test set.
PolyhedralChain analytic_shrinking_circle_track(double r0, int angular = 96, int rings = 96);

struct NamedSet {
  std::string name;
  PolyhedralChain chain;
};

// Test sets for the co-area constancy suite, all with 1-dimensional slices
// embedded in R^{1,2}.
std::vector<NamedSet> standard_coarea_sets();

std::vector<NamedWeight> standard_weights();

}  // namespace pgmt
