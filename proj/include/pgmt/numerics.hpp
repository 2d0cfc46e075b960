#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace pgmt {

inline constexpr double kPi = 3.14159265358979323846;

// Volume of the unit ball of dimension s (real s), pi^{s/2} / Gamma(s/2 + 1).
// Used as the Hausdorff normalization alpha(s); alpha(1)=2, alpha(2)=pi.
inline double alpha_norm(double s) {
  return std::pow(kPi, s / 2.0) / std::tgamma(s / 2.0 + 1.0);
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  double r = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
  return r;
}

inline double dist2(std::span<const double> a, std::span<const double> b) {
  double r = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    r += d * d;
  }
  return r;
}

inline double euclid_dist(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(dist2(a, b));
}

// Gaussian elimination with partial pivoting for tiny systems (n <= 4).
// Returns false when the matrix is singular to working precision.
inline bool solve_small(double* a, double* b, int n) {
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::fabs(a[r * n + c]) > std::fabs(a[piv * n + c])) piv = r;
    if (std::fabs(a[piv * n + c]) < 1e-14) return false;
    if (piv != c) {
      for (int j = 0; j < n; ++j) std::swap(a[c * n + j], a[piv * n + j]);
      std::swap(b[c], b[piv]);
    }
    for (int r = c + 1; r < n; ++r) {
      const double f = a[r * n + c] / a[c * n + c];
      for (int j = c; j < n; ++j) a[r * n + j] -= f * a[c * n + j];
      b[r] -= f * b[c];
    }
  }
  for (int r = n - 1; r >= 0; --r) {
    double s = b[r];
    for (int j = r + 1; j < n; ++j) s -= a[r * n + j] * b[j];
    b[r] = s / a[r * n + r];
  }
  return true;
}

// Determinant of a tiny dense matrix, destroys the input.
inline double det_small(double* a, int n) {
  double det = 1.0;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::fabs(a[r * n + c]) > std::fabs(a[piv * n + c])) piv = r;
    if (a[piv * n + c] == 0.0) return 0.0;
    if (piv != c) {
      for (int j = 0; j < n; ++j) std::swap(a[c * n + j], a[piv * n + j]);
      det = -det;
    }
    det *= a[c * n + c];
    for (int r = c + 1; r < n; ++r) {
      const double f = a[r * n + c] / a[c * n + c];
      for (int j = c; j < n; ++j) a[r * n + j] -= f * a[c * n + j];
    }
  }
  return det;
}

// 5-point Gauss-Legendre rule on [0,1].
struct Gauss5 {
  static constexpr std::array<double, 5> node = {
      0.5 - 0.45308992296933199640 /* (1+x4)/2 shifted below */,
      0.5 - 0.26923465505284154552,
      0.5,
      0.5 + 0.26923465505284154552,
      0.5 + 0.45308992296933199640};
  static constexpr std::array<double, 5> weight = {
      0.11846344252809454376, 0.23931433524968323402, 0.28444444444444444444,
      0.23931433524968323402, 0.11846344252809454376};
};

template <class F>
double gauss5_integrate(const F& f, double a, double b) {
  double s = 0.0;
  for (int i = 0; i < 5; ++i) s += Gauss5::weight[i] * f(a + (b - a) * Gauss5::node[i]);
  return s * (b - a);
}

// 7-point symmetric triangle rule, exact for polynomials of degree 5.
// Entries are (l1, l2, weight); l3 = 1 - l1 - l2, weights sum to 1.
inline const std::array<std::array<double, 3>, 7>& tri7_rule() {
  static const std::array<std::array<double, 3>, 7> r = {{
      {1.0 / 3.0, 1.0 / 3.0, 0.225},
      {0.05971587178976982, 0.47014206410511509, 0.13239415278850618},
      {0.47014206410511509, 0.05971587178976982, 0.13239415278850618},
      {0.47014206410511509, 0.47014206410511509, 0.13239415278850618},
      {0.79742698535308732, 0.10128650732345634, 0.12593918054482715},
      {0.10128650732345634, 0.79742698535308732, 0.12593918054482715},
      {0.10128650732345634, 0.10128650732345634, 0.12593918054482715},
  }};
  return r;
}

template <class F>
double simpson_integrate(const F& f, double a, double b, int n) {
  if (b <= a) return 0.0;
  if (n < 2) n = 2;
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

// Richardson extrapolation assuming first-order convergence in delta,
// anchored at the two finest rungs.
inline double extrapolate_first_order(std::span<const double> deltas,
                                      std::span<const double> values) {
  const std::size_t m = values.size();
  if (m == 0) throw std::invalid_argument("empty ladder");
  if (m == 1) return values[0];
  const double d1 = deltas[m - 2], d2 = deltas[m - 1];
  const double v1 = values[m - 2], v2 = values[m - 1];
  return v2 + (v2 - v1) * d2 / (d1 - d2);
}

}  // namespace pgmt
