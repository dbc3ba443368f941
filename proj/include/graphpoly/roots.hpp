#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <sstream>
#include <vector>

#include <Eigen/Dense>

#include "graphpoly/errors.hpp"
#include "graphpoly/numeric.hpp"
#include "graphpoly/polynomial.hpp"

namespace gp {

namespace detail {

// Sum of |a_k| |z|^k: the natural scale for judging a residual at z.
inline double residual_scale(std::span<const Complex> a, Complex z) {
  double s = 0, zk = 1, az = std::abs(z);
  for (const auto& c : a) {
    s += std::abs(c) * zk;
    zk *= az;
  }
  return s;
}

inline std::pair<Complex, Complex> value_and_derivative(std::span<const Complex> a, Complex z) {
  Complex p = 0, dp = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) {
    dp = dp * z + p;
    p = p * z + *it;
  }
  return {p, dp};
}

// Parlett-Reinsch balancing by powers of two; eigenvalues are unchanged.
inline void balance(Eigen::MatrixXcd& m) {
  const Eigen::Index d = m.rows();
  for (bool done = false; !done;) {
    done = true;
    for (Eigen::Index i = 0; i < d; ++i) {
      double c = 0, r = 0;
      for (Eigen::Index j = 0; j < d; ++j)
        if (j != i) {
          c += std::abs(m(j, i));
          r += std::abs(m(i, j));
        }
      if (c == 0 || r == 0) continue;
      const double s = c + r;
      double f = 1, g = r / 2;
      while (c < g) {
        f *= 2;
        c *= 4;
      }
      g = r * 2;
      while (c >= g) {
        f /= 2;
        c /= 4;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        m.row(i) /= f;
        m.col(i) *= f;
      }
    }
  }
}

// Simultaneous Aberth-Ehrlich refinement. Roots move together, so a cluster around a
// multiple root keeps its centroid instead of collapsing one member at a time.
inline void aberth_polish(std::span<const Complex> a, std::vector<Complex>& z) {
  const std::size_t d = z.size();
  for (int it = 0; it < 100; ++it) {
    double biggest = 0;
    for (std::size_t i = 0; i < d; ++i) {
      auto [p, dp] = value_and_derivative(a, z[i]);
      if (p == Complex(0)) continue;
      const Complex ratio = p / dp;
      Complex repel = 0;
      for (std::size_t j = 0; j < d; ++j)
        if (j != i && z[j] != z[i]) repel += 1.0 / (z[i] - z[j]);
      const Complex w = ratio / (1.0 - ratio * repel);
      if (!is_finite(w)) continue;
      z[i] -= w;
      biggest = std::max(biggest, std::abs(w) / std::max(1.0, std::abs(z[i])));
    }
    if (biggest < 1e-15) break;
  }
}

}  // namespace detail

/// All roots (with multiplicity) of sum a_k z^k. Roots at the origin are split off exactly;
/// the rest are eigenvalues of the balanced companion matrix, refined by Aberth iterations
/// on the original coefficients when their residuals are not already at rounding level.
inline std::vector<Complex> poly_roots(std::span<const Complex> coeffs) {
  std::vector<Complex> a(coeffs.begin(), coeffs.end());
  while (!a.empty() && a.back() == Complex(0)) a.pop_back();
  if (a.size() < 2) throw InvalidArgument("poly_roots: degree must be at least 1");
  for (const auto& c : a) require_finite(c, "poly_roots coefficient");

  std::size_t low = 0;
  while (a[low] == Complex(0)) ++low;
  std::vector<Complex> b(a.begin() + static_cast<std::ptrdiff_t>(low), a.end());
  const auto d = static_cast<Eigen::Index>(b.size() - 1);
  std::vector<Complex> found;
  if (d == 1) {
    found.push_back(-b[0] / b[1]);
  } else if (d > 1) {
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(d, d);
    for (Eigen::Index i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
    for (Eigen::Index i = 0; i < d; ++i) comp(i, d - 1) = -b[static_cast<std::size_t>(i)] / b[static_cast<std::size_t>(d)];
    detail::balance(comp);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(comp, false);
    if (solver.info() != Eigen::Success) throw NumericError("poly_roots: eigenvalue iteration did not converge");
    for (Eigen::Index i = 0; i < d; ++i) found.push_back(solver.eigenvalues()(i));
    // Eigenvalues of the balanced matrix keep the symmetric functions of a cluster exact to
    // rounding; refine only when some residual is poor.
    bool rough = false;
    for (const auto& z : found)
      rough = rough || std::abs(detail::value_and_derivative(b, z).first) > 1e-12 * detail::residual_scale(b, z);
    if (rough) detail::aberth_polish(b, found);
  }

  std::ostringstream failures;
  bool failed = false;
  for (const auto& z : found) {
    const double scale = detail::residual_scale(b, z);
    const double res = std::abs(detail::value_and_derivative(b, z).first);
    if (!(res <= 1e-9 * scale)) {
      failed = true;
      failures << " (" << z.real() << "," << z.imag() << "): |p|=" << res << " scale=" << scale;
    }
  }
  if (failed) throw NumericError("poly_roots: residual above tolerance at" + failures.str());
  std::vector<Complex> roots(low, Complex(0.0, 0.0));
  roots.insert(roots.end(), found.begin(), found.end());
  std::sort(roots.begin(), roots.end(), [](Complex x, Complex y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  return roots;
}

inline std::vector<Complex> poly_roots(const IntPolynomial& p) {
  auto c = p.to_complex();
  return poly_roots(std::span<const Complex>(c));
}

}  // namespace gp
