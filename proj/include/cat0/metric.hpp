#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "cat0/error.hpp"

namespace cat0 {

inline constexpr double kDefaultTol = 1e-9;

// Labeled points with a symmetric distance matrix. Immutable once built.
class MetricSpace {
 public:
  MetricSpace() = default;

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }

  double d(std::size_t i, std::size_t j) const noexcept { return dist_[i * labels_.size() + j]; }
  double d2(std::size_t i, std::size_t j) const noexcept {
    const double v = d(i, j);
    return v * v;
  }

  // Largest entry; the unit for relative tolerances.
  double scale() const noexcept { return scale_; }

  std::vector<std::vector<double>> matrix() const {
    const std::size_t n = size();
    std::vector<std::vector<double>> m(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m[i][j] = d(i, j);
    return m;
  }

  // Builds without validation. Callers guarantee symmetry and a zero diagonal.
  static MetricSpace trusted(std::vector<std::string> labels, std::vector<double> flat) {
    MetricSpace x;
    x.labels_ = std::move(labels);
    x.dist_ = std::move(flat);
    x.scale_ = 0.0;
    for (double v : x.dist_) x.scale_ = std::max(x.scale_, v);
    return x;
  }

 private:
  std::vector<std::string> labels_;
  std::vector<double> dist_;
  double scale_ = 0.0;
};

inline std::vector<std::string> default_labels(std::size_t n, const std::string& prefix = "x") {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i + 1));
  return out;
}

inline MetricSpace from_matrix(const std::vector<std::string>& labels,
                               const std::vector<std::vector<double>>& m, double tol = kDefaultTol) {
  const std::size_t n = labels.size();
  if (m.size() != n) throw Error(ErrorKind::BadParams, "matrix rows do not match label count");
  for (const auto& row : m)
    if (row.size() != n) throw Error(ErrorKind::BadParams, "matrix is not square");

  std::set<std::string> seen;
  for (const auto& l : labels)
    if (!seen.insert(l).second) throw Error(ErrorKind::DuplicateLabel, l);

  double scale = 0.0;
  for (const auto& row : m)
    for (double v : row) {
      if (!std::isfinite(v)) throw Error(ErrorKind::BadParams, "non-finite entry");
      scale = std::max(scale, std::abs(v));
    }
  const double eps = tol * scale;

  for (std::size_t i = 0; i < n; ++i) {
    if (m[i][i] != 0.0) throw Error(ErrorKind::NonzeroDiagonal, "entry (" + std::to_string(i) + "," + std::to_string(i) + ")");
    for (std::size_t j = 0; j < n; ++j) {
      if (m[i][j] < 0.0) throw Error(ErrorKind::NegativeDistance, "entry (" + std::to_string(i) + "," + std::to_string(j) + ")");
      if (std::abs(m[i][j] - m[j][i]) > eps)
        throw Error(ErrorKind::AsymmetricMatrix, "entries (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const double deficit = m[i][k] - m[i][j] - m[j][k];
        if (deficit > eps)
          throw Error(ErrorKind::TriangleViolation, "(" + std::to_string(i) + "," + std::to_string(j) + "," +
                                                        std::to_string(k) + ") deficit " + std::to_string(deficit));
      }

  std::vector<double> flat(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) flat[i * n + j] = 0.5 * (m[i][j] + m[j][i]);
  return MetricSpace::trusted(labels, std::move(flat));
}

inline MetricSpace from_matrix(const std::vector<std::vector<double>>& m, double tol = kDefaultTol) {
  return from_matrix(default_labels(m.size()), m, tol);
}

// Angle at the middle vertex of a Euclidean triangle with the given sides.
template <class Real>
Real comparison_angle(Real dab, Real dbc, Real dac) {
  if (dab == Real(0) || dbc == Real(0)) throw Error(ErrorKind::DegenerateVertex, "zero side at vertex");
  Real c = (dab * dab + dbc * dbc - dac * dac) / (Real(2) * dab * dbc);
  c = std::clamp(c, Real(-1), Real(1));
  return std::acos(c);
}

// Comparison angle at b of the triple (a, b, c).
inline double comparison_angle(const MetricSpace& x, std::size_t a, std::size_t b, std::size_t c) {
  if (a >= x.size() || b >= x.size() || c >= x.size()) throw Error(ErrorKind::BadIndex, "angle vertex");
  return comparison_angle(x.d(a, b), x.d(b, c), x.d(a, c));
}

inline MetricSpace restrict(const MetricSpace& x, const std::vector<std::size_t>& subset) {
  if (subset.empty()) throw Error(ErrorKind::EmptySubset, "restrict");
  for (auto i : subset)
    if (i >= x.size()) throw Error(ErrorKind::BadIndex, std::to_string(i));
  const std::size_t m = subset.size();
  std::vector<std::string> labels;
  std::vector<double> flat(m * m);
  for (std::size_t a = 0; a < m; ++a) {
    labels.push_back(x.label(subset[a]));
    for (std::size_t b = 0; b < m; ++b) flat[a * m + b] = x.d(subset[a], subset[b]);
  }
  std::set<std::string> seen(labels.begin(), labels.end());
  if (seen.size() != labels.size()) throw Error(ErrorKind::DuplicateLabel, "repeated index in subset");
  return MetricSpace::trusted(std::move(labels), std::move(flat));
}

inline MetricSpace snowflake(const MetricSpace& x, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw Error(ErrorKind::BadExponent, std::to_string(alpha));
  const std::size_t n = x.size();
  std::vector<double> flat(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) flat[i * n + j] = alpha == 1.0 ? x.d(i, j) : std::pow(x.d(i, j), alpha);
  return MetricSpace::trusted(x.labels(), std::move(flat));
}

inline MetricSpace scaled(const MetricSpace& x, double lambda) {
  const std::size_t n = x.size();
  std::vector<double> flat(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) flat[i * n + j] = lambda * x.d(i, j);
  return MetricSpace::trusted(x.labels(), std::move(flat));
}

// Space with distances d_ij = |f(i), f(j)| for a vertex map f into x.
inline MetricSpace pullback(const MetricSpace& x, const std::vector<std::size_t>& f) {
  const std::size_t n = f.size();
  std::vector<double> flat(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) flat[i * n + j] = x.d(f.at(i), f.at(j));
  return MetricSpace::trusted(default_labels(n, "v"), std::move(flat));
}

// Four points with d12 = d23 = d34 = 1 and d41 = d13 = d24 = sqrt(3); not CAT(0)-embeddable.
inline MetricSpace counterexample_space() {
  const double r = std::sqrt(3.0);
  return from_matrix({"x1", "x2", "x3", "x4"},
                     {{0, 1, r, r}, {1, 0, 1, r}, {r, 1, 0, 1}, {r, r, 1, 0}});
}

}  // namespace cat0
