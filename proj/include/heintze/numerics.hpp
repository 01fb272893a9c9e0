#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "heintze/bch.hpp"
#include "heintze/invariants.hpp"

namespace heintze {

using RealVector = std::vector<double>;
using RealMatrix = std::vector<std::vector<double>>;

inline RealVector mat_vec(const RealMatrix& m, const RealVector& v) {
  RealVector out(m.size(), 0.0);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
  return out;
}

/// Seeded generator; identical seeds give identical streams on every platform
/// (the mapping to doubles does not go through <random> distributions).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double gaussian() {
    if (spare_) {
      double s = *spare_;
      spare_.reset();
      return s;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * M_PI * u2);
    return r * std::cos(2.0 * M_PI * u2);
  }

  RealVector gaussian_vector(std::size_t n) {
    RealVector v(n);
    for (auto& x : v) x = gaussian();
    return v;
  }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

/// Floating-point view of a Heintze group used by all metric experiments.
struct QuasiMetricModel {
  std::size_t dim = 0;
  std::size_t nilpotency_class = 1;
  SparseStructure<double> structure;
  std::vector<double> lambdas;          // distinct eigenvalues, ascending
  std::vector<RealMatrix> projections;  // onto each generalized eigenspace
  RealMatrix gram;                      // inner product on the algebra

  // Jordan data for the flow e^{t alpha}
  RealMatrix jordan_basis, jordan_basis_inverse;
  struct Block {
    double lambda;
    std::size_t size, first;
  };
  std::vector<Block> blocks;
  bool diagonalizable = true;
};

/// Projection onto V_i along the other generalized eigenspaces.
inline std::vector<Matrix> eigen_projections(const EigenDecomposition& e, std::size_t n) {
  std::vector<Vector> cols;
  std::vector<std::size_t> owner;
  for (std::size_t i = 0; i < e.spaces.size(); ++i)
    for (auto& v : e.spaces[i].basis()) {
      cols.push_back(std::move(v));
      owner.push_back(i);
    }
  const Matrix s = Matrix::from_columns(cols, n);
  const Matrix s_inv = inverse(s);
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < e.spaces.size(); ++i) {
    Vector sel(n, Rational(0));
    for (std::size_t c = 0; c < n; ++c)
      if (owner[c] == i) sel[c] = 1;
    out.push_back(s * Matrix::diagonal(sel) * s_inv);
  }
  return out;
}

inline QuasiMetricModel make_model(const HeintzeData& h, std::optional<RealMatrix> gram = std::nullopt) {
  QuasiMetricModel m;
  m.dim = h.dim();
  m.nilpotency_class = h.algebra->nilpotency_class();
  if (m.nilpotency_class > kMaxBchDepth)
    throw Error(ErrorCode::ClassTooHigh, "nilpotency class exceeds the BCH table");
  m.structure = h.algebra->numeric();
  for (const auto& l : h.eigen.eigenvalues) m.lambdas.push_back(l.get_d());
  for (const auto& p : eigen_projections(h.eigen, m.dim)) m.projections.push_back(to_double(p));
  if (gram) {
    if (gram->size() != m.dim) throw Error(ErrorCode::DimensionMismatch, "Gram matrix size");
    m.gram = *gram;
  } else {
    m.gram = to_double(Matrix::identity(m.dim));
  }
  m.jordan_basis = to_double(h.jordan.basis);
  m.jordan_basis_inverse = to_double(inverse(h.jordan.basis));
  for (const auto& b : h.jordan.blocks) {
    m.blocks.push_back({h.jordan.spectrum[b.eigen_index].eigenvalue.get_d(), b.size, b.first_column});
    if (b.size > 1) m.diagonalizable = false;
  }
  return m;
}

inline double gram_norm(const QuasiMetricModel& m, const RealVector& v) {
  double s = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) s += v[i] * m.gram[i][j] * v[j];
  return std::sqrt(std::max(s, 0.0));
}

inline RealVector negate(RealVector v) {
  for (auto& x : v) x = -x;
  return v;
}

/// log(exp(x) exp(y)) in floating point.
inline RealVector group_product(const QuasiMetricModel& m, const RealVector& x, const RealVector& y) {
  return bch_product(m.structure, m.nilpotency_class, x, y);
}

/// max_i |pi_i V|^(1/lambda_i): the homogeneous gauge of the semisimple part.
inline double homogeneous_norm(const QuasiMetricModel& m, const RealVector& v) {
  double best = 0;
  for (std::size_t i = 0; i < m.lambdas.size(); ++i) {
    const double c = gram_norm(m, mat_vec(m.projections[i], v));
    if (c > 0) best = std::max(best, std::pow(c, 1.0 / m.lambdas[i]));
  }
  return best;
}

/// Model quasi-metric: homogeneous gauge of log(x^-1 y).
inline double model_quasimetric(const QuasiMetricModel& m, const RealVector& x, const RealVector& y) {
  return homogeneous_norm(m, group_product(m, negate(x), y));
}

/// e^{t alpha} X in exponential coordinates, blockwise in the Jordan basis.
inline RealVector tau_action(const QuasiMetricModel& m, double t, const RealVector& x) {
  const RealVector c = mat_vec(m.jordan_basis_inverse, x);
  RealVector out(c.size(), 0.0);
  for (const auto& b : m.blocks) {
    const double e = std::exp(t * b.lambda);
    // chain X^1..X^size with alpha X^k = lambda X^k + X^{k-1}
    for (std::size_t k = 0; k < b.size; ++k) {
      double acc = 0, coeff = 1;
      for (std::size_t j = 0; k + j < b.size; ++j) {
        acc += coeff * c[b.first + k + j];
        coeff *= t / static_cast<double>(j + 1);
      }
      out[b.first + k] = e * acc;
    }
  }
  return mat_vec(m.jordan_basis, out);
}

/// e^{t delta} X for the semisimple part.
inline RealVector tau_semisimple(const QuasiMetricModel& m, double t, const RealVector& x) {
  RealVector out(x.size(), 0.0);
  for (std::size_t i = 0; i < m.lambdas.size(); ++i) {
    const RealVector p = mat_vec(m.projections[i], x);
    const double e = std::exp(t * m.lambdas[i]);
    for (std::size_t k = 0; k < x.size(); ++k) out[k] += e * p[k];
  }
  return out;
}

/// Gauge adapted to the full flow: exp(s*) with s* the first time at which
/// the flowed-back vector e^{-s alpha} V has homogeneous gauge <= 1.
/// Exactly e^t-homogeneous under tau_action; equals homogeneous_norm when
/// alpha is diagonalizable.
inline double flow_norm(const QuasiMetricModel& m, const RealVector& v) {
  const double start = homogeneous_norm(m, v);
  if (start == 0) return 0;
  if (m.diagonalizable) return start;
  auto f = [&](double s) { return homogeneous_norm(m, tau_action(m, -s, v)); };
  double s = std::log(start);
  int above = 0;
  while (above < 4) {
    s -= 1.0;
    above = f(s) > 1.0 ? above + 1 : 0;
  }
  double lo = s, hi = s;
  while (true) {
    hi = lo + 1.0 / 16;
    if (f(hi) <= 1.0) break;
    lo = hi;
  }
  for (int it = 0; it < 60 && hi - lo > 1e-13; ++it) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) <= 1.0 ? hi : lo) = mid;
  }
  return std::exp(hi);
}

inline double flow_quasimetric(const QuasiMetricModel& m, const RealVector& x, const RealVector& y) {
  return flow_norm(m, group_product(m, negate(x), y));
}

/// Random point with coordinates of magnitude around 10^u, u in [lo, hi].
inline RealVector random_point(Rng& rng, std::size_t n, double lo = -2, double hi = 2) {
  RealVector v = rng.gaussian_vector(n);
  const double s = std::pow(10.0, rng.uniform(lo, hi));
  for (auto& x : v) x *= s;
  return v;
}

/// Largest sampled ratio rho(x,z) / (rho(x,y) + rho(y,z)).
inline double quasi_triangle_constant(const QuasiMetricModel& m, std::size_t samples, std::uint64_t seed) {
  Rng rng(seed);
  double k = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    const RealVector x = random_point(rng, m.dim), y = random_point(rng, m.dim), z = random_point(rng, m.dim);
    const double den = model_quasimetric(m, x, y) + model_quasimetric(m, y, z);
    if (den > 0) k = std::max(k, model_quasimetric(m, x, z) / den);
  }
  return k;
}

struct Lemma31Report {
  double c_hat = 0;
  std::size_t violations = 0;          // decades whose minimum drops below the first decade's
  double slope = 0;                    // of log ratio against log |X|
  std::vector<double> decade_minimum;  // by floor(log10 |X|)
  std::size_t samples = 0;
  std::size_t rejected = 0;
};

inline double least_squares_slope(const std::vector<std::pair<double, double>>& pts, double* residual = nullptr) {
  double sx = 0, sy = 0;
  for (const auto& [x, y] : pts) {
    sx += x;
    sy += y;
  }
  const double n = static_cast<double>(pts.size());
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (const auto& [x, y] : pts) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  const double slope = sxx > 0 ? sxy / sxx : 0;
  if (residual) {
    double ss = 0;
    for (const auto& [x, y] : pts) {
      const double r = y - (my + slope * (x - mx));
      ss += r * r;
    }
    *residual = std::sqrt(ss / n);
  }
  return slope;
}

/// Samples X with rho(e, exp X) >= 1 over six decades of |X| and records
/// rho^mu / |X|; a positive floor with no downward drift is the expected shape.
inline Lemma31Report lemma31_check(const QuasiMetricModel& m, double mu, std::size_t samples, std::uint64_t seed) {
  if (!(mu > m.lambdas.back()))
    throw Error(ErrorCode::MuTooSmall, "mu must exceed the largest eigenvalue");
  constexpr int kDecades = 6;
  Rng rng(seed);
  Lemma31Report r;
  r.decade_minimum.assign(kDecades, std::numeric_limits<double>::infinity());
  r.c_hat = std::numeric_limits<double>::infinity();
  std::vector<std::pair<double, double>> pts;
  pts.reserve(samples);
  while (r.samples < samples) {
    RealVector x = rng.gaussian_vector(m.dim);
    const double len = gram_norm(m, x);
    if (len == 0) continue;
    const double target = std::pow(10.0, rng.uniform(0.0, kDecades));
    for (auto& c : x) c *= target / len;
    const double rho = homogeneous_norm(m, x);
    if (rho < 1.0) {
      ++r.rejected;
      continue;
    }
    const double norm = gram_norm(m, x);
    const double ratio = std::pow(rho, mu) / norm;
    const int decade = std::clamp(static_cast<int>(std::floor(std::log10(norm))), 0, kDecades - 1);
    r.decade_minimum[static_cast<std::size_t>(decade)] =
        std::min(r.decade_minimum[static_cast<std::size_t>(decade)], ratio);
    r.c_hat = std::min(r.c_hat, ratio);
    pts.emplace_back(std::log(norm), std::log(ratio));
    ++r.samples;
  }
  for (int d = 1; d < kDecades; ++d)
    if (r.decade_minimum[static_cast<std::size_t>(d)] < r.decade_minimum[0]) ++r.violations;
  r.slope = least_squares_slope(pts);
  return r;
}

struct DimensionEstimate {
  double value = 0;
  double r_min = 0, r_max = 0;
  std::vector<std::pair<double, double>> regression_points;  // (log 1/r, log N(r))
  double residual = 0;
};

using CurveSampler = std::function<RealVector(double)>;

/// t -> t * direction, t in [0, 1].
inline CurveSampler segment(RealVector direction) {
  return [d = std::move(direction)](double t) {
    RealVector p(d);
    for (auto& x : p) x *= t;
    return p;
  };
}

/// Greedy cover of ordered samples: a new ball starts at the first point
/// not within r of the current center.
inline std::size_t covering_count(const QuasiMetricModel& m, const std::vector<RealVector>& pts, double r) {
  std::size_t count = 0;
  std::size_t center = 0;
  bool open = false;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (open && model_quasimetric(m, pts[center], pts[i]) <= r) continue;
    center = i;
    open = true;
    ++count;
  }
  return count;
}

/// Box-counting slope of log N(r) against log(1/r). Without explicit radii
/// the window is chosen so that covering counts run from about 10 to 1000.
inline DimensionEstimate hausdorff_dim_estimate(const QuasiMetricModel& m, const CurveSampler& curve,
                                                std::size_t sample_count = 20000,
                                                std::vector<double> radii = {}) {
  std::vector<RealVector> pts;
  pts.reserve(sample_count);
  for (std::size_t i = 0; i < sample_count; ++i)
    pts.push_back(curve(static_cast<double>(i) / static_cast<double>(sample_count - 1)));
  double diameter = 0;
  for (const auto& p : pts) diameter = std::max(diameter, model_quasimetric(m, pts.front(), p));
  if (!(diameter > 0)) throw Error(ErrorCode::DegenerateCurve, "all curve samples coincide");

  if (radii.empty()) {
    auto radius_for = [&](double target) {
      double lo = std::log(diameter) - 40, hi = std::log(diameter);  // N(e^lo) large, N(e^hi) = 1
      for (int it = 0; it < 50; ++it) {
        const double mid = 0.5 * (lo + hi);
        (static_cast<double>(covering_count(m, pts, std::exp(mid))) > target ? lo : hi) = mid;
      }
      return std::exp(hi);
    };
    const double r_hi = radius_for(10), r_lo = radius_for(1000);
    constexpr int kSteps = 13;
    for (int i = 0; i < kSteps; ++i)
      radii.push_back(r_hi * std::pow(r_lo / r_hi, static_cast<double>(i) / (kSteps - 1)));
  }
  DimensionEstimate est;
  est.r_max = *std::max_element(radii.begin(), radii.end());
  est.r_min = *std::min_element(radii.begin(), radii.end());
  for (double r : radii)
    est.regression_points.emplace_back(std::log(1 / r), std::log(static_cast<double>(covering_count(m, pts, r))));
  est.value = least_squares_slope(est.regression_points, &est.residual);
  return est;
}

struct SandwichReport {
  double mu = 0;
  double constant = 1;        // smallest C fitting both sides, at least 1
  double lower_constant = 0;  // max rho_delta^mu / rho_alpha
  double upper_constant = 0;  // max rho_alpha / rho_delta^(1/mu)
  bool nilpotent_part_zero = false;
  std::size_t samples = 0;
};

/// Compares the flow gauge of alpha with the homogeneous gauge of its
/// semisimple part on pairs with rho_delta in [1e-8, 1] (log-uniform).
inline SandwichReport diag_comparison_check(const QuasiMetricModel& m, double mu, std::size_t samples,
                                            std::uint64_t seed) {
  if (!(mu > 1)) throw Error(ErrorCode::ParameterOutOfRange, "mu must exceed 1");
  SandwichReport r;
  r.mu = mu;
  r.samples = samples;
  if (m.diagonalizable) {
    r.nilpotent_part_zero = true;
    return r;
  }
  Rng rng(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    RealVector u = rng.gaussian_vector(m.dim);
    const double g = homogeneous_norm(m, u);
    if (g == 0) continue;
    const double t = std::log(1e-8) * rng.uniform();
    u = tau_semisimple(m, t - std::log(g), u);
    const double b = std::exp(t);  // rho_delta of u by homogeneity
    const double a = flow_norm(m, u);
    r.lower_constant = std::max(r.lower_constant, std::pow(b, mu) / a);
    r.upper_constant = std::max(r.upper_constant, a / std::pow(b, 1 / mu));
  }
  r.constant = std::max({1.0, r.lower_constant, r.upper_constant});
  return r;
}

struct CosetReport {
  bool normalizes = false;               // log x lies in the normalizer of h
  std::optional<Vector> obstruction;     // W when it does not
  std::optional<Vector> generator;       // Y0 in h used for the curve
  std::vector<double> t_grid;
  std::vector<double> distances;
  double growth_exponent = 0;
  double max_distance = 0;
};

/// Distance between the left cosets xH and H along t -> x exp(t Y0).
/// When x normalizes H every point x h sits at gauge distance rho(x^-1)
/// from x h x^-1 in H; otherwise the sampled distance to H grows and its
/// log-log slope is reported.
inline CosetReport coset_divergence_experiment(const HeintzeData& h, const QuasiMetricModel& m, const Subspace& sub,
                                               const Vector& x, std::vector<double> t_grid, std::size_t samples,
                                               std::uint64_t seed) {
  const NilpotentLieAlgebra& a = *h.algebra;
  if (!is_subalgebra(a, sub)) throw Error(ErrorCode::NotASubalgebra, "coset experiment needs a subalgebra");
  if (x.size() != a.dim()) throw Error(ErrorCode::DimensionMismatch, "group element dimension");
  if (t_grid.empty())
    for (int i = 0; i <= 12; ++i) t_grid.push_back(std::pow(10.0, 1.0 + 3.0 * i / 12));
  CosetReport r;
  r.t_grid = t_grid;
  const RealVector xd = to_double(x);
  r.normalizes = normalizer(a, sub).contains(x);

  if (r.normalizes || sub.is_zero()) {
    r.normalizes = true;
    const auto basis = sub.basis();
    for (double t : t_grid) {
      RealVector y0 = basis.empty() ? RealVector(a.dim(), 0.0) : to_double(basis.front());
      for (auto& c : y0) c *= t;
      const RealVector xh = group_product(m, xd, y0);
      const RealVector conj = group_product(m, xh, negate(xd));  // x h x^-1, a point of H
      const double d = model_quasimetric(m, conj, xh);
      r.distances.push_back(d);
      r.max_distance = std::max(r.max_distance, d);
    }
    return r;
  }

  for (const auto& b : sub.basis()) {
    Vector w = conjugate(a, x, b) - b;
    if (!sub.contains(w)) {
      r.generator = b;
      r.obstruction = std::move(w);
      break;
    }
  }
  if (!r.generator) throw std::logic_error("no basis vector of h is moved out of h by conjugation");

  Rng rng(seed);
  const auto basis = sub.basis();
  const RealVector y0 = to_double(*r.generator);
  const Vector y0_coords = sub.coordinates(*r.generator);
  std::vector<std::pair<double, double>> pts;
  for (double t : t_grid) {
    RealVector target = y0;
    for (auto& c : target) c *= t;
    target = group_product(m, xd, target);
    auto point_of = [&](const RealVector& coords) {
      RealVector p(a.dim(), 0.0);
      for (std::size_t k = 0; k < basis.size(); ++k)
        for (std::size_t i = 0; i < a.dim(); ++i) p[i] += coords[k] * basis[k][i].get_d();
      return p;
    };
    RealVector best(basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k) best[k] = t * y0_coords[k].get_d();
    double best_d = model_quasimetric(m, point_of(best), target);
    // random search around the natural candidate with shrinking spread
    double spread = 1.0 + std::abs(t);
    for (std::size_t s = 0; s < samples; ++s) {
      RealVector cand = best;
      for (auto& c : cand) c += spread * rng.gaussian();
      const double d = model_quasimetric(m, point_of(cand), target);
      if (d < best_d) {
        best_d = d;
        best = std::move(cand);
      } else {
        spread *= 0.97;
      }
      spread = std::max(spread, 1e-9 * (1.0 + std::abs(t)));
    }
    r.distances.push_back(best_d);
    r.max_distance = std::max(r.max_distance, best_d);
    if (t > 0 && best_d > 0) pts.emplace_back(std::log(t), std::log(best_d));
  }
  if (pts.size() >= 2) r.growth_exponent = least_squares_slope(pts);
  return r;
}

}  // namespace heintze
