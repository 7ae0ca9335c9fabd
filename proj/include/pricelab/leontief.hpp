#pragma once

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "pricelab/errors.hpp"
#include "pricelab/market.hpp"

namespace pricelab {

/**
 * Input-output economy with homogeneous labor and the wage as numeraire.
 *
 * Row convention: a(i, k) is the amount of good k used to make one unit of
 * good i, so unit prices satisfy p_i = l_i + sum_k a(i, k) p_k, i.e.
 * p = l + A p.
 */
template <typename Scalar>
struct LeontiefEconomy {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = VectorX<Scalar>;

  Matrix a;
  Vector labor;

  Index goods() const { return labor.size(); }
};

template <typename Scalar>
void validate(const LeontiefEconomy<Scalar>& economy) {
  if (economy.a.rows() != economy.a.cols()) {
    throw ValidationError("input matrix must be square");
  }
  if (economy.a.rows() != economy.labor.size()) {
    throw ValidationError("labor vector length must match the input matrix");
  }
  if (!economy.a.allFinite() || (economy.a.array() < Scalar(0)).any()) {
    throw ValidationError("input matrix entries must be finite and non-negative");
  }
  if (!economy.labor.allFinite() || (economy.labor.array() <= Scalar(0)).any()) {
    throw ValidationError("labor requirements must be finite and positive");
  }
}

struct SpectralOptions {
  double margin = 1e-8;
  int max_iterations = 10000;
  double bracket_tol = 1e-12;
};

/**
 * Perron root of a non-negative matrix.
 *
 * Power iteration runs on A + I from the all-ones vector; the identity shift
 * keeps the iterates strictly positive and removes the periodicity that makes
 * plain power iteration oscillate on cyclic matrices. The Collatz-Wielandt
 * ratios min/max_i (Bx)_i / x_i bracket rho(A + I) = rho(A) + 1 at every
 * step, and the upper bound is returned.
 */
template <typename Derived>
typename Derived::Scalar spectral_radius(const Eigen::MatrixBase<Derived>& a,
                                         const SpectralOptions& options = {}) {
  using Scalar = typename Derived::Scalar;
  using Vector = VectorX<Scalar>;
  const Index n = a.rows();
  if (n == 0) return Scalar(0);

  Vector x = Vector::Ones(n);
  Scalar upper(0);
  for (int it = 0; it < options.max_iterations; ++it) {
    Vector y = a * x + x;
    const Vector ratio = y.cwiseQuotient(x);
    upper = ratio.maxCoeff();
    const Scalar lower = ratio.minCoeff();
    if (upper - lower <= Scalar(options.bracket_tol) * upper) break;
    x = y / y.maxCoeff();
  }
  return upper - Scalar(1);
}

template <typename Scalar>
bool is_productive(const LeontiefEconomy<Scalar>& economy, const SpectralOptions& options = {}) {
  validate(economy);
  return spectral_radius(economy.a, options) < Scalar(1) - Scalar(options.margin);
}

/// Solves (I - A) p = l by pivoted LU with one step of iterative refinement.
template <typename Scalar>
VectorX<Scalar> solve_prices(const LeontiefEconomy<Scalar>& economy) {
  using Matrix = typename LeontiefEconomy<Scalar>::Matrix;
  if (!is_productive(economy)) {
    throw NoEquilibriumError("input matrix is not productive (spectral radius >= 1)");
  }
  const Index n = economy.goods();
  const Matrix system = Matrix::Identity(n, n) - economy.a;
  const Eigen::PartialPivLU<Matrix> lu(system);
  const Scalar rcond = lu.rcond();
  if (!(rcond > Eigen::NumTraits<Scalar>::epsilon())) {
    throw ConditioningError("I - A is singular to working precision");
  }
  VectorX<Scalar> p = lu.solve(economy.labor);
  p += lu.solve(economy.labor - system * p);
  if ((p.array() <= Scalar(0)).any()) {
    throw ConditioningError("solved prices are not strictly positive");
  }
  return p;
}

template <typename Scalar>
struct NeumannResult {
  VectorX<Scalar> prices;
  Index terms = 0;
};

/**
 * Partial sums of sum_k A^k l, stopping once the newest term has sup-norm
 * <= tol. Throws NoEquilibriumError if the terms stop shrinking over a window
 * of iterations.
 */
template <typename Scalar>
NeumannResult<Scalar> neumann_prices(const LeontiefEconomy<Scalar>& economy, Scalar tol,
                                     Index max_terms = 10'000'000) {
  validate(economy);
  if (!(tol > Scalar(0))) throw ConfigError("neumann tolerance must be > 0");
  constexpr Index kWindow = 64;

  NeumannResult<Scalar> out;
  VectorX<Scalar> term = economy.labor;
  out.prices = term;
  out.terms = 1;
  Scalar checkpoint = term.template lpNorm<Eigen::Infinity>();
  while (term.template lpNorm<Eigen::Infinity>() > tol) {
    if (out.terms >= max_terms) throw NoEquilibriumError("neumann series did not converge");
    term = economy.a * term;
    out.prices += term;
    ++out.terms;
    if (out.terms % kWindow == 0) {
      const Scalar now = term.template lpNorm<Eigen::Infinity>();
      if (now >= checkpoint) throw NoEquilibriumError("neumann series diverges: terms do not shrink");
      checkpoint = now;
    }
  }
  return out;
}

/// Unit cost of good k at the given prices, l_k + sum_h a(k, h) p_h.
template <typename Scalar, typename Derived>
Scalar unit_cost(const LeontiefEconomy<Scalar>& economy, const Eigen::MatrixBase<Derived>& prices,
                 Index k) {
  if (k < 0 || k >= economy.goods()) throw ValidationError("good index out of range");
  if (prices.size() != economy.goods()) throw ValidationError("price vector length mismatch");
  return economy.labor[k] + economy.a.row(k).dot(prices);
}

}  // namespace pricelab
