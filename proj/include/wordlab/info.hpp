#pragma once

#include <Eigen/Core>

#include <cmath>

namespace wordlab::info {

// Entropy and divergence over dense probability vectors. Zero entries
// contribute nothing (0·log 0 := 0). `base` is the logarithm base.

template <typename Derived>
typename Derived::Scalar entropy(const Eigen::MatrixBase<Derived>& p,
                                 typename Derived::Scalar base = 2) {
  using Scalar = typename Derived::Scalar;
  const Scalar inv_log_base = Scalar(1) / std::log(base);
  Scalar h = 0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const Scalar v = p(i);
    if (v > 0) h -= v * std::log(v);
  }
  return h * inv_log_base;
}

// Σ p·log(support·p): divergence of p from the uniform distribution over
// `support` outcomes. p need not sum to one.
template <typename Derived>
typename Derived::Scalar kld_uniform(const Eigen::MatrixBase<Derived>& p, Eigen::Index support,
                                     typename Derived::Scalar base = 2) {
  using Scalar = typename Derived::Scalar;
  const Scalar inv_log_base = Scalar(1) / std::log(base);
  const Scalar n = static_cast<Scalar>(support);
  Scalar d = 0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const Scalar v = p(i);
    if (v > 0) d += v * std::log(n * v);
  }
  return d * inv_log_base;
}

// Counts normalised to a probability vector.
template <typename Scalar, typename Derived>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> normalized(const Eigen::MatrixBase<Derived>& counts) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> p = counts.template cast<Scalar>();
  const Scalar total = p.sum();
  if (total > 0) p /= total;
  return p;
}

}  // namespace wordlab::info
