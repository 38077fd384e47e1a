#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "syncov/example.hpp"

namespace syncov {

inline constexpr double kDppJitter = 1e-8;

struct GreedyMapResult {
  std::vector<std::size_t> selected;  // kernel row indices, in pick order
  double log_det = 0.0;               // log det of the kernel restricted to `selected`, -inf if singular
  bool jitter_applied = false;
};

/// Fast greedy MAP inference for a DPP with PSD kernel `kernel`: at each step
/// adds the item with the largest marginal log-det gain, maintaining the
/// incremental Cholesky factors so each step costs O(N * |selected|).
///
/// Ties go to the item with the smaller `tie_ids` entry. If the kernel runs
/// out of rank before k items are picked, the search restarts on
/// kernel + kDppJitter * I and reports jitter_applied.
GreedyMapResult greedy_map(const Eigen::MatrixXd& kernel, std::size_t k,
                           std::span<const ExampleId> tie_ids);

/// Gram matrix of row-normalised vectors. All-zero rows get a 1 on the
/// diagonal and zeros elsewhere.
Eigen::MatrixXd normalized_gram(const std::vector<std::vector<double>>& rows);

/// Quality-weighted kernel L'_ij = exp(r_i / 2λ) L_ij exp(r_j / 2λ), so that
/// log det L'_S = (1/λ) Σ_{i∈S} r_i + log det L_S.
Eigen::MatrixXd relevance_kernel(const Eigen::MatrixXd& similarity,
                                 std::span<const double> relevance, double lambda);

}  // namespace syncov
