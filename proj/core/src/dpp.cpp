#include "syncov/dpp.hpp"

#include <cmath>
#include <limits>

#include "syncov/error.hpp"

namespace syncov {
namespace {

// Marginal gains below this are treated as zero: the kernel is singular on
// the current selection plus that item.
constexpr double kRankTolerance = 1e-10;

struct Attempt {
  std::vector<std::size_t> selected;
  double log_det = 0.0;
  bool complete = false;
};

Attempt run_greedy(const Eigen::MatrixXd& L, std::size_t k, std::span<const ExampleId> ids) {
  const auto n = static_cast<Eigen::Index>(L.rows());
  Eigen::MatrixXd factors = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(k), n);
  Eigen::VectorXd gain = L.diagonal();
  std::vector<bool> taken(static_cast<std::size_t>(n), false);
  Attempt out;

  auto argmax = [&]() {
    Eigen::Index best = -1;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (taken[static_cast<std::size_t>(i)]) continue;
      if (best < 0 || gain(i) > gain(best) ||
          (gain(i) == gain(best) && ids[static_cast<std::size_t>(i)] < ids[static_cast<std::size_t>(best)])) {
        best = i;
      }
    }
    return best;
  };

  while (out.selected.size() < k) {
    const Eigen::Index j = argmax();
    if (j < 0 || gain(j) < kRankTolerance) return out;
    const auto m = static_cast<Eigen::Index>(out.selected.size());
    out.selected.push_back(static_cast<std::size_t>(j));
    out.log_det += std::log(gain(j));
    taken[static_cast<std::size_t>(j)] = true;
    if (out.selected.size() == k) break;

    // e_i = (L_ji - <c_j, c_i>) / sqrt(d_j); d_i -= e_i^2.
    const double dj = std::sqrt(gain(j));
    Eigen::RowVectorXd e = L.row(j);
    if (m > 0) e -= factors.col(j).head(m).transpose() * factors.topRows(m);
    e /= dj;
    factors.row(m) = e;
    gain -= e.transpose().cwiseAbs2();
  }
  out.complete = true;
  return out;
}

// log det of kernel[S, S] by plain Cholesky; -inf once a pivot falls below
// the rank tolerance.
double subset_log_det(const Eigen::MatrixXd& kernel, const std::vector<std::size_t>& subset) {
  const auto m = static_cast<Eigen::Index>(subset.size());
  Eigen::MatrixXd a(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      a(i, j) = kernel(static_cast<Eigen::Index>(subset[static_cast<std::size_t>(i)]),
                       static_cast<Eigen::Index>(subset[static_cast<std::size_t>(j)]));
    }
  }
  double log_det = 0.0;
  for (Eigen::Index j = 0; j < m; ++j) {
    const double pivot = a(j, j) - a.row(j).head(j).squaredNorm();
    if (pivot < kRankTolerance) return -std::numeric_limits<double>::infinity();
    const double root = std::sqrt(pivot);
    a(j, j) = root;
    for (Eigen::Index i = j + 1; i < m; ++i) {
      a(i, j) = (a(i, j) - a.row(i).head(j).dot(a.row(j).head(j))) / root;
    }
    log_det += std::log(pivot);
  }
  return log_det;
}

}  // namespace

GreedyMapResult greedy_map(const Eigen::MatrixXd& kernel, std::size_t k,
                           std::span<const ExampleId> tie_ids) {
  if (kernel.rows() != kernel.cols()) throw DomainError("DPP kernel must be square");
  if (tie_ids.size() != static_cast<std::size_t>(kernel.rows())) {
    throw DomainError("DPP tie-break ids must match the kernel size");
  }
  if (k == 0 || k > tie_ids.size()) throw DomainError("DPP selection size out of range");

  GreedyMapResult result;
  Attempt attempt = run_greedy(kernel, k, tie_ids);
  if (!attempt.complete) {
    const Eigen::MatrixXd jittered =
        kernel + kDppJitter * Eigen::MatrixXd::Identity(kernel.rows(), kernel.cols());
    attempt = run_greedy(jittered, k, tie_ids);
    result.jitter_applied = true;
    if (!attempt.complete) throw DomainError("DPP kernel is not positive semidefinite");
  }
  result.selected = std::move(attempt.selected);
  // After jitter the running sum belongs to the jittered kernel; report the
  // caller's kernel instead, which may be singular on the selection.
  result.log_det = result.jitter_applied ? subset_log_det(kernel, result.selected) : attempt.log_det;
  return result;
}

Eigen::MatrixXd normalized_gram(const std::vector<std::vector<double>>& rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto dim = rows.empty() ? Eigen::Index{0} : static_cast<Eigen::Index>(rows.front().size());
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, dim);
  std::vector<bool> zero(rows.size(), false);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (static_cast<Eigen::Index>(row.size()) != dim) {
      throw DomainError("word matrix rows differ in length");
    }
    for (Eigen::Index j = 0; j < dim; ++j) w(i, j) = row[static_cast<std::size_t>(j)];
    const double norm = w.row(i).norm();
    if (norm > 0.0) {
      w.row(i) /= norm;
    } else {
      zero[static_cast<std::size_t>(i)] = true;
    }
  }
  Eigen::MatrixXd gram = w * w.transpose();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (zero[static_cast<std::size_t>(i)]) gram(i, i) = 1.0;
  }
  return gram;
}

Eigen::MatrixXd relevance_kernel(const Eigen::MatrixXd& similarity,
                                 std::span<const double> relevance, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("DPP lambda must be positive");
  if (relevance.size() != static_cast<std::size_t>(similarity.rows())) {
    throw DomainError("relevance vector must match the kernel size");
  }
  Eigen::VectorXd scale(similarity.rows());
  for (Eigen::Index i = 0; i < scale.size(); ++i) {
    scale(i) = std::exp(relevance[static_cast<std::size_t>(i)] / (2.0 * lambda));
  }
  return scale.asDiagonal() * similarity * scale.asDiagonal();
}

}  // namespace syncov
