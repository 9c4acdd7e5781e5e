#include "egraph/hungarian.hpp"

#include <limits>

namespace egraph {

ScoreMatrix::ScoreMatrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  for (const auto& row : rows) values_.insert(values_.end(), row.begin(), row.end());
  values_.resize(rows_ * cols_, 0.0);
}

namespace {

// Minimum-cost assignment of every row of an n x m cost matrix (n <= m),
// shortest augmenting paths with row/column potentials. Returns col_of_row.
std::vector<int> min_cost_rows(std::size_t n, std::size_t m, const auto& cost) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<std::size_t> p(m + 1, 0), way(m + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(m + 1, inf);
    std::vector<bool> used(m + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> col_of_row(n, -1);
  for (std::size_t j = 1; j <= m; ++j) {
    if (p[j] != 0) col_of_row[p[j] - 1] = static_cast<int>(j - 1);
  }
  return col_of_row;
}

}  // namespace

Assignment max_weight_assignment(const ScoreMatrix& scores) {
  Assignment result;
  const std::size_t rows = scores.rows();
  const std::size_t cols = scores.cols();
  result.row_to_col.assign(rows, -1);
  if (rows == 0 || cols == 0) return result;
  if (rows <= cols) {
    result.row_to_col = min_cost_rows(rows, cols, [&](std::size_t r, std::size_t c) { return -scores(r, c); });
  } else {
    auto col_to_row =
        min_cost_rows(cols, rows, [&](std::size_t c, std::size_t r) { return -scores(r, c); });
    for (std::size_t c = 0; c < cols; ++c) result.row_to_col[col_to_row[c]] = static_cast<int>(c);
  }
  for (std::size_t r = 0; r < rows; ++r) {
    if (result.row_to_col[r] >= 0) result.weight += scores(r, static_cast<std::size_t>(result.row_to_col[r]));
  }
  return result;
}

}  // namespace egraph
