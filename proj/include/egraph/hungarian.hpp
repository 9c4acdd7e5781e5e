#pragma once

#include <cstddef>
#include <vector>

namespace egraph {

// Dense row-major score matrix.
class ScoreMatrix {
 public:
  ScoreMatrix() = default;
  ScoreMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), values_(rows * cols, fill) {}
  ScoreMatrix(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return values_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return values_[r * cols_ + c]; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

struct Assignment {
  std::vector<int> row_to_col;  // -1 for rows left unmatched
  double weight = 0.0;
};

// Maximum-weight one-to-one assignment (Kuhn-Munkres with potentials, O(n^3)).
// Rectangular inputs are padded with zero rows or columns; the matching has
// min(rows, cols) real pairs. Entries must be finite and non-negative.
Assignment max_weight_assignment(const ScoreMatrix& scores);

}  // namespace egraph
