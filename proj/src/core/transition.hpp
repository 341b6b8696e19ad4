#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "core/graph.hpp"

namespace urank {

// Nonnegative vector with unit L1 norm. Construction rejects negative
// entries outright (no tolerance), renormalizes inputs whose sum is within
// 1e-9 of one, and rejects anything further off as a likely caller bug.
class ProbabilityVector {
 public:
  static ProbabilityVector from_entries(std::vector<double> entries);

  std::int64_t dim() const { return static_cast<std::int64_t>(entries_.size()); }
  std::span<const double> entries() const { return entries_; }
  double operator[](std::int64_t i) const;

  // Text form is one decimal value per line ('#' comments and blank lines
  // ignored); JSON form is a flat array. Both round-trip at full precision.
  static ProbabilityVector from_text(std::string_view text);
  static ProbabilityVector from_json(std::string_view text);
  std::string to_text() const;
  std::string to_json() const;

 private:
  struct unchecked {};
  ProbabilityVector(std::vector<double> entries, unchecked)
      : entries_(std::move(entries)) {}

  std::vector<double> entries_;
};

// Row-stochastic square matrix in row-compressed form. Graph-derived
// matrices share a single weight 1/deg(i) per row; the general constructor
// stores one weight per entry. Invariants either way: every row sums to 1
// within 1e-12, stored entries are strictly positive, the diagonal is zero.
class RowStochasticMatrix {
 public:
  struct RowEntry {
    Vertex col = 0;
    double value = 0.0;
  };

  static RowStochasticMatrix from_rows(Vertex n,
                                       std::span<const std::vector<RowEntry>> rows);

  Vertex dim() const { return n_; }
  std::int64_t entry_count() const { return static_cast<std::int64_t>(col_.size()); }

  // y = A^T x. Scatters row by row in ascending row index with compensated
  // accumulation, so results are bit-stable and column sums survive to a few
  // ulps (A^T preserves entry sums exactly in exact arithmetic).
  void apply_transposed(std::span<const double> x, std::span<double> y) const;
  std::vector<double> apply_transposed(std::span<const double> x) const;

  template <class F>
  void for_each_entry(F&& f) const {  // f(row, col, value), ascending
    for (Vertex i = 0; i < n_; ++i) {
      for (std::int64_t k = row_ptr_[static_cast<std::size_t>(i)];
           k < row_ptr_[static_cast<std::size_t>(i) + 1]; ++k) {
        const double value = row_weight_.empty()
                                 ? value_[static_cast<std::size_t>(k)]
                                 : row_weight_[static_cast<std::size_t>(i)];
        f(i, col_[static_cast<std::size_t>(k)], value);
      }
    }
  }

 private:
  RowStochasticMatrix() = default;
  friend RowStochasticMatrix transition_matrix(const Graph& g);

  Vertex n_ = 0;
  std::vector<std::int64_t> row_ptr_;  // size n_+1
  std::vector<Vertex> col_;            // ascending within each row
  std::vector<double> row_weight_;     // size n_ for graph-derived matrices
  std::vector<double> value_;          // size nnz otherwise (exactly one is set)
};

// Simple random walk on g: row i distributes 1/deg(i) to each neighbor.
// Every vertex must have at least one edge.
RowStochasticMatrix transition_matrix(const Graph& g);

// f_i = deg(i) / 2|E|; stationary for the walk's transpose. Defined whenever
// the graph has at least one edge (isolated vertices get weight zero).
ProbabilityVector degree_distribution(const Graph& g);

ProbabilityVector uniform_vector(std::int64_t n);

}  // namespace urank
