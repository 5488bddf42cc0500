#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "mfmod2/combination.hpp"

namespace mfmod2 {

using BitVec = boost::dynamic_bitset<std::uint64_t>;

/// Coordinates of c against an ordered label list. Throws DomainError naming
/// the first index of c that is not a label.
BitVec to_bits(const Combination& c, const std::vector<std::uint64_t>& labels);
Combination from_bits(const BitVec& v, const std::vector<std::uint64_t>& labels);

/// Dense matrix over GF(2). Rows and columns carry labels (D_k indices or
/// encoded pairs) so results can be mapped back to their basis.
///
/// Elimination always pivots on the leftmost column and the topmost
/// available row, so ranks, kernels and solutions are reproducible.
class Gf2Matrix {
 public:
  Gf2Matrix(std::vector<std::uint64_t> row_labels, std::vector<std::uint64_t> col_labels);

  /// Column j holds the coordinates of cols[j] against row_labels.
  static Gf2Matrix from_columns(std::vector<std::uint64_t> row_labels, std::vector<std::uint64_t> col_labels,
                                const std::vector<Combination>& cols);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return col_labels_.size(); }
  const std::vector<std::uint64_t>& row_labels() const { return row_labels_; }
  const std::vector<std::uint64_t>& col_labels() const { return col_labels_; }

  bool get(std::size_t i, std::size_t j) const { return rows_[i][j]; }
  void set(std::size_t i, std::size_t j, bool v) { rows_[i][j] = v; }
  BitVec column(std::size_t j) const;

  /// [this; below]: rows of `below` appended; column labels must agree.
  Gf2Matrix stacked(const Gf2Matrix& below) const;

  std::size_t rank() const;
  /// Reduced kernel basis: one vector per non-pivot column f, with a 1 at f
  /// and 0 at every other non-pivot column. Ordered by f.
  std::vector<BitVec> kernel() const;
  /// The solution of A x = rhs that vanishes on non-pivot columns.
  std::optional<BitVec> solve(const BitVec& rhs) const;
  /// A x.
  BitVec apply(const BitVec& x) const;
  /// Inverse of a square matrix of full rank; InternalError otherwise.
  Gf2Matrix inverse() const;

 private:
  struct Echelon {
    std::vector<BitVec> rows;
    std::vector<std::size_t> pivots;  // pivot column of row i, i < rank
    BitVec rhs;
  };
  Echelon reduce(const BitVec* rhs) const;

  std::vector<std::uint64_t> row_labels_;
  std::vector<std::uint64_t> col_labels_;
  std::vector<BitVec> rows_;
};

/// Rank of a family of combinations.
std::size_t rank_of(const std::vector<Combination>& family);

}  // namespace mfmod2
