#include "mfmod2/gf2matrix.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

#include "mfmod2/errors.hpp"

namespace mfmod2 {

BitVec to_bits(const Combination& c, const std::vector<std::uint64_t>& labels) {
  BitVec v(labels.size());
  for (auto k : c.indices()) {
    // Labels are usually sorted; fall back to a scan when they are not.
    auto it = std::lower_bound(labels.begin(), labels.end(), k);
    if (it == labels.end() || *it != k) it = std::find(labels.begin(), labels.end(), k);
    if (it == labels.end()) throw DomainError("index " + std::to_string(k) + " is outside the basis");
    v.flip(static_cast<std::size_t>(it - labels.begin()));
  }
  return v;
}

Combination from_bits(const BitVec& v, const std::vector<std::uint64_t>& labels) {
  std::vector<std::uint64_t> idx;
  for (auto i = v.find_first(); i != BitVec::npos; i = v.find_next(i)) idx.push_back(labels[i]);
  return Combination(std::move(idx));
}

Gf2Matrix::Gf2Matrix(std::vector<std::uint64_t> row_labels, std::vector<std::uint64_t> col_labels)
    : row_labels_(std::move(row_labels)),
      col_labels_(std::move(col_labels)),
      rows_(row_labels_.size(), BitVec(col_labels_.size())) {}

Gf2Matrix Gf2Matrix::from_columns(std::vector<std::uint64_t> row_labels, std::vector<std::uint64_t> col_labels,
                                  const std::vector<Combination>& cols) {
  if (cols.size() != col_labels.size()) throw DomainError("column count does not match labels");
  Gf2Matrix m(std::move(row_labels), std::move(col_labels));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const BitVec v = to_bits(cols[j], m.row_labels_);
    for (auto i = v.find_first(); i != BitVec::npos; i = v.find_next(i)) m.rows_[i][j] = true;
  }
  return m;
}

BitVec Gf2Matrix::column(std::size_t j) const {
  BitVec v(rows());
  for (std::size_t i = 0; i < rows(); ++i) v[i] = rows_[i][j];
  return v;
}

Gf2Matrix Gf2Matrix::stacked(const Gf2Matrix& below) const {
  if (below.col_labels_ != col_labels_) throw DomainError("stacked matrices need the same columns");
  Gf2Matrix out = *this;
  out.row_labels_.insert(out.row_labels_.end(), below.row_labels_.begin(), below.row_labels_.end());
  out.rows_.insert(out.rows_.end(), below.rows_.begin(), below.rows_.end());
  return out;
}

Gf2Matrix::Echelon Gf2Matrix::reduce(const BitVec* rhs) const {
  Echelon e;
  e.rows = rows_;
  e.rhs = rhs ? *rhs : BitVec(rows());
  std::size_t r = 0;
  for (std::size_t col = 0; col < cols() && r < rows(); ++col) {
    std::size_t piv = r;
    while (piv < rows() && !e.rows[piv][col]) ++piv;
    if (piv == rows()) continue;
    std::swap(e.rows[piv], e.rows[r]);
    {
      const bool t = e.rhs[piv];
      e.rhs[piv] = e.rhs[r];
      e.rhs[r] = t;
    }
    for (std::size_t i = 0; i < rows(); ++i) {
      if (i != r && e.rows[i][col]) {
        e.rows[i] ^= e.rows[r];
        if (e.rhs[r]) e.rhs.flip(i);
      }
    }
    e.pivots.push_back(col);
    ++r;
  }
  return e;
}

std::size_t Gf2Matrix::rank() const { return reduce(nullptr).pivots.size(); }

std::vector<BitVec> Gf2Matrix::kernel() const {
  const Echelon e = reduce(nullptr);
  std::vector<bool> is_pivot(cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<BitVec> out;
  for (std::size_t f = 0; f < cols(); ++f) {
    if (is_pivot[f]) continue;
    BitVec v(cols());
    v[f] = true;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) {
      if (e.rows[i][f]) v[e.pivots[i]] = true;
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<BitVec> Gf2Matrix::solve(const BitVec& rhs) const {
  if (rhs.size() != rows()) throw DomainError("right-hand side has the wrong length");
  const Echelon e = reduce(&rhs);
  for (std::size_t i = e.pivots.size(); i < rows(); ++i) {
    if (e.rhs[i]) return std::nullopt;
  }
  BitVec x(cols());
  for (std::size_t i = 0; i < e.pivots.size(); ++i) x[e.pivots[i]] = e.rhs[i];
  return x;
}

BitVec Gf2Matrix::apply(const BitVec& x) const {
  BitVec y(rows());
  for (std::size_t i = 0; i < rows(); ++i) y[i] = (rows_[i] & x).count() % 2 == 1;
  return y;
}

Gf2Matrix Gf2Matrix::inverse() const {
  if (rows() != cols()) throw InternalError("inverse of a non-square matrix");
  if (rank() != cols()) throw InternalError("matrix is singular");
  Gf2Matrix inv(col_labels_, row_labels_);
  for (std::size_t j = 0; j < rows(); ++j) {
    BitVec unit(rows());
    unit[j] = true;
    const auto x = solve(unit);
    for (auto i = x->find_first(); i != BitVec::npos; i = x->find_next(i)) inv.rows_[i][j] = true;
  }
  return inv;
}

std::size_t rank_of(const std::vector<Combination>& family) {
  // Incremental elimination keyed by the largest index.
  std::unordered_map<std::uint64_t, Combination> by_lead;
  std::size_t rank = 0;
  for (Combination c : family) {
    while (!c.empty()) {
      auto it = by_lead.find(c.max_index());
      if (it == by_lead.end()) break;
      c += it->second;
    }
    if (!c.empty()) {
      by_lead.emplace(c.max_index(), std::move(c));
      ++rank;
    }
  }
  return rank;
}

}  // namespace mfmod2
