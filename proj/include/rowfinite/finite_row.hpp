#pragma once

#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "rowfinite/scalar.hpp"

namespace rowfinite {

/// A finitely supported sequence of exact rationals. Entries are kept in
/// strictly increasing column order and zero coefficients are never stored,
/// so the length is simply the last stored column.
class FiniteRow {
 public:
  using Entry = std::pair<Index, Scalar>;

  FiniteRow() = default;

  /// Builds from (column, value) pairs in any order. Duplicate columns are
  /// summed and zeros dropped. Negative columns are a contract violation.
  static FiniteRow from_entries(std::vector<Entry> entries);

  /// Builds from a dense prefix: values[c] is the coefficient of column c.
  static FiniteRow from_dense(std::span<const Scalar> values);
  static FiniteRow from_dense(std::initializer_list<Scalar> values);

  /// Canonical basis row e_col.
  static FiniteRow unit(Index col);

  /// Column of the rightmost nonzero entry; -1 for the zero row.
  Index length() const noexcept {
    return entries_.empty() ? -1 : entries_.back().first;
  }
  bool is_zero() const noexcept { return entries_.empty(); }

  /// Coefficient at col (zero when not stored).
  Scalar at(Index col) const;
  const Scalar& rightmost() const;

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  std::size_t support_size() const noexcept { return entries_.size(); }

  /// Dense copy of columns [0, width).
  std::vector<Scalar> to_dense(Index width) const;

  /// In-place this += c * src, dropping cancelled coefficients.
  void add_scaled(const Scalar& c, const FiniteRow& src);
  /// In-place scaling by a nonzero scalar.
  void scale(const Scalar& c);

  friend bool operator==(const FiniteRow&, const FiniteRow&) = default;

 private:
  std::vector<Entry> entries_;
};

/// dst + c * src.
FiniteRow axpy(const FiniteRow& dst, const Scalar& c, const FiniteRow& src);

/// Row scaled so that its rightmost coefficient is exactly 1.
/// Throws ContractViolation on the zero row.
FiniteRow normalize_rightmost(const FiniteRow& row);

/// Exact inner product over the support of row. Throws InsufficientData when
/// column does not reach row.length().
Scalar dot_prefix(const FiniteRow& row, std::span<const Scalar> column);

}  // namespace rowfinite
