#include "rowfinite/finite_row.hpp"

#include <algorithm>

#include "rowfinite/errors.hpp"

namespace rowfinite {

FiniteRow FiniteRow::from_entries(std::vector<Entry> entries) {
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& a, const Entry& b) { return a.first < b.first; });
  FiniteRow row;
  for (auto& [col, value] : entries) {
    if (col < 0) throw ContractViolation("FiniteRow: negative column");
    if (!row.entries_.empty() && row.entries_.back().first == col) {
      row.entries_.back().second += value;
      if (rowfinite::is_zero(row.entries_.back().second)) row.entries_.pop_back();
    } else if (!rowfinite::is_zero(value)) {
      row.entries_.emplace_back(col, std::move(value));
    }
  }
  return row;
}

FiniteRow FiniteRow::from_dense(std::span<const Scalar> values) {
  FiniteRow row;
  for (std::size_t c = 0; c < values.size(); ++c)
    if (!rowfinite::is_zero(values[c])) row.entries_.emplace_back(static_cast<Index>(c), values[c]);
  return row;
}

FiniteRow FiniteRow::from_dense(std::initializer_list<Scalar> values) {
  return from_dense(std::span<const Scalar>(values.begin(), values.size()));
}

FiniteRow FiniteRow::unit(Index col) {
  FiniteRow row;
  row.entries_.emplace_back(col, Scalar(1));
  return row;
}

Scalar FiniteRow::at(Index col) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), col,
                             [](const Entry& e, Index c) { return e.first < c; });
  if (it != entries_.end() && it->first == col) return it->second;
  return Scalar(0);
}

const Scalar& FiniteRow::rightmost() const {
  if (entries_.empty()) throw ContractViolation("rightmost coefficient of the zero row");
  return entries_.back().second;
}

std::vector<Scalar> FiniteRow::to_dense(Index width) const {
  std::vector<Scalar> out(static_cast<std::size_t>(std::max<Index>(width, 0)));
  for (const auto& [col, value] : entries_) {
    if (col >= width) break;
    out[static_cast<std::size_t>(col)] = value;
  }
  return out;
}

void FiniteRow::add_scaled(const Scalar& c, const FiniteRow& src) {
  if (rowfinite::is_zero(c) || src.entries_.empty()) return;
  std::vector<Entry> merged;
  merged.reserve(entries_.size() + src.entries_.size());
  auto a = entries_.begin();
  auto b = src.entries_.begin();
  while (a != entries_.end() || b != src.entries_.end()) {
    if (b == src.entries_.end() || (a != entries_.end() && a->first < b->first)) {
      merged.push_back(std::move(*a++));
    } else if (a == entries_.end() || b->first < a->first) {
      merged.emplace_back(b->first, c * b->second);
      ++b;
    } else {
      Scalar sum = a->second + c * b->second;
      if (!rowfinite::is_zero(sum)) merged.emplace_back(a->first, std::move(sum));
      ++a;
      ++b;
    }
  }
  entries_ = std::move(merged);
}

void FiniteRow::scale(const Scalar& c) {
  if (rowfinite::is_zero(c)) throw ContractViolation("FiniteRow::scale by zero");
  for (auto& entry : entries_) entry.second *= c;
}

FiniteRow axpy(const FiniteRow& dst, const Scalar& c, const FiniteRow& src) {
  FiniteRow out = dst;
  out.add_scaled(c, src);
  return out;
}

FiniteRow normalize_rightmost(const FiniteRow& row) {
  if (row.is_zero()) throw ContractViolation("normalize_rightmost: zero row");
  FiniteRow out = row;
  const Scalar lead = row.rightmost();
  if (lead != 1) out.scale(1 / lead);
  return out;
}

Scalar dot_prefix(const FiniteRow& row, std::span<const Scalar> column) {
  if (row.length() >= static_cast<Index>(column.size()))
    throw InsufficientData("dot_prefix: column has " + std::to_string(column.size()) +
                           " entries, row reaches column " + std::to_string(row.length()));
  Scalar sum(0);
  for (const auto& [col, value] : row.entries())
    sum += value * column[static_cast<std::size_t>(col)];
  return sum;
}

}  // namespace rowfinite
