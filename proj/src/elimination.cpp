#include "rowfinite/elimination.hpp"

#include <algorithm>
#include <string>

#include "rowfinite/errors.hpp"

namespace rowfinite {

EliminationState::EliminationState(EliminationMode mode, std::optional<Index> regular_order_index)
    : mode_(mode), regular_order_(regular_order_index) {}

std::vector<Index> EliminationState::j_set() const {
  std::vector<Index> out;
  for (Index i = 0; i < consumed(); ++i)
    if (!h_[static_cast<std::size_t>(i)].is_zero()) out.push_back(i);
  return out;
}

std::vector<Index> EliminationState::w_set() const {
  std::vector<Index> out;
  for (Index i = 0; i < consumed(); ++i)
    if (h_[static_cast<std::size_t>(i)].is_zero()) out.push_back(i);
  return out;
}

std::vector<Index> EliminationState::mu() const {
  std::vector<Index> out;
  out.reserve(pivots_.size());
  for (const auto& pivot : pivots_) out.push_back(pivot.first);
  return out;
}

Index EliminationState::stable_since(Index n) const {
  if (n < 0 || n >= consumed()) throw ContractViolation("stable_since: row out of range");
  return *std::max_element(last_change_.begin(), last_change_.begin() + n + 1);
}

Index EliminationState::greatest_length() const noexcept {
  return pivots_.empty() ? -1 : pivots_.back().first;
}

Reduction EliminationState::gaussian_reduce(const FiniteRow& row) const {
  Reduction out{row, FiniteRow::unit(consumed())};
  // H is row-reduced, so clearing one pivot column never refills another and
  // a single pass in increasing pivot order is exhaustive.
  for (const auto& [length, index] : pivots_) {
    if (length > out.g.length()) break;
    const Scalar c = out.g.at(length);
    if (is_zero(c)) continue;
    out.g.add_scaled(-c, h_[static_cast<std::size_t>(index)]);
    out.q.add_scaled(-c, q_[static_cast<std::size_t>(index)]);
  }
  if (!out.g.is_zero() && out.g.rightmost() != 1) {
    const Scalar inverse = Scalar(1) / out.g.rightmost();
    out.g.scale(inverse);
    out.q.scale(inverse);
  }
  return out;
}

std::vector<Index> EliminationState::jordan_clear(const Reduction& reduced) {
  const Index pivot = reduced.g.length();
  if (reduced.g.is_zero() || pivot >= greatest_length())
    throw ContractViolation("jordan_clear: pivot row must be nonzero and shorter than H");
  if (reduced.g.rightmost() != 1)
    throw ContractViolation("jordan_clear: pivot row is not normalized");

  std::vector<Index> touched;
  for (std::size_t i = 0; i < h_.size(); ++i) {
    const Scalar c = h_[i].at(pivot);
    if (is_zero(c)) continue;
    h_[i].add_scaled(-c, reduced.g);
    q_[i].add_scaled(-c, reduced.q);
    touched.push_back(static_cast<Index>(i));
  }
  return touched;
}

void EliminationState::insert_with_permutation(Reduction reduced, std::span<const Index> touched) {
  const Index k = consumed();
  const Index length = reduced.g.length();
  const Index previous_greatest = greatest_length();
  if (!reduced.g.is_zero()) {
    const bool clash = std::any_of(pivots_.begin(), pivots_.end(),
                                   [&](const auto& p) { return p.first == length; });
    if (clash) throw ContractViolation("insert_with_permutation: duplicate pivot length");
  }

  h_.emplace_back();
  q_.emplace_back();
  last_change_.push_back(k);
  for (Index i : touched) last_change_[static_cast<std::size_t>(i)] = k;

  if (reduced.g.is_zero() || length > previous_greatest) {
    h_.back() = std::move(reduced.g);
    q_.back() = std::move(reduced.q);
    if (length >= 0) pivots_.emplace_back(length, k);
    return;
  }

  // Nonzero slots in row order; the new slot k closes the list. Rows from the
  // insertion point on each move one nonzero slot down; zero rows stay put.
  std::vector<Index> slots;
  slots.reserve(pivots_.size() + 1);
  for (const auto& pivot : pivots_) slots.push_back(pivot.second);
  slots.push_back(k);

  const auto position = static_cast<std::size_t>(
      std::lower_bound(pivots_.begin(), pivots_.end(), std::make_pair(length, Index{-1})) -
      pivots_.begin());

  for (std::size_t s = slots.size() - 1; s > position; --s) {
    const auto to = static_cast<std::size_t>(slots[s]);
    const auto from = static_cast<std::size_t>(slots[s - 1]);
    h_[to] = std::move(h_[from]);
    q_[to] = std::move(q_[from]);
    last_change_[to] = k;
  }
  const auto target = static_cast<std::size_t>(slots[position]);
  h_[target] = std::move(reduced.g);
  q_[target] = std::move(reduced.q);
  last_change_[target] = k;
  refresh_pivots();
}

void EliminationState::push_row(const FiniteRow& row) {
  max_input_length_ = std::max(max_input_length_, row.length());
  input_.push_back(row);
  Reduction reduced = gaussian_reduce(row);
  if (!reduced.g.is_zero() && reduced.g.length() < greatest_length()) {
    if (mode_ == EliminationMode::gauss_only)
      throw ContractViolation("row " + std::to_string(consumed()) +
                              " broke lower echelon form in gauss_only mode");
    const std::vector<Index> touched = jordan_clear(reduced);
    insert_with_permutation(std::move(reduced), touched);
  } else {
    insert_with_permutation(std::move(reduced));
  }
}

void EliminationState::refresh_pivots() {
  pivots_.clear();
  for (std::size_t i = 0; i < h_.size(); ++i)
    if (!h_[i].is_zero()) pivots_.emplace_back(h_[i].length(), static_cast<Index>(i));
}

EliminationState run(const RowSource& source, Index rows) {
  if (rows < 1) throw ContractViolation("run: horizon must be at least 1");
  const auto& tags = source.tags();
  EliminationState state(
      tags.lower_echelon ? EliminationMode::gauss_only : EliminationMode::gauss_jordan,
      tags.regular_order_index);
  for (Index n = 0; n < rows; ++n) state.push_row(source.row_at(n));
  return state;
}

QhfPrefix qhf_prefix(const EliminationState& state, Index n) {
  if (n < 0 || n >= state.consumed())
    throw ContractViolation("qhf_prefix: row " + std::to_string(n) + " not yet constructed");
  QhfPrefix prefix;
  const auto count = static_cast<std::size_t>(n + 1);
  prefix.rows.assign(state.h_rows().begin(), state.h_rows().begin() + n + 1);
  prefix.q_rows.assign(state.q_rows().begin(), state.q_rows().begin() + n + 1);
  prefix.stable_since.reserve(count);
  for (Index i = 0; i <= n; ++i) prefix.stable_since.push_back(state.stable_since(i));
  prefix.certified = state.certified();
  return prefix;
}

std::vector<FiniteRow> left_null_basis(const EliminationState& state) {
  std::vector<FiniteRow> basis;
  for (Index w : state.w_set()) basis.push_back(state.q_rows()[static_cast<std::size_t>(w)]);
  return basis;
}

bool verify_left_association(std::span<const FiniteRow> h_rows,
                             std::span<const FiniteRow> q_rows,
                             std::span<const FiniteRow> inputs) {
  if (h_rows.size() != q_rows.size()) return false;
  for (std::size_t n = 0; n < h_rows.size(); ++n) {
    FiniteRow combination;
    for (const auto& [k, coefficient] : q_rows[n].entries()) {
      if (k >= static_cast<Index>(inputs.size())) return false;
      combination.add_scaled(coefficient, inputs[static_cast<std::size_t>(k)]);
    }
    if (combination != h_rows[n]) return false;
  }
  return true;
}

bool verify_left_association(const EliminationState& state, const RowSource& source) {
  std::vector<FiniteRow> inputs;
  inputs.reserve(static_cast<std::size_t>(state.consumed()));
  for (Index n = 0; n < state.consumed(); ++n) inputs.push_back(source.row_at(n));
  return verify_left_association(state.h_rows(), state.q_rows(), inputs);
}

bool satisfies_qhf_postulates(std::span<const FiniteRow> h_rows) {
  std::vector<Index> pivots;
  Index previous = -1;
  for (const auto& row : h_rows) {
    if (row.is_zero()) continue;
    if (row.length() <= previous) return false;  // lengths strictly increase
    if (row.rightmost() != 1) return false;      // rightmost coefficient is 1
    previous = row.length();
    pivots.push_back(row.length());
  }
  for (const auto& row : h_rows) {
    if (row.is_zero()) continue;
    for (Index pivot : pivots)  // zeros above and below every leading 1
      if (pivot != row.length() && !is_zero(row.at(pivot))) return false;
  }
  return true;
}

}  // namespace rowfinite
