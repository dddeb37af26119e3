#pragma once

#include <optional>
#include <span>
#include <vector>

#include "rowfinite/finite_row.hpp"
#include "rowfinite/row_source.hpp"

namespace rowfinite {

enum class EliminationMode {
  gauss_jordan,  // full rightmost-pivot Gauss-Jordan with row permutations
  gauss_only,    // lower-echelon sources: Gaussian clearing only
};

/// A reduced incoming row G_k together with the row of Q that produces it
/// from the consumed rows of A.
struct Reduction {
  FiniteRow g;
  FiniteRow q;
};

/// First n+1 rows of H and Q with their stabilization markers.
struct QhfPrefix {
  std::vector<FiniteRow> rows;
  std::vector<FiniteRow> q_rows;
  /// stable_since[i]: last step k at which rows 0..i changed (empirical
  /// delta_i). Equals i for every i when certified.
  std::vector<Index> stable_since;
  bool certified = false;
};

/// Streaming infinite Gauss-Jordan elimination with rightmost pivots.
///
/// After k pushed rows, h_rows() is H^(k-1): its nonzero rows are in
/// quasi-Hermite form (strictly increasing lengths, rightmost coefficient 1,
/// zero entries in every other row at each pivot column) and zero rows stay
/// at the index where they were created. q_rows() mirrors every operation on
/// the identity so that Q.A = H on the consumed prefix.
///
/// Single owner; not safe for concurrent mutation.
class EliminationState {
 public:
  explicit EliminationState(EliminationMode mode = EliminationMode::gauss_jordan,
                            std::optional<Index> regular_order_index = std::nullopt);

  /// Number of rows of A consumed so far.
  Index consumed() const noexcept { return static_cast<Index>(h_.size()); }

  const std::vector<FiniteRow>& h_rows() const noexcept { return h_; }
  const std::vector<FiniteRow>& q_rows() const noexcept { return q_; }
  /// Copies of the consumed rows of A, in input order.
  const std::vector<FiniteRow>& input_rows() const noexcept { return input_; }

  /// Indices of nonzero rows (J), ascending.
  std::vector<Index> j_set() const;
  /// Indices of zero rows (W), ascending.
  std::vector<Index> w_set() const;
  /// Lengths of the nonzero rows in row order; strictly increasing.
  std::vector<Index> mu() const;

  /// Per row index: the last step at which that row's content changed.
  const std::vector<Index>& last_change() const noexcept { return last_change_; }
  /// Last step at which any of rows 0..n changed.
  Index stable_since(Index n) const;

  /// Greatest length among rows of H (-1 if all zero).
  Index greatest_length() const noexcept;
  /// Greatest length among consumed rows of A (-1 if all zero).
  Index greatest_input_length() const noexcept { return max_input_length_; }

  EliminationMode mode() const noexcept { return mode_; }
  std::optional<Index> regular_order_index() const noexcept { return regular_order_; }
  /// Prefix finality is guaranteed (delta_n = n) only in gauss_only mode.
  bool certified() const noexcept { return mode_ == EliminationMode::gauss_only; }

  /// Step I: clears the entries of row at the pivot columns of the current
  /// nonzero rows and normalizes the rightmost coefficient to 1. The result
  /// is zero or has a length distinct from every existing pivot length.
  Reduction gaussian_reduce(const FiniteRow& row) const;

  /// Step II: uses reduced.g (nonzero, shorter than the greatest length) to
  /// zero column length(g) in every existing row. Returns the indices of the
  /// rows that were modified. Row lengths are unchanged.
  std::vector<Index> jordan_clear(const Reduction& reduced);

  /// Step III: appends reduced at index k (zero row or new greatest length)
  /// or slots it among the nonzero rows by length, shifting the displaced
  /// nonzero rows down into the next nonzero slots. Zero rows never move.
  /// touched lists rows already modified during this step.
  void insert_with_permutation(Reduction reduced, std::span<const Index> touched = {});

  /// Consumes the next row of A: steps I, II and III.
  void push_row(const FiniteRow& row);

 private:
  void refresh_pivots();

  EliminationMode mode_;
  std::optional<Index> regular_order_;
  std::vector<FiniteRow> h_;
  std::vector<FiniteRow> q_;
  std::vector<FiniteRow> input_;
  std::vector<Index> last_change_;
  // (length, row index) of nonzero rows, sorted by length.
  std::vector<std::pair<Index, Index>> pivots_;
  Index max_input_length_ = -1;
};

/// Pushes rows 0..rows-1 of source. Lower-echelon sources run gauss_only.
EliminationState run(const RowSource& source, Index rows);

/// First n+1 rows; throws ContractViolation when n >= state.consumed().
QhfPrefix qhf_prefix(const EliminationState& state, Index n);

/// Rows of Q indexed by W: a basis of the left-null space of the consumed
/// prefix.
std::vector<FiniteRow> left_null_basis(const EliminationState& state);

/// True iff q[n] . (columns of inputs) == h[n] exactly for every n.
bool verify_left_association(std::span<const FiniteRow> h_rows,
                             std::span<const FiniteRow> q_rows,
                             std::span<const FiniteRow> inputs);

/// Recomputes Q.A from source and compares with the state's H.
bool verify_left_association(const EliminationState& state, const RowSource& source);

/// Checks the three quasi-Hermite postulates on the nonzero rows of h_rows.
bool satisfies_qhf_postulates(std::span<const FiniteRow> h_rows);

}  // namespace rowfinite
