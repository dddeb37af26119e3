#pragma once

// Independent reference computations for the test suites. Nothing here calls
// the elimination or determinant code under test.

#include <algorithm>
#include <functional>
#include <random>
#include <vector>

#include "rowfinite/finite_row.hpp"
#include "rowfinite/row_source.hpp"

namespace oracle {

using rowfinite::FiniteRow;
using rowfinite::Index;
using rowfinite::Scalar;
using Dense = std::vector<std::vector<Scalar>>;

inline FiniteRow row(std::initializer_list<long> values) {
  std::vector<Scalar> dense;
  for (long v : values) dense.emplace_back(v);
  return FiniteRow::from_dense(dense);
}

inline std::vector<Scalar> seq(std::initializer_list<long> values) {
  std::vector<Scalar> out;
  for (long v : values) out.emplace_back(v);
  return out;
}

// Laplace expansion along the first row. Exponential; orders <= 7 only.
inline Scalar cofactor_det(const Dense& m) {
  const std::size_t n = m.size();
  if (n == 0) return Scalar(1);
  if (n == 1) return m[0][0];
  Scalar det(0);
  for (std::size_t c = 0; c < n; ++c) {
    if (sgn(m[0][c]) == 0) continue;
    Dense minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Scalar> line;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) line.push_back(m[r][k]);
      minor.push_back(std::move(line));
    }
    const Scalar term = m[0][c] * cofactor_det(minor);
    det += (c % 2 == 0) ? term : Scalar(-term);
  }
  return det;
}

// Rank by textbook Gaussian elimination on a dense copy.
inline Index dense_rank(Dense m) {
  Index rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && static_cast<std::size_t>(rank) < m.size(); ++c) {
    std::size_t pivot = static_cast<std::size_t>(rank);
    while (pivot < m.size() && sgn(m[pivot][c]) == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[pivot], m[static_cast<std::size_t>(rank)]);
    const auto& top = m[static_cast<std::size_t>(rank)];
    for (std::size_t r = static_cast<std::size_t>(rank) + 1; r < m.size(); ++r) {
      if (sgn(m[r][c]) == 0) continue;
      const Scalar f = m[r][c] / top[c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * top[k];
    }
    ++rank;
  }
  return rank;
}

inline Dense to_dense(const std::vector<FiniteRow>& rows, Index width) {
  Dense out;
  for (const auto& r : rows) out.push_back(r.to_dense(width));
  return out;
}

// Dense Q.A compared entrywise against H.
inline bool dense_left_association(const std::vector<FiniteRow>& h,
                                   const std::vector<FiniteRow>& q,
                                   const std::vector<FiniteRow>& a) {
  Index width = 0;
  for (const auto& r : a) width = std::max(width, r.length() + 1);
  for (const auto& r : h) width = std::max(width, r.length() + 1);
  const Dense da = to_dense(a, width);
  const Dense dq = to_dense(q, static_cast<Index>(a.size()));
  for (std::size_t n = 0; n < h.size(); ++n) {
    if (q[n].length() >= static_cast<Index>(a.size())) return false;
    const std::vector<Scalar> target = h[n].to_dense(width);
    for (Index c = 0; c < width; ++c) {
      Scalar sum(0);
      for (std::size_t k = 0; k < a.size(); ++k) sum += dq[n][k] * da[k][static_cast<std::size_t>(c)];
      if (sum != target[static_cast<std::size_t>(c)]) return false;
    }
  }
  return true;
}

// Clears pivot columns in a shuffled order, sweeping until nothing changes,
// then normalizes. The pivots are the nonzero rows of H.
inline FiniteRow shuffled_reduce(FiniteRow work, const std::vector<FiniteRow>& h,
                                 std::mt19937_64& rng) {
  std::vector<const FiniteRow*> pivots;
  for (const auto& r : h)
    if (!r.is_zero()) pivots.push_back(&r);
  for (bool changed = true; changed;) {
    changed = false;
    std::shuffle(pivots.begin(), pivots.end(), rng);
    for (const FiniteRow* p : pivots) {
      const Scalar c = work.at(p->length());
      if (sgn(c) == 0) continue;
      work.add_scaled(-c, *p);
      changed = true;
    }
  }
  if (!work.is_zero()) work = rowfinite::normalize_rightmost(work);
  return work;
}

// y_n = g_n - sum_{j < N+n} a(n, j) y_{j-N}, for a normal-form recurrence;
// result holds y_{-N} .. y_{count-1}.
inline std::vector<Scalar> iterate_recurrence(Index order,
                                              const std::function<Scalar(Index, Index)>& a,
                                              const std::function<Scalar(Index)>& g,
                                              const std::vector<Scalar>& init, Index count) {
  std::vector<Scalar> y(init.begin(), init.end());
  for (Index n = 0; n < count; ++n) {
    Scalar value = g(n);
    for (Index j = 0; j < order + n; ++j) value -= a(n, j) * y[static_cast<std::size_t>(j)];
    y.push_back(value);
  }
  return y;
}

inline Scalar random_rational(std::mt19937_64& rng, long span = 9, long max_den = 5) {
  std::uniform_int_distribution<long> num(-span, span);
  std::uniform_int_distribution<long> den(1, max_den);
  Scalar value(num(rng), den(rng));
  value.canonicalize();
  return value;
}

inline Scalar random_nonzero(std::mt19937_64& rng) {
  Scalar value;
  do value = random_rational(rng);
  while (sgn(value) == 0);
  return value;
}

// Random explicit matrix: up to max_rows rows, integer entries in [-9, 9],
// supports of random width so that zero rows and Case ii both occur.
inline std::vector<FiniteRow> random_matrix(std::mt19937_64& rng, Index max_rows, Index max_cols) {
  std::uniform_int_distribution<Index> rows_dist(1, max_rows);
  std::uniform_int_distribution<Index> len_dist(-1, max_cols - 1);
  std::uniform_int_distribution<long> entry(-9, 9);
  std::bernoulli_distribution sparse(0.5);
  const Index rows = rows_dist(rng);
  std::vector<FiniteRow> out;
  for (Index r = 0; r < rows; ++r) {
    const Index length = len_dist(rng);
    std::vector<FiniteRow::Entry> entries;
    for (Index c = 0; c <= length; ++c)
      if (c == length || sparse(rng)) entries.emplace_back(c, Scalar(entry(rng)));
    out.push_back(FiniteRow::from_entries(std::move(entries)));
  }
  return out;
}

// A random regular-order equation of index N with tabulated rows 0..rows-1:
// row n spans columns [0, N+n] (ascending) or [n, N+n] (banded), with a
// nonzero leading coefficient.
struct RandomRegular {
  Index order;
  std::vector<FiniteRow> rows;
  std::vector<Scalar> g;
  std::vector<Scalar> init;
  bool banded;

  rowfinite::RowSource source() const {
    auto table = std::make_shared<const std::vector<FiniteRow>>(rows);
    return rowfinite::RowSource(
        banded ? rowfinite::FamilyKind::n_order : rowfinite::FamilyKind::ascending,
        {true, order}, [table](Index n) { return table->at(static_cast<std::size_t>(n)); });
  }
};

inline RandomRegular random_regular(std::mt19937_64& rng, Index order, Index rows) {
  RandomRegular out{order, {}, {}, {}, std::bernoulli_distribution(0.5)(rng)};
  std::bernoulli_distribution sparse(0.3);
  for (Index n = 0; n < rows; ++n) {
    std::vector<FiniteRow::Entry> entries;
    for (Index j = out.banded ? n : 0; j < order + n; ++j)
      if (!sparse(rng)) entries.emplace_back(j, random_rational(rng));
    entries.emplace_back(order + n, random_nonzero(rng));
    out.rows.push_back(FiniteRow::from_entries(std::move(entries)));
    out.g.push_back(random_rational(rng));
  }
  for (Index i = 0; i < order; ++i) out.init.push_back(random_rational(rng));
  return out;
}

}  // namespace oracle
