#pragma once

#include <functional>
#include <span>
#include <vector>

#include "rowfinite/row_source.hpp"

namespace rowfinite {

/// Regular-order equation in normal form
///   y_n + a(n, N+n-1) y_{n-1} + ... + a(n, 0) y_{-N} = g(n),  n >= 0,
/// with initial values y_{-N}, ..., y_{-1} in init.
struct HessSpec {
  Index order = 0;
  std::function<Scalar(Index, Index)> a;
  std::function<Scalar(Index)> g;
  std::vector<Scalar> init;
};

/// Lower Hessenberg matrix with unit superdiagonal:
///   row r = (first_column[r], band[r][0], ..., band[r][r-1], 1, 0, ...)
/// The trailing 1 is implicit and absent on the last row.
struct LowerHessenberg {
  std::vector<Scalar> first_column;
  std::vector<std::vector<Scalar>> band;

  Index order() const noexcept { return static_cast<Index>(first_column.size()); }
  /// Entry (r, c) of the square matrix, including the implicit 1s and 0s.
  Scalar entry(Index r, Index c) const;
};

/// Determinants of all leading principal submatrices, via the last-row
/// recurrence d_k = sum_{j<=k} (-1)^(k-j) m(k, j) d_{j-1}, d_{-1} = 1.
std::vector<Scalar> hess_leading_dets(const LowerHessenberg& m);

Scalar hess_det(const LowerHessenberg& m);

/// The (n+1)x(n+1) solution matrix: first column `first`, band a(r, N+c-1).
LowerHessenberg solution_matrix(const HessSpec& spec, std::span<const Scalar> first,
                                Index n);

/// xi^(i)_n. For -N <= n <= -1 this is the initial pattern (1 iff n = i-N).
Scalar xi_term(const HessSpec& spec, Index i, Index n);
/// xi^(i)_n for n in [0, count), sharing one determinant recurrence.
std::vector<Scalar> xi_terms(const HessSpec& spec, Index i, Index count);

/// p_n = (-1)^n det[g ; C]; zero for n < 0.
Scalar particular_term(const HessSpec& spec, Index n);
std::vector<Scalar> particular_terms(const HessSpec& spec, Index count);

/// y_n as the single Hessenbergian with first column g_k - sum_i a(k,i) y_{i-N}.
/// For n < 0 returns the initial value.
Scalar general_term(const HessSpec& spec, Index n);
std::vector<Scalar> general_terms(const HessSpec& spec, Index count);

/// p_n + sum_i xi^(i)_n y_{i-N}: the superposition route to general_term.
std::vector<Scalar> general_terms_superposed(const HessSpec& spec, Index count);

/// Left-hand side residual y_n + sum_j a(n, j) y_{j-N} - g_n of a sequence
/// y given from index -N (y[0] = y_{-N}).
Scalar recurrence_residual(const HessSpec& spec, std::span<const Scalar> y_from_minus_n,
                           Index n);

/// Normal-form spec of a regular-order source: row n divided by its leading
/// coefficient a_{n,N+n}, forcing g_n divided likewise. Throws SpecError when
/// the source carries no regular-order tag. The forcing prefix must cover
/// every n requested later (InsufficientData otherwise); empty g means zero.
HessSpec hess_spec_from_source(const RowSource& source, std::vector<Scalar> g,
                               std::vector<Scalar> init);

}  // namespace rowfinite
