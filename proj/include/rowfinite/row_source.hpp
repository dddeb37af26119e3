#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rowfinite/coeff_expr.hpp"
#include "rowfinite/finite_row.hpp"

namespace rowfinite {

enum class FamilyKind {
  explicit_rows,
  first_order,
  second_order,
  n_order,
  ascending,
  example2,
  example3,
};

std::string_view family_name(FamilyKind kind);
/// Throws SpecError for unknown names.
FamilyKind family_from_name(std::string_view name);

struct SourceTags {
  bool lower_echelon = false;
  /// N such that row n has length N + n with a nonzero leading coefficient.
  std::optional<Index> regular_order_index;
};

/// Oracle for the rows of a row-finite coefficient matrix A.
///
/// row_at is deterministic. Sources tagged with a regular order index verify
/// the tag on every generated row and throw EvalError when the leading
/// coefficient vanishes.
class RowSource {
 public:
  using Generator = std::function<FiniteRow(Index)>;

  RowSource(FamilyKind kind, SourceTags tags, Generator generator);

  /// Explicit finite list of rows; rows past the end are zero rows.
  static RowSource from_rows(std::vector<FiniteRow> rows);

  /// Ascending-order source of index N: row n holds coeff(n, j) for
  /// 0 <= j <= n + N. Regular-order tagged.
  static RowSource ascending(Index order, std::function<Scalar(Index, Index)> coeff);

  FiniteRow row_at(Index n) const;

  FamilyKind kind() const noexcept { return kind_; }
  const SourceTags& tags() const noexcept { return tags_; }

  /// Number of explicit rows, when kind() == explicit_rows.
  std::optional<Index> explicit_row_count() const noexcept { return explicit_count_; }

 private:
  FamilyKind kind_;
  SourceTags tags_;
  Generator generator_;
  std::optional<Index> explicit_count_;
};

/// Family description as read from an equation-spec file.
struct FamilyDescriptor {
  FamilyKind family = FamilyKind::explicit_rows;
  std::optional<Index> order;       // "N"
  std::optional<std::string> a;     // coefficient expression
  std::optional<std::string> b;     // second_order only: coefficient of y_{n-1}
  std::vector<Scalar> g;            // forcing prefix; never extended
  std::optional<std::string> g_expr;  // forcing as an expression in n
  std::vector<FiniteRow> rows;      // explicit family

  /// Claimed elimination certificate (Q, consumed rows of A) as written by a
  /// reduce run. "rows" then holds the claimed H.
  std::optional<std::vector<FiniteRow>> certificate_q;
  std::optional<std::vector<FiniteRow>> certificate_input;
};

/// Builds the row source for a descriptor. Throws SpecError on a missing
/// parameter or malformed expression.
///
///   first_order   row n = -a(n) e_n + e_{n+1}           (y_n = a_n y_{n-1})
///   second_order  row n = a(n) e_n + b(n) e_{n+1} + e_{n+2}
///   n_order       row n = sum_{j=n}^{n+N} a(n,j) e_j
///   ascending     row n = sum_{j=0}^{n+N} a(n,j) e_j
///   example2      (n-1) y_{n+2} - (n^2+3n-2) y_{n+1} + 2n(n+1) y_n = 0
///   example3      a(n,j) = 1 - cospi2(2n - j), 0 <= j <= n + 2
RowSource build_family(const FamilyDescriptor& spec);

/// Parses the JSON equation-spec / explicit-matrix formats. Unknown keys are
/// ignored; a document with "rows" and no "family" is an explicit matrix.
FamilyDescriptor parse_family_json(std::string_view json_text);

}  // namespace rowfinite
