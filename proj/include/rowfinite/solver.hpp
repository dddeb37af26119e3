#pragma once

#include <map>
#include <span>
#include <vector>

#include "rowfinite/elimination.hpp"

namespace rowfinite {

using Sequence = std::vector<Scalar>;

/// Free constants of a solution, keyed by inaccessible position.
using FreeConstants = std::map<Index, Scalar>;

/// Columns below a horizon that are not the length of any nonzero row of H.
struct InaccessibleLengths {
  std::vector<Index> values;
  Index horizon = 0;
  /// True when no later row can add a length below the horizon.
  bool complete = false;
};

struct DeficiencyReport {
  Index count = 0;
  bool complete = false;
};

enum class BasisKind { finite, schauder_prefix };

struct FundamentalSet {
  /// Inaccessible positions s, ascending; sequences[i] is xi^(indices[i]).
  std::vector<Index> indices;
  std::vector<Sequence> sequences;
  BasisKind basis_kind = BasisKind::schauder_prefix;
};

struct FrechetDistance {
  /// Partial sum over i in [0, horizon).
  Scalar value;
  /// Upper bound on the omitted tail, 2^(1 - horizon).
  Scalar tail_bound;
};

/// Throws InsufficientData when horizon exceeds greatest_input_length() + 1.
InaccessibleLengths inaccessible_lengths(const EliminationState& state, Index horizon);

DeficiencyReport deficiency_report(const EliminationState& state, Index horizon);

/// xi^(s) for each inaccessible s below horizon, `terms` entries each:
/// 1 at s, -h_{j_n s} at mu_n, 0 elsewhere. Requires terms <= horizon.
FundamentalSet fundamental_set(const EliminationState& state, Index horizon, Index terms);

/// Homogeneous solution prefix. Unlisted free constants are zero; a key at
/// an accessible position throws SpecError.
Sequence homogeneous_general(const EliminationState& state, const FreeConstants& free,
                             Index terms);

/// k = Q.g on the consumed prefix.
Sequence rhs_transform(const EliminationState& state, std::span<const Scalar> g);

/// Zero rows w with k_w != 0; empty means consistent at this horizon.
std::vector<Index> consistency_check(const EliminationState& state,
                                     std::span<const Scalar> g);

/// k_{j_i} placed at mu_i, zeros elsewhere. Throws InconsistentSystem.
Sequence particular_solution(const EliminationState& state, std::span<const Scalar> g,
                             Index terms);

/// Particular plus homogeneous part. An empty g means the homogeneous system.
Sequence general_solution(const EliminationState& state, std::span<const Scalar> g,
                          const FreeConstants& free, Index terms);

/// y_{n+N} = sum_{k<=n} q_{nk} g_k - sum_{k<N} h_{nk} c_k for a certified
/// regular-order state of index N. init holds c_0..c_{N-1}.
Scalar regular_order_term(const EliminationState& state, std::span<const Scalar> g,
                          std::span<const Scalar> init, Index n);

/// Partial Frechet metric sum_{i<horizon} 2^-i |x_i - y_i| / (1 + |x_i - y_i|).
FrechetDistance frechet_distance(std::span<const Scalar> x, std::span<const Scalar> y,
                                 Index horizon);

}  // namespace rowfinite
