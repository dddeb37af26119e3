#include "rowfinite/solver.hpp"

#include <algorithm>
#include <string>

#include "rowfinite/errors.hpp"

namespace rowfinite {

namespace {

// Solution prefixes may reach every column some consumed row of A touches.
void require_terms(const EliminationState& state, Index terms, const char* what) {
  if (terms < 0) throw ContractViolation(std::string(what) + ": negative term count");
  if (terms > state.greatest_input_length() + 1)
    throw InsufficientData(std::string(what) + ": " + std::to_string(terms) +
                           " terms requested but consumed rows only reach column " +
                           std::to_string(state.greatest_input_length()) +
                           "; raise the horizon");
}

bool contains(const std::vector<Index>& sorted, Index value) {
  return std::binary_search(sorted.begin(), sorted.end(), value);
}

}  // namespace

InaccessibleLengths inaccessible_lengths(const EliminationState& state, Index horizon) {
  if (horizon < 0) throw ContractViolation("inaccessible_lengths: negative horizon");
  if (horizon > state.greatest_input_length() + 1)
    throw InsufficientData("inaccessible_lengths: horizon " + std::to_string(horizon) +
                           " beyond greatest observed length " +
                           std::to_string(state.greatest_input_length()));
  const std::vector<Index> mu = state.mu();
  InaccessibleLengths out;
  out.horizon = horizon;
  out.complete = state.certified();
  for (Index s = 0; s < horizon; ++s)
    if (!contains(mu, s)) out.values.push_back(s);
  return out;
}

DeficiencyReport deficiency_report(const EliminationState& state, Index horizon) {
  const InaccessibleLengths lengths = inaccessible_lengths(state, horizon);
  return {static_cast<Index>(lengths.values.size()), lengths.complete};
}

FundamentalSet fundamental_set(const EliminationState& state, Index horizon, Index terms) {
  require_terms(state, terms, "fundamental_set");
  if (terms > horizon)
    throw InsufficientData("fundamental_set: " + std::to_string(terms) +
                           " terms requested past horizon " + std::to_string(horizon));
  const InaccessibleLengths lengths = inaccessible_lengths(state, horizon);
  FundamentalSet out;
  out.basis_kind = lengths.complete ? BasisKind::finite : BasisKind::schauder_prefix;
  out.indices = lengths.values;
  for (Index s : lengths.values) {
    Sequence xi(static_cast<std::size_t>(terms));
    if (s < terms) xi[static_cast<std::size_t>(s)] = 1;
    for (const FiniteRow& row : state.h_rows()) {
      if (row.is_zero() || row.length() >= terms) continue;
      xi[static_cast<std::size_t>(row.length())] = -row.at(s);
    }
    out.sequences.push_back(std::move(xi));
  }
  return out;
}

Sequence homogeneous_general(const EliminationState& state, const FreeConstants& free,
                             Index terms) {
  require_terms(state, terms, "homogeneous_general");
  const std::vector<Index> mu = state.mu();
  for (const auto& [index, value] : free) {
    if (index < 0) throw SpecError("free constant at negative index " + std::to_string(index));
    if (contains(mu, index))
      throw SpecError("free constant given at accessible index " + std::to_string(index));
  }

  Sequence y(static_cast<std::size_t>(terms));
  for (const auto& [index, value] : free)
    if (index < terms) y[static_cast<std::size_t>(index)] = value;

  // Pivot columns of other rows are zero in H, so each accessible term only
  // reads free positions, all of which are already in place.
  for (const FiniteRow& row : state.h_rows()) {
    if (row.is_zero() || row.length() >= terms) continue;
    Scalar sum(0);
    for (const auto& [col, value] : row.entries()) {
      if (col == row.length()) break;
      sum += value * y[static_cast<std::size_t>(col)];
    }
    y[static_cast<std::size_t>(row.length())] = -sum;
  }
  return y;
}

Sequence rhs_transform(const EliminationState& state, std::span<const Scalar> g) {
  Sequence k;
  k.reserve(static_cast<std::size_t>(state.consumed()));
  for (const FiniteRow& q : state.q_rows()) {
    if (q.length() >= static_cast<Index>(g.size()))
      throw InsufficientData("forcing prefix has " + std::to_string(g.size()) +
                             " terms; Q needs g_" + std::to_string(q.length()));
    k.push_back(dot_prefix(q, g));
  }
  return k;
}

std::vector<Index> consistency_check(const EliminationState& state,
                                     std::span<const Scalar> g) {
  const Sequence k = rhs_transform(state, g);
  std::vector<Index> violated;
  for (Index w : state.w_set())
    if (!is_zero(k[static_cast<std::size_t>(w)])) violated.push_back(w);
  return violated;
}

Sequence particular_solution(const EliminationState& state, std::span<const Scalar> g,
                             Index terms) {
  require_terms(state, terms, "particular_solution");
  const Sequence k = rhs_transform(state, g);
  std::vector<Index> violated;
  for (Index w : state.w_set())
    if (!is_zero(k[static_cast<std::size_t>(w)])) violated.push_back(w);
  if (!violated.empty()) throw InconsistentSystem(std::move(violated));

  Sequence y(static_cast<std::size_t>(terms));
  const auto& rows = state.h_rows();
  for (std::size_t j = 0; j < rows.size(); ++j) {
    if (rows[j].is_zero() || rows[j].length() >= terms) continue;
    y[static_cast<std::size_t>(rows[j].length())] = k[j];
  }
  return y;
}

Sequence general_solution(const EliminationState& state, std::span<const Scalar> g,
                          const FreeConstants& free, Index terms) {
  Sequence y = homogeneous_general(state, free, terms);
  if (g.empty()) return y;
  const Sequence particular = particular_solution(state, g, terms);
  for (std::size_t m = 0; m < y.size(); ++m) y[m] += particular[m];
  return y;
}

Scalar regular_order_term(const EliminationState& state, std::span<const Scalar> g,
                          std::span<const Scalar> init, Index n) {
  if (!state.certified() || !state.regular_order_index())
    throw ContractViolation("regular_order_term: state is not a certified regular-order run");
  const Index order = *state.regular_order_index();
  if (static_cast<Index>(init.size()) != order)
    throw ContractViolation("regular_order_term: expected " + std::to_string(order) +
                            " initial values");
  if (n < 0 || n >= state.consumed())
    throw InsufficientData("regular_order_term: row " + std::to_string(n) +
                           " beyond the consumed horizon");

  const FiniteRow& q = state.q_rows()[static_cast<std::size_t>(n)];
  const FiniteRow& h = state.h_rows()[static_cast<std::size_t>(n)];
  Scalar value(0);
  if (!g.empty()) value = dot_prefix(q, g);  // empty g: homogeneous
  for (Index k = 0; k < order; ++k) value -= h.at(k) * init[static_cast<std::size_t>(k)];
  return value;
}

FrechetDistance frechet_distance(std::span<const Scalar> x, std::span<const Scalar> y,
                                 Index horizon) {
  if (horizon < 0) throw ContractViolation("frechet_distance: negative horizon");
  if (static_cast<Index>(x.size()) < horizon || static_cast<Index>(y.size()) < horizon)
    throw InsufficientData("frechet_distance: prefixes shorter than the horizon");
  FrechetDistance out{Scalar(0), power_of_two(1 - horizon)};
  Scalar weight(1);
  for (Index i = 0; i < horizon; ++i) {
    const Scalar d = abs(x[static_cast<std::size_t>(i)] - y[static_cast<std::size_t>(i)]);
    out.value += weight * d / (1 + d);
    weight /= 2;
  }
  return out;
}

}  // namespace rowfinite
