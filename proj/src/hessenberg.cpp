#include "rowfinite/hessenberg.hpp"

#include <memory>
#include <string>
#include <unordered_map>

#include "rowfinite/errors.hpp"

namespace rowfinite {

namespace {

void require_spec(const HessSpec& spec) {
  if (spec.order < 0) throw ContractViolation("negative order");
  if (static_cast<Index>(spec.init.size()) != spec.order)
    throw ContractViolation("expected " + std::to_string(spec.order) + " initial values, got " +
                            std::to_string(spec.init.size()));
}

// Alternating-sign read-off of the leading dets: (-1)^n d_n.
std::vector<Scalar> signed_dets(const HessSpec& spec, std::vector<Scalar> first) {
  const auto count = static_cast<Index>(first.size());
  if (count == 0) return {};
  std::vector<Scalar> dets =
      hess_leading_dets(solution_matrix(spec, first, count - 1));
  for (std::size_t n = 1; n < dets.size(); n += 2) dets[n] = -dets[n];
  return dets;
}

Scalar forcing(const HessSpec& spec, Index n) { return spec.g ? spec.g(n) : Scalar(0); }

}  // namespace

Scalar LowerHessenberg::entry(Index r, Index c) const {
  if (r < 0 || c < 0 || r >= order() || c >= order())
    throw ContractViolation("LowerHessenberg::entry out of range");
  if (c == 0) return first_column[static_cast<std::size_t>(r)];
  if (c <= r) return band[static_cast<std::size_t>(r)][static_cast<std::size_t>(c - 1)];
  if (c == r + 1) return Scalar(1);
  return Scalar(0);
}

std::vector<Scalar> hess_leading_dets(const LowerHessenberg& m) {
  const Index size = m.order();
  if (static_cast<Index>(m.band.size()) != size)
    throw ContractViolation("hess_leading_dets: band and first column differ in size");
  // dets[k + 1] holds d_k so that d_{-1} = 1 sits at dets[0].
  std::vector<Scalar> dets(static_cast<std::size_t>(size + 1));
  dets[0] = 1;
  for (Index k = 0; k < size; ++k) {
    const auto& band = m.band[static_cast<std::size_t>(k)];
    if (static_cast<Index>(band.size()) != k)
      throw ContractViolation("hess_leading_dets: band row " + std::to_string(k) +
                              " has the wrong width");
    Scalar d(0);
    for (Index j = 0; j <= k; ++j) {
      const Scalar& entry =
          j == 0 ? m.first_column[static_cast<std::size_t>(k)] : band[static_cast<std::size_t>(j - 1)];
      if (is_zero(entry)) continue;
      const Scalar term = entry * dets[static_cast<std::size_t>(j)];
      if ((k - j) % 2 == 0) {
        d += term;
      } else {
        d -= term;
      }
    }
    dets[static_cast<std::size_t>(k + 1)] = std::move(d);
  }
  dets.erase(dets.begin());
  return dets;
}

Scalar hess_det(const LowerHessenberg& m) {
  if (m.order() == 0) return Scalar(1);
  return hess_leading_dets(m).back();
}

LowerHessenberg solution_matrix(const HessSpec& spec, std::span<const Scalar> first, Index n) {
  if (n < 0) throw ContractViolation("solution_matrix: negative size");
  if (static_cast<Index>(first.size()) < n + 1)
    throw ContractViolation("solution_matrix: first column too short");
  LowerHessenberg m;
  m.first_column.assign(first.begin(), first.begin() + n + 1);
  m.band.resize(static_cast<std::size_t>(n + 1));
  for (Index r = 0; r <= n; ++r) {
    auto& row = m.band[static_cast<std::size_t>(r)];
    row.reserve(static_cast<std::size_t>(r));
    for (Index c = 1; c <= r; ++c) row.push_back(spec.a(r, spec.order + c - 1));
  }
  return m;
}

std::vector<Scalar> xi_terms(const HessSpec& spec, Index i, Index count) {
  if (i < 0 || i >= spec.order) throw ContractViolation("xi_terms: index outside [0, N)");
  if (count < 0) throw ContractViolation("xi_terms: negative count");
  std::vector<Scalar> first;
  first.reserve(static_cast<std::size_t>(count));
  for (Index r = 0; r < count; ++r) first.push_back(-spec.a(r, i));
  return signed_dets(spec, std::move(first));
}

Scalar xi_term(const HessSpec& spec, Index i, Index n) {
  if (i < 0 || i >= spec.order) throw ContractViolation("xi_term: index outside [0, N)");
  if (n < -spec.order) throw ContractViolation("xi_term: index below -N");
  if (n < 0) return Scalar(n == i - spec.order ? 1 : 0);
  return xi_terms(spec, i, n + 1).back();
}

std::vector<Scalar> particular_terms(const HessSpec& spec, Index count) {
  if (count < 0) throw ContractViolation("particular_terms: negative count");
  std::vector<Scalar> first;
  first.reserve(static_cast<std::size_t>(count));
  for (Index r = 0; r < count; ++r) first.push_back(forcing(spec, r));
  return signed_dets(spec, std::move(first));
}

Scalar particular_term(const HessSpec& spec, Index n) {
  if (n < 0) return Scalar(0);
  return particular_terms(spec, n + 1).back();
}

std::vector<Scalar> general_terms(const HessSpec& spec, Index count) {
  require_spec(spec);
  if (count < 0) throw ContractViolation("general_terms: negative count");
  std::vector<Scalar> first;
  first.reserve(static_cast<std::size_t>(count));
  for (Index r = 0; r < count; ++r) {
    Scalar value = forcing(spec, r);
    for (Index i = 0; i < spec.order; ++i)
      value -= spec.a(r, i) * spec.init[static_cast<std::size_t>(i)];
    first.push_back(std::move(value));
  }
  return signed_dets(spec, std::move(first));
}

Scalar general_term(const HessSpec& spec, Index n) {
  require_spec(spec);
  if (n < -spec.order) throw ContractViolation("general_term: index below -N");
  if (n < 0) return spec.init[static_cast<std::size_t>(n + spec.order)];
  return general_terms(spec, n + 1).back();
}

std::vector<Scalar> general_terms_superposed(const HessSpec& spec, Index count) {
  require_spec(spec);
  std::vector<Scalar> y = particular_terms(spec, count);
  for (Index i = 0; i < spec.order; ++i) {
    const Scalar& c = spec.init[static_cast<std::size_t>(i)];
    if (is_zero(c)) continue;
    const std::vector<Scalar> xi = xi_terms(spec, i, count);
    for (std::size_t n = 0; n < y.size(); ++n) y[n] += c * xi[n];
  }
  return y;
}

Scalar recurrence_residual(const HessSpec& spec, std::span<const Scalar> y_from_minus_n,
                           Index n) {
  if (n < 0) throw ContractViolation("recurrence_residual: negative n");
  const Index top = n + spec.order;
  if (static_cast<Index>(y_from_minus_n.size()) <= top)
    throw InsufficientData("recurrence_residual: sequence does not reach y_" +
                           std::to_string(n));
  Scalar residual = y_from_minus_n[static_cast<std::size_t>(top)] - forcing(spec, n);
  for (Index j = 0; j < top; ++j)
    residual += spec.a(n, j) * y_from_minus_n[static_cast<std::size_t>(j)];
  return residual;
}

HessSpec hess_spec_from_source(const RowSource& source, std::vector<Scalar> g,
                               std::vector<Scalar> init) {
  if (!source.tags().regular_order_index)
    throw SpecError("family '" + std::string(family_name(source.kind())) +
                    "' is not of regular order; no Hessenbergian form");
  const Index order = *source.tags().regular_order_index;
  if (static_cast<Index>(init.size()) != order)
    throw SpecError("expected " + std::to_string(order) + " initial values, got " +
                    std::to_string(init.size()));

  // Rows are generated once; the determinant passes read each coefficient
  // many times.
  auto cache = std::make_shared<std::unordered_map<Index, FiniteRow>>();
  auto raw_row = [source, cache](Index n) -> const FiniteRow& {
    auto it = cache->find(n);
    if (it == cache->end()) it = cache->emplace(n, source.row_at(n)).first;
    return it->second;
  };

  HessSpec spec;
  spec.order = order;
  spec.init = std::move(init);
  spec.a = [raw_row](Index n, Index j) {
    const FiniteRow& row = raw_row(n);
    return Scalar(row.at(j) / row.rightmost());
  };
  auto forcing_values = std::make_shared<const std::vector<Scalar>>(std::move(g));
  spec.g = [raw_row, forcing_values](Index n) -> Scalar {
    if (forcing_values->empty()) return Scalar(0);
    if (n >= static_cast<Index>(forcing_values->size()))
      throw InsufficientData("forcing prefix has " + std::to_string(forcing_values->size()) +
                             " terms; g_" + std::to_string(n) + " needed");
    return (*forcing_values)[static_cast<std::size_t>(n)] / raw_row(n).rightmost();
  };
  return spec;
}

}  // namespace rowfinite
