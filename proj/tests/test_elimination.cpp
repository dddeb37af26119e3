#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "reference_rows.hpp"
#include "rowfinite/elimination.hpp"
#include "rowfinite/errors.hpp"

using namespace rowfinite;
using oracle::row;
using reference::example2_qhf;
using reference::example3_q;
using reference::example3_qhf;

namespace {

Scalar q(long p, long d) { return make_scalar(p, d); }

FiniteRow qrow(std::vector<Scalar> dense) { return FiniteRow::from_dense(dense); }

RowSource builtin(FamilyKind kind) {
  FamilyDescriptor d;
  d.family = kind;
  return build_family(d);
}

EliminationState push_all(const std::vector<FiniteRow>& rows,
                          EliminationMode mode = EliminationMode::gauss_jordan) {
  EliminationState state(mode);
  for (const auto& r : rows) state.push_row(r);
  return state;
}

}  // namespace

TEST_CASE("Gaussian step") {
  EliminationState one;
  one.push_row(row({1, 2, 1}));
  CHECK(one.gaussian_reduce(row({0, 3, 4, 1})).g == row({-4, -5, 0, 1}));
  CHECK(one.gaussian_reduce(row({0, 3, 4, 1})).q == row({-4, 1}));
  CHECK(one.gaussian_reduce(FiniteRow{}).g.is_zero());
  CHECK(one.gaussian_reduce(FiniteRow{}).q == row({0, 1}));

  const EliminationState two = push_all({row({1, 1, 1}), row({0, 2, 1, 1})});
  REQUIRE(two.h_rows() == std::vector<FiniteRow>{row({1, 1, 1}), row({-1, 1, 0, 1})});
  CHECK(two.gaussian_reduce(row({0, 0, 3, 1, 1})).g == row({-2, -4, 0, 0, 1}));
}

TEST_CASE("Gaussian step normalizes the rightmost coefficient") {
  EliminationState state;
  const Reduction r = state.gaussian_reduce(row({0, 2, 4}));
  CHECK(r.g == qrow({0, q(1, 2), 1}));
  CHECK(r.q == qrow({q(1, 4)}));
}

TEST_CASE("Jordan step on Example 3") {
  const RowSource ex3 = builtin(FamilyKind::example3);
  EliminationState state;
  state.push_row(ex3.row_at(0));
  state.push_row(ex3.row_at(1));
  CHECK(state.h_rows()[0] == qrow({0, q(1, 2), 1}));
  CHECK(state.h_rows()[1] == row({2, 1, 0, 1}));

  const Reduction g2 = state.gaussian_reduce(ex3.row_at(2));
  CHECK(g2.g == row({2, 1}));
  const std::vector<Index> touched = state.jordan_clear(g2);
  CHECK(touched == std::vector<Index>{0, 1});
  CHECK(state.h_rows()[0] == row({-1, 0, 1}));
  CHECK(state.h_rows()[1] == row({0, 0, 0, 1}));
  for (const auto& r : state.h_rows()) CHECK(r.at(1) == 0);

  state.insert_with_permutation(g2, touched);
  CHECK(state.h_rows() ==
        std::vector<FiniteRow>{row({2, 1}), row({-1, 0, 1}), row({0, 0, 0, 1})});
  CHECK(state.last_change() == std::vector<Index>{2, 2, 2});
}

TEST_CASE("Jordan step without overlap leaves rows alone") {
  EliminationState state;
  state.push_row(row({0, 0, 0, 1}));
  const Reduction r = state.gaussian_reduce(row({0, 1}));
  CHECK(state.jordan_clear(r).empty());
  CHECK(state.h_rows() == std::vector<FiniteRow>{row({0, 0, 0, 1})});
}

TEST_CASE("Jordan step preconditions") {
  EliminationState state;
  state.push_row(row({0, 0, 1}));
  CHECK_THROWS_AS(state.jordan_clear({FiniteRow{}, row({0, 1})}), ContractViolation);
  CHECK_THROWS_AS(state.jordan_clear({row({0, 0, 0, 1}), row({0, 1})}), ContractViolation);
  CHECK_THROWS_AS(state.jordan_clear({row({0, 2}), row({0, 1})}), ContractViolation);
}

TEST_CASE("insertion cases") {
  const RowSource ex2 = builtin(FamilyKind::example2);
  EliminationState state;
  state.push_row(ex2.row_at(0));
  state.push_row(ex2.row_at(1));
  CHECK(state.w_set() == std::vector<Index>{1});
  CHECK(state.q_rows()[1] == row({-2, 1}));
  state.push_row(ex2.row_at(2));
  CHECK(state.h_rows()[2] == row({0, 24, 0, -8, 1}));
  CHECK(state.h_rows()[0] == row({0, -2, 1}));
  CHECK(state.mu() == std::vector<Index>{2, 4});

  state.push_row(FiniteRow{});
  CHECK(state.w_set() == std::vector<Index>{1, 3});
  CHECK_THROWS_AS(state.insert_with_permutation({row({0, 0, 1}), row({1})}), ContractViolation);
}

TEST_CASE("zero rows stay put while nonzero rows shift past them") {
  EliminationState state;
  state.push_row(row({0, 0, 0, 0, 1}));
  state.push_row(row({0, 0, 0, 0, 2}));  // reduces to zero: pinned at 1
  state.push_row(row({0, 0, 0, 0, 0, 0, 1}));
  state.push_row(row({0, 1}));           // shortest: slots into row 0
  CHECK(state.w_set() == std::vector<Index>{1});
  CHECK(state.h_rows() == std::vector<FiniteRow>{row({0, 1}), FiniteRow{},
                                                 row({0, 0, 0, 0, 1}),
                                                 row({0, 0, 0, 0, 0, 0, 1})});
  CHECK(state.mu() == std::vector<Index>{1, 4, 6});
  CHECK(state.last_change() == std::vector<Index>{3, 1, 3, 3});
  CHECK(oracle::dense_left_association(state.h_rows(), state.q_rows(), state.input_rows()));
}

TEST_CASE("Example 2 reproduces the displayed QHF") {
  const RowSource ex2 = builtin(FamilyKind::example2);
  const EliminationState state = run(ex2, 8);
  CHECK(state.h_rows() == example2_qhf());
  CHECK(state.w_set() == std::vector<Index>{1});
  CHECK(state.j_set() == std::vector<Index>{0, 2, 3, 4, 5, 6, 7});
  CHECK(state.mu() == std::vector<Index>{2, 4, 5, 6, 7, 8, 9});
  CHECK_FALSE(state.certified());
  CHECK(verify_left_association(state, ex2));
  CHECK(oracle::dense_left_association(state.h_rows(), state.q_rows(), state.input_rows()));
  CHECK(left_null_basis(state) == std::vector<FiniteRow>{row({-2, 1})});
}

TEST_CASE("Example 3 reproduces the displayed QHF and Q") {
  const RowSource ex3 = builtin(FamilyKind::example3);
  const EliminationState state = run(ex3, 12);
  CHECK(state.h_rows() == example3_qhf());
  CHECK(state.q_rows() == example3_q());
  CHECK(state.w_set() == std::vector<Index>{6, 10});
  const QhfPrefix prefix = qhf_prefix(state, 11);
  CHECK(prefix.stable_since ==
        std::vector<Index>{2, 2, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11});
  CHECK_FALSE(prefix.certified);
  CHECK(qhf_prefix(state, 2).stable_since == std::vector<Index>{2, 2, 2});

  CHECK(left_null_basis(state) == std::vector<FiniteRow>{row({0, 0, 0, 1, -1, -1, 1}),
                                                         row({0, 0, 0, 0, 0, 0, 0, 1, -1, -1, 1})});
  CHECK(verify_left_association(state, ex3));
  FiniteRow q0a;
  for (Index k : {0, 1}) q0a.add_scaled(Scalar(1), ex3.row_at(k));
  q0a.add_scaled(Scalar(-1), ex3.row_at(2));
  CHECK(q0a == row({2, 1}));
}

TEST_CASE("Example 3 prefix before stabilization") {
  const EliminationState early = run(builtin(FamilyKind::example3), 2);
  const QhfPrefix prefix = qhf_prefix(early, 0);
  CHECK(prefix.rows[0] == qrow({0, q(1, 2), 1}));
  CHECK(prefix.stable_since == std::vector<Index>{0});
  CHECK_FALSE(prefix.certified);
  CHECK_THROWS_AS(qhf_prefix(early, 2), ContractViolation);
  CHECK_THROWS_AS(qhf_prefix(early, -1), ContractViolation);
}

TEST_CASE("first-order product form") {
  FamilyDescriptor d;
  d.family = FamilyKind::first_order;
  d.a = "2";
  const EliminationState state = run(build_family(d), 4);
  CHECK(state.certified());
  std::vector<Scalar> first_column;
  for (const auto& r : state.h_rows()) first_column.push_back(r.at(0));
  CHECK(first_column == oracle::seq({-2, -4, -8, -16}));
  CHECK(left_null_basis(state).empty());
  CHECK(qhf_prefix(state, 3).stable_since == std::vector<Index>{0, 1, 2, 3});
}

TEST_CASE("association detector") {
  CHECK(verify_left_association({}, {}, {}));
  EliminationState empty;
  CHECK(empty.h_rows().empty());
  const RowSource ex3 = builtin(FamilyKind::example3);
  const EliminationState state = run(ex3, 12);
  std::vector<FiniteRow> corrupted = state.h_rows();
  corrupted[4].add_scaled(Scalar(1), FiniteRow::unit(2));
  CHECK_FALSE(verify_left_association(corrupted, state.q_rows(), state.input_rows()));
  std::vector<FiniteRow> short_inputs(state.input_rows().begin(), state.input_rows().end() - 1);
  CHECK_FALSE(verify_left_association(state.h_rows(), state.q_rows(), short_inputs));
}

TEST_CASE("postulate checker") {
  CHECK(satisfies_qhf_postulates(example2_qhf()));
  CHECK(satisfies_qhf_postulates(example3_qhf()));
  CHECK_FALSE(satisfies_qhf_postulates(std::vector<FiniteRow>{row({0, 1}), row({1})}));
  CHECK_FALSE(satisfies_qhf_postulates(std::vector<FiniteRow>{row({0, 2})}));
  CHECK_FALSE(satisfies_qhf_postulates(std::vector<FiniteRow>{row({0, 1}), row({0, 1, 1})}));
}

TEST_CASE("lower-echelon mode") {
  EliminationState state(EliminationMode::gauss_only);
  state.push_row(row({0, 1}));
  CHECK_THROWS_AS(state.push_row(row({1})), ContractViolation);

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const Index order = 1 + trial % 4;
    const oracle::RandomRegular eq = oracle::random_regular(rng, order, 15);
    const RowSource source = eq.source();
    const EliminationState s = run(source, 15);
    REQUIRE(s.certified());
    CHECK(s.w_set().empty());
    for (Index n = 0; n < 15; ++n) {
      const FiniteRow& qn = s.q_rows()[static_cast<std::size_t>(n)];
      CHECK(qn.length() == n);  // lower triangular
      CHECK(qn.at(n) == 1 / eq.rows[static_cast<std::size_t>(n)].rightmost());
      CHECK(s.h_rows()[static_cast<std::size_t>(n)].length() == order + n);
      CHECK(s.stable_since(n) == n);
    }
    CHECK(oracle::dense_left_association(s.h_rows(), s.q_rows(), s.input_rows()));
  }
}

TEST_CASE("random explicit matrices keep every engine invariant") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 120; ++trial) {
    const std::vector<FiniteRow> a = oracle::random_matrix(rng, 24, 12);
    EliminationState state;
    // prefix_max[k][n]: greatest length among rows 0..n after step k.
    std::vector<std::vector<Index>> prefix_max;
    std::vector<Index> pinned;
    for (std::size_t k = 0; k < a.size(); ++k) {
      const Reduction g = state.gaussian_reduce(a[k]);
      CHECK(g.g == oracle::shuffled_reduce(a[k], state.h_rows(), rng));
      if (!g.g.is_zero()) {
        CHECK(g.g.rightmost() == 1);
        const auto mu = state.mu();
        CHECK(std::find(mu.begin(), mu.end(), g.g.length()) == mu.end());
      }
      state.push_row(a[k]);
      CHECK(satisfies_qhf_postulates(state.h_rows()));
      for (Index w : pinned) CHECK(state.h_rows()[static_cast<std::size_t>(w)].is_zero());
      pinned = state.w_set();

      std::vector<Index> maxima;
      Index running = -1;
      for (const auto& r : state.h_rows()) maxima.push_back(running = std::max(running, r.length()));
      if (!prefix_max.empty())
        for (std::size_t n = 0; n + 1 < maxima.size(); ++n) CHECK(maxima[n] <= prefix_max.back()[n]);
      prefix_max.push_back(maxima);
    }
    CHECK(oracle::dense_left_association(state.h_rows(), state.q_rows(), a));
    CHECK(verify_left_association(state, RowSource::from_rows(a)));

    Index width = 0;
    for (const auto& r : a) width = std::max(width, r.length() + 1);
    std::vector<FiniteRow> nonzero;
    for (const auto& r : state.h_rows())
      if (!r.is_zero()) nonzero.push_back(r);
    CHECK(oracle::dense_rank(oracle::to_dense(a, width)) == static_cast<Index>(nonzero.size()));

    // Once row n's prefix stops changing, its greatest length stays fixed.
    const Index last = static_cast<Index>(a.size()) - 1;
    for (Index n = 0; n <= last; ++n) {
      const Index since = state.stable_since(n);
      for (Index k = std::max(since, n); k <= last; ++k)
        CHECK(prefix_max[static_cast<std::size_t>(k)][static_cast<std::size_t>(n)] ==
              prefix_max[static_cast<std::size_t>(last)][static_cast<std::size_t>(n)]);
    }
  }
}
