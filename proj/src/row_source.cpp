#include "rowfinite/row_source.hpp"

#include <array>
#include <memory>

#include "json.hpp"
#include "rowfinite/errors.hpp"

namespace rowfinite {

namespace {

constexpr std::array<std::pair<FamilyKind, std::string_view>, 7> kFamilyNames = {{
    {FamilyKind::explicit_rows, "explicit"},
    {FamilyKind::first_order, "first_order"},
    {FamilyKind::second_order, "second_order"},
    {FamilyKind::n_order, "n_order"},
    {FamilyKind::ascending, "ascending"},
    {FamilyKind::example2, "example2"},
    {FamilyKind::example3, "example3"},
}};

CoeffExpr required_expr(const std::optional<std::string>& text, FamilyKind kind,
                        std::string_view key) {
  if (!text)
    throw SpecError("family '" + std::string(family_name(kind)) + "' needs parameter '" +
                    std::string(key) + "'");
  return parse_coeff_expr(*text);
}

Index required_order(const FamilyDescriptor& spec) {
  if (!spec.order)
    throw SpecError("family '" + std::string(family_name(spec.family)) +
                    "' needs parameter 'N'");
  if (*spec.order < 0) throw SpecError("'N' must be non-negative");
  return *spec.order;
}

// Row n of a band/ascending family: coeff(n, j) for j in [first, n + order].
RowSource::Generator banded(CoeffExpr coeff, Index order, bool ascending) {
  return [coeff = std::move(coeff), order, ascending](Index n) {
    std::vector<FiniteRow::Entry> entries;
    for (Index j = ascending ? 0 : n; j <= n + order; ++j)
      entries.emplace_back(j, coeff.eval(n, j));
    return FiniteRow::from_entries(std::move(entries));
  };
}

Scalar scalar_from_json(const nlohmann::json& value) {
  if (value.is_string()) return parse_scalar(value.get<std::string>());
  if (value.is_number_integer()) return Scalar(mpz_class(value.dump(), 10));
  throw SpecError("expected a rational as \"p/q\" text or an integer, got " + value.dump());
}

FiniteRow row_from_json(const nlohmann::json& row, std::size_t index) {
  if (!row.is_array()) throw SpecError("row " + std::to_string(index) + " is not an array");
  std::vector<FiniteRow::Entry> entries;
  Index previous = -1;
  for (const auto& entry : row) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number_integer())
      throw SpecError("row " + std::to_string(index) + ": entries must be [col, \"p/q\"]");
    const auto col = entry[0].get<Index>();
    if (col <= previous)
      throw SpecError("row " + std::to_string(index) +
                      ": columns must be non-negative and strictly increasing");
    previous = col;
    entries.emplace_back(col, scalar_from_json(entry[1]));
  }
  return FiniteRow::from_entries(std::move(entries));
}

std::vector<FiniteRow> rows_from_json(const nlohmann::json& rows, const std::string& key) {
  if (!rows.is_array()) throw SpecError("'" + key + "' must be an array");
  std::vector<FiniteRow> out;
  out.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) out.push_back(row_from_json(rows[i], i));
  return out;
}

}  // namespace

std::string_view family_name(FamilyKind kind) {
  for (const auto& [k, name] : kFamilyNames)
    if (k == kind) return name;
  return "unknown";
}

FamilyKind family_from_name(std::string_view name) {
  for (const auto& [kind, n] : kFamilyNames)
    if (n == name) return kind;
  throw SpecError("unsupported family '" + std::string(name) + "'");
}

RowSource::RowSource(FamilyKind kind, SourceTags tags, Generator generator)
    : kind_(kind), tags_(tags), generator_(std::move(generator)) {}

RowSource RowSource::from_rows(std::vector<FiniteRow> rows) {
  auto shared = std::make_shared<const std::vector<FiniteRow>>(std::move(rows));
  RowSource source(FamilyKind::explicit_rows, {}, [shared](Index n) {
    if (n < static_cast<Index>(shared->size())) return (*shared)[static_cast<std::size_t>(n)];
    return FiniteRow{};
  });
  source.explicit_count_ = static_cast<Index>(shared->size());
  return source;
}

RowSource RowSource::ascending(Index order, std::function<Scalar(Index, Index)> coeff) {
  return RowSource(FamilyKind::ascending, {true, order}, [order, coeff = std::move(coeff)](Index n) {
    std::vector<FiniteRow::Entry> entries;
    for (Index j = 0; j <= n + order; ++j) entries.emplace_back(j, coeff(n, j));
    return FiniteRow::from_entries(std::move(entries));
  });
}

FiniteRow RowSource::row_at(Index n) const {
  if (n < 0) throw ContractViolation("row_at: negative row index");
  FiniteRow row = generator_(n);
  if (tags_.regular_order_index && row.length() != *tags_.regular_order_index + n)
    throw EvalError(n, *tags_.regular_order_index + n,
                    "leading coefficient vanishes; equation is not of regular order");
  return row;
}

RowSource build_family(const FamilyDescriptor& spec) {
  switch (spec.family) {
    case FamilyKind::explicit_rows:
      return RowSource::from_rows(spec.rows);

    case FamilyKind::first_order: {
      CoeffExpr a = required_expr(spec.a, spec.family, "a");
      return RowSource(spec.family, {true, 1}, [a = std::move(a)](Index n) {
        return FiniteRow::from_entries({{n, -a.eval(n, n)}, {n + 1, Scalar(1)}});
      });
    }

    case FamilyKind::second_order: {
      CoeffExpr a = required_expr(spec.a, spec.family, "a");
      CoeffExpr b = required_expr(spec.b, spec.family, "b");
      return RowSource(spec.family, {true, 2}, [a = std::move(a), b = std::move(b)](Index n) {
        return FiniteRow::from_entries(
            {{n, a.eval(n, n)}, {n + 1, b.eval(n, n + 1)}, {n + 2, Scalar(1)}});
      });
    }

    case FamilyKind::n_order:
    case FamilyKind::ascending: {
      const Index order = required_order(spec);
      CoeffExpr a = required_expr(spec.a, spec.family, "a");
      return RowSource(spec.family, {true, order},
                       banded(std::move(a), order, spec.family == FamilyKind::ascending));
    }

    case FamilyKind::example2:
      return RowSource(spec.family, {}, [](Index n) {
        const long m = static_cast<long>(n);
        return FiniteRow::from_entries({{n, Scalar(2 * m * (m + 1))},
                                        {n + 1, Scalar(-(m * m + 3 * m - 2))},
                                        {n + 2, Scalar(m - 1)}});
      });

    case FamilyKind::example3:
      return RowSource(spec.family, {},
                       banded(parse_coeff_expr("1 - cospi2(2*n - j)"), 2, true));
  }
  throw SpecError("unsupported family");
}

FamilyDescriptor parse_family_json(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SpecError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SpecError("equation spec must be a JSON object");

  FamilyDescriptor spec;
  try {
    if (doc.contains("family")) {
      spec.family = family_from_name(doc.at("family").get<std::string>());
    } else if (!doc.contains("rows")) {
      throw SpecError("equation spec needs 'family' or 'rows'");
    }
    if (doc.contains("N")) spec.order = doc.at("N").get<Index>();
    if (doc.contains("a")) spec.a = doc.at("a").get<std::string>();
    if (doc.contains("b")) spec.b = doc.at("b").get<std::string>();
    if (doc.contains("g")) {
      const auto& g = doc.at("g");
      if (g.is_string()) {
        spec.g_expr = g.get<std::string>();
        parse_coeff_expr(*spec.g_expr);  // reject bad syntax at load time
      } else if (g.is_array()) {
        for (const auto& value : g) spec.g.push_back(scalar_from_json(value));
      } else {
        throw SpecError("'g' must be a list of rationals or an expression in n");
      }
    }
    if (doc.contains("rows")) spec.rows = rows_from_json(doc.at("rows"), "rows");
    if (doc.contains("Q") && doc.contains("input")) {
      spec.certificate_q = rows_from_json(doc.at("Q"), "Q");
      spec.certificate_input = rows_from_json(doc.at("input"), "input");
    }
  } catch (const nlohmann::json::exception& e) {
    throw SpecError(std::string("malformed equation spec: ") + e.what());
  }
  if (spec.family == FamilyKind::explicit_rows && !doc.contains("rows"))
    throw SpecError("family 'explicit' needs parameter 'rows'");
  return spec;
}

}  // namespace rowfinite
