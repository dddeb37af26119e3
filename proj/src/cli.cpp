#include "rowfinite/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "rowfinite/errors.hpp"
#include "rowfinite/hessenberg.hpp"

namespace rowfinite::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr Index kDefaultHorizon = 12;

struct Equation {
  FamilyDescriptor descriptor;
  RowSource source;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SpecError("cannot open spec file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Equation load_equation(const RunConfig& config) {
  if (config.spec_path.has_value() == config.family.has_value())
    throw SpecError("give exactly one of --spec PATH or --family NAME");
  FamilyDescriptor descriptor;
  if (config.spec_path) {
    descriptor = parse_family_json(read_file(*config.spec_path));
  } else {
    descriptor.family = family_from_name(*config.family);
  }
  RowSource source = build_family(descriptor);
  return {std::move(descriptor), std::move(source)};
}

Index row_horizon(const RunConfig& config, const Equation& eq) {
  if (config.horizon) return *config.horizon;
  if (auto count = eq.source.explicit_row_count()) return std::max<Index>(1, *count);
  return kDefaultHorizon;
}

// Listed forcing values are a prefix; operations that need more terms fail
// rather than assume zeros. Returns an empty vector for a homogeneous system.
std::vector<Scalar> forcing(const RunConfig& config, const FamilyDescriptor& d, Index length) {
  std::vector<Scalar> g;
  if (config.g) {
    g = *config.g;
  } else if (d.g_expr) {
    const CoeffExpr expr = parse_coeff_expr(*d.g_expr);
    for (Index n = 0; n < length; ++n) g.push_back(expr.eval(n, n));
  } else {
    g = d.g;
  }
  return g;
}

Index default_first_index(const RowSource& source) {
  const auto& order = source.tags().regular_order_index;
  return order ? -*order : 0;
}

Json row_json(const FiniteRow& row) {
  Json out = Json::array();
  for (const auto& [col, value] : row.entries()) out.push_back(Json::array({col, to_text(value)}));
  return out;
}

Json rows_json(std::span<const FiniteRow> rows) {
  Json out = Json::array();
  for (const auto& row : rows) out.push_back(row_json(row));
  return out;
}

Json sequence_json(std::span<const Scalar> values, Index first_index) {
  Json out = Json::array();
  for (std::size_t i = 0; i < values.size(); ++i)
    out.push_back({{"index", first_index + static_cast<Index>(i)}, {"value", to_text(values[i])}});
  return out;
}

std::string join(std::span<const Scalar> values, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += sep;
    out += to_text(values[i]);
  }
  return out;
}

template <class T>
std::string join_indices(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(values[i]);
  }
  return out;
}

Index matrix_width(std::span<const FiniteRow> rows) {
  Index width = 0;
  for (const auto& row : rows) width = std::max(width, row.length() + 1);
  return width;
}

void print_dense(std::ostream& out, std::span<const FiniteRow> rows, std::string_view sep,
                 std::string_view indent) {
  const Index width = matrix_width(rows);
  for (const auto& row : rows) {
    const std::vector<Scalar> dense = row.to_dense(width);
    out << indent << join(dense, sep) << '\n';
  }
}

void print_sequence(std::ostream& out, OutputFormat format, std::span<const Scalar> values,
                    Index first_index, Json header) {
  switch (format) {
    case OutputFormat::json:
      header["first_index"] = first_index;
      header["terms"] = sequence_json(values, first_index);
      out << header.dump(2) << '\n';
      break;
    case OutputFormat::csv:
      out << join(values, ",") << '\n';
      break;
    case OutputFormat::pretty:
      for (std::size_t i = 0; i < values.size(); ++i)
        out << "y[" << first_index + static_cast<Index>(i) << "] = " << to_text(values[i])
            << '\n';
      break;
  }
}

int cmd_reduce(const RunConfig& config, const Equation& eq, std::ostream& out) {
  const Index rows = row_horizon(config, eq);
  const EliminationState state = run(eq.source, rows);
  const QhfPrefix prefix = qhf_prefix(state, rows - 1);

  switch (config.format) {
    case OutputFormat::json: {
      Json doc;
      doc["family"] = "explicit";
      doc["source_family"] = std::string(family_name(eq.source.kind()));
      doc["horizon"] = rows;
      doc["certified"] = prefix.certified;
      doc["rows"] = rows_json(prefix.rows);
      doc["Q"] = rows_json(prefix.q_rows);
      doc["input"] = rows_json(state.input_rows());
      doc["J"] = state.j_set();
      doc["W"] = state.w_set();
      doc["mu"] = state.mu();
      doc["stable_since"] = prefix.stable_since;
      out << doc.dump(2) << '\n';
      break;
    }
    case OutputFormat::csv:
      out << "H\n";
      print_dense(out, prefix.rows, ",", "");
      out << "Q\n";
      print_dense(out, prefix.q_rows, ",", "");
      break;
    case OutputFormat::pretty:
      out << "H (" << rows << " rows, " << (prefix.certified ? "certified" : "prefix")
          << ")\n";
      print_dense(out, prefix.rows, " ", "  ");
      out << "Q\n";
      print_dense(out, prefix.q_rows, " ", "  ");
      out << "J: " << join_indices(state.j_set()) << '\n'
          << "W: " << join_indices(state.w_set()) << '\n'
          << "mu: " << join_indices(state.mu()) << '\n'
          << "stable_since: " << join_indices(prefix.stable_since) << '\n';
      break;
  }
  return exit_ok;
}

int cmd_solve(const RunConfig& config, const Equation& eq, std::ostream& out) {
  const Index rows = row_horizon(config, eq);
  const EliminationState state = run(eq.source, rows);
  const Index terms =
      config.terms.value_or(std::min(rows, state.greatest_input_length() + 1));
  const std::vector<Scalar> g = forcing(config, eq.descriptor, rows);
  const Sequence y = general_solution(state, g, config.free, terms);
  const Index first = config.first_index.value_or(default_first_index(eq.source));
  print_sequence(out, config.format, y, first,
                 {{"family", std::string(family_name(eq.source.kind()))},
                  {"horizon", rows},
                  {"certified", state.certified()}});
  return exit_ok;
}

int cmd_fundamental(const RunConfig& config, const Equation& eq, std::ostream& out) {
  const Index rows = row_horizon(config, eq);
  const EliminationState state = run(eq.source, rows);
  const Index horizon = std::min(rows, state.greatest_input_length() + 1);
  const Index terms = config.terms.value_or(horizon);
  const FundamentalSet set = fundamental_set(state, horizon, terms);
  const Index first = config.first_index.value_or(default_first_index(eq.source));
  const bool finite = set.basis_kind == BasisKind::finite;

  switch (config.format) {
    case OutputFormat::json: {
      Json doc;
      doc["family"] = std::string(family_name(eq.source.kind()));
      doc["horizon"] = horizon;
      doc["basis_kind"] = finite ? "finite" : "schauder_prefix";
      doc["deficiency"] = static_cast<Index>(set.indices.size());
      doc["first_index"] = first;
      Json sequences = Json::array();
      for (std::size_t i = 0; i < set.indices.size(); ++i)
        sequences.push_back({{"position", set.indices[i]},
                             {"label", set.indices[i] + first},
                             {"terms", sequence_json(set.sequences[i], first)}});
      doc["sequences"] = std::move(sequences);
      out << doc.dump(2) << '\n';
      break;
    }
    case OutputFormat::csv:
      for (const auto& sequence : set.sequences) out << join(sequence, ",") << '\n';
      break;
    case OutputFormat::pretty:
      out << "basis: " << (finite ? "finite" : "schauder prefix") << ", "
          << set.indices.size() << " sequence(s) below " << horizon << '\n';
      for (std::size_t i = 0; i < set.indices.size(); ++i)
        out << "xi(" << set.indices[i] + first << ") = " << join(set.sequences[i], " ") << '\n';
      break;
  }
  return exit_ok;
}

std::vector<Scalar> initial_values(const FreeConstants& free, Index order) {
  std::vector<Scalar> init(static_cast<std::size_t>(order));
  for (const auto& [index, value] : free) {
    if (index < 0 || index >= order)
      throw SpecError("free constant at index " + std::to_string(index) +
                      "; initial values take indices 0.." + std::to_string(order - 1));
    init[static_cast<std::size_t>(index)] = value;
  }
  return init;
}

// Elimination-path values y_0..y_{terms-1} for the same initial values.
Sequence elimination_terms(const RowSource& source, std::span<const Scalar> g,
                           std::span<const Scalar> init, Index terms) {
  const Index order = *source.tags().regular_order_index;
  const EliminationState state = run(source, std::max<Index>(terms, 1));
  FreeConstants free;
  for (Index i = 0; i < order; ++i) free[i] = init[static_cast<std::size_t>(i)];
  const Sequence y = general_solution(state, g, free, order + terms);
  return Sequence(y.begin() + order, y.end());
}

int cmd_hess(const RunConfig& config, const Equation& eq, std::ostream& out) {
  const auto& order = eq.source.tags().regular_order_index;
  if (!order)
    throw SpecError("hess needs a regular-order family; '" +
                    std::string(family_name(eq.source.kind())) + "' is not");
  const Index terms = config.terms.value_or(row_horizon(config, eq));
  const std::vector<Scalar> init = initial_values(config.free, *order);
  const std::vector<Scalar> g = forcing(config, eq.descriptor, terms);
  const HessSpec spec = hess_spec_from_source(eq.source, g, init);
  const Sequence y = general_terms(spec, terms);
  const Index first = config.first_index.value_or(0);

  Json header{{"family", std::string(family_name(eq.source.kind()))}, {"order", *order}};
  std::optional<bool> match;
  if (config.verify_against_elimination) {
    match = elimination_terms(eq.source, g, init, terms) == y;
    header["verification"] = *match ? "MATCH" : "MISMATCH";
  }
  print_sequence(out, config.format, y, first, std::move(header));
  if (match && config.format != OutputFormat::json) out << (*match ? "MATCH" : "MISMATCH") << '\n';
  return match.value_or(true) ? exit_ok : exit_verification_failed;
}

struct Check {
  std::string name;
  bool passed;
  std::string detail;
};

Scalar random_small(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 4);
  Scalar value(num(rng), den(rng));
  value.canonicalize();
  return value;
}

Check residual_check(const EliminationState& state, std::span<const Scalar> g,
                     std::mt19937_64& rng) {
  const Index terms = state.greatest_input_length() + 1;
  const InaccessibleLengths free_positions = inaccessible_lengths(state, terms);
  FreeConstants free;
  for (Index s : free_positions.values) free[s] = random_small(rng);

  std::vector<Scalar> forcing_values(g.begin(), g.end());
  std::string detail = "homogeneous";
  if (!g.empty()) {
    const std::vector<Index> violated = consistency_check(state, g);
    if (violated.empty()) {
      detail = "forced";
    } else {
      forcing_values.clear();
      detail = "homogeneous; forcing inconsistent at w=" + join_indices(violated);
    }
  }
  const Sequence y = general_solution(state, forcing_values, free, terms);
  const auto& inputs = state.input_rows();
  for (std::size_t n = 0; n < inputs.size(); ++n) {
    const Scalar target = forcing_values.empty() ? Scalar(0) : forcing_values[n];
    if (dot_prefix(inputs[n], y) != target)
      return {"residual", false, "row " + std::to_string(n) + " misses its right-hand side"};
  }
  return {"residual", true, detail + ", " + std::to_string(free.size()) + " free constant(s)"};
}

Check hessenberg_check(const Equation& eq, std::span<const Scalar> g, Index rows,
                       std::mt19937_64& rng) {
  const Index order = *eq.source.tags().regular_order_index;
  std::vector<Scalar> init;
  for (Index i = 0; i < order; ++i) init.push_back(random_small(rng));
  const HessSpec spec = hess_spec_from_source(eq.source, {g.begin(), g.end()}, init);
  const Sequence single = general_terms(spec, rows);
  if (single != general_terms_superposed(spec, rows))
    return {"hessenberg", false, "single determinant differs from superposition"};
  if (single != elimination_terms(eq.source, g, init, rows))
    return {"hessenberg", false, "determinant terms differ from the elimination path"};
  return {"hessenberg", true, std::to_string(rows) + " terms agree"};
}

int cmd_verify(const RunConfig& config, const Equation& eq, std::ostream& out) {
  const Index rows = row_horizon(config, eq);
  const auto& tags = eq.source.tags();
  std::vector<Check> checks;

  EliminationState state(
      tags.lower_echelon ? EliminationMode::gauss_only : EliminationMode::gauss_jordan,
      tags.regular_order_index);
  Check postulates{"qhf_postulates", true, "held after each of " + std::to_string(rows) + " pushes"};
  for (Index n = 0; n < rows; ++n) {
    state.push_row(eq.source.row_at(n));
    if (!satisfies_qhf_postulates(state.h_rows())) {
      postulates = {"qhf_postulates", false, "violated after push " + std::to_string(n)};
      break;
    }
  }
  checks.push_back(postulates);
  checks.push_back({"left_association", verify_left_association(state, eq.source), "Q.A = H"});

  const auto& d = eq.descriptor;
  if (d.certificate_q && d.certificate_input) {
    const bool ok = verify_left_association(d.rows, *d.certificate_q, *d.certificate_input) &&
                    satisfies_qhf_postulates(d.rows);
    checks.push_back({"certificate", ok, ok ? "supplied Q.input = rows"
                                            : "supplied Q.input differs from rows"});
  }

  std::mt19937_64 rng(config.seed);
  const std::vector<Scalar> g = forcing(config, d, rows);
  checks.push_back(residual_check(state, g, rng));
  if (tags.regular_order_index) checks.push_back(hessenberg_check(eq, g, rows, rng));

  const bool passed =
      std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  if (config.format == OutputFormat::json) {
    Json doc;
    doc["family"] = std::string(family_name(eq.source.kind()));
    doc["horizon"] = rows;
    doc["seed"] = config.seed;
    Json list = Json::array();
    for (const auto& c : checks)
      list.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    doc["checks"] = std::move(list);
    doc["passed"] = passed;
    out << doc.dump(2) << '\n';
  } else {
    out << "seed " << config.seed << '\n';
    for (const auto& c : checks)
      out << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
  }
  return passed ? exit_ok : exit_verification_failed;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t end = text.find(sep, start);
    parts.push_back(text.substr(start, end == std::string_view::npos ? end : end - start));
    if (end == std::string_view::npos) return parts;
    start = end + 1;
  }
}

}  // namespace

FreeConstants parse_free_list(std::string_view text) {
  FreeConstants free;
  if (text.empty()) return free;
  for (std::string_view item : split(text, ',')) {
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos)
      throw SpecError("free constant '" + std::string(item) + "' is not of the form i=p/q");
    const std::string_view key = item.substr(0, eq);
    Index index = -1;
    const auto [end, ec] = std::from_chars(key.data(), key.data() + key.size(), index);
    if (ec != std::errc() || end != key.data() + key.size() || index < 0)
      throw SpecError("free constant index '" + std::string(key) + "' is not a non-negative integer");
    if (!free.emplace(index, parse_scalar(item.substr(eq + 1))).second)
      throw SpecError("free constant index " + std::to_string(index) + " given twice");
  }
  return free;
}

std::vector<Scalar> parse_scalar_list(std::string_view text) {
  std::vector<Scalar> values;
  if (text.empty()) return values;
  for (std::string_view item : split(text, ',')) values.push_back(parse_scalar(item));
  return values;
}

int execute(const RunConfig& config, std::ostream& out, std::ostream& err) {
  (void)err;
  if (config.horizon && *config.horizon < 1) throw SpecError("--horizon must be at least 1");
  if (config.terms && *config.terms < 1) throw SpecError("--terms must be at least 1");
  const Equation eq = load_equation(config);
  if (config.command == "reduce") return cmd_reduce(config, eq, out);
  if (config.command == "solve") return cmd_solve(config, eq, out);
  if (config.command == "fundamental") return cmd_fundamental(config, eq, out);
  if (config.command == "hess") return cmd_hess(config, eq, out);
  if (config.command == "verify") return cmd_verify(config, eq, out);
  throw SpecError("unknown command '" + config.command + "'");
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Row-finite linear systems: infinite Gauss-Jordan elimination with rightmost "
               "pivots and Hessenbergian solutions of difference equations",
               "rowfinite"};
  std::string command, spec_path, family, free_text, g_text, format = "json";
  Index horizon = 0, terms = 0, first_index = 0;
  std::uint64_t seed = 1;
  bool verify = false;

  app.add_option("command", command, "reduce | solve | fundamental | hess | verify")
      ->required()
      ->check(CLI::IsMember({"reduce", "solve", "fundamental", "hess", "verify"}));
  auto* spec_opt = app.add_option("--spec", spec_path, "JSON equation spec or explicit matrix");
  auto* family_opt = app.add_option("--family", family, "builtin family: example2, example3");
  auto* horizon_opt = app.add_option("--horizon", horizon, "rows of A to consume");
  auto* terms_opt = app.add_option("--terms", terms, "solution terms to emit");
  app.add_option("--free", free_text, "free constants, i=p/q,... (0-based positions)");
  auto* g_opt = app.add_option("--g", g_text, "forcing prefix g_0,g_1,...");
  app.add_option("--format", format, "json | csv | pretty")
      ->check(CLI::IsMember({"json", "csv", "pretty"}));
  auto* first_opt = app.add_option("--first-index", first_index, "label of the first term");
  app.add_option("--seed", seed, "seed for the randomized verify checks");
  app.add_flag("--verify-against-elimination", verify,
               "hess: recompute the terms by elimination and compare");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    RunConfig config;
    config.command = command;
    if (spec_opt->count()) config.spec_path = spec_path;
    if (family_opt->count()) config.family = family;
    if (horizon_opt->count()) config.horizon = horizon;
    if (terms_opt->count()) config.terms = terms;
    if (first_opt->count()) config.first_index = first_index;
    if (g_opt->count()) config.g = parse_scalar_list(g_text);
    config.free = parse_free_list(free_text);
    config.format = format == "csv"      ? OutputFormat::csv
                    : format == "pretty" ? OutputFormat::pretty
                                         : OutputFormat::json;
    config.seed = seed;
    config.verify_against_elimination = verify;
    return execute(config, out, err);
  } catch (const InconsistentSystem& e) {
    err << "error: " << e.what() << '\n';
    return exit_inconsistent;
  } catch (const SpecError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const EvalError& e) {
    err << "error: " << e.what() << '\n';
    return exit_evaluation;
  } catch (const InsufficientData& e) {
    err << "error: " << e.what() << '\n';
    return exit_evaluation;
  } catch (const ContractViolation& e) {
    err << "error: " << e.what() << '\n';
    return exit_evaluation;
  }
}

}  // namespace rowfinite::cli
