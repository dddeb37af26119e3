#include "rowfinite/scalar.hpp"

#include <cctype>
#include <string>

#include "rowfinite/errors.hpp"

namespace rowfinite {

namespace {

bool is_integer_text(std::string_view text, bool allow_sign) {
  if (allow_sign && !text.empty() && text.front() == '-') text.remove_prefix(1);
  if (text.empty()) return false;
  for (char c : text)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Scalar make_scalar(long numerator, long denominator) {
  if (denominator == 0) throw ContractViolation("make_scalar: zero denominator");
  Scalar value(numerator, denominator);
  value.canonicalize();
  return value;
}

Scalar parse_scalar(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den =
      slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
  if (!is_integer_text(num, true) ||
      (slash != std::string_view::npos && !is_integer_text(den, false)))
    throw SpecError("malformed rational '" + std::string(text) + "'");

  mpz_class n(std::string(num), 10);
  mpz_class d(1);
  if (slash != std::string_view::npos) d = mpz_class(std::string(den), 10);
  if (d == 0) throw SpecError("zero denominator in '" + std::string(text) + "'");
  Scalar value(n, d);
  value.canonicalize();
  return value;
}

std::string to_text(const Scalar& value) { return value.get_str(10); }

Scalar power_of_two(Index exponent) {
  mpz_class p;
  const auto magnitude = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
  mpz_ui_pow_ui(p.get_mpz_t(), 2, magnitude);
  if (exponent >= 0) return Scalar(p);
  Scalar r(mpz_class(1), p);
  r.canonicalize();
  return r;
}

}  // namespace rowfinite
