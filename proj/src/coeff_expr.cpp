#include "rowfinite/coeff_expr.hpp"

#include <cctype>
#include <sstream>
#include <variant>

#include "rowfinite/errors.hpp"

namespace rowfinite {

struct CoeffExpr::Node {
  enum class Op { add, sub, mul, div };
  struct Literal { mpz_class value; };
  struct VarN {};
  struct VarJ {};
  struct Negate { std::shared_ptr<const Node> operand; };
  struct Binary { Op op; std::shared_ptr<const Node> lhs, rhs; };
  struct Power { std::shared_ptr<const Node> base; unsigned long exponent; };
  struct Cospi2 { std::shared_ptr<const Node> argument; };
  struct Constant { Scalar value; };

  std::variant<Literal, VarN, VarJ, Negate, Binary, Power, Cospi2, Constant> data;
};

namespace {

using NodePtr = std::shared_ptr<const CoeffExpr::Node>;
using Node = CoeffExpr::Node;

template <class T>
NodePtr make(T value) {
  return std::make_shared<const Node>(Node{std::move(value)});
}

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    NodePtr root = expr();
    skip_space();
    if (pos_ != text_.size())
      fail({"end of input", "+", "-", "*", "/", "^"}, "unexpected '" +
                                                          std::string(1, text_[pos_]) + "'");
    return root;
  }

 private:
  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      skip_space();
      if (accept('+')) {
        lhs = make(Node::Binary{Node::Op::add, lhs, term()});
      } else if (accept('-')) {
        lhs = make(Node::Binary{Node::Op::sub, lhs, term()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = factor();
    for (;;) {
      skip_space();
      if (accept('*')) {
        lhs = make(Node::Binary{Node::Op::mul, lhs, factor()});
      } else if (accept('/')) {
        lhs = make(Node::Binary{Node::Op::div, lhs, factor()});
      } else {
        return lhs;
      }
    }
  }

  // Unary minus binds looser than '^': -n^2 is -(n^2).
  NodePtr factor() {
    skip_space();
    if (accept('-')) return make(Node::Negate{factor()});
    NodePtr base = atom();
    skip_space();
    if (!accept('^')) return base;
    skip_space();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail({"non-negative integer"}, "exponent must be a non-negative integer");
    const std::size_t start = pos_;
    const mpz_class exponent = digits();
    if (!exponent.fits_ulong_p() || exponent > 4096)
      fail_at(start, {"exponent <= 4096"}, "exponent too large");
    return make(Node::Power{base, exponent.get_ui()});
  }

  NodePtr atom() {
    skip_space();
    static const std::vector<std::string> kAtomStart = {"integer", "n", "j", "cospi2", "(",
                                                         "-"};
    if (pos_ >= text_.size()) fail(kAtomStart, "unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return make(Node::Literal{digits()});
    if (c == '(') {
      ++pos_;
      NodePtr inner = expr();
      skip_space();
      if (!accept(')')) fail({")"}, "missing ')'");
      return inner;
    }
    if (c == '-') {
      ++pos_;
      return make(Node::Negate{factor()});
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                     text_[pos_] == '_'))
        ++pos_;
      const std::string_view name = text_.substr(start, pos_ - start);
      if (name == "n") return make(Node::VarN{});
      if (name == "j") return make(Node::VarJ{});
      if (name == "cospi2") {
        skip_space();
        if (!accept('(')) fail({"("}, "cospi2 needs a parenthesized argument");
        NodePtr argument = expr();
        skip_space();
        if (!accept(')')) fail({")"}, "missing ')'");
        return make(Node::Cospi2{argument});
      }
      fail_at(start, {"n", "j", "cospi2"}, "unknown identifier '" + std::string(name) + "'");
    }
    fail(kAtomStart, std::string("unexpected '") + c + "'");
  }

  mpz_class digits() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return mpz_class(std::string(text_.substr(start, pos_ - start)), 10);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(std::vector<std::string> expected, const std::string& what) {
    fail_at(pos_, std::move(expected), what);
  }

  [[noreturn]] void fail_at(std::size_t offset, std::vector<std::string> expected,
                            const std::string& what) {
    std::ostringstream msg;
    msg << "parse error at offset " << offset << ": " << what << " (expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) msg << (i ? ", " : "") << expected[i];
    msg << ")";
    throw ParseError(offset, std::move(expected), msg.str());
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

Scalar evaluate(const Node& node, Index n, Index j) {
  return std::visit(
      overloaded{
          [](const Node::Literal& lit) { return Scalar(lit.value); },
          [&](const Node::VarN&) { return Scalar(mpz_class(static_cast<long>(n))); },
          [&](const Node::VarJ&) { return Scalar(mpz_class(static_cast<long>(j))); },
          [](const Node::Constant& c) { return c.value; },
          [&](const Node::Negate& neg) { return Scalar(-evaluate(*neg.operand, n, j)); },
          [&](const Node::Binary& bin) {
            const Scalar lhs = evaluate(*bin.lhs, n, j);
            const Scalar rhs = evaluate(*bin.rhs, n, j);
            switch (bin.op) {
              case Node::Op::add: return Scalar(lhs + rhs);
              case Node::Op::sub: return Scalar(lhs - rhs);
              case Node::Op::mul: return Scalar(lhs * rhs);
              case Node::Op::div:
                if (is_zero(rhs)) throw EvalError(n, j, "division by zero");
                return Scalar(lhs / rhs);
            }
            return Scalar(0);
          },
          [&](const Node::Power& pw) {
            const Scalar base = evaluate(*pw.base, n, j);
            mpz_class num, den;
            mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), pw.exponent);
            mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), pw.exponent);
            return Scalar(num, den);  // powers of coprime parts stay coprime
          },
          [&](const Node::Cospi2& cp) {
            const Scalar arg = evaluate(*cp.argument, n, j);
            if (arg.get_den() != 1 || !arg.get_num().fits_slong_p())
              throw EvalError(n, j, "cospi2 argument " + to_text(arg) + " is not an integer");
            return Scalar(cospi2(arg.get_num().get_si()));
          },
      },
      node.data);
}

void render(const Node& node, std::ostream& out) {
  std::visit(overloaded{
                 [&](const Node::Literal& lit) { out << lit.value.get_str(); },
                 [&](const Node::VarN&) { out << 'n'; },
                 [&](const Node::VarJ&) { out << 'j'; },
                 [&](const Node::Constant& c) { out << '(' << to_text(c.value) << ')'; },
                 [&](const Node::Negate& neg) {
                   out << "(-";
                   render(*neg.operand, out);
                   out << ')';
                 },
                 [&](const Node::Binary& bin) {
                   static constexpr char kOps[] = {'+', '-', '*', '/'};
                   out << '(';
                   render(*bin.lhs, out);
                   out << ' ' << kOps[static_cast<int>(bin.op)] << ' ';
                   render(*bin.rhs, out);
                   out << ')';
                 },
                 [&](const Node::Power& pw) {
                   out << '(';
                   render(*pw.base, out);
                   out << '^' << pw.exponent << ')';
                 },
                 [&](const Node::Cospi2& cp) {
                   out << "cospi2(";
                   render(*cp.argument, out);
                   out << ')';
                 },
             },
             node.data);
}

bool mentions_j(const Node& node) {
  return std::visit(overloaded{
                        [](const Node::VarJ&) { return true; },
                        [](const Node::Negate& neg) { return mentions_j(*neg.operand); },
                        [](const Node::Binary& bin) {
                          return mentions_j(*bin.lhs) || mentions_j(*bin.rhs);
                        },
                        [](const Node::Power& pw) { return mentions_j(*pw.base); },
                        [](const Node::Cospi2& cp) { return mentions_j(*cp.argument); },
                        [](const auto&) { return false; },
                    },
                    node.data);
}

}  // namespace

int cospi2(Index m) {
  static constexpr int kTable[] = {1, 0, -1, 0};
  return kTable[((m % 4) + 4) % 4];
}

CoeffExpr::CoeffExpr(const Scalar& value) : root_(make(Node::Constant{value})) {}

Scalar CoeffExpr::eval(Index n, Index j) const { return evaluate(*root_, n, j); }

std::string CoeffExpr::to_string() const {
  std::ostringstream out;
  render(*root_, out);
  return out.str();
}

bool CoeffExpr::depends_on_j() const { return mentions_j(*root_); }

CoeffExpr parse_coeff_expr(std::string_view text) { return CoeffExpr(Parser(text).parse()); }

}  // namespace rowfinite
