#include "dvisit/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>

namespace dvisit {

struct Expr::Node {
  ExprKind kind;
  std::size_t position = 0;
  BigInt value;
  std::vector<Expr> args;
  bool closed = true;
  std::size_t depth = 1;
};

namespace {

constexpr std::size_t max_expr_depth = 1000;

std::shared_ptr<const Expr::Node> make(ExprKind kind, std::size_t pos, std::vector<Expr> args, BigInt value = 0) {
  auto node = std::make_shared<Expr::Node>();
  node->kind = kind;
  node->position = pos;
  node->value = std::move(value);
  node->closed = kind != ExprKind::var_x && kind != ExprKind::var_y;
  for (const auto& a : args) {
    node->closed = node->closed && a.is_closed();
    node->depth = std::max(node->depth, a.depth() + 1);
  }
  if (node->depth > max_expr_depth)
    throw DslError(ErrorKind::SyntaxError, pos, {}, "expression nests too deeply");
  node->args = std::move(args);
  return node;
}

// Precedence levels: 0 cond, 1 cmp, 2 sum, 3 term, 4 factor.
int level(ExprKind kind) {
  switch (kind) {
    case ExprKind::cond: return 0;
    case ExprKind::lt:
    case ExprKind::le:
    case ExprKind::eq:
    case ExprKind::ne: return 1;
    case ExprKind::add:
    case ExprKind::sub: return 2;
    case ExprKind::mul:
    case ExprKind::div:
    case ExprKind::mod: return 3;
    default: return 4;
  }
}

const char* symbol(ExprKind kind) {
  switch (kind) {
    case ExprKind::add: return "+";
    case ExprKind::sub: return "-";
    case ExprKind::mul: return "*";
    case ExprKind::div: return "/";
    case ExprKind::mod: return "%";
    case ExprKind::lt: return "<";
    case ExprKind::le: return "<=";
    case ExprKind::eq: return "==";
    case ExprKind::ne: return "!=";
    default: return "?";
  }
}

void render(const Expr& e, int min_level, std::string& out) {
  const int own = level(e.kind());
  const bool wrap = own < min_level;
  if (wrap) out += '(';
  switch (e.kind()) {
    case ExprKind::nat: out += e.value().str(); break;
    case ExprKind::var_x: out += 'x'; break;
    case ExprKind::var_y: out += 'y'; break;
    case ExprKind::neg:
      out += '-';
      render(e.arg(0), 4, out);
      break;
    case ExprKind::min:
    case ExprKind::max:
      out += e.kind() == ExprKind::min ? "min(" : "max(";
      render(e.arg(0), 0, out);
      out += ", ";
      render(e.arg(1), 0, out);
      out += ')';
      break;
    case ExprKind::cond:
      out += "if ";
      render(e.arg(0), 1, out);
      out += " then ";
      render(e.arg(1), 0, out);
      out += " else ";
      render(e.arg(2), 0, out);
      break;
    case ExprKind::lt:
    case ExprKind::le:
    case ExprKind::eq:
    case ExprKind::ne:
      render(e.arg(0), 2, out);
      out += ' ';
      out += symbol(e.kind());
      out += ' ';
      render(e.arg(1), 2, out);
      break;
    default:  // left-associative binary operators
      render(e.arg(0), own, out);
      out += ' ';
      out += symbol(e.kind());
      out += ' ';
      render(e.arg(1), own + 1, out);
      break;
  }
  if (wrap) out += ')';
}

// Lexer

enum class Tok { nat, ident, plus, minus, star, slash, percent, lparen, rparen, comma, lt, le, eqeq, ne, end };

struct Token {
  Tok kind;
  std::size_t pos;
  std::string text;
};

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    const char ch = src[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
      out.push_back({Tok::nat, start, src.substr(start, i - start)});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) ++i;
      out.push_back({Tok::ident, start, src.substr(start, i - start)});
      continue;
    }
    auto two = [&](char next) { return i + 1 < src.size() && src[i + 1] == next; };
    switch (ch) {
      case '+': out.push_back({Tok::plus, start, "+"}); ++i; break;
      case '-': out.push_back({Tok::minus, start, "-"}); ++i; break;
      case '*': out.push_back({Tok::star, start, "*"}); ++i; break;
      case '/': out.push_back({Tok::slash, start, "/"}); ++i; break;
      case '%': out.push_back({Tok::percent, start, "%"}); ++i; break;
      case '(': out.push_back({Tok::lparen, start, "("}); ++i; break;
      case ')': out.push_back({Tok::rparen, start, ")"}); ++i; break;
      case ',': out.push_back({Tok::comma, start, ","}); ++i; break;
      case '<':
        if (two('=')) {
          out.push_back({Tok::le, start, "<="});
          i += 2;
        } else {
          out.push_back({Tok::lt, start, "<"});
          ++i;
        }
        break;
      case '=':
        if (!two('=')) throw DslError(ErrorKind::SyntaxError, start, {"=="}, "stray '='");
        out.push_back({Tok::eqeq, start, "=="});
        i += 2;
        break;
      case '!':
        if (!two('=')) throw DslError(ErrorKind::SyntaxError, start, {"!="}, "stray '!'");
        out.push_back({Tok::ne, start, "!="});
        i += 2;
        break;
      default:
        throw DslError(ErrorKind::SyntaxError, start, {}, std::string("unexpected character '") + ch + "'");
    }
  }
  out.push_back({Tok::end, src.size(), "end of input"});
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& src) : tokens_(lex(src)) {}

  Expr parse_all() {
    Expr e = expr();
    if (peek().kind != Tok::end) fail({"end of input", "operator"});
    return e;
  }

 private:
  static constexpr std::size_t max_depth = 512;

  const Token& peek() const { return tokens_[at_]; }
  bool is_keyword(const char* word) const { return peek().kind == Tok::ident && peek().text == word; }
  Token take() { return tokens_[at_ == tokens_.size() - 1 ? at_ : at_++]; }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    throw DslError(ErrorKind::SyntaxError, peek().pos, std::move(expected), "unexpected " + describe(peek()));
  }

  static std::string describe(const Token& t) {
    return t.kind == Tok::end ? "end of input" : "'" + t.text + "'";
  }

  void expect(Tok kind, const char* text) {
    if (peek().kind != kind) fail({text});
    take();
  }

  void expect_keyword(const char* word) {
    if (!is_keyword(word)) fail({word});
    take();
  }

  struct DepthGuard {
    Parser& p;
    explicit DepthGuard(Parser& parser) : p(parser) {
      if (++p.depth_ > max_depth) throw DslError(ErrorKind::SyntaxError, p.peek().pos, {}, "nesting too deep");
    }
    ~DepthGuard() { --p.depth_; }
  };

  Expr expr() {
    DepthGuard guard(*this);
    if (is_keyword("if")) {
      const std::size_t pos = take().pos;
      Expr c = cmp();
      expect_keyword("then");
      Expr a = expr();
      expect_keyword("else");
      Expr b = expr();
      return Expr(make(ExprKind::cond, pos, {c, a, b}));
    }
    return cmp();
  }

  Expr cmp() {
    Expr lhs = sum();
    std::optional<ExprKind> kind;
    switch (peek().kind) {
      case Tok::lt: kind = ExprKind::lt; break;
      case Tok::le: kind = ExprKind::le; break;
      case Tok::eqeq: kind = ExprKind::eq; break;
      case Tok::ne: kind = ExprKind::ne; break;
      default: return lhs;
    }
    take();
    Expr rhs = sum();
    return Expr(make(*kind, lhs.position(), {lhs, rhs}));
  }

  Expr sum() {
    Expr lhs = term();
    while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
      const ExprKind kind = take().kind == Tok::plus ? ExprKind::add : ExprKind::sub;
      Expr rhs = term();
      lhs = Expr(make(kind, lhs.position(), {lhs, rhs}));
    }
    return lhs;
  }

  Expr term() {
    Expr lhs = factor();
    while (peek().kind == Tok::star || peek().kind == Tok::slash || peek().kind == Tok::percent) {
      const Tok op = take().kind;
      const std::size_t rhs_pos = peek().pos;
      Expr rhs = factor();
      const ExprKind kind = op == Tok::star ? ExprKind::mul : op == Tok::slash ? ExprKind::div : ExprKind::mod;
      if (kind != ExprKind::mul && rhs.is_closed() && rhs.eval(0, 0) == 0)
        throw DslError(ErrorKind::DivisionByZero, rhs_pos, {}, "divisor is always zero");
      lhs = Expr(make(kind, lhs.position(), {lhs, rhs}));
    }
    return lhs;
  }

  Expr factor() {
    DepthGuard guard(*this);
    const Token& t = peek();
    switch (t.kind) {
      case Tok::nat: {
        Token tok = take();
        return Expr(make(ExprKind::nat, tok.pos, {}, BigInt(tok.text.c_str())));
      }
      case Tok::minus: {
        const std::size_t pos = take().pos;
        Expr inner = factor();
        return Expr(make(ExprKind::neg, pos, {inner}));
      }
      case Tok::lparen: {
        take();
        Expr inner = expr();
        expect(Tok::rparen, ")");
        return inner;
      }
      case Tok::ident: {
        if (t.text == "x" || t.text == "y") {
          Token tok = take();
          return Expr(make(tok.text == "x" ? ExprKind::var_x : ExprKind::var_y, tok.pos, {}));
        }
        if (t.text == "min" || t.text == "max") {
          Token tok = take();
          expect(Tok::lparen, "(");
          Expr a = expr();
          expect(Tok::comma, ",");
          Expr b = expr();
          expect(Tok::rparen, ")");
          return Expr(make(tok.text == "min" ? ExprKind::min : ExprKind::max, tok.pos, {a, b}));
        }
        if (t.text == "if" || t.text == "then" || t.text == "else")
          fail({"natural", "x", "y", "min", "max", "(", "-"});
        throw DslError(ErrorKind::UnknownIdentifier, t.pos, {"x", "y", "min", "max", "if"},
                       "unknown identifier '" + t.text + "'");
      }
      default: fail({"natural", "x", "y", "min", "max", "(", "-"});
    }
  }

  std::vector<Token> tokens_;
  std::size_t at_ = 0;
  std::size_t depth_ = 0;
};

BigInt eval_node(const Expr& e, const BigInt& x, const BigInt& y, bool strict) {
  auto arg = [&](std::size_t i) { return eval_node(e.arg(i), x, y, strict); };
  switch (e.kind()) {
    case ExprKind::nat: return e.value();
    case ExprKind::var_x: return x;
    case ExprKind::var_y: return y;
    case ExprKind::neg: return -arg(0);
    case ExprKind::add: return arg(0) + arg(1);
    case ExprKind::sub: return arg(0) - arg(1);
    case ExprKind::mul: return arg(0) * arg(1);
    case ExprKind::div:
    case ExprKind::mod: {
      BigInt a = arg(0), b = arg(1);
      if (b == 0) {
        if (strict) throw DslError(ErrorKind::DivisionByZero, e.arg(1).position(), {}, "divisor evaluated to zero");
        return e.kind() == ExprKind::div ? BigInt(0) : a;
      }
      return e.kind() == ExprKind::div ? BigInt(a / b) : BigInt(a % b);
    }
    case ExprKind::min: return std::min(arg(0), arg(1));
    case ExprKind::max: return std::max(arg(0), arg(1));
    case ExprKind::lt: return arg(0) < arg(1) ? 1 : 0;
    case ExprKind::le: return arg(0) <= arg(1) ? 1 : 0;
    case ExprKind::eq: return arg(0) == arg(1) ? 1 : 0;
    case ExprKind::ne: return arg(0) != arg(1) ? 1 : 0;
    case ExprKind::cond: return arg(0) != 0 ? arg(1) : arg(2);
  }
  return 0;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += items[i];
  }
  return out;
}

}  // namespace

ExprKind Expr::kind() const { return node_->kind; }
const BigInt& Expr::value() const { return node_->value; }
std::size_t Expr::arity() const { return node_->args.size(); }
Expr Expr::arg(std::size_t i) const { return node_->args.at(i); }
std::size_t Expr::position() const { return node_->position; }
bool Expr::is_closed() const { return node_->closed; }
std::size_t Expr::depth() const { return node_->depth; }

std::string Expr::pretty() const {
  std::string out;
  render(*this, 0, out);
  return out;
}

BigInt Expr::eval(const BigInt& x, const BigInt& y, bool strict) const { return eval_node(*this, x, y, strict); }

DslError::DslError(ErrorKind kind, std::size_t position, std::vector<std::string> expected, const std::string& detail)
    : Error(kind, "at offset " + std::to_string(position) + ": " + detail +
                      (expected.empty() ? std::string() : " (expected " + join(expected) + ")")),
      position_(position),
      expected_(std::move(expected)) {}

Expr parse(const std::string& source) { return Parser(source).parse_all(); }

DslColoring::DslColoring(Expr expr, std::size_t k, bool strict) : expr_(std::move(expr)), k_(k), strict_(strict) {
  if (k_ == 0) throw Error(ErrorKind::InvalidInput, "k must be positive");
}

Color DslColoring::operator()(Node x, Node y) const {
  if (x == y) throw Error(ErrorKind::InvalidInput, "colorings are defined on distinct endpoints");
  const BigInt lo = std::min(x, y), hi = std::max(x, y);
  BigInt r = expr_.eval(lo, hi, strict_) % k_;
  if (r < 0) r += k_;
  return static_cast<Color>(r);
}

Coloring DslColoring::to_coloring() const {
  DslColoring self = *this;
  return Coloring(k_, [self](Node lo, Node hi) { return self(lo, hi); }, expr_.pretty());
}

namespace {

std::size_t parse_size(const std::string& text, const std::string& name) {
  if (text.empty() || text.size() > 18 || text.find_first_not_of("0123456789") != std::string::npos)
    throw Error(ErrorKind::UnknownBuiltin, "bad parameter in '" + name + "'");
  return std::stoull(text);
}

}  // namespace

Coloring builtin(const std::string& name, std::size_t k) {
  if (k == 0) throw Error(ErrorKind::InvalidInput, "k must be positive");
  const auto colon = name.find(':');
  const std::string head = name.substr(0, colon);
  const std::string param = colon == std::string::npos ? std::string() : name.substr(colon + 1);
  const bool has_param = colon != std::string::npos;

  if (head == "constant" && has_param) {
    const auto c = parse_size(param, name);
    if (c >= k) throw Error(ErrorKind::ColorOutOfRange, "constant color " + param + " with k=" + std::to_string(k));
    return Coloring(k, [c](Node, Node) { return static_cast<Color>(c); }, name);
  }
  if (head == "sum-mod" && !has_param)
    return Coloring(k, [k](Node lo, Node hi) { return static_cast<Color>((lo % k + hi % k) % k); }, name);
  if (head == "diff-mod" && !has_param)
    return Coloring(k, [k](Node lo, Node hi) { return static_cast<Color>((hi - lo) % k); }, name);
  if (head == "block" && has_param) {
    const auto b = parse_size(param, name);
    if (b == 0) throw Error(ErrorKind::UnknownBuiltin, "block size must be positive");
    return Coloring(k, [k, b](Node lo, Node) { return static_cast<Color>((lo / b) % k); }, name);
  }
  if (head == "table" && has_param) {
    ColoringTable table = load_table_file(param);
    if (table.k != k)
      throw Error(ErrorKind::InvalidInput,
                  "table " + param + " has k=" + std::to_string(table.k) + " but k=" + std::to_string(k) + " was requested");
    return table_coloring(std::move(table), name);
  }
  throw Error(ErrorKind::UnknownBuiltin, "'" + name + "' (known: constant:<i>, sum-mod, diff-mod, block:<b>, table:<file>)");
}

}  // namespace dvisit
