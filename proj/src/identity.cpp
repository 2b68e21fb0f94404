#include "qg/identity.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <stdexcept>
#include <variant>

#include "qg/errors.hpp"

namespace qg {

struct Term::Node {
  struct Var {
    std::string name;
  };
  struct Apply {
    Op op;
    Term left;
    Term right;
  };
  std::variant<Var, Apply> v;
};

char op_symbol(Op op) noexcept {
  switch (op) {
    case Op::Mul: return '*';
    case Op::LDiv: return '\\';
    case Op::RDiv: return '/';
  }
  return '?';
}

Term Term::variable(std::string name) {
  if (name.empty()) throw InputError("variable name must be nonempty");
  return Term(std::make_shared<const Node>(Node{Node::Var{std::move(name)}}));
}

Term Term::apply(Op op, Term left, Term right) {
  return Term(std::make_shared<const Node>(Node{Node::Apply{op, std::move(left), std::move(right)}}));
}

bool Term::is_variable() const noexcept { return std::holds_alternative<Node::Var>(node_->v); }

const std::string& Term::name() const { return std::get<Node::Var>(node_->v).name; }
Op Term::op() const { return std::get<Node::Apply>(node_->v).op; }
const Term& Term::left() const { return std::get<Node::Apply>(node_->v).left; }
const Term& Term::right() const { return std::get<Node::Apply>(node_->v).right; }

std::size_t Term::depth() const {
  if (is_variable()) return 0;
  return 1 + std::max(left().depth(), right().depth());
}

bool Term::uses_division() const {
  if (is_variable()) return false;
  return op() != Op::Mul || left().uses_division() || right().uses_division();
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.is_variable() != b.is_variable()) return false;
  if (a.is_variable()) return a.name() == b.name();
  return a.op() == b.op() && a.left() == b.left() && a.right() == b.right();
}

namespace {

void collect_variables(const Term& t, std::vector<std::string>& out) {
  if (t.is_variable()) {
    if (std::find(out.begin(), out.end(), t.name()) == out.end()) out.push_back(t.name());
    return;
  }
  collect_variables(t.left(), out);
  collect_variables(t.right(), out);
}

class Parser {
public:
  explicit Parser(std::string_view text) : text_(text) {}

  Identity identity() {
    Term lhs = side();
    skip_space();
    if (at_end()) fail("expected '=' but reached end of input");
    if (peek() != '=') fail(peek() == ')' ? "unbalanced parenthesis" : "expected '='");
    ++pos_;
    Term rhs = side();
    skip_space();
    if (!at_end()) {
      if (peek() == ')') fail("unbalanced parenthesis");
      if (peek() == '=') fail("more than one '='");
      fail("unexpected character");
    }
    return Identity(std::move(lhs), std::move(rhs));
  }

private:
  Term side() {
    Term left = operand();
    skip_space();
    auto op = peek_op();
    if (!op) return left;
    ++pos_;
    Term right = operand();
    skip_space();
    if (peek_op()) fail("operators must be parenthesized");
    return Term::apply(*op, std::move(left), std::move(right));
  }

  Term operand() {
    skip_space();
    if (at_end()) fail("unexpected end of input");
    const char c = peek();
    if (c == '(') {
      ++pos_;
      Term inner = side();
      skip_space();
      if (at_end()) fail("unbalanced parenthesis: expected ')' but reached end of input");
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
      return Term::variable(std::string(text_.substr(start, pos_ - start)));
    }
    if (c == '=' || c == ')') fail("empty term");
    if (peek_op()) fail("operator without left operand");
    fail("unexpected character");
  }

  std::optional<Op> peek_op() const {
    if (at_end()) return std::nullopt;
    switch (peek()) {
      case '*': return Op::Mul;
      case '\\': return Op::LDiv;
      case '/': return Op::RDiv;
      default: return std::nullopt;
    }
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, pos_); }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void print(const Term& t, bool nested, std::string& out) {
  if (t.is_variable()) {
    out += t.name();
    return;
  }
  if (nested) out += '(';
  print(t.left(), true, out);
  out += op_symbol(t.op());
  print(t.right(), true, out);
  if (nested) out += ')';
}

Element lookup(const Assignment& assignment, const std::string& name) {
  for (const auto& [var, value] : assignment)
    if (var == name) return value;
  throw InputError("variable '" + name + "' is not assigned");
}

// Division is only available when q is non-null.
Element eval(const Term& t, const CayleyTable& table, const Quasigroup* q, const Assignment& assignment) {
  if (t.is_variable()) {
    const Element v = lookup(assignment, t.name());
    if (v >= table.order()) throw InputError("value of '" + t.name() + "' is out of range");
    return v;
  }
  const Element a = eval(t.left(), table, q, assignment);
  const Element b = eval(t.right(), table, q, assignment);
  switch (t.op()) {
    case Op::Mul: return table(a, b);
    case Op::LDiv:
      if (!q) throw UnsupportedOperation("left division needs a quasigroup");
      return q->ldiv(a, b);
    case Op::RDiv:
      if (!q) throw UnsupportedOperation("right division needs a quasigroup");
      return q->rdiv(a, b);
  }
  throw std::logic_error("unknown operator");
}

HoldsVerdict scan(const CayleyTable& table, const Quasigroup* q, const Identity& id) {
  const std::size_t n = table.order();
  Assignment asg;
  for (const auto& v : id.variables) asg.emplace_back(v, 0);
  while (true) {
    if (eval(id.lhs, table, q, asg) != eval(id.rhs, table, q, asg)) return {false, asg};
    // Odometer increment, last variable fastest.
    std::size_t i = asg.size();
    while (i > 0) {
      --i;
      if (++asg[i].second < n) break;
      asg[i].second = 0;
      if (i == 0) return {true, std::nullopt};
    }
    if (asg.empty()) return {true, std::nullopt};
  }
}

}  // namespace

Identity::Identity(Term l, Term r) : lhs(std::move(l)), rhs(std::move(r)) {
  collect_variables(lhs, variables);
  collect_variables(rhs, variables);
}

Identity parse_identity(std::string_view text) { return Parser(text).identity(); }

std::string to_string(const Term& t) {
  std::string out;
  print(t, false, out);
  return out;
}

std::string to_string(const Identity& id) { return to_string(id.lhs) + " = " + to_string(id.rhs); }

Element eval_term(const Term& t, const CayleyTable& table, const Assignment& assignment) {
  return eval(t, table, nullptr, assignment);
}

Element eval_term(const Term& t, const Quasigroup& q, const Assignment& assignment) {
  return eval(t, q.table(), &q, assignment);
}

HoldsVerdict holds(const Quasigroup& q, const Identity& id) { return scan(q.table(), &q, id); }

HoldsVerdict holds(const CayleyTable& table, const Identity& id) {
  if (!id.uses_division()) return scan(table, nullptr, id);
  if (!check_latin(table).is_quasigroup)
    throw UnsupportedOperation("identity '" + to_string(id) + "' uses division but the table is not a quasigroup");
  const Quasigroup q(table);
  return scan(q.table(), &q, id);
}

std::vector<Identity> read_identities(std::istream& in, std::string_view source) {
  std::vector<Identity> out;
  std::size_t number = 0;
  for (std::string line; std::getline(in, line);) {
    ++number;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    if (line.back() == '\r') line.pop_back();
    try {
      out.push_back(parse_identity(line));
    } catch (const SyntaxError& e) {
      throw InputError(std::string(source) + ":" + std::to_string(number) + ": " + e.what());
    }
  }
  return out;
}

const Identity& builtin_n1() {
  static const Identity n1 = [] {
    auto v = [](const char* s) { return Term::variable(s); };
    auto mul = [](Term a, Term b) { return Term::apply(Op::Mul, std::move(a), std::move(b)); };
    return Identity(mul(mul(mul(v("x"), v("y")), v("z")), v("y")), mul(v("x"), mul(v("y"), mul(v("z"), v("y")))));
  }();
  return n1;
}

}  // namespace qg
