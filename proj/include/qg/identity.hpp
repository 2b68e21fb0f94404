#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qg/magma.hpp"

namespace qg {

enum class Op { Mul, LDiv, RDiv };

char op_symbol(Op op) noexcept;

/// Immutable term over variables and {*, \, /}. Copies share structure.
class Term {
public:
  static Term variable(std::string name);
  static Term apply(Op op, Term left, Term right);

  bool is_variable() const noexcept;
  const std::string& name() const;  // variables only
  Op op() const;                    // applications only
  const Term& left() const;
  const Term& right() const;

  /// Number of operator nodes on the longest root-to-leaf path.
  std::size_t depth() const;
  bool uses_division() const;

  friend bool operator==(const Term& a, const Term& b);

private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// A universally quantified equation lhs = rhs.
struct Identity {
  Term lhs;
  Term rhs;
  std::vector<std::string> variables;  // first-occurrence order, lhs then rhs

  Identity(Term l, Term r);
  bool uses_division() const { return lhs.uses_division() || rhs.uses_division(); }

  friend bool operator==(const Identity&, const Identity&) = default;
};

using Assignment = std::vector<std::pair<std::string, Element>>;

struct HoldsVerdict {
  bool holds;
  std::optional<Assignment> witness;
};

/// Grammar: identity := side '=' side; side := operand [op operand];
/// operand := name | '(' side ')'. Nested applications must be parenthesized.
/// Throws SyntaxError carrying the byte offset of the problem.
Identity parse_identity(std::string_view text);

/// Canonical text: single spaces around '=', parentheses only on nested applications.
std::string to_string(const Term& t);
std::string to_string(const Identity& id);

/// Division nodes throw UnsupportedOperation; unassigned variables throw InputError.
Element eval_term(const Term& t, const CayleyTable& table, const Assignment& assignment);
Element eval_term(const Term& t, const Quasigroup& q, const Assignment& assignment);

/// Scans all n^v assignments lexicographically (first variable slowest) and
/// reports the first failing one.
HoldsVerdict holds(const Quasigroup& q, const Identity& id);
/// As above; an identity using division requires a Latin table, otherwise
/// UnsupportedOperation is thrown.
HoldsVerdict holds(const CayleyTable& table, const Identity& id);

/// One identity per line; '#' comments and blank lines skipped. Parse errors
/// become InputError naming `source`, the line and the byte offset.
std::vector<Identity> read_identities(std::istream& in, std::string_view source = "<input>");

/// ((x*y)*z)*y = x*(y*(z*y))
const Identity& builtin_n1();

}  // namespace qg
