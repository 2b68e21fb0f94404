#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace qg {

using Element = std::uint32_t;

/// A finite binary operation on {0..n-1}, stored row-major: entry(a, b) = a*b.
/// No Latin requirement; arbitrary magmas are representable.
class CayleyTable {
public:
  CayleyTable(std::size_t order, std::vector<Element> entries);

  /// Builds the table of f(a, b) for all a, b < order.
  template <class F>
  static CayleyTable from_function(std::size_t order, F f) {
    std::vector<Element> entries(order * order);
    for (std::size_t a = 0; a < order; ++a)
      for (std::size_t b = 0; b < order; ++b)
        entries[a * order + b] = static_cast<Element>(f(static_cast<Element>(a), static_cast<Element>(b)));
    return CayleyTable(order, std::move(entries));
  }

  std::size_t order() const noexcept { return order_; }
  std::span<const Element> entries() const noexcept { return entries_; }
  std::span<const Element> row(Element a) const noexcept {
    return std::span<const Element>(entries_).subspan(a * order_, order_);
  }

  /// Unchecked lookup for inner loops.
  Element operator()(Element a, Element b) const noexcept { return entries_[a * order_ + b]; }

  /// Checked lookup; throws InputError when a or b is out of range.
  Element mul(Element a, Element b) const;

  friend bool operator==(const CayleyTable&, const CayleyTable&) = default;
  // Lexicographic on (order, row-major entries).
  friend std::strong_ordering operator<=>(const CayleyTable& l, const CayleyTable& r);

private:
  std::size_t order_;
  std::vector<Element> entries_;
};

struct LatinVerdict {
  enum class Kind { Row, Column };
  struct Witness {
    Kind kind;
    Element index;
    Element duplicated_value;
  };

  bool is_quasigroup;
  std::optional<Witness> witness;
};

/// Scans rows first, then columns; the witness is the first duplicate found.
LatinVerdict check_latin(const CayleyTable& t);

/// A Latin CayleyTable with both division tables precomputed.
class Quasigroup {
public:
  /// Throws InputError if the table is not Latin.
  explicit Quasigroup(CayleyTable table);

  const CayleyTable& table() const noexcept { return table_; }
  std::size_t order() const noexcept { return table_.order(); }

  Element mul(Element a, Element b) const noexcept { return table_(a, b); }
  /// The unique x with a*x = b.
  Element ldiv(Element a, Element b) const noexcept { return ldiv_[a * order() + b]; }
  /// The unique y with y*a = b.
  Element rdiv(Element b, Element a) const noexcept { return rdiv_[b * order() + a]; }

private:
  CayleyTable table_;
  std::vector<Element> ldiv_;  // [a][b] -> a\b
  std::vector<Element> rdiv_;  // [b][a] -> b/a
};

/// A total self-map on {0..n-1}.
class EndoMap {
public:
  explicit EndoMap(std::vector<Element> values);

  std::size_t order() const noexcept { return values_.size(); }
  Element operator()(Element x) const noexcept { return values_[x]; }
  std::span<const Element> values() const noexcept { return values_; }

  friend bool operator==(const EndoMap&, const EndoMap&) = default;

private:
  std::vector<Element> values_;
};

struct EndoAnalysis {
  bool is_idempotent;
  std::vector<Element> fixed_points;  // ascending
  std::vector<Element> image;         // ascending
  std::optional<Element> constant_value;
};

/// j(x) = x\x, so that x*j(x) = x.
EndoMap j_map(const Quasigroup& q);
/// k(x) = x/x, so that k(x)*x = x.
EndoMap k_map(const Quasigroup& q);

/// Direct scan over all candidates for a two-sided identity.
std::optional<Element> identity_element(const CayleyTable& t);

EndoAnalysis analyze_endomap(const EndoMap& f);

}  // namespace qg
