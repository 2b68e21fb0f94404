#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qg/magma.hpp"

namespace qg {

/// Indexed permutations of {0..n-1} with display labels ("L_2", ...).
class BijectionFamily {
public:
  /// Throws InputError if a member is not a permutation of {0..order-1}.
  BijectionFamily(std::size_t order, std::vector<std::vector<Element>> members, std::vector<std::string> labels);

  std::size_t order() const noexcept { return order_; }
  std::size_t size() const noexcept { return members_.size(); }
  const std::vector<Element>& member(std::size_t i) const { return members_[i]; }
  const std::string& label(std::size_t i) const { return labels_[i]; }

private:
  std::size_t order_;
  std::vector<std::vector<Element>> members_;
  std::vector<std::string> labels_;
};

BijectionFamily left_translations(const Quasigroup& q);
BijectionFamily right_translations(const Quasigroup& q);

/// True iff a -> a*u is a bijection. Works on arbitrary magmas.
bool check_regularity(const CayleyTable& t, Element u);

/// Equivalence classes; block ids are numbered in order of each block's least element.
struct Partition {
  std::vector<std::size_t> block_id;

  std::size_t order() const noexcept { return block_id.size(); }
  std::size_t block_count() const;
  std::vector<std::vector<Element>> blocks() const;

  friend bool operator==(const Partition&, const Partition&) = default;
};

/// Finest partition with x ~ member_i(x) for every member and x.
Partition generated_partition(std::size_t order, const BijectionFamily& fam);

struct CollapseVerdict {
  bool idempotent_ok;
  std::optional<Element> idempotent_witness;                    // x with e(e(x)) != e(x)
  bool transitivity_ok;
  std::optional<std::pair<Element, Element>> transitivity_witness;  // (x, y) joined by no member
  bool coequalization_ok;
  std::optional<std::pair<std::size_t, Element>> coequalization_witness;  // (i, x): e(member_i(x)) != e(x)
  bool is_constant;
  std::optional<Element> constant_value;
};

/// Checks e∘e = e, transitivity of the family, and e∘member_i = e, then
/// computes constancy directly. If all three hypotheses hold but e is not
/// constant, std::logic_error is thrown: that outcome is impossible.
/// Throws InputError on an empty universe or an order mismatch.
CollapseVerdict collapse_check(const EndoMap& e, const BijectionFamily& fam);

}  // namespace qg
