#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qg/identity.hpp"
#include "qg/magma.hpp"

namespace qg {

inline constexpr std::size_t kDefaultMaxOrder = 7;

struct SearchSpec {
  std::size_t order = 1;
  bool require_latin = true;
  std::vector<Identity> required_identities;
  // Each of these must FAIL on an emitted model.
  std::vector<Identity> forbidden_identities;
  // Emitted models must have no two-sided identity element.
  bool forbid_identity_element = false;
  // First row and first column fixed to 0..n-1.
  bool reduced_only = false;
  // Emit one canonical representative per isomorphism class.
  bool up_to_iso = false;
  std::optional<std::uint64_t> limit;

  // Execution knobs; they never change the emitted stream.
  bool incremental_pruning = true;
  std::size_t workers = 1;
  std::size_t max_order = kDefaultMaxOrder;
};

/// Stable text key of everything that determines the output stream.
std::string spec_key(const SearchSpec& spec);

/// Return false to stop the search.
using TableSink = std::function<bool(const CayleyTable&)>;

/// Emits every matching table exactly once in row-major lexicographic order,
/// or, with up_to_iso, the sorted canonical forms of the matching tables.
/// Throws InputError for an invalid spec (order out of bounds, reduced
/// without Latin, conflicting normalizations) and UnsupportedOperation for
/// division identities without the Latin requirement.
void enumerate(const SearchSpec& spec, const TableSink& sink);
std::vector<CayleyTable> enumerate_all(const SearchSpec& spec);

struct ModelCount {
  std::uint64_t raw = 0;
  std::optional<std::uint64_t> iso_classes;  // present iff spec.up_to_iso
};

/// Counts ignore spec.limit.
ModelCount count_models(const SearchSpec& spec);

/// First table of the raw stream, if any.
std::optional<CayleyTable> find_witness(const SearchSpec& spec);

/// Least table, row-major, over all relabelings t'[σa][σb] = σ(t[a][b]).
CayleyTable canonical_form(const CayleyTable& t);

/// Applies the relabeling σ given as perm[a] = σ(a).
CayleyTable relabel(const CayleyTable& t, const std::vector<Element>& perm);

}  // namespace qg
