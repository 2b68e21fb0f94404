#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "qg/magma.hpp"
#include "qg/search.hpp"

namespace qg {

/// On-disk store of enumeration results keyed by spec_key(). Entries are
/// concatenated table-format files; loads are re-checked and rejected
/// entries behave as misses, so the cache is never authoritative.
class EnumerationCache {
public:
  explicit EnumerationCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  std::filesystem::path path_for(const SearchSpec& spec) const;
  std::optional<std::vector<CayleyTable>> load(const SearchSpec& spec) const;
  void store(const SearchSpec& spec, const std::vector<CayleyTable>& tables) const;

private:
  std::filesystem::path dir_;
};

/// enumerate_all() through the cache when one is given.
std::vector<CayleyTable> enumerate_cached(const SearchSpec& spec, const EnumerationCache* cache);

}  // namespace qg
