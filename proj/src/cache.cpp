#include "qg/cache.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

#include "qg/errors.hpp"
#include "qg/table_io.hpp"

namespace qg {

namespace {

// FNV-1a; stable across platforms and runs.
std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

std::filesystem::path EnumerationCache::path_for(const SearchSpec& spec) const {
  std::ostringstream name;
  name << "order" << spec.order << '-' << std::hex << fnv1a(spec_key(spec)) << ".qgs";
  return dir_ / name.str();
}

std::optional<std::vector<CayleyTable>> EnumerationCache::load(const SearchSpec& spec) const {
  const auto path = path_for(spec);
  std::ifstream in(path);
  if (!in) return std::nullopt;
  // The header echoes the spec key; a mismatch means a hash collision or a stale file.
  std::string expected_header;
  std::istringstream key(spec_key(spec));
  for (std::string line; std::getline(key, line);) expected_header += "# " + line + "\n";
  std::string header;
  for (std::string line; header.size() < expected_header.size() && std::getline(in, line);) header += line + "\n";
  if (header != expected_header) return std::nullopt;
  try {
    auto tables = read_tables(in, path.string());
    for (const auto& t : tables) {
      if (t.order() != spec.order) return std::nullopt;
      if (spec.require_latin && !check_latin(t).is_quasigroup) return std::nullopt;
    }
    return tables;
  } catch (const InputError&) {
    return std::nullopt;
  }
}

void EnumerationCache::store(const SearchSpec& spec, const std::vector<CayleyTable>& tables) const {
  std::filesystem::create_directories(dir_);
  const auto path = path_for(spec);
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw InputError("cannot write cache file " + tmp);
    std::istringstream key(spec_key(spec));
    for (std::string line; std::getline(key, line);) out << "# " << line << '\n';
    write_tables(out, tables);
  }
  std::filesystem::rename(tmp, path);
}

std::vector<CayleyTable> enumerate_cached(const SearchSpec& spec, const EnumerationCache* cache) {
  if (!cache) return enumerate_all(spec);
  if (auto hit = cache->load(spec)) return std::move(*hit);
  auto tables = enumerate_all(spec);
  cache->store(spec, tables);
  return tables;
}

}  // namespace qg
