#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "qg/magma.hpp"

namespace qg {

// Text format: the order n on the first line, then n rows of n
// whitespace-separated entries (row = left operand). Lines starting with '#'
// and blank lines are skipped. Streams of tables are separated by "---".

/// Throws InputError naming `source` and the offending line.
CayleyTable read_table(std::istream& in, std::string_view source = "<input>");
CayleyTable read_table_file(const std::filesystem::path& path);

std::vector<CayleyTable> read_tables(std::istream& in, std::string_view source = "<input>");
std::vector<CayleyTable> read_tables_file(const std::filesystem::path& path);

/// Normalized form: single spaces, trailing newline.
void write_table(std::ostream& out, const CayleyTable& t);
std::string format_table(const CayleyTable& t);
void write_tables(std::ostream& out, const std::vector<CayleyTable>& tables);

}  // namespace qg
