#include "qg/table_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include "qg/errors.hpp"

namespace qg {

namespace {

struct Line {
  std::size_t number;
  std::string text;
};

class LineReader {
public:
  LineReader(std::istream& in, std::string_view source) : in_(in), source_(source) {}

  // Next line that is neither blank nor a comment.
  std::optional<Line> next() {
    std::string text;
    while (std::getline(in_, text)) {
      ++number_;
      if (!text.empty() && text.back() == '\r') text.pop_back();
      const auto first = text.find_first_not_of(" \t");
      if (first == std::string::npos || text[first] == '#') continue;
      return Line{number_, text};
    }
    return std::nullopt;
  }

  [[noreturn]] void fail(std::size_t line, const std::string& msg) const {
    throw InputError(std::string(source_) + ":" + std::to_string(line) + ": " + msg);
  }
  [[noreturn]] void fail_eof(const std::string& msg) const {
    throw InputError(std::string(source_) + ": " + msg);
  }

private:
  std::istream& in_;
  std::string_view source_;
  std::size_t number_ = 0;
};

bool is_separator(const std::string& text) {
  const auto first = text.find_first_not_of(" \t");
  const auto last = text.find_last_not_of(" \t");
  return text.substr(first, last - first + 1) == "---";
}

std::vector<unsigned long> parse_numbers(const Line& line, const LineReader& reader) {
  std::vector<unsigned long> out;
  std::istringstream ss(line.text);
  std::string token;
  while (ss >> token) {
    unsigned long v = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size())
      reader.fail(line.number, "'" + token + "' is not a non-negative integer");
    out.push_back(v);
  }
  return out;
}

// Reads one table whose order line is `header`.
CayleyTable read_body(const Line& header, LineReader& reader) {
  const auto head = parse_numbers(header, reader);
  if (head.size() != 1) reader.fail(header.number, "expected the table order alone on the first line");
  const std::size_t n = head[0];
  if (n == 0) reader.fail(header.number, "table order must be at least 1");
  std::vector<Element> entries;
  entries.reserve(n * n);
  for (std::size_t row = 0; row < n; ++row) {
    auto line = reader.next();
    if (!line || is_separator(line->text))
      reader.fail_eof("expected " + std::to_string(n) + " rows, found " + std::to_string(row));
    const auto values = parse_numbers(*line, reader);
    if (values.size() != n)
      reader.fail(line->number, "expected " + std::to_string(n) + " entries, found " + std::to_string(values.size()));
    for (auto v : values) {
      if (v >= n) reader.fail(line->number, "entry " + std::to_string(v) + " is not below the order " + std::to_string(n));
      entries.push_back(static_cast<Element>(v));
    }
  }
  return CayleyTable(n, std::move(entries));
}

}  // namespace

CayleyTable read_table(std::istream& in, std::string_view source) {
  LineReader reader(in, source);
  const auto header = reader.next();
  if (!header) reader.fail_eof("empty input, expected a table");
  CayleyTable t = read_body(*header, reader);
  if (const auto extra = reader.next()) reader.fail(extra->number, "unexpected content after the last row");
  return t;
}

std::vector<CayleyTable> read_tables(std::istream& in, std::string_view source) {
  LineReader reader(in, source);
  std::vector<CayleyTable> out;
  bool expect_table = true;
  while (const auto line = reader.next()) {
    if (is_separator(line->text)) {
      if (expect_table) reader.fail(line->number, "empty table between separators");
      expect_table = true;
      continue;
    }
    if (!expect_table) reader.fail(line->number, "expected '---' between tables");
    out.push_back(read_body(*line, reader));
    expect_table = false;
  }
  return out;
}

namespace {
std::ifstream open(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path.string());
  return in;
}
}  // namespace

CayleyTable read_table_file(const std::filesystem::path& path) {
  auto in = open(path);
  return read_table(in, path.string());
}

std::vector<CayleyTable> read_tables_file(const std::filesystem::path& path) {
  auto in = open(path);
  return read_tables(in, path.string());
}

void write_table(std::ostream& out, const CayleyTable& t) {
  out << t.order() << '\n';
  for (Element a = 0; a < t.order(); ++a) {
    const auto row = t.row(a);
    for (std::size_t b = 0; b < row.size(); ++b) out << (b ? " " : "") << row[b];
    out << '\n';
  }
}

std::string format_table(const CayleyTable& t) {
  std::ostringstream ss;
  write_table(ss, t);
  return ss.str();
}

void write_tables(std::ostream& out, const std::vector<CayleyTable>& tables) {
  for (std::size_t i = 0; i < tables.size(); ++i) {
    if (i) out << "---\n";
    write_table(out, tables[i]);
  }
}

}  // namespace qg
