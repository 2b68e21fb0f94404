#pragma once

// Shared models and test-only oracles. Nothing here calls into the search
// engine, so the generators can serve as independent references for it.

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "qg/magma.hpp"

namespace qg::testing {

inline CayleyTable z3plus() {
  return CayleyTable::from_function(3, [](Element a, Element b) { return (a + b) % 3; });
}
inline CayleyTable z3minus() {
  return CayleyTable::from_function(3, [](Element a, Element b) { return (a + 3 - b) % 3; });
}
inline CayleyTable const2() { return CayleyTable(2, {0, 0, 0, 0}); }
inline CayleyTable q5lin() {
  return CayleyTable::from_function(5, [](Element a, Element b) { return (2 * a + b) % 5; });
}
inline CayleyTable cyclic(std::size_t n) {
  return CayleyTable::from_function(n, [n](Element a, Element b) { return (a + b) % n; });
}

// Brute force: every one of the n^(n*n) tables, filtered by a row/column
// permutation test written independently of check_latin.
inline bool is_latin_naive(const CayleyTable& t) {
  const std::size_t n = t.order();
  for (Element i = 0; i < n; ++i) {
    std::vector<Element> row, col;
    for (Element k = 0; k < n; ++k) {
      row.push_back(t(i, k));
      col.push_back(t(k, i));
    }
    std::sort(row.begin(), row.end());
    std::sort(col.begin(), col.end());
    for (Element k = 0; k < n; ++k)
      if (row[k] != k || col[k] != k) return false;
  }
  return true;
}

template <class Visit>
void for_each_table_naive(std::size_t n, Visit visit) {
  std::vector<Element> cells(n * n, 0);
  while (true) {
    visit(CayleyTable(n, cells));
    std::size_t i = cells.size();
    while (i > 0) {
      --i;
      if (++cells[i] < n) break;
      cells[i] = 0;
      if (i == 0) return;
    }
  }
}

inline std::vector<CayleyTable> latin_naive(std::size_t n) {
  std::vector<CayleyTable> out;
  for_each_table_naive(n, [&](const CayleyTable& t) {
    if (is_latin_naive(t)) out.push_back(t);
  });
  return out;
}

// Every Latin square of order n as a stack of row permutations with distinct
// columns. Output is in row-major lexicographic order.
inline std::vector<CayleyTable> latin_by_rows(std::size_t n) {
  std::vector<std::vector<Element>> perms;
  std::vector<Element> p(n);
  std::iota(p.begin(), p.end(), Element{0});
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));

  std::vector<CayleyTable> out;
  std::vector<const std::vector<Element>*> stack;
  auto rec = [&](auto&& self) -> void {
    if (stack.size() == n) {
      std::vector<Element> cells;
      for (const auto* row : stack) cells.insert(cells.end(), row->begin(), row->end());
      out.emplace_back(n, std::move(cells));
      return;
    }
    for (const auto& row : perms) {
      bool ok = true;
      for (const auto* prev : stack)
        for (std::size_t c = 0; c < n && ok; ++c) ok = (*prev)[c] != row[c];
      if (!ok) continue;
      stack.push_back(&row);
      self(self);
      stack.pop_back();
    }
  };
  rec(rec);
  return out;
}

// Randomized backtracking fill; not uniform, but reaches every isotopy class.
inline CayleyTable random_latin(std::size_t n, std::mt19937_64& rng) {
  std::vector<Element> cells(n * n);
  std::vector<std::vector<char>> row_used(n, std::vector<char>(n)), col_used(n, std::vector<char>(n));
  auto rec = [&](auto&& self, std::size_t cell) -> bool {
    if (cell == n * n) return true;
    const std::size_t r = cell / n, c = cell % n;
    std::vector<Element> vals(n);
    std::iota(vals.begin(), vals.end(), Element{0});
    std::shuffle(vals.begin(), vals.end(), rng);
    for (Element v : vals) {
      if (row_used[r][v] || col_used[c][v]) continue;
      row_used[r][v] = col_used[c][v] = 1;
      cells[cell] = v;
      if (self(self, cell + 1)) return true;
      row_used[r][v] = col_used[c][v] = 0;
    }
    return false;
  };
  rec(rec, 0);
  return CayleyTable(n, std::move(cells));
}

inline std::vector<Element> random_permutation(std::size_t n, std::mt19937_64& rng) {
  std::vector<Element> p(n);
  std::iota(p.begin(), p.end(), Element{0});
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace qg::testing
