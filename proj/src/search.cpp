#include "qg/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <limits>
#include <set>
#include <thread>

#include "qg/errors.hpp"

namespace qg {

namespace {

constexpr Element kUnset = std::numeric_limits<Element>::max();

// Postfix form of a term; variables are indices into the identity's variable list.
struct Instr {
  enum class Kind : std::uint8_t { Var, Mul, LDiv, RDiv } kind;
  std::uint8_t var = 0;
};

struct Program {
  std::vector<Instr> code;
  std::size_t max_stack = 0;
};

struct CompiledIdentity {
  Program lhs;
  Program rhs;
  std::size_t variable_count;
};

std::size_t compile(const Term& t, const std::vector<std::string>& vars, std::vector<Instr>& out) {
  if (t.is_variable()) {
    const auto it = std::find(vars.begin(), vars.end(), t.name());
    out.push_back({Instr::Kind::Var, static_cast<std::uint8_t>(it - vars.begin())});
    return 1;
  }
  const std::size_t l = compile(t.left(), vars, out);
  const std::size_t r = compile(t.right(), vars, out);
  switch (t.op()) {
    case Op::Mul: out.push_back({Instr::Kind::Mul}); break;
    case Op::LDiv: out.push_back({Instr::Kind::LDiv}); break;
    case Op::RDiv: out.push_back({Instr::Kind::RDiv}); break;
  }
  return std::max(l, r + 1);
}

CompiledIdentity compile(const Identity& id) {
  if (id.variables.size() > std::numeric_limits<std::uint8_t>::max())
    throw InputError("identity has too many variables");
  CompiledIdentity c;
  c.lhs.max_stack = compile(id.lhs, id.variables, c.lhs.code);
  c.rhs.max_stack = compile(id.rhs, id.variables, c.rhs.code);
  c.variable_count = id.variables.size();
  return c;
}

// Row-major partial Cayley table with Latin bookkeeping. For Latin searches,
// row_pos/col_pos invert the filled entries so divisions resolve on partial
// tables: a\b = row_pos[a][b], b/a = col_pos[a][b].
class PartialTable {
public:
  PartialTable(std::size_t n, bool latin)
      : n_(n), latin_(latin), cells_(n * n, kUnset), row_free_(n, full_mask(n)), col_free_(n, full_mask(n)),
        row_pos_(latin ? n * n : 0, kUnset), col_pos_(latin ? n * n : 0, kUnset) {}

  static std::uint32_t full_mask(std::size_t n) { return static_cast<std::uint32_t>((std::uint64_t{1} << n) - 1); }

  std::size_t order() const { return n_; }
  Element at(std::size_t cell) const { return cells_[cell]; }
  std::uint32_t candidates(std::size_t r, std::size_t c) const {
    return latin_ ? row_free_[r] & col_free_[c] : full_mask(n_);
  }

  void place(std::size_t r, std::size_t c, Element v) {
    cells_[r * n_ + c] = v;
    if (!latin_) return;
    row_free_[r] &= ~(1u << v);
    col_free_[c] &= ~(1u << v);
    row_pos_[r * n_ + v] = static_cast<Element>(c);
    col_pos_[c * n_ + v] = static_cast<Element>(r);
  }

  void unplace(std::size_t r, std::size_t c) {
    const Element v = cells_[r * n_ + c];
    cells_[r * n_ + c] = kUnset;
    if (!latin_) return;
    row_free_[r] |= 1u << v;
    col_free_[c] |= 1u << v;
    row_pos_[r * n_ + v] = kUnset;
    col_pos_[c * n_ + v] = kUnset;
  }

  Element mul(Element a, Element b) const { return cells_[a * n_ + b]; }
  Element ldiv(Element a, Element b) const { return row_pos_[a * n_ + b]; }
  Element rdiv(Element b, Element a) const { return col_pos_[a * n_ + b]; }

  CayleyTable snapshot() const { return CayleyTable(n_, cells_); }

private:
  std::size_t n_;
  bool latin_;
  std::vector<Element> cells_;
  std::vector<std::uint32_t> row_free_;
  std::vector<std::uint32_t> col_free_;
  std::vector<Element> row_pos_;
  std::vector<Element> col_pos_;
};

// kUnset when some entry the term touches is not yet defined.
Element run(const Program& p, const Element* vals, const PartialTable& t, Element* stack) {
  std::size_t sp = 0;
  for (const Instr& in : p.code) {
    if (in.kind == Instr::Kind::Var) {
      stack[sp++] = vals[in.var];
      continue;
    }
    const Element b = stack[--sp];
    const Element a = stack[sp - 1];
    Element v;
    switch (in.kind) {
      case Instr::Kind::Mul: v = t.mul(a, b); break;
      case Instr::Kind::LDiv: v = t.ldiv(a, b); break;
      default: v = t.rdiv(a, b); break;
    }
    if (v == kUnset) return kUnset;
    stack[sp - 1] = v;
  }
  return stack[0];
}

enum class Outcome { Holds, Fails, Undetermined };

// Holds: every assignment defined and equal. Fails: some defined assignment differs.
Outcome evaluate(const CompiledIdentity& id, const PartialTable& t) {
  const std::size_t n = t.order();
  std::vector<Element> vals(id.variable_count, 0);
  std::vector<Element> stack(std::max(id.lhs.max_stack, id.rhs.max_stack) + 1);
  bool undetermined = false;
  while (true) {
    const Element l = run(id.lhs, vals.data(), t, stack.data());
    const Element r = l == kUnset ? kUnset : run(id.rhs, vals.data(), t, stack.data());
    if (l == kUnset || r == kUnset)
      undetermined = true;
    else if (l != r)
      return Outcome::Fails;
    std::size_t i = vals.size();
    for (;;) {
      if (i == 0) return undetermined ? Outcome::Undetermined : Outcome::Holds;
      --i;
      if (++vals[i] < n) break;
      vals[i] = 0;
    }
  }
}

struct Prepared {
  std::size_t n;
  bool latin;
  bool reduced;
  bool pruning;
  bool forbid_identity_element;
  std::vector<CompiledIdentity> required;
  std::vector<CompiledIdentity> forbidden;
};

Prepared prepare(const SearchSpec& spec) {
  if (spec.order == 0) throw InputError("order must be at least 1");
  if (spec.order > spec.max_order || spec.order > 31)
    throw InputError("order " + std::to_string(spec.order) + " exceeds the maximum of " +
                     std::to_string(std::min<std::size_t>(spec.max_order, 31)));
  if (spec.reduced_only && spec.up_to_iso) throw InputError("reduced and up-to-iso are mutually exclusive");
  if (spec.reduced_only && !spec.require_latin) throw InputError("reduced tables must be Latin");
  Prepared p{spec.order, spec.require_latin, spec.reduced_only, spec.incremental_pruning,
             spec.forbid_identity_element, {}, {}};
  auto add = [&](const std::vector<Identity>& ids, std::vector<CompiledIdentity>& out) {
    for (const auto& id : ids) {
      if (id.uses_division() && !spec.require_latin)
        throw UnsupportedOperation("identity '" + to_string(id) + "' uses division but the search is not Latin");
      out.push_back(compile(id));
    }
  };
  add(spec.required_identities, p.required);
  add(spec.forbidden_identities, p.forbidden);
  return p;
}

class Searcher {
public:
  explicit Searcher(const Prepared& p) : p_(p), t_(p.n, p.latin) {
    if (p.reduced) {
      for (Element i = 0; i < p.n; ++i) {
        t_.place(0, i, i);
        if (i > 0) t_.place(i, 0, i);
      }
    }
  }

  PartialTable& table() { return t_; }

  // Calls leaf(t_) on every consistent partial table filled up to `stop`.
  // Returns false if a leaf asked to stop.
  template <class Leaf>
  bool descend(std::size_t cell, std::size_t stop, Leaf& leaf) {
    if (cell == stop) return leaf(t_);
    if (t_.at(cell) != kUnset) return descend(cell + 1, stop, leaf);
    const std::size_t r = cell / p_.n;
    const std::size_t c = cell % p_.n;
    for (std::uint32_t mask = t_.candidates(r, c); mask != 0; mask &= mask - 1) {
      t_.place(r, c, static_cast<Element>(std::countr_zero(mask)));
      const bool keep = !p_.pruning || consistent();
      const bool go_on = !keep || descend(cell + 1, stop, leaf);
      t_.unplace(r, c);
      if (!go_on) return false;
    }
    return true;
  }

  // Full checks on a complete table.
  bool accepts() const {
    for (const auto& id : p_.required)
      if (evaluate(id, t_) != Outcome::Holds) return false;
    for (const auto& id : p_.forbidden)
      if (evaluate(id, t_) != Outcome::Fails) return false;
    if (p_.forbid_identity_element && identity_element(t_.snapshot())) return false;
    return true;
  }

private:
  bool consistent() const {
    for (const auto& id : p_.required)
      if (evaluate(id, t_) == Outcome::Fails) return false;
    return true;
  }

  const Prepared& p_;
  PartialTable t_;
};

std::size_t cell_count(const Prepared& p) { return p.n * p.n; }

// Visit every accepted complete table in lexicographic order.
template <class Visit>
void visit_sequential(const Prepared& p, Visit visit) {
  Searcher s(p);
  auto leaf = [&](PartialTable& t) { return !s.accepts() || visit(t.snapshot()); };
  s.descend(0, cell_count(p), leaf);
}

std::size_t split_cell(const Prepared& p) { return p.reduced ? 2 * p.n : p.n; }

std::vector<std::vector<Element>> collect_prefixes(const Prepared& p) {
  std::vector<std::vector<Element>> out;
  Searcher s(p);
  const std::size_t stop = split_cell(p);
  auto leaf = [&](PartialTable& t) {
    std::vector<Element> prefix(stop);
    for (std::size_t i = 0; i < stop; ++i) prefix[i] = t.at(i);
    out.push_back(std::move(prefix));
    return true;
  };
  s.descend(0, stop, leaf);
  return out;
}

// Runs per_subtree(i, searcher, leaf-stop) for every first-row prefix on
// `workers` threads. Each call owns its Searcher; results go to slot i.
template <class PerSubtree>
void visit_parallel(const Prepared& p, const std::vector<std::vector<Element>>& prefixes, std::size_t workers,
                    PerSubtree per_subtree) {
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < prefixes.size(); i = next++) {
      Searcher s(p);
      const auto& prefix = prefixes[i];
      for (std::size_t cell = 0; cell < prefix.size(); ++cell)
        if (s.table().at(cell) == kUnset) s.table().place(cell / p.n, cell % p.n, prefix[cell]);
      per_subtree(i, s, prefix.size());
    }
  };
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
}

bool use_parallel(const Prepared& p, std::size_t workers) { return workers > 1 && split_cell(p) < cell_count(p); }

// Every accepted raw table, in order; stops early when visit returns false.
template <class Visit>
void for_each_raw(const Prepared& p, std::size_t workers, Visit visit) {
  if (!use_parallel(p, workers)) {
    visit_sequential(p, visit);
    return;
  }
  const auto prefixes = collect_prefixes(p);
  std::vector<std::vector<CayleyTable>> slots(prefixes.size());
  visit_parallel(p, prefixes, workers, [&](std::size_t i, Searcher& s, std::size_t start) {
    auto leaf = [&](PartialTable& t) {
      if (s.accepts()) slots[i].push_back(t.snapshot());
      return true;
    };
    s.descend(start, cell_count(p), leaf);
  });
  for (const auto& slot : slots)
    for (const auto& t : slot)
      if (!visit(t)) return;
}

std::set<CayleyTable> canonical_set(const Prepared& p, std::size_t workers, std::uint64_t& raw) {
  std::set<CayleyTable> reps;
  raw = 0;
  if (!use_parallel(p, workers)) {
    visit_sequential(p, [&](const CayleyTable& t) {
      ++raw;
      reps.insert(canonical_form(t));
      return true;
    });
    return reps;
  }
  const auto prefixes = collect_prefixes(p);
  const std::size_t count = prefixes.size();
  std::vector<std::set<CayleyTable>> slots(count);
  std::vector<std::uint64_t> raws(count);
  visit_parallel(p, prefixes, workers, [&](std::size_t i, Searcher& s, std::size_t start) {
    auto leaf = [&](PartialTable& t) {
      if (s.accepts()) {
        ++raws[i];
        slots[i].insert(canonical_form(t.snapshot()));
      }
      return true;
    };
    s.descend(start, cell_count(p), leaf);
  });
  for (std::size_t i = 0; i < count; ++i) {
    raw += raws[i];
    reps.merge(slots[i]);
  }
  return reps;
}

void append_identities(std::string& out, const char* key, const std::vector<Identity>& ids) {
  out += key;
  out += "=[";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ';';
    out += to_string(ids[i]);
  }
  out += "]\n";
}

}  // namespace

std::string spec_key(const SearchSpec& spec) {
  std::string out = "order=" + std::to_string(spec.order) + "\n";
  out += "latin=" + std::to_string(spec.require_latin) + "\n";
  append_identities(out, "require", spec.required_identities);
  append_identities(out, "forbid", spec.forbidden_identities);
  out += "no_identity_element=" + std::to_string(spec.forbid_identity_element) + "\n";
  out += "reduced=" + std::to_string(spec.reduced_only) + "\n";
  out += "up_to_iso=" + std::to_string(spec.up_to_iso) + "\n";
  out += "limit=" + (spec.limit ? std::to_string(*spec.limit) : std::string("none")) + "\n";
  return out;
}

void enumerate(const SearchSpec& spec, const TableSink& sink) {
  const Prepared p = prepare(spec);
  std::uint64_t emitted = 0;
  auto emit = [&](const CayleyTable& t) {
    if (spec.limit && emitted >= *spec.limit) return false;
    ++emitted;
    return sink(t) && !(spec.limit && emitted >= *spec.limit);
  };
  if (!spec.up_to_iso) {
    for_each_raw(p, spec.workers, emit);
    return;
  }
  std::uint64_t raw = 0;
  for (const auto& rep : canonical_set(p, spec.workers, raw))
    if (!emit(rep)) return;
}

std::vector<CayleyTable> enumerate_all(const SearchSpec& spec) {
  std::vector<CayleyTable> out;
  enumerate(spec, [&](const CayleyTable& t) {
    out.push_back(t);
    return true;
  });
  return out;
}

ModelCount count_models(const SearchSpec& spec) {
  const Prepared p = prepare(spec);
  ModelCount out;
  if (spec.up_to_iso) {
    out.iso_classes = canonical_set(p, spec.workers, out.raw).size();
    return out;
  }
  if (!use_parallel(p, spec.workers)) {
    Searcher s(p);
    auto leaf = [&](PartialTable&) {
      if (s.accepts()) ++out.raw;
      return true;
    };
    s.descend(0, cell_count(p), leaf);
    return out;
  }
  const auto prefixes = collect_prefixes(p);
  std::vector<std::uint64_t> counts(prefixes.size());
  visit_parallel(p, prefixes, spec.workers, [&](std::size_t i, Searcher& s, std::size_t start) {
    auto leaf = [&](PartialTable&) {
      if (s.accepts()) ++counts[i];
      return true;
    };
    s.descend(start, cell_count(p), leaf);
  });
  for (auto c : counts) out.raw += c;
  return out;
}

std::optional<CayleyTable> find_witness(const SearchSpec& spec) {
  SearchSpec first = spec;
  first.up_to_iso = false;
  first.limit = 1;
  first.workers = 1;
  std::optional<CayleyTable> found;
  enumerate(first, [&](const CayleyTable& t) {
    found = t;
    return false;
  });
  return found;
}

CayleyTable relabel(const CayleyTable& t, const std::vector<Element>& perm) {
  const std::size_t n = t.order();
  if (perm.size() != n) throw InputError("relabeling has the wrong length");
  std::vector<Element> out(n * n);
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) out[perm[a] * n + perm[b]] = perm[t(a, b)];
  return CayleyTable(n, std::move(out));
}

CayleyTable canonical_form(const CayleyTable& t) {
  const std::size_t n = t.order();
  std::vector<Element> perm(n), inv(n);
  for (Element i = 0; i < n; ++i) perm[i] = i;
  std::vector<Element> best(t.entries().begin(), t.entries().end());
  std::vector<Element> cand(n * n);
  do {
    for (Element i = 0; i < n; ++i) inv[perm[i]] = i;
    // Entry (i, j) of the relabeled table is perm[t(inv i, inv j)]; build it
    // row-major and drop out as soon as it compares greater than best.
    bool less = false;
    bool greater = false;
    for (std::size_t cell = 0; cell < n * n && !greater; ++cell) {
      const Element v = perm[t(inv[cell / n], inv[cell % n])];
      cand[cell] = v;
      if (!less) {
        if (v < best[cell])
          less = true;
        else if (v > best[cell])
          greater = true;
      }
    }
    if (less) best = cand;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return CayleyTable(n, std::move(best));
}

}  // namespace qg
