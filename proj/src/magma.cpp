#include "qg/magma.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "qg/errors.hpp"

namespace qg {

CayleyTable::CayleyTable(std::size_t order, std::vector<Element> entries)
    : order_(order), entries_(std::move(entries)) {
  if (order_ == 0) throw InputError("table order must be at least 1");
  if (entries_.size() != order_ * order_)
    throw InputError("table of order " + std::to_string(order_) + " needs " + std::to_string(order_ * order_) +
                     " entries, got " + std::to_string(entries_.size()));
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i] >= order_)
      throw InputError("entry " + std::to_string(entries_[i]) + " at row " + std::to_string(i / order_) +
                       ", column " + std::to_string(i % order_) + " is out of range");
  }
}

Element CayleyTable::mul(Element a, Element b) const {
  if (a >= order_ || b >= order_)
    throw InputError("element index out of range for order " + std::to_string(order_));
  return (*this)(a, b);
}

std::strong_ordering operator<=>(const CayleyTable& l, const CayleyTable& r) {
  if (auto c = l.order_ <=> r.order_; c != 0) return c;
  return std::lexicographical_compare_three_way(l.entries_.begin(), l.entries_.end(), r.entries_.begin(),
                                                r.entries_.end());
}

LatinVerdict check_latin(const CayleyTable& t) {
  const std::size_t n = t.order();
  std::vector<char> seen(n);
  for (Element r = 0; r < n; ++r) {
    std::fill(seen.begin(), seen.end(), 0);
    for (Element c = 0; c < n; ++c) {
      Element v = t(r, c);
      if (seen[v]) return {false, LatinVerdict::Witness{LatinVerdict::Kind::Row, r, v}};
      seen[v] = 1;
    }
  }
  for (Element c = 0; c < n; ++c) {
    std::fill(seen.begin(), seen.end(), 0);
    for (Element r = 0; r < n; ++r) {
      Element v = t(r, c);
      if (seen[v]) return {false, LatinVerdict::Witness{LatinVerdict::Kind::Column, c, v}};
      seen[v] = 1;
    }
  }
  return {true, std::nullopt};
}

Quasigroup::Quasigroup(CayleyTable table) : table_(std::move(table)) {
  const auto verdict = check_latin(table_);
  if (!verdict.is_quasigroup) {
    const auto& w = *verdict.witness;
    throw InputError(std::string("table is not a quasigroup: ") +
                     (w.kind == LatinVerdict::Kind::Row ? "row " : "column ") + std::to_string(w.index) +
                     " repeats value " + std::to_string(w.duplicated_value));
  }
  const std::size_t n = order();
  ldiv_.resize(n * n);
  rdiv_.resize(n * n);
  for (Element a = 0; a < n; ++a) {
    for (Element x = 0; x < n; ++x) {
      const Element b = table_(a, x);
      ldiv_[a * n + b] = x;  // a*x = b
      rdiv_[b * n + x] = a;  // a*x = b  =>  b/x = a
    }
  }
}

EndoMap::EndoMap(std::vector<Element> values) : values_(std::move(values)) {
  for (Element v : values_)
    if (v >= values_.size()) throw InputError("endomap value " + std::to_string(v) + " out of range");
}

EndoMap j_map(const Quasigroup& q) {
  std::vector<Element> v(q.order());
  for (Element x = 0; x < q.order(); ++x) v[x] = q.ldiv(x, x);
  return EndoMap(std::move(v));
}

EndoMap k_map(const Quasigroup& q) {
  std::vector<Element> v(q.order());
  for (Element x = 0; x < q.order(); ++x) v[x] = q.rdiv(x, x);
  return EndoMap(std::move(v));
}

std::optional<Element> identity_element(const CayleyTable& t) {
  const std::size_t n = t.order();
  std::optional<Element> found;
  for (Element e = 0; e < n; ++e) {
    bool ok = true;
    for (Element x = 0; x < n && ok; ++x) ok = t(e, x) == x && t(x, e) == x;
    if (!ok) continue;
    // Two two-sided identities e, f give e = e*f = f.
    if (found) throw std::logic_error("table has two distinct identity elements");
    found = e;
  }
  return found;
}

EndoAnalysis analyze_endomap(const EndoMap& f) {
  const std::size_t n = f.order();
  EndoAnalysis out{true, {}, {}, std::nullopt};
  std::vector<char> in_image(n);
  for (Element x = 0; x < n; ++x) {
    if (f(f(x)) != f(x)) out.is_idempotent = false;
    if (f(x) == x) out.fixed_points.push_back(x);
    in_image[f(x)] = 1;
  }
  for (Element x = 0; x < n; ++x)
    if (in_image[x]) out.image.push_back(x);
  if (out.image.size() == 1) out.constant_value = out.image.front();
  return out;
}

}  // namespace qg
