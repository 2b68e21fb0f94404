#include "qg/collapse.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "qg/errors.hpp"

namespace qg {

namespace {

class UnionFind {
public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }

  // Keeps the smaller root so that each root is its block's least element.
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b)
      parent_[b] = a;
    else
      parent_[a] = b;
  }

private:
  std::vector<std::size_t> parent_;
};

bool is_permutation_of_range(const std::vector<Element>& p, std::size_t n) {
  if (p.size() != n) return false;
  std::vector<char> seen(n);
  for (Element v : p) {
    if (v >= n || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

}  // namespace

BijectionFamily::BijectionFamily(std::size_t order, std::vector<std::vector<Element>> members,
                                 std::vector<std::string> labels)
    : order_(order), members_(std::move(members)), labels_(std::move(labels)) {
  if (labels_.size() != members_.size()) throw InputError("family labels and members differ in length");
  for (std::size_t i = 0; i < members_.size(); ++i)
    if (!is_permutation_of_range(members_[i], order_))
      throw InputError("family member " + labels_[i] + " is not a bijection on " + std::to_string(order_) +
                       " elements");
}

BijectionFamily left_translations(const Quasigroup& q) {
  const std::size_t n = q.order();
  std::vector<std::vector<Element>> members(n, std::vector<Element>(n));
  std::vector<std::string> labels;
  for (Element a = 0; a < n; ++a) {
    for (Element x = 0; x < n; ++x) members[a][x] = q.mul(a, x);
    labels.push_back("L_" + std::to_string(a));
  }
  return BijectionFamily(n, std::move(members), std::move(labels));
}

BijectionFamily right_translations(const Quasigroup& q) {
  const std::size_t n = q.order();
  std::vector<std::vector<Element>> members(n, std::vector<Element>(n));
  std::vector<std::string> labels;
  for (Element a = 0; a < n; ++a) {
    for (Element x = 0; x < n; ++x) members[a][x] = q.mul(x, a);
    labels.push_back("R_" + std::to_string(a));
  }
  return BijectionFamily(n, std::move(members), std::move(labels));
}

bool check_regularity(const CayleyTable& t, Element u) {
  if (u >= t.order()) throw InputError("element " + std::to_string(u) + " out of range");
  std::vector<char> seen(t.order());
  for (Element a = 0; a < t.order(); ++a) {
    const Element v = t(a, u);
    if (seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

std::size_t Partition::block_count() const {
  std::size_t count = 0;
  for (std::size_t id : block_id) count = std::max(count, id + 1);
  return count;
}

std::vector<std::vector<Element>> Partition::blocks() const {
  std::vector<std::vector<Element>> out(block_count());
  for (Element x = 0; x < block_id.size(); ++x) out[block_id[x]].push_back(x);
  return out;
}

Partition generated_partition(std::size_t order, const BijectionFamily& fam) {
  if (fam.order() != order)
    throw InputError("family acts on " + std::to_string(fam.order()) + " elements, expected " +
                     std::to_string(order));
  UnionFind uf(order);
  for (std::size_t i = 0; i < fam.size(); ++i)
    for (Element x = 0; x < order; ++x) uf.unite(x, fam.member(i)[x]);

  Partition p;
  p.block_id.resize(order);
  std::vector<std::size_t> id_of_root(order, order);
  std::size_t next = 0;
  for (Element x = 0; x < order; ++x) {
    const std::size_t root = uf.find(x);
    if (id_of_root[root] == order) id_of_root[root] = next++;
    p.block_id[x] = id_of_root[root];
  }
  return p;
}

CollapseVerdict collapse_check(const EndoMap& e, const BijectionFamily& fam) {
  const std::size_t n = e.order();
  if (n == 0) throw InputError("collapse check needs a nonempty universe");
  if (fam.order() != n)
    throw InputError("endomap has order " + std::to_string(n) + " but family acts on " +
                     std::to_string(fam.order()) + " elements");

  CollapseVerdict v{true, std::nullopt, true, std::nullopt, true, std::nullopt, false, std::nullopt};

  for (Element x = 0; x < n && v.idempotent_ok; ++x) {
    if (e(e(x)) != e(x)) {
      v.idempotent_ok = false;
      v.idempotent_witness = x;
    }
  }

  // reach[x * n + y]: some member sends x to y.
  std::vector<char> reach(n * n);
  for (std::size_t i = 0; i < fam.size(); ++i)
    for (Element x = 0; x < n; ++x) reach[x * n + fam.member(i)[x]] = 1;
  for (Element x = 0; x < n && v.transitivity_ok; ++x) {
    for (Element y = 0; y < n; ++y) {
      if (!reach[x * n + y]) {
        v.transitivity_ok = false;
        v.transitivity_witness = std::pair{x, y};
        break;
      }
    }
  }

  for (std::size_t i = 0; i < fam.size() && v.coequalization_ok; ++i) {
    for (Element x = 0; x < n; ++x) {
      if (e(fam.member(i)[x]) != e(x)) {
        v.coequalization_ok = false;
        v.coequalization_witness = std::pair{i, x};
        break;
      }
    }
  }

  v.is_constant = true;
  for (Element x = 1; x < n; ++x) v.is_constant = v.is_constant && e(x) == e(0);
  if (v.is_constant) v.constant_value = e(0);

  if (v.idempotent_ok && v.transitivity_ok && v.coequalization_ok && !v.is_constant)
    throw std::logic_error("collapse hypotheses hold but the endomap is not constant");
  return v;
}

}  // namespace qg
