#pragma once

// Finite groups given by multiplication tables, homomorphisms, and the
// handful of subgroup constructions the groupoid layer needs.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lincat/error.hpp"

namespace lincat::gpd {

using Elem = std::size_t;
using Table = std::vector<std::vector<Elem>>;

/// A finite group stored as a full multiplication table with the identity at
/// index 0. Instances are immutable and cheap to copy.
class FinGroup {
 public:
  FinGroup() : FinGroup(Table{{0}}) {}

  std::size_t order() const { return data_->mult.size(); }
  Elem mul(Elem a, Elem b) const { return data_->mult[a][b]; }
  Elem inv(Elem a) const { return data_->inverse[a]; }
  const Table& table() const { return data_->mult; }

  /// Conjugacy classes ordered by their minimal element; each class sorted.
  const std::vector<std::vector<Elem>>& classes() const { return data_->classes; }
  std::size_t class_of(Elem g) const { return data_->class_of[g]; }

  friend bool operator==(const FinGroup& a, const FinGroup& b) {
    return a.data_ == b.data_ || a.data_->mult == b.data_->mult;
  }
  friend bool operator!=(const FinGroup& a, const FinGroup& b) { return !(a == b); }

  static FinGroup trivial() { return FinGroup(Table{{0}}); }

  static FinGroup cyclic(std::size_t n) {
    Table t(n, std::vector<Elem>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    return FinGroup(std::move(t));
  }

  /// Closure of a set of permutations of {0..n-1}. Element 0 is the identity;
  /// remaining elements appear in breadth-first order of right products by
  /// the generators. Product convention: (p*q)(i) = p[q[i]].
  static FinGroup from_permutations(const std::vector<std::vector<std::size_t>>& gens,
                                    std::size_t cap = 500) {
    std::size_t degree = 0;
    for (const auto& g : gens) degree = std::max(degree, g.size());
    for (const auto& g : gens) {
      if (g.size() != degree) throw AxiomViolation("permutation generators differ in degree");
      std::vector<bool> seen(degree, false);
      for (auto v : g) {
        if (v >= degree || seen[v]) throw AxiomViolation("generator is not a permutation");
        seen[v] = true;
      }
    }
    using Perm = std::vector<std::size_t>;
    auto compose = [](const Perm& p, const Perm& q) {
      Perm r(q.size());
      for (std::size_t i = 0; i < q.size(); ++i) r[i] = p[q[i]];
      return r;
    };
    Perm id(degree);
    std::iota(id.begin(), id.end(), 0);
    std::vector<Perm> elems{id};
    std::map<Perm, Elem> index{{id, 0}};
    for (std::size_t head = 0; head < elems.size(); ++head) {
      for (const auto& g : gens) {
        Perm p = compose(elems[head], g);
        if (!index.count(p)) {
          if (elems.size() >= cap)
            throw AxiomViolation("permutation closure exceeds order cap " + std::to_string(cap));
          index.emplace(p, elems.size());
          elems.push_back(std::move(p));
        }
      }
    }
    const std::size_t n = elems.size();
    Table t(n, std::vector<Elem>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) t[a][b] = index.at(compose(elems[a], elems[b]));
    return FinGroup(std::move(t));
  }

  static FinGroup symmetric(std::size_t n) {
    if (n <= 1) return trivial();
    std::vector<std::size_t> swap01(n), cycle(n);
    std::iota(swap01.begin(), swap01.end(), 0);
    std::swap(swap01[0], swap01[1]);
    for (std::size_t i = 0; i < n; ++i) cycle[i] = (i + 1) % n;
    return from_permutations({swap01, cycle});
  }

 private:
  struct Data {
    Table mult;
    std::vector<Elem> inverse;
    std::vector<std::vector<Elem>> classes;
    std::vector<std::size_t> class_of;
  };

  // Unchecked; validate_group() is the public entry point for raw tables.
  explicit FinGroup(Table t) {
    auto d = std::make_shared<Data>();
    const std::size_t n = t.size();
    d->mult = std::move(t);
    d->inverse.assign(n, 0);
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        if (d->mult[a][b] == 0) d->inverse[a] = b;
    d->class_of.assign(n, n);
    for (Elem g = 0; g < n; ++g) {
      if (d->class_of[g] != n) continue;
      std::set<Elem> cls;
      for (Elem h = 0; h < n; ++h) cls.insert(d->mult[d->mult[h][g]][d->inverse[h]]);
      for (auto c : cls) d->class_of[c] = d->classes.size();
      d->classes.emplace_back(cls.begin(), cls.end());
    }
    data_ = std::move(d);
  }

  friend FinGroup validate_group(const Table& mult);
  friend FinGroup closed_table(Table t);

  std::shared_ptr<const Data> data_;
};

/// Checks the group axioms on a raw table (identity at index 0) and returns
/// the validated group.
inline FinGroup validate_group(const Table& mult) {
  const std::size_t n = mult.size();
  if (n == 0) throw AxiomViolation("identity: empty table");
  for (std::size_t i = 0; i < n; ++i) {
    if (mult[i].size() != n)
      throw AxiomViolation("table is not square (row " + std::to_string(i) + ")");
    for (auto v : mult[i])
      if (v >= n)
        throw AxiomViolation("entry out of range in row " + std::to_string(i));
  }
  for (Elem g = 0; g < n; ++g)
    if (mult[0][g] != g || mult[g][0] != g)
      throw AxiomViolation("identity: element 0 fails at g=" + std::to_string(g));
  for (Elem a = 0; a < n; ++a) {
    std::vector<bool> row(n, false), col(n, false);
    for (Elem b = 0; b < n; ++b) {
      if (row[mult[a][b]])
        throw AxiomViolation("inverse: row " + std::to_string(a) + " is not a permutation");
      if (col[mult[b][a]])
        throw AxiomViolation("inverse: column " + std::to_string(a) + " is not a permutation");
      row[mult[a][b]] = col[mult[b][a]] = true;
    }
  }
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      for (Elem c = 0; c < n; ++c)
        if (mult[mult[a][b]][c] != mult[a][mult[b][c]]) {
          std::ostringstream os;
          os << "associativity: (a,b,c)=(" << a << "," << b << "," << c << ")";
          throw AxiomViolation(os.str());
        }
  return FinGroup(mult);
}

/// Group from a table obtained by restricting or combining existing group
/// multiplications (subgroups, fibred and direct products). Associativity and
/// inverses are inherited, so only the cheap identity check runs.
inline FinGroup closed_table(Table t) {
  for (Elem g = 0; g < t.size(); ++g)
    if (t[0][g] != g || t[g][0] != g) throw AxiomViolation("identity: element 0 fails at g=" + std::to_string(g));
  return FinGroup(std::move(t));
}

inline std::vector<std::vector<Elem>> conjugacy_classes(const FinGroup& g) {
  return g.classes();
}

/// Direct product with elements ordered lexicographically by (a, b).
inline FinGroup direct_product(const FinGroup& g, const FinGroup& h) {
  const std::size_t m = h.order(), n = g.order() * m;
  Table t(n, std::vector<Elem>(n));
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      t[x][y] = g.mul(x / m, y / m) * m + h.mul(x % m, y % m);
  return closed_table(std::move(t));
}

/// Sorted element list of the subgroup generated by `gens`.
inline std::vector<Elem> generate(const FinGroup& g, const std::vector<Elem>& gens) {
  std::vector<bool> in(g.order(), false);
  std::vector<Elem> out{0};
  in[0] = true;
  for (std::size_t head = 0; head < out.size(); ++head)
    for (auto s : gens) {
      Elem p = g.mul(out[head], s);
      if (!in[p]) {
        in[p] = true;
        out.push_back(p);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

/// Greedy generating set: repeatedly add the smallest element not yet covered.
inline std::vector<Elem> generating_set(const FinGroup& g) {
  std::vector<Elem> gens;
  std::vector<Elem> covered{0};
  for (Elem e = 1; e < g.order(); ++e) {
    if (std::binary_search(covered.begin(), covered.end(), e)) continue;
    gens.push_back(e);
    covered = generate(g, gens);
  }
  return gens;
}

/// A homomorphism between finite groups, given as an element-index table.
struct GroupHom {
  FinGroup source;
  FinGroup target;
  std::vector<Elem> map;

  Elem operator()(Elem g) const { return map[g]; }

  friend bool operator==(const GroupHom& a, const GroupHom& b) {
    return a.map == b.map && a.source == b.source && a.target == b.target;
  }
};

inline GroupHom make_hom(FinGroup source, FinGroup target, std::vector<Elem> map) {
  if (map.size() != source.order())
    throw AxiomViolation("homomorphism table has wrong length");
  for (auto v : map)
    if (v >= target.order()) throw AxiomViolation("homomorphism value out of range");
  if (map[0] != 0) throw AxiomViolation("homomorphism does not preserve the identity");
  for (Elem a = 0; a < source.order(); ++a)
    for (Elem b = 0; b < source.order(); ++b)
      if (map[source.mul(a, b)] != target.mul(map[a], map[b]))
        throw AxiomViolation("homomorphism law fails at (" + std::to_string(a) + "," +
                             std::to_string(b) + ")");
  return GroupHom{std::move(source), std::move(target), std::move(map)};
}

inline GroupHom identity_hom(const FinGroup& g) {
  std::vector<Elem> m(g.order());
  std::iota(m.begin(), m.end(), 0);
  return GroupHom{g, g, std::move(m)};
}

inline GroupHom trivial_hom(const FinGroup& source, const FinGroup& target) {
  return GroupHom{source, target, std::vector<Elem>(source.order(), 0)};
}

/// outer ∘ inner
inline GroupHom compose(const GroupHom& outer, const GroupHom& inner) {
  if (inner.target != outer.source) throw GroupMismatch("cannot compose homomorphisms");
  std::vector<Elem> m(inner.source.order());
  for (Elem g = 0; g < m.size(); ++g) m[g] = outer.map[inner.map[g]];
  return GroupHom{inner.source, outer.target, std::move(m)};
}

inline std::vector<Elem> kernel(const GroupHom& f) {
  std::vector<Elem> k;
  for (Elem g = 0; g < f.map.size(); ++g)
    if (f.map[g] == 0) k.push_back(g);
  return k;
}

inline std::vector<Elem> image(const GroupHom& f) {
  std::set<Elem> s(f.map.begin(), f.map.end());
  return {s.begin(), s.end()};
}

inline bool is_injective(const GroupHom& f) { return kernel(f).size() == 1; }

/// The subgroup on the given (sorted, closed) element list, with elements
/// renumbered in ascending order, and its inclusion into `g`.
inline GroupHom subgroup_inclusion(const FinGroup& g, const std::vector<Elem>& elems) {
  std::map<Elem, Elem> pos;
  for (Elem i = 0; i < elems.size(); ++i) pos[elems[i]] = i;
  if (elems.empty() || elems[0] != 0) throw AxiomViolation("subgroup must contain identity");
  Table t(elems.size(), std::vector<Elem>(elems.size()));
  for (Elem i = 0; i < elems.size(); ++i)
    for (Elem j = 0; j < elems.size(); ++j) {
      auto it = pos.find(g.mul(elems[i], elems[j]));
      if (it == pos.end()) throw AxiomViolation("subset is not closed under multiplication");
      t[i][j] = it->second;
    }
  return GroupHom{closed_table(std::move(t)), g, elems};
}

/// Every subgroup of `g`, as sorted element lists, ordered by (size, elements).
inline std::vector<std::vector<Elem>> subgroups(const FinGroup& g) {
  std::set<std::vector<Elem>> found{{0}};
  std::deque<std::vector<Elem>> work{{0}};
  while (!work.empty()) {
    auto h = work.front();
    work.pop_front();
    for (Elem e = 1; e < g.order(); ++e) {
      if (std::binary_search(h.begin(), h.end(), e)) continue;
      auto gens = h;
      gens.push_back(e);
      auto k = generate(g, gens);
      if (found.insert(k).second) work.push_back(k);
    }
  }
  std::vector<std::vector<Elem>> out(found.begin(), found.end());
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return out;
}

/// All homomorphisms source -> target, ordered lexicographically by the images
/// of a greedy generating set.
inline std::vector<GroupHom> homomorphisms(const FinGroup& source, const FinGroup& target) {
  const auto gens = generating_set(source);
  std::vector<GroupHom> out;
  std::vector<Elem> choice(gens.size(), 0);
  const std::size_t n = source.order();
  while (true) {
    std::vector<Elem> m(n, target.order());
    m[0] = 0;
    std::vector<Elem> queue{0};
    bool ok = true;
    for (std::size_t head = 0; head < queue.size() && ok; ++head)
      for (std::size_t i = 0; i < gens.size() && ok; ++i) {
        Elem p = source.mul(queue[head], gens[i]);
        Elem v = target.mul(m[queue[head]], choice[i]);
        if (m[p] == target.order()) {
          m[p] = v;
          queue.push_back(p);
        } else if (m[p] != v) {
          ok = false;
        }
      }
    if (ok) {
      for (Elem a = 0; a < n && ok; ++a)
        for (Elem b = 0; b < n && ok; ++b)
          ok = m[source.mul(a, b)] == target.mul(m[a], m[b]);
      if (ok) out.push_back(GroupHom{source, target, m});
    }
    std::size_t k = 0;
    while (k < choice.size() && ++choice[k] == target.order()) choice[k++] = 0;
    if (k == choice.size()) break;
  }
  return out;
}

}  // namespace lincat::gpd
