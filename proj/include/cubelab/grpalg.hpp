#pragma once

// Finite groups by Cayley table, normal subgroups, congruences, quotients.

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "relcore.hpp"

namespace cubelab {

class FinGroup {
 public:
  FinGroup() : FinGroup(trivial_data()) {}

  // Validates the group axioms.
  static FinGroup from_table(const std::vector<std::vector<Elem>>& rows, std::vector<std::string> labels = {}) {
    std::size_t n = rows.size();
    if (n == 0) throw InputError("group: empty table");
    std::vector<Elem> flat;
    flat.reserve(n * n);
    for (const auto& r : rows) {
      if (r.size() != n) throw InputError("group: table is not square");
      for (Elem v : r) {
        if (v >= n) throw InputError("group: table entry out of range");
        flat.push_back(v);
      }
    }
    FinGroup g = from_flat(std::move(flat), FinSet(n, std::move(labels)));
    g.validate();
    return g;
  }

  // Table trusted; identity and inverses are located but associativity is not checked.
  static FinGroup from_flat(std::vector<Elem> flat, FinSet carrier) {
    auto d = std::make_shared<Data>();
    std::size_t n = carrier.size();
    d->carrier = std::move(carrier);
    d->table = std::move(flat);
    d->identity = n;
    for (Elem e = 0; e < n && d->identity == n; ++e) {
      bool ok = true;
      for (Elem x = 0; x < n && ok; ++x) ok = d->table[e * n + x] == x && d->table[x * n + e] == x;
      if (ok) d->identity = e;
    }
    if (d->identity == n) throw InputError("group: no identity element");
    d->inverse.assign(n, static_cast<Elem>(n));
    for (Elem x = 0; x < n; ++x)
      for (Elem y = 0; y < n; ++y)
        if (d->table[x * n + y] == d->identity && d->table[y * n + x] == d->identity) {
          d->inverse[x] = y;
          break;
        }
    for (Elem x = 0; x < n; ++x)
      if (d->inverse[x] == n) throw InputError("group: element without inverse");
    return FinGroup(std::move(d));
  }

  void validate() const {
    std::size_t n = order();
    for (Elem x = 0; x < n; ++x) {
      std::vector<char> row(n, 0), col(n, 0);
      for (Elem y = 0; y < n; ++y) {
        row[mul(x, y)] = 1;
        col[mul(y, x)] = 1;
      }
      if (std::count(row.begin(), row.end(), 1) != static_cast<long>(n) ||
          std::count(col.begin(), col.end(), 1) != static_cast<long>(n))
        throw InputError("group: table is not a Latin square");
    }
    for (Elem x = 0; x < n; ++x)
      for (Elem y = 0; y < n; ++y) {
        Elem xy = mul(x, y);
        for (Elem z = 0; z < n; ++z)
          if (mul(xy, z) != mul(x, mul(y, z))) throw InputError("group: multiplication is not associative");
      }
  }

  std::size_t order() const { return d_->carrier.size(); }
  const FinSet& carrier() const { return d_->carrier; }
  Elem identity() const { return d_->identity; }
  Elem mul(Elem a, Elem b) const { return d_->table[a * order() + b]; }
  Elem inv(Elem a) const { return d_->inverse[a]; }
  const std::vector<Elem>& flat_table() const { return d_->table; }

  std::vector<std::vector<Elem>> table() const {
    std::size_t n = order();
    std::vector<std::vector<Elem>> t(n);
    for (Elem a = 0; a < n; ++a) t[a].assign(d_->table.begin() + a * n, d_->table.begin() + (a + 1) * n);
    return t;
  }

  bool operator==(const FinGroup& o) const { return d_ == o.d_ || d_->table == o.d_->table; }

 private:
  struct Data {
    FinSet carrier;
    std::vector<Elem> table;
    Elem identity = 0;
    std::vector<Elem> inverse;
  };
  explicit FinGroup(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  static std::shared_ptr<const Data> trivial_data() {
    auto d = std::make_shared<Data>();
    d->carrier = FinSet(1);
    d->table = {0};
    d->inverse = {0};
    return d;
  }
  std::shared_ptr<const Data> d_;
};

// ---- constructions ----------------------------------------------------------

inline FinGroup cyclic_group(std::size_t m) {
  if (m == 0) throw InputError("cyclic group of order 0");
  std::vector<Elem> t(m * m);
  for (Elem a = 0; a < m; ++a)
    for (Elem b = 0; b < m; ++b) t[a * m + b] = static_cast<Elem>((a + b) % m);
  return FinGroup::from_flat(std::move(t), FinSet(m));
}

// (a, b) has index a·|H| + b.
inline FinGroup direct_product(const FinGroup& g, const FinGroup& h) {
  std::size_t n = g.order(), k = h.order(), N = n * k;
  std::vector<Elem> t(N * N);
  for (Elem x = 0; x < N; ++x)
    for (Elem y = 0; y < N; ++y)
      t[x * N + y] = static_cast<Elem>(g.mul(x / k, y / k) * k + h.mul(x % k, y % k));
  return FinGroup::from_flat(std::move(t), FinSet(N));
}

inline FinGroup abelian_product(const std::vector<std::size_t>& invariants) {
  FinGroup g = cyclic_group(1);
  for (std::size_t m : invariants) g = direct_product(g, cyclic_group(m));
  return g;
}

// Order 2k: r^i has index i, s·r^i has index k + i.
inline FinGroup dihedral_group(std::size_t k) {
  if (k == 0) throw InputError("dihedral group with k = 0");
  std::size_t N = 2 * k;
  std::vector<Elem> t(N * N);
  for (Elem x = 0; x < N; ++x)
    for (Elem y = 0; y < N; ++y) {
      std::size_t sx = x / k, ix = x % k, sy = y / k, iy = y % k;
      // (s^a r^i)(s^b r^j) = s^(a+b) r^((-1)^b i + j)
      std::size_t i = sy ? (k - ix) % k : ix;
      t[x * N + y] = static_cast<Elem>(((sx + sy) % 2) * k + (i + iy) % k);
    }
  return FinGroup::from_flat(std::move(t), FinSet(N));
}

// ±1, ±i, ±j, ±k with index sign·4 + unit.
inline FinGroup quaternion_group() {
  // unit products: (sign, unit)
  static const int sgn[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  static const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  std::vector<Elem> t(64);
  for (Elem x = 0; x < 8; ++x)
    for (Elem y = 0; y < 8; ++y) {
      int s = (x / 4 + y / 4 + sgn[x % 4][y % 4]) % 2;
      t[x * 8 + y] = static_cast<Elem>(s * 4 + unit[x % 4][y % 4]);
    }
  return FinGroup::from_flat(std::move(t), FinSet(8));
}

// Closure of permutation generators; elements sorted lexicographically.
inline FinGroup permutation_group(const std::vector<std::vector<Elem>>& gens, std::size_t degree) {
  using Perm = std::vector<Elem>;
  Perm id(degree);
  std::iota(id.begin(), id.end(), Elem{0});
  std::set<Perm> seen{id};
  std::vector<Perm> frontier{id};
  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (const Perm& p : frontier)
      for (const Perm& g : gens) {
        Perm q(degree);
        for (std::size_t i = 0; i < degree; ++i) q[i] = g[p[i]];
        if (seen.insert(q).second) next.push_back(q);
      }
    frontier = std::move(next);
  }
  std::vector<Perm> elems(seen.begin(), seen.end());
  std::size_t N = elems.size();
  std::map<Perm, Elem> index;
  for (Elem i = 0; i < N; ++i) index[elems[i]] = i;
  std::vector<Elem> t(N * N);
  for (Elem a = 0; a < N; ++a)
    for (Elem b = 0; b < N; ++b) {
      // (a·b)(i) = a(b(i))
      Perm q(degree);
      for (std::size_t i = 0; i < degree; ++i) q[i] = elems[a][elems[b][i]];
      t[a * N + b] = index.at(q);
    }
  return FinGroup::from_flat(std::move(t), FinSet(N));
}

inline FinGroup symmetric_group(std::size_t k) {
  if (k < 2) return cyclic_group(1);
  std::vector<Elem> swap01(k), cycle(k);
  std::iota(swap01.begin(), swap01.end(), Elem{0});
  std::swap(swap01[0], swap01[1]);
  for (std::size_t i = 0; i < k; ++i) cycle[i] = static_cast<Elem>((i + 1) % k);
  return permutation_group({swap01, cycle}, k);
}

inline FinGroup alternating_group_4() {
  return permutation_group({{1, 2, 0, 3}, {0, 2, 3, 1}}, 4);
}

// ---- normal subgroups -------------------------------------------------------

class NormalSubgroup {
 public:
  NormalSubgroup() = default;

  // Validates closure, inverses and conjugation invariance.
  NormalSubgroup(FinGroup parent, std::vector<Elem> elements) : parent_(std::move(parent)) {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    std::size_t n = parent_.order();
    mask_.assign(n, 0);
    for (Elem x : elements) {
      if (x >= n) throw InputError("normal subgroup: element out of range");
      mask_[x] = 1;
    }
    elems_ = std::move(elements);
    if (!contains(parent_.identity())) throw InputError("normal subgroup: identity missing");
    for (Elem a : elems_) {
      if (!contains(parent_.inv(a))) throw InputError("normal subgroup: not closed under inverses");
      for (Elem b : elems_)
        if (!contains(parent_.mul(a, b))) throw InputError("normal subgroup: not closed under products");
      for (Elem g = 0; g < n; ++g)
        if (!contains(parent_.mul(parent_.mul(g, a), parent_.inv(g))))
          throw InputError("normal subgroup: not closed under conjugation");
    }
  }

  // Normal closure of the given elements.
  static NormalSubgroup generated(const FinGroup& G, const std::vector<Elem>& gens) {
    std::size_t n = G.order();
    std::vector<char> in(n, 0);
    std::vector<Elem> elems{G.identity()};
    in[G.identity()] = 1;
    std::vector<Elem> todo;
    auto add = [&](Elem x) {
      if (!in[x]) {
        in[x] = 1;
        elems.push_back(x);
        todo.push_back(x);
      }
    };
    for (Elem g : gens) {
      if (g >= n) throw InputError("normal subgroup: generator out of range");
      add(g);
    }
    while (!todo.empty()) {
      Elem x = todo.back();
      todo.pop_back();
      for (Elem g = 0; g < n; ++g) add(G.mul(G.mul(g, x), G.inv(g)));
      for (std::size_t i = 0; i < elems.size(); ++i) {
        add(G.mul(elems[i], x));
        add(G.mul(x, elems[i]));
      }
    }
    return unchecked(G, std::move(elems));
  }

  static NormalSubgroup trivial(const FinGroup& G) { return unchecked(G, {G.identity()}); }
  static NormalSubgroup whole(const FinGroup& G) {
    std::vector<Elem> all(G.order());
    std::iota(all.begin(), all.end(), Elem{0});
    return unchecked(G, std::move(all));
  }

  const FinGroup& parent() const { return parent_; }
  const std::vector<Elem>& elements() const { return elems_; }
  std::size_t order() const { return elems_.size(); }
  bool contains(Elem x) const { return mask_[x] != 0; }

  bool operator==(const NormalSubgroup& o) const { return elems_ == o.elems_; }
  bool operator<(const NormalSubgroup& o) const {
    return elems_.size() != o.elems_.size() ? elems_.size() < o.elems_.size() : elems_ < o.elems_;
  }

  static NormalSubgroup unchecked(const FinGroup& G, std::vector<Elem> elements) {
    NormalSubgroup k;
    k.parent_ = G;
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    k.mask_.assign(G.order(), 0);
    for (Elem x : elements) k.mask_[x] = 1;
    k.elems_ = std::move(elements);
    return k;
  }

 private:
  FinGroup parent_;
  std::vector<Elem> elems_;
  std::vector<char> mask_;
};

// Cosets x ~ y iff x·y⁻¹ ∈ K.
inline EqRel congruence_of(const NormalSubgroup& K) {
  const FinGroup& G = K.parent();
  std::vector<Elem> label(G.order(), ~Elem{0});
  for (Elem x = 0; x < G.order(); ++x) {
    if (label[x] != ~Elem{0}) continue;
    for (Elem k : K.elements()) label[G.mul(k, x)] = x;
  }
  return EqRel::from_class_ids(G.carrier(), label);
}

inline bool is_congruence(const EqRel& R, const FinGroup& G) {
  if (R.size() != G.order()) return false;
  std::vector<Elem> block;
  for (Elem x = 0; x < G.order(); ++x)
    if (R.related(x, G.identity())) block.push_back(x);
  std::vector<char> in(G.order(), 0);
  for (Elem x : block) in[x] = 1;
  for (Elem a : block) {
    if (!in[G.inv(a)]) return false;
    for (Elem b : block)
      if (!in[G.mul(a, b)]) return false;
    for (Elem g = 0; g < G.order(); ++g)
      if (!in[G.mul(G.mul(g, a), G.inv(g))]) return false;
  }
  return congruence_of(NormalSubgroup::unchecked(G, block)) == R;
}

inline NormalSubgroup normal_subgroup_of(const EqRel& R, const FinGroup& G) {
  if (!is_congruence(R, G)) throw InputError("relation is not a congruence of the group");
  std::vector<Elem> block;
  for (Elem x = 0; x < G.order(); ++x)
    if (R.related(x, G.identity())) block.push_back(x);
  return NormalSubgroup::unchecked(G, std::move(block));
}

inline void require_same_parent(const NormalSubgroup& K, const NormalSubgroup& L) {
  if (!(K.parent() == L.parent())) throw InputError("normal subgroups of different groups");
}

inline NormalSubgroup meet_ns(const NormalSubgroup& K, const NormalSubgroup& L) {
  require_same_parent(K, L);
  std::vector<Elem> out;
  for (Elem x : K.elements())
    if (L.contains(x)) out.push_back(x);
  return NormalSubgroup::unchecked(K.parent(), std::move(out));
}

// K·L is a subgroup because K is normal.
inline NormalSubgroup join_ns(const NormalSubgroup& K, const NormalSubgroup& L) {
  require_same_parent(K, L);
  const FinGroup& G = K.parent();
  std::vector<Elem> out;
  out.reserve(K.order() * L.order());
  for (Elem a : K.elements())
    for (Elem b : L.elements()) out.push_back(G.mul(a, b));
  return NormalSubgroup::unchecked(G, std::move(out));
}

inline NormalSubgroup meet(const NormalSubgroup& K, const NormalSubgroup& L) { return meet_ns(K, L); }
inline NormalSubgroup join(const NormalSubgroup& K, const NormalSubgroup& L) { return join_ns(K, L); }

class GroupHom {
 public:
  GroupHom() = default;
  GroupHom(FinGroup dom, FinGroup cod, FinMap map) : dom_(std::move(dom)), cod_(std::move(cod)), map_(std::move(map)) {
    if (map_.dom().size() != dom_.order() || map_.cod().size() != cod_.order())
      throw InputError("group hom: carrier sizes do not match");
    for (Elem a = 0; a < dom_.order(); ++a)
      for (Elem b = 0; b < dom_.order(); ++b)
        if (map_(dom_.mul(a, b)) != cod_.mul(map_(a), map_(b))) throw InputError("group hom: products not preserved");
  }
  const FinGroup& dom() const { return dom_; }
  const FinGroup& cod() const { return cod_; }
  const FinMap& underlying() const { return map_; }
  Elem operator()(Elem x) const { return map_(x); }

 private:
  FinGroup dom_, cod_;
  FinMap map_;
};

struct GroupQuotient {
  FinGroup group;
  GroupHom projection;
};

// Cosets indexed in the canonical block order of congruence_of(K).
inline GroupQuotient quotient(const FinGroup& G, const NormalSubgroup& K) {
  EqRel R = congruence_of(K);
  std::size_t q = R.num_classes();
  std::vector<Elem> rep(q, ~Elem{0});
  for (Elem x = 0; x < G.order(); ++x)
    if (rep[R.class_of(x)] == ~Elem{0}) rep[R.class_of(x)] = x;
  std::vector<Elem> t(q * q);
  for (Elem a = 0; a < q; ++a)
    for (Elem b = 0; b < q; ++b) t[a * q + b] = R.class_of(G.mul(rep[a], rep[b]));
  FinGroup Q = FinGroup::from_flat(std::move(t), FinSet(q));
  return GroupQuotient{Q, GroupHom(G, Q, coequaliser(R))};
}

// Joins of normal closures of single elements; sorted by (order, elements).
inline std::vector<NormalSubgroup> enumerate_normal_subgroups(const FinGroup& G) {
  std::set<NormalSubgroup> found;
  std::vector<NormalSubgroup> atoms;
  for (Elem x = 0; x < G.order(); ++x) {
    NormalSubgroup c = NormalSubgroup::generated(G, {x});
    if (found.insert(c).second) atoms.push_back(c);
  }
  std::vector<NormalSubgroup> frontier(found.begin(), found.end());
  while (!frontier.empty()) {
    std::vector<NormalSubgroup> next;
    for (const auto& k : frontier)
      for (const auto& a : atoms) {
        NormalSubgroup j = join_ns(k, a);
        if (found.insert(j).second) next.push_back(j);
      }
    frontier = std::move(next);
  }
  return {found.begin(), found.end()};
}

inline std::vector<EqRel> congruences(const FinGroup& G) {
  std::vector<EqRel> out;
  for (const auto& K : enumerate_normal_subgroups(G)) out.push_back(congruence_of(K));
  return out;
}

// ---- catalog ----------------------------------------------------------------

struct NamedGroup {
  std::string name;
  FinGroup group;
};

inline std::vector<NamedGroup> builtin_catalog() {
  std::vector<NamedGroup> c;
  for (std::size_t m = 1; m <= 24; ++m) c.push_back({"Z" + std::to_string(m), cyclic_group(m)});
  for (std::size_t m = 2; m <= 36; ++m)
    for (std::size_t k = m; m * k <= 36; ++k)
      c.push_back({"Z" + std::to_string(m) + "xZ" + std::to_string(k), direct_product(cyclic_group(m), cyclic_group(k))});
  for (std::size_t k = 3; k <= 6; ++k) c.push_back({"D" + std::to_string(k), dihedral_group(k)});
  c.push_back({"Q8", quaternion_group()});
  c.push_back({"A4", alternating_group_4()});
  c.push_back({"S3", symmetric_group(3)});
  c.push_back({"S4", symmetric_group(4)});
  for (const auto& g : c) g.group.validate();
  return c;
}

inline const std::vector<NamedGroup>& catalog() {
  static const std::vector<NamedGroup> c = builtin_catalog();
  return c;
}

inline std::string canonical_group_name(const std::string& name) { return name == "V4" ? "Z2xZ2" : name; }

inline const FinGroup* find_in(const std::vector<NamedGroup>& cat, const std::string& name) {
  std::string key = canonical_group_name(name);
  for (const auto& g : cat)
    if (g.name == key) return &g.group;
  return nullptr;
}

}  // namespace cubelab
