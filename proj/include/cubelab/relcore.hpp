#pragma once

// Finite sets, maps, equivalence relations, forks and the limits/colimits
// the higher layers are computed through.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "report.hpp"

namespace cubelab {

using Elem = std::uint32_t;

class FinSet {
 public:
  FinSet() = default;
  explicit FinSet(std::size_t n) : size_(n) {}
  FinSet(std::size_t n, std::vector<std::string> labels) : size_(n), labels_(std::move(labels)) {
    if (labels_.empty()) return;
    if (labels_.size() != n) throw InputError("FinSet: label count differs from size");
    std::set<std::string> seen(labels_.begin(), labels_.end());
    if (seen.size() != n) throw InputError("FinSet: duplicate labels");
  }

  std::size_t size() const { return size_; }
  bool has_labels() const { return !labels_.empty(); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::string label(Elem i) const { return labels_.empty() ? std::to_string(i) : labels_[i]; }

  bool operator==(const FinSet& o) const { return size_ == o.size_ && labels_ == o.labels_; }

 private:
  std::size_t size_ = 0;
  std::vector<std::string> labels_;
};

class FinMap {
 public:
  FinMap() = default;
  FinMap(FinSet dom, FinSet cod, std::vector<Elem> table)
      : dom_(std::move(dom)), cod_(std::move(cod)), table_(std::move(table)) {
    if (table_.size() != dom_.size()) throw InputError("FinMap: table length differs from domain size");
    for (Elem y : table_)
      if (y >= cod_.size()) throw InputError("FinMap: table entry out of codomain range");
  }

  const FinSet& dom() const { return dom_; }
  const FinSet& cod() const { return cod_; }
  const std::vector<Elem>& table() const { return table_; }
  Elem operator()(Elem x) const { return table_[x]; }

  // Labels are presentation only; maps compare by shape and table.
  bool operator==(const FinMap& o) const {
    return dom_.size() == o.dom_.size() && cod_.size() == o.cod_.size() && table_ == o.table_;
  }

 private:
  FinSet dom_, cod_;
  std::vector<Elem> table_;
};

inline FinMap identity_map(const FinSet& s) {
  std::vector<Elem> t(s.size());
  std::iota(t.begin(), t.end(), Elem{0});
  return FinMap(s, s, std::move(t));
}

// g ∘ f
inline FinMap compose(const FinMap& g, const FinMap& f) {
  if (f.cod().size() != g.dom().size()) throw InputError("compose: codomain/domain mismatch");
  std::vector<Elem> t(f.dom().size());
  for (Elem x = 0; x < t.size(); ++x) t[x] = g(f(x));
  return FinMap(f.dom(), g.cod(), std::move(t));
}

inline bool is_surjective(const FinMap& f) {
  std::vector<char> hit(f.cod().size(), 0);
  for (Elem y : f.table()) hit[y] = 1;
  return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

inline bool is_injective(const FinMap& f) {
  std::vector<char> hit(f.cod().size(), 0);
  for (Elem y : f.table()) {
    if (hit[y]) return false;
    hit[y] = 1;
  }
  return true;
}

// Least codomain element outside the image, or cod.size() if surjective.
inline Elem first_unreached(const FinMap& f) {
  std::vector<char> hit(f.cod().size(), 0);
  for (Elem y : f.table()) hit[y] = 1;
  Elem y = 0;
  while (y < hit.size() && hit[y]) ++y;
  return y;
}

// True iff some bijection h of codomains has h∘f = g.
inline bool equal_up_to_codomain_iso(const FinMap& f, const FinMap& g) {
  if (f.dom().size() != g.dom().size() || f.cod().size() != g.cod().size()) return false;
  constexpr Elem none = ~Elem{0};
  std::vector<Elem> fwd(f.cod().size(), none), back(g.cod().size(), none);
  for (Elem x = 0; x < f.dom().size(); ++x) {
    Elem a = f(x), b = g(x);
    if (fwd[a] == none && back[b] == none) {
      fwd[a] = b;
      back[b] = a;
    } else if (fwd[a] != b || back[b] != a) {
      return false;
    }
  }
  return true;
}

class EqRel {
 public:
  EqRel() = default;

  // Any labelling of the carrier; equal labels means related.
  template <class Label>
  static EqRel from_labels(FinSet carrier, const std::vector<Label>& labels) {
    if (labels.size() != carrier.size()) throw InputError("EqRel: label count differs from carrier size");
    EqRel r;
    r.carrier_ = std::move(carrier);
    r.cls_.resize(labels.size());
    std::vector<std::pair<Label, Elem>> seen;
    for (Elem x = 0; x < labels.size(); ++x) {
      auto it = std::find_if(seen.begin(), seen.end(), [&](const auto& p) { return p.first == labels[x]; });
      if (it == seen.end()) {
        seen.emplace_back(labels[x], static_cast<Elem>(seen.size()));
        r.cls_[x] = seen.back().second;
      } else {
        r.cls_[x] = it->second;
      }
    }
    r.nclasses_ = seen.size();
    return r;
  }

  static EqRel from_class_ids(FinSet carrier, const std::vector<Elem>& ids) {
    if (ids.size() != carrier.size()) throw InputError("EqRel: label count differs from carrier size");
    EqRel r;
    r.carrier_ = std::move(carrier);
    r.cls_.resize(ids.size());
    constexpr Elem none = ~Elem{0};
    Elem top = 0;
    for (Elem id : ids) top = std::max(top, id);
    std::vector<Elem> remap(ids.empty() ? 0 : std::size_t(top) + 1, none);
    Elem next = 0;
    for (Elem x = 0; x < ids.size(); ++x) {
      Elem& m = remap[ids[x]];
      if (m == none) m = next++;
      r.cls_[x] = m;
    }
    r.nclasses_ = next;
    return r;
  }

  static EqRel from_blocks(FinSet carrier, const std::vector<std::vector<Elem>>& blocks) {
    constexpr Elem none = ~Elem{0};
    std::vector<Elem> ids(carrier.size(), none);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      if (blocks[b].empty()) throw InputError("EqRel: empty block");
      for (Elem x : blocks[b]) {
        if (x >= carrier.size()) throw InputError("EqRel: block element out of range");
        if (ids[x] != none) throw InputError("EqRel: blocks overlap");
        ids[x] = static_cast<Elem>(b);
      }
    }
    for (Elem id : ids)
      if (id == none) throw InputError("EqRel: blocks do not cover the carrier");
    return from_class_ids(std::move(carrier), ids);
  }

  static EqRel discrete(const FinSet& s) {
    std::vector<Elem> ids(s.size());
    std::iota(ids.begin(), ids.end(), Elem{0});
    return from_class_ids(s, ids);
  }
  static EqRel full(const FinSet& s) { return from_class_ids(s, std::vector<Elem>(s.size(), 0)); }

  const FinSet& carrier() const { return carrier_; }
  std::size_t size() const { return cls_.size(); }
  std::size_t num_classes() const { return nclasses_; }
  // Class index in canonical block order.
  Elem class_of(Elem x) const { return cls_[x]; }
  const std::vector<Elem>& class_ids() const { return cls_; }
  bool related(Elem x, Elem y) const { return cls_[x] == cls_[y]; }

  std::vector<std::vector<Elem>> blocks() const {
    std::vector<std::vector<Elem>> b(nclasses_);
    for (Elem x = 0; x < cls_.size(); ++x) b[cls_[x]].push_back(x);
    return b;
  }

  std::vector<std::size_t> class_sizes() const {
    std::vector<std::size_t> s(nclasses_, 0);
    for (Elem c : cls_) ++s[c];
    return s;
  }

  // Number of related ordered pairs.
  std::size_t pair_count() const {
    std::size_t n = 0;
    for (std::size_t s : class_sizes()) n += s * s;
    return n;
  }

  // this ⊆ o
  bool refines(const EqRel& o) const {
    if (o.size() != size()) throw InputError("EqRel: carrier mismatch");
    constexpr Elem none = ~Elem{0};
    std::vector<Elem> img(nclasses_, none);
    for (Elem x = 0; x < cls_.size(); ++x) {
      Elem& m = img[cls_[x]];
      if (m == none) m = o.cls_[x];
      else if (m != o.cls_[x]) return false;
    }
    return true;
  }

  bool operator==(const EqRel& o) const { return cls_ == o.cls_; }
  bool operator!=(const EqRel& o) const { return !(*this == o); }
  bool operator<(const EqRel& o) const { return cls_ < o.cls_; }

 private:
  FinSet carrier_;
  std::vector<Elem> cls_;
  std::size_t nclasses_ = 0;
};

// Explicit pair set; rows are bitsets.
class BinaryRelation {
 public:
  BinaryRelation() = default;
  explicit BinaryRelation(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

  std::size_t carrier_size() const { return n_; }
  bool contains(Elem x, Elem y) const { return (bits_[x * words_ + y / 64] >> (y % 64)) & 1u; }
  void insert(Elem x, Elem y) { bits_[x * words_ + y / 64] |= std::uint64_t{1} << (y % 64); }

  std::size_t size() const {
    std::size_t c = 0;
    for (std::uint64_t w : bits_) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  }

  std::vector<std::pair<Elem, Elem>> pairs() const {
    std::vector<std::pair<Elem, Elem>> out;
    for (Elem x = 0; x < n_; ++x)
      for (Elem y = 0; y < n_; ++y)
        if (contains(x, y)) out.emplace_back(x, y);
    return out;
  }

  bool operator==(const BinaryRelation& o) const { return n_ == o.n_ && bits_ == o.bits_; }
  bool operator!=(const BinaryRelation& o) const { return !(*this == o); }

  // {(x,z) : x this y, y o z}
  BinaryRelation then(const BinaryRelation& o) const {
    if (o.n_ != n_) throw InputError("compose: carrier mismatch");
    BinaryRelation r(n_);
    for (Elem x = 0; x < n_; ++x)
      for (Elem y = 0; y < n_; ++y)
        if (contains(x, y))
          for (std::size_t w = 0; w < words_; ++w) r.bits_[x * words_ + w] |= o.bits_[y * words_ + w];
    return r;
  }

 private:
  std::size_t n_ = 0, words_ = 0;
  std::vector<std::uint64_t> bits_;
};

inline BinaryRelation as_relation(const EqRel& r) {
  BinaryRelation b(r.size());
  for (const auto& blk : r.blocks())
    for (Elem x : blk)
      for (Elem y : blk) b.insert(x, y);
  return b;
}

inline void require_same_carrier(const EqRel& r, const EqRel& s) {
  if (r.size() != s.size()) throw InputError("relations on different carriers");
}

// R∘S = {(x,z) : ∃y, x R y and y S z}
inline BinaryRelation compose_rel(const EqRel& r, const EqRel& s) {
  require_same_carrier(r, s);
  std::vector<std::vector<char>> meets(r.num_classes(), std::vector<char>(s.num_classes(), 0));
  for (Elem y = 0; y < r.size(); ++y) meets[r.class_of(y)][s.class_of(y)] = 1;
  BinaryRelation out(r.size());
  for (Elem x = 0; x < r.size(); ++x)
    for (Elem z = 0; z < r.size(); ++z)
      if (meets[r.class_of(x)][s.class_of(z)]) out.insert(x, z);
  return out;
}

inline bool is_permutable(const EqRel& r, const EqRel& s) { return compose_rel(r, s) == compose_rel(s, r); }

inline EqRel meet_rel(const EqRel& r, const EqRel& s) {
  require_same_carrier(r, s);
  std::vector<std::uint64_t> ids(r.size());
  for (Elem x = 0; x < r.size(); ++x) ids[x] = std::uint64_t(r.class_of(x)) * s.num_classes() + s.class_of(x);
  std::vector<std::uint64_t> sorted(ids);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<Elem> dense(r.size());
  for (Elem x = 0; x < r.size(); ++x)
    dense[x] = static_cast<Elem>(std::lower_bound(sorted.begin(), sorted.end(), ids[x]) - sorted.begin());
  return EqRel::from_class_ids(r.carrier(), dense);
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), Elem{0}); }
  Elem find(Elem x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(Elem a, Elem b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);
    parent_[a] = b;
  }
  std::vector<Elem> roots() {
    std::vector<Elem> r(parent_.size());
    for (Elem x = 0; x < r.size(); ++x) r[x] = find(x);
    return r;
  }
 private:
  std::vector<Elem> parent_;
};

inline EqRel join_rel(const EqRel& r, const EqRel& s) {
  require_same_carrier(r, s);
  UnionFind uf(r.size());
  std::vector<Elem> first_r(r.num_classes(), ~Elem{0}), first_s(s.num_classes(), ~Elem{0});
  for (Elem x = 0; x < r.size(); ++x) {
    Elem& a = first_r[r.class_of(x)];
    if (a == ~Elem{0}) a = x; else uf.unite(a, x);
    Elem& b = first_s[s.class_of(x)];
    if (b == ~Elem{0}) b = x; else uf.unite(b, x);
  }
  return EqRel::from_class_ids(r.carrier(), uf.roots());
}

// Lattice spellings used by the generic distributivity checker.
inline EqRel meet(const EqRel& r, const EqRel& s) { return meet_rel(r, s); }
inline EqRel join(const EqRel& r, const EqRel& s) { return join_rel(r, s); }

inline EqRel equivalence_closure(const BinaryRelation& b) {
  UnionFind uf(b.carrier_size());
  for (auto [x, y] : b.pairs()) uf.unite(x, y);
  return EqRel::from_class_ids(FinSet(b.carrier_size()), uf.roots());
}

inline EqRel kernel_pair(const FinMap& f) { return EqRel::from_class_ids(f.dom(), f.table()); }

inline FinMap coequaliser(const EqRel& r) {
  return FinMap(r.carrier(), FinSet(r.num_classes()), r.class_ids());
}

// Map X/fine → X/coarse induced by the identity; fine must refine coarse.
inline FinMap quotient_between(const EqRel& fine, const EqRel& coarse) {
  if (!fine.refines(coarse)) throw InputError("quotient_between: relation does not refine target");
  std::vector<Elem> t(fine.num_classes());
  for (Elem x = 0; x < fine.size(); ++x) t[fine.class_of(x)] = coarse.class_of(x);
  return FinMap(FinSet(fine.num_classes()), FinSet(coarse.num_classes()), std::move(t));
}

// ---- pullbacks and pushouts ----------------------------------------------

struct SetPullback {
  FinSet object;
  FinMap p1, p2;
  std::vector<std::size_t> row_start;  // elements with p1 = a occupy [row_start[a], row_start[a+1])

  // Index of the pair (a, b), or object.size() if absent.
  std::size_t index_of(Elem a, Elem b) const {
    auto first = p2.table().begin() + static_cast<std::ptrdiff_t>(row_start[a]);
    auto last = p2.table().begin() + static_cast<std::ptrdiff_t>(row_start[a + 1]);
    auto it = std::lower_bound(first, last, b);
    if (it == last || *it != b) return object.size();
    return static_cast<std::size_t>(it - p2.table().begin());
  }
};

inline std::size_t pullback_size(const FinMap& f, const FinMap& g) {
  std::vector<std::size_t> fib(g.cod().size(), 0);
  for (Elem y : g.table()) ++fib[y];
  std::size_t n = 0;
  for (Elem y : f.table()) n += fib[y];
  return n;
}

// {(a,b) : f(a) = g(b)}, lexicographically ordered.
inline SetPullback pullback(const FinMap& f, const FinMap& g) {
  if (f.cod().size() != g.cod().size()) throw InputError("pullback: codomain mismatch");
  std::size_t total = pullback_size(f, g);
  if (total > limits().max_elements)
    throw SizeLimitExceeded("pullback of " + std::to_string(total) + " elements exceeds limit");
  std::vector<std::vector<Elem>> fiber(g.cod().size());
  for (Elem b = 0; b < g.dom().size(); ++b) fiber[g(b)].push_back(b);
  std::vector<Elem> t1, t2;
  t1.reserve(total);
  t2.reserve(total);
  std::vector<std::size_t> rows(f.dom().size() + 1, 0);
  for (Elem a = 0; a < f.dom().size(); ++a) {
    rows[a] = t1.size();
    for (Elem b : fiber[f(a)]) {
      t1.push_back(a);
      t2.push_back(b);
    }
  }
  rows[f.dom().size()] = t1.size();
  FinSet p(total);
  return SetPullback{p, FinMap(p, f.dom(), std::move(t1)), FinMap(p, g.dom(), std::move(t2)), std::move(rows)};
}

// ⟨h, k⟩ : Z → pullback; throws if h and k do not land in the pullback.
inline FinMap lift(const SetPullback& pb, const FinMap& h, const FinMap& k) {
  if (h.dom().size() != k.dom().size()) throw InputError("lift: domain mismatch");
  std::vector<Elem> t(h.dom().size());
  for (Elem z = 0; z < t.size(); ++z) {
    std::size_t i = pb.index_of(h(z), k(z));
    if (i == pb.object.size()) throw InputError("lift: cone does not commute");
    t[z] = static_cast<Elem>(i);
  }
  return FinMap(h.dom(), pb.object, std::move(t));
}

struct SetPushout {
  FinSet object;
  FinMap i1, i2;
};

// Pushout of the span B <-f- A -g-> C.
inline SetPushout pushout(const FinMap& f, const FinMap& g) {
  if (f.dom().size() != g.dom().size()) throw InputError("pushout: domain mismatch");
  std::size_t nb = f.cod().size(), nc = g.cod().size();
  UnionFind uf(nb + nc);
  for (Elem a = 0; a < f.dom().size(); ++a) uf.unite(f(a), static_cast<Elem>(nb + g(a)));
  EqRel q = EqRel::from_class_ids(FinSet(nb + nc), uf.roots());
  FinSet d(q.num_classes());
  std::vector<Elem> t1(nb), t2(nc);
  for (Elem b = 0; b < nb; ++b) t1[b] = q.class_of(b);
  for (Elem c = 0; c < nc; ++c) t2[c] = q.class_of(static_cast<Elem>(nb + c));
  return SetPushout{d, FinMap(f.cod(), d, std::move(t1)), FinMap(g.cod(), d, std::move(t2))};
}

// [u, v] : pushout → D; throws if u and v disagree on the span.
inline FinMap colift(const SetPushout& po, const FinMap& u, const FinMap& v) {
  if (u.cod().size() != v.cod().size()) throw InputError("colift: codomain mismatch");
  constexpr Elem none = ~Elem{0};
  std::vector<Elem> t(po.object.size(), none);
  auto put = [&](Elem cls, Elem y) {
    if (t[cls] == none) t[cls] = y;
    else if (t[cls] != y) throw InputError("colift: cocone does not commute");
  };
  for (Elem b = 0; b < u.dom().size(); ++b) put(po.i1(b), u(b));
  for (Elem c = 0; c < v.dom().size(); ++c) put(po.i2(c), v(c));
  return FinMap(po.object, u.cod(), std::move(t));
}

// ---- squares --------------------------------------------------------------

//   A --r--> B
//   |        |
//   s        u
//   v        v
//   C --v--> D
struct Square {
  FinMap r, s, u, v;
};

inline CheckReport is_regular_pushout(const Square& sq) {
  const auto& [r, s, u, v] = sq;
  if (r.dom().size() != s.dom().size() || u.dom().size() != r.cod().size() ||
      v.dom().size() != s.cod().size() || u.cod().size() != v.cod().size())
    throw InputError("square: shapes do not match");
  if (compose(u, r) != compose(v, s)) throw InputError("square does not commute");
  for (const FinMap* m : {&r, &s, &u, &v})
    if (!is_surjective(*m)) throw InputError("square: side is not surjective");

  SetPullback pb = pullback(u, v);
  FinMap cmp = lift(pb, r, s);
  EqRel R = kernel_pair(r), S = kernel_pair(s), T = kernel_pair(compose(u, r));
  BinaryRelation tr = as_relation(T);
  bool composite = compose_rel(R, S) == tr && compose_rel(S, R) == tr;

  std::vector<std::string> trace{
      "square commutes",
      "pullback B×_D C has " + std::to_string(pb.object.size()) + " elements",
      std::string("composite criterion R∘S = T = S∘R: ") + (composite ? "true" : "false")};
  Elem miss = first_unreached(cmp);
  CheckReport rep;
  if (miss == pb.object.size()) {
    trace.push_back("comparison A → B×_D C is surjective");
    rep = CheckReport::pass(std::move(trace));
  } else {
    trace.push_back("comparison A → B×_D C misses an element");
    rep = CheckReport::fail(json{{"kind", "comparison not surjective"},
                                 {"unreached", {pb.p1(miss), pb.p2(miss)}}},
                            std::move(trace));
  }
  rep.details["composite_criterion"] = composite;
  rep.details["comparison_injective"] = is_injective(cmp);
  return rep;
}

// ---- forks ----------------------------------------------------------------

struct ReflexiveGraph {
  FinSet edges, vertices;
  FinMap d, c, e;

  ReflexiveGraph() = default;
  ReflexiveGraph(FinMap d_, FinMap c_, FinMap e_) : d(std::move(d_)), c(std::move(c_)), e(std::move(e_)) {
    edges = d.dom();
    vertices = d.cod();
    if (c.dom().size() != edges.size() || c.cod().size() != vertices.size() ||
        e.dom().size() != vertices.size() || e.cod().size() != edges.size())
      throw InputError("reflexive graph: shapes do not match");
    FinMap id = identity_map(vertices);
    if (compose(d, e) != id || compose(c, e) != id) throw InputError("reflexive graph: d∘e or c∘e is not the identity");
  }

  BinaryRelation image() const {
    BinaryRelation b(vertices.size());
    for (Elem x = 0; x < edges.size(); ++x) b.insert(d(x), c(x));
    return b;
  }
};

struct Fork {
  ReflexiveGraph graph;
  FinMap f;

  Fork() = default;
  Fork(ReflexiveGraph g, FinMap f_) : graph(std::move(g)), f(std::move(f_)) {
    if (f.dom().size() != graph.vertices.size()) throw InputError("fork: arrow domain is not the vertex set");
  }
  // f∘d = f∘c; checked by the exactness test rather than on construction.
  bool commutes() const { return compose(f, graph.d) == compose(f, graph.c); }
};

inline CheckReport exact_fork_report(const Fork& F) {
  const auto& G = F.graph;
  std::vector<std::string> trace;
  if (!F.commutes()) {
    for (Elem x = 0; x < G.edges.size(); ++x)
      if (F.f(G.d(x)) != F.f(G.c(x)))
        return CheckReport::fail(json{{"kind", "f∘d differs from f∘c"}, {"edge", x}});
  }
  if (!is_surjective(F.f))
    return CheckReport::fail(json{{"kind", "arrow not surjective"}, {"unreached", first_unreached(F.f)}});
  trace.push_back("arrow surjective");
  // ⟨d,c⟩ must be a monic onto the kernel pair.
  std::vector<std::pair<Elem, Elem>> img;
  img.reserve(G.edges.size());
  for (Elem x = 0; x < G.edges.size(); ++x) img.emplace_back(G.d(x), G.c(x));
  std::vector<std::pair<Elem, Elem>> sorted(img);
  std::sort(sorted.begin(), sorted.end());
  auto dup = std::adjacent_find(sorted.begin(), sorted.end());
  if (dup != sorted.end())
    return CheckReport::fail(json{{"kind", "graph is not a relation"}, {"pair", {dup->first, dup->second}}});
  trace.push_back("⟨d,c⟩ injective");
  EqRel K = kernel_pair(F.f);
  if (sorted.size() != K.pair_count()) {
    for (const auto& blk : K.blocks())
      for (Elem x : blk)
        for (Elem y : blk)
          if (!std::binary_search(sorted.begin(), sorted.end(), std::make_pair(x, y)))
            return CheckReport::fail(json{{"kind", "kernel pair not covered"}, {"pair", {x, y}}});
  }
  for (auto [x, y] : sorted)
    if (!K.related(x, y)) return CheckReport::fail(json{{"kind", "edge outside kernel pair"}, {"pair", {x, y}}});
  trace.push_back("graph equals the kernel pair of the arrow");
  return CheckReport::pass(std::move(trace));
}

inline bool is_exact_fork(const Fork& F) { return exact_fork_report(F).verdict; }

// Graph on the pair set of R, pairs in lexicographic order.
inline ReflexiveGraph relation_graph(const EqRel& R) {
  std::vector<Elem> d, c;
  std::vector<Elem> diag(R.size());
  d.reserve(R.pair_count());
  c.reserve(R.pair_count());
  auto blocks = R.blocks();
  for (Elem x = 0; x < R.size(); ++x)
    for (Elem y : blocks[R.class_of(x)]) {
      if (y == x) diag[x] = static_cast<Elem>(d.size());
      d.push_back(x);
      c.push_back(y);
    }
  FinSet E(d.size());
  return ReflexiveGraph(FinMap(E, R.carrier(), std::move(d)), FinMap(E, R.carrier(), std::move(c)),
                        FinMap(R.carrier(), E, std::move(diag)));
}

inline Fork eq_fork(const FinMap& f) { return Fork(relation_graph(kernel_pair(f)), f); }

inline FinMap coequaliser(const ReflexiveGraph& G) { return coequaliser(equivalence_closure(G.image())); }

inline Fork coeq_fork(const ReflexiveGraph& G) {
  EqRel cl = equivalence_closure(G.image());
  FinSet v = G.vertices;
  return Fork(G, FinMap(v, FinSet(cl.num_classes()), cl.class_ids()));
}

// ---- enumeration ------------------------------------------------------------

// Calls fn(EqRel) for every partition of an n-element set, in restricted-growth order.
template <class Fn>
void for_each_partition(std::size_t n, Fn&& fn) {
  FinSet s(n);
  std::vector<Elem> a(n, 0), mx(n, 0);
  if (n == 0) {
    fn(EqRel::discrete(s));
    return;
  }
  while (true) {
    fn(EqRel::from_class_ids(s, a));
    std::size_t i = n - 1;
    while (i > 0 && a[i] == mx[i - 1] + 1) --i;
    if (i == 0) return;
    ++a[i];
    for (std::size_t j = i; j < n; ++j) {
      if (j > i) a[j] = 0;
      mx[j] = std::max(mx[j - 1], a[j]);
    }
  }
}

inline std::vector<EqRel> all_partitions(std::size_t n) {
  std::vector<EqRel> out;
  for_each_partition(n, [&](const EqRel& r) { out.push_back(r); });
  return out;
}

}  // namespace cubelab
