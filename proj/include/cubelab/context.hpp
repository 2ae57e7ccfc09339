#pragma once

#include <string>
#include <vector>

#include "cubelab/cube.hpp"
#include "cubelab/distributive.hpp"
#include "cubelab/grpalg.hpp"

namespace cubelab {

// A context fixes the base object X, the kind of relation on it, and the
// environment in which cubes over X live.

struct SetContext {
  using Env = SetEnv;
  using Rel = EqRel;
  static constexpr bool maltsev = false;
  static constexpr const char* kind = "finset";

  FinSet X;

  const FinSet& object() const { return X; }
  Rel top() const { return EqRel::full(X); }
  Rel bottom() const { return EqRel::discrete(X); }
  void check(const Rel& R) const {
    if (R.size() != X.size()) throw InputError("relation is not on the base set");
  }
  FinMap quotient_map(const Rel& R) const { return coequaliser(R); }
};

struct GroupContext {
  using Env = SetEnv;
  using Rel = EqRel;
  static constexpr bool maltsev = true;
  static constexpr const char* kind = "fingroup";

  FinGroup G;
  std::string name;

  FinSet object() const { return G.carrier(); }
  Rel top() const { return EqRel::full(G.carrier()); }
  Rel bottom() const { return EqRel::discrete(G.carrier()); }
  void check(const Rel& R) const {
    if (R.size() != G.order()) throw InputError("relation is not on the group");
    if (!is_congruence(R, G)) throw InputError("relation is not a congruence of " + (name.empty() ? "the group" : name));
  }
  FinMap quotient_map(const Rel& R) const { return coequaliser(R); }
  NormalSubgroup normal(const Rel& R) const { return normal_subgroup_of(R, G); }
};

// X = ℤ^d / N0; congruences are lattices containing N0.
struct AbContext {
  using Env = AbEnv;
  using Rel = IntLattice;
  static constexpr bool maltsev = true;
  static constexpr const char* kind = "fgab";

  IntLattice base;

  static AbContext free(std::size_t d) { return {IntLattice::zero(d)}; }
  std::size_t rank() const { return base.ambient_rank(); }
  FgAbGroup object() const { return FgAbGroup(base.basis()); }
  Rel top() const { return IntLattice::full(rank()); }
  Rel bottom() const { return base; }
  void check(const Rel& R) const {
    if (R.ambient_rank() != rank()) throw InputError("lattice has the wrong ambient rank");
    if (!R.contains(base)) throw InputError("lattice does not contain the base relations");
  }
  // Generators joined with the base relations.
  Rel relation(const std::vector<std::vector<Int>>& gens) const { return lattice_join(IntLattice::generated(rank(), gens), base); }
  FgAbHom quotient_map(const Rel& R) const {
    return FgAbHom(object(), FgAbGroup(R.basis()), IntMatrix::identity(rank()));
  }
};

template <class C>
typename C::Rel join_all(const C& ctx, const std::vector<typename C::Rel>& rels, unsigned mask) {
  typename C::Rel out = ctx.bottom();
  for (std::size_t i = 0; i < rels.size(); ++i)
    if (mask >> i & 1) out = join(out, rels[i]);
  return out;
}

template <class C>
typename C::Rel meet_all(const C& ctx, const std::vector<typename C::Rel>& rels, unsigned mask) {
  typename C::Rel out = ctx.top();
  for (std::size_t i = 0; i < rels.size(); ++i)
    if (mask >> i & 1) out = meet(out, rels[i]);
  return out;
}

template <class C>
void check_all(const C& ctx, const std::vector<typename C::Rel>& rels) {
  for (const auto& R : rels) ctx.check(R);
}

// Vertex S carries X / ⋁_{i∉S} R_i; edges are the induced projections.
template <class C>
NCube<typename C::Env> build_cube(const C& ctx, const std::vector<typename C::Rel>& rels) {
  using E = typename C::Env;
  check_all(ctx, rels);
  std::size_t n = rels.size();
  std::size_t V = std::size_t{1} << n;
  unsigned full = static_cast<unsigned>(V - 1);
  std::vector<typename E::Mor> q;
  std::vector<typename E::Obj> objs;
  for (std::size_t S = 0; S < V; ++S) {
    q.push_back(ctx.quotient_map(join_all(ctx, rels, full & ~static_cast<unsigned>(S))));
    objs.push_back(E::cod(q.back()));
  }
  std::vector<std::optional<typename E::Mor>> es(V * n);
  for (std::size_t S = 0; S < V; ++S)
    for (std::size_t i = 0; i < n; ++i)
      if (S >> i & 1) es[S * n + i] = E::factor(q[S], q[S & ~(std::size_t{1} << i)]);
  return NCube<E>(n, std::move(objs), std::move(es));
}

// The same cube by successive pushouts of the coequalisers, merging the
// relations outside S in the given order of indices.
template <class C>
NCube<typename C::Env> push_cube(const C& ctx, const std::vector<typename C::Rel>& rels, std::vector<std::size_t> order = {}) {
  using E = typename C::Env;
  check_all(ctx, rels);
  std::size_t n = rels.size();
  if (order.empty()) {
    order.resize(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
  }
  std::size_t V = std::size_t{1} << n;
  std::vector<typename E::Mor> coeq;
  for (const auto& R : rels) coeq.push_back(ctx.quotient_map(R));
  std::vector<typename E::Mor> q;
  std::vector<typename E::Obj> objs;
  for (std::size_t S = 0; S < V; ++S) {
    typename E::Mor m = E::identity(ctx.object());
    bool first = true;
    for (std::size_t i : order) {
      if (S >> i & 1) continue;
      if (first) {
        m = coeq[i];
        first = false;
      } else {
        auto po = E::pushout(m, coeq[i]);
        m = E::compose(po.i1, m);
      }
    }
    q.push_back(m);
    objs.push_back(E::cod(m));
  }
  std::vector<std::optional<typename E::Mor>> es(V * n);
  for (std::size_t S = 0; S < V; ++S)
    for (std::size_t i = 0; i < n; ++i)
      if (S >> i & 1) es[S * n + i] = E::factor(q[S], q[S & ~(std::size_t{1} << i)]);
  return NCube<E>(n, std::move(objs), std::move(es));
}

// ---- relations on relations --------------------------------------------------

// Pairs (x, y) with x R y, in lexicographic order.
inline std::vector<std::pair<Elem, Elem>> pairs_of(const EqRel& R) {
  std::vector<std::pair<Elem, Elem>> out;
  for (Elem x = 0; x < R.size(); ++x)
    for (Elem y = 0; y < R.size(); ++y)
      if (R.related(x, y)) out.push_back({x, y});
  return out;
}

// S □ R as an equivalence relation on R: (x, y) ~ (t, z) iff x S t and y S z.
inline EqRel relation_box(const EqRel& S, const EqRel& R) {
  require_same_carrier(S, R);
  auto ps = pairs_of(R);
  std::vector<std::pair<Elem, Elem>> labels;
  for (auto [x, y] : ps) labels.push_back({S.class_of(x), S.class_of(y)});
  return EqRel::from_labels(FinSet(ps.size()), labels);
}

// R as a subgroup {(x, y) : x - y ∈ R} of ℤ^{2d}.
inline IntLattice relation_carrier(const IntLattice& R) {
  std::size_t d = R.ambient_rank();
  std::vector<std::vector<Int>> gens;
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<Int> v(2 * d, 0);
    v[i] = 1;
    v[d + i] = 1;
    gens.push_back(v);
  }
  for (const auto& c : R.basis().columns()) {
    std::vector<Int> v(2 * d, 0);
    for (std::size_t i = 0; i < d; ++i) v[i] = c[i];
    gens.push_back(v);
  }
  return IntLattice::generated(2 * d, gens);
}

// S □ R as a congruence on the group R: the subgroup (S ⊕ S) ∧ R of ℤ^{2d}.
inline IntLattice relation_box(const IntLattice& S, const IntLattice& R) {
  require_same_rank(S, R);
  std::size_t d = S.ambient_rank();
  IntMatrix B = IntMatrix::block_diag(S.basis(), S.basis());
  return lattice_meet(IntLattice::generated(2 * d, B), relation_carrier(R));
}

}  // namespace cubelab
