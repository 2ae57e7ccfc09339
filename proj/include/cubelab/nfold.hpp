#pragma once

#include <algorithm>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "cubelab/context.hpp"

namespace cubelab {

// An n-fold equivalence relation on a finite X. Tuples are indexed by vertex
// masks: entries at masks differing in bit i are related by relations[i].
// When the tuple set would be too large only the relations are kept.
struct NFoldEqRel {
  std::size_t n = 0;
  FinSet base;
  std::vector<EqRel> relations;
  bool realized = false;
  std::vector<std::vector<Elem>> tuples;  // sorted
  std::string note;

  std::size_t size() const { return tuples.size(); }
  bool contains(const std::vector<Elem>& t) const { return std::binary_search(tuples.begin(), tuples.end(), t); }
};

// Upper bound on |box_n(R)|, saturating at SIZE_MAX.
inline std::size_t box_bound(std::size_t x, const std::vector<EqRel>& rels) {
  std::size_t n = rels.size();
  std::vector<std::size_t> maxc;
  for (const auto& R : rels) {
    auto cs = R.class_sizes();
    maxc.push_back(cs.empty() ? 0 : *std::max_element(cs.begin(), cs.end()));
  }
  std::size_t b = x;
  for (std::size_t v = 1; v < (std::size_t{1} << n); ++v) {
    std::size_t c = maxc[static_cast<std::size_t>(__builtin_ctzll(v))];
    if (c != 0 && b > std::numeric_limits<std::size_t>::max() / c) return std::numeric_limits<std::size_t>::max();
    b *= c;
  }
  return b;
}

// Tuples x: {0,1}^n → X with x_v R_i x_w whenever v and w differ only in bit i.
inline NFoldEqRel box_n(const FinSet& X, const std::vector<EqRel>& rels) {
  for (const auto& R : rels)
    if (R.size() != X.size()) throw InputError("box: relations on different carriers");
  NFoldEqRel D;
  D.n = rels.size();
  D.base = X;
  D.relations = rels;
  std::size_t bound = box_bound(X.size(), rels);
  if (bound > limits().max_tuples) {
    D.note = "tuple set not realized: bound " + (bound == std::numeric_limits<std::size_t>::max() ? std::string("overflow") : std::to_string(bound)) +
             " exceeds " + std::to_string(limits().max_tuples);
    return D;
  }
  std::size_t V = std::size_t{1} << D.n;
  std::vector<std::vector<std::vector<Elem>>> blocks;
  for (const auto& R : rels) blocks.push_back(R.blocks());
  std::vector<Elem> t(V);
  std::function<void(std::size_t)> fill = [&](std::size_t v) {
    if (v == V) {
      D.tuples.push_back(t);
      return;
    }
    if (v == 0) {
      for (Elem x = 0; x < X.size(); ++x) {
        t[0] = x;
        fill(1);
      }
      return;
    }
    std::size_t i = static_cast<std::size_t>(__builtin_ctzll(v));
    Elem anchor = t[v & ~(std::size_t{1} << i)];
    for (Elem y : blocks[i][rels[i].class_of(anchor)]) {
      bool ok = true;
      for (std::size_t j = i + 1; j < D.n && ok; ++j)
        if (v >> j & 1) ok = rels[j].related(y, t[v & ~(std::size_t{1} << j)]);
      if (!ok) continue;
      t[v] = y;
      fill(v + 1);
    }
  };
  fill(0);
  D.realized = true;
  return D;
}

inline NFoldEqRel box_n(const std::vector<EqRel>& rels) {
  if (rels.empty()) throw InputError("box: no relations");
  return box_n(rels[0].carrier(), rels);
}

// R □ S: quadruples at masks 0, 1, 2, 3 = (x, t, y, z) with x R t, y R z, x S y, t S z.
inline NFoldEqRel box2(const EqRel& R, const EqRel& S) {
  require_same_carrier(R, S);
  return box_n(R.carrier(), {R, S});
}

// Relation read off the pairs (t_0, t_{e_i}); throws when that is not an equivalence relation.
inline EqRel face_relation(const NFoldEqRel& D, std::size_t i) {
  if (!D.realized) return D.relations.at(i);
  std::size_t x = D.base.size();
  BinaryRelation B(x);
  for (const auto& t : D.tuples) B.insert(t[0], t[std::size_t{1} << i]);
  EqRel closure = equivalence_closure(B);
  if (B != as_relation(closure)) throw InputError("malformed n-fold relation: face " + std::to_string(i) + " is not an equivalence relation");
  return closure;
}

inline std::vector<EqRel> face_relations(const NFoldEqRel& D) {
  std::vector<EqRel> out;
  for (std::size_t i = 0; i < D.n; ++i) out.push_back(face_relation(D, i));
  return out;
}

// Tuples of the iterated kernel pair of a finite cube, via its projections.
inline std::vector<std::vector<Elem>> tower_tuples(const EqTower<SetEnv>& T) {
  std::vector<std::vector<Elem>> out;
  for (Elem z = 0; z < T.object.size(); ++z) {
    std::vector<Elem> t;
    for (const auto& p : T.projections) t.push_back(p(z));
    out.push_back(std::move(t));
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

inline bool constraint_effective(const std::vector<EqRel>& faces) {
  for (const auto& R : faces)
    if (kernel_pair(coequaliser(R)) != R) return false;
  return true;
}

// Both verdicts, computed along separate routes.
inline std::pair<CheckReport, CheckReport> effectiveness(const NFoldEqRel& D) {
  auto faces = face_relations(D);
  if (!D.realized) {
    bool eff = constraint_effective(faces);
    CheckReport par = CheckReport::pass({"constraint representation: box product by construction", D.note});
    CheckReport ef = eff ? CheckReport::pass({"constraint representation: every face is a kernel pair of its coequaliser", D.note})
                         : CheckReport::fail(json{{"kind", "face not effective"}}, {D.note});
    par.details["constraint_only"] = ef.details["constraint_only"] = true;
    return {par, ef};
  }
  NFoldEqRel B = box_n(D.base, faces);
  if (!B.realized) throw SizeLimitExceeded("box of the face relations is too large to compare: " + B.note);
  CheckReport par;
  if (B.tuples == D.tuples) {
    par = CheckReport::pass({"equals the box product of its faces (" + std::to_string(D.size()) + " tuples)"});
  } else {
    json w{{"kind", "differs from box product"}, {"size", D.size()}, {"box_size", B.size()}};
    for (const auto& t : B.tuples)
      if (!D.contains(t)) {
        w["missing_tuple"] = t;
        break;
      }
    par = CheckReport::fail(w, {"differs from the box product of its faces"});
  }
  SetContext ctx{D.base};
  auto T = eq_n(build_cube(ctx, faces));
  auto tt = tower_tuples(T);
  CheckReport ef = tt == D.tuples ? CheckReport::pass({"equals the iterated kernel pair of its coequaliser cube"})
                                  : CheckReport::fail(json{{"kind", "differs from iterated kernel pair"}, {"size", D.size()}, {"kernel_pair_size", tt.size()}},
                                                      {"differs from the iterated kernel pair of its coequaliser cube"});
  return {par, ef};
}

}  // namespace detail

inline CheckReport is_parallelistic(const NFoldEqRel& D) {
  auto [par, ef] = detail::effectiveness(D);
  par.details["effective"] = ef.verdict;
  par.details["agree"] = par.verdict == ef.verdict;
  return par;
}

inline CheckReport is_effective(const NFoldEqRel& D) {
  auto [par, ef] = detail::effectiveness(D);
  ef.details["parallelistic"] = par.verdict;
  ef.details["agree"] = par.verdict == ef.verdict;
  return ef;
}

// ---- finitely generated abelian groups ----------------------------------------

// Tuples (x_v) in ℤ^{d·2^n}, block v at rows [d·v, d·v + d).
struct AbNFoldEqRel {
  std::size_t n = 0;
  IntLattice base;
  std::vector<IntLattice> relations;
  IntLattice carrier;
};

inline AbNFoldEqRel box_n(const AbContext& ctx, const std::vector<IntLattice>& rels) {
  check_all(ctx, rels);
  std::size_t n = rels.size(), d = ctx.rank(), V = std::size_t{1} << n;
  // x ↦ (x_v - x_{v^i}) mod R_i over the edges
  std::size_t edges = 0;
  for (std::size_t v = 0; v < V; ++v)
    for (std::size_t i = 0; i < n; ++i)
      if (v >> i & 1) ++edges;
  IntMatrix M(edges * d, V * d);
  IntMatrix rel(edges * d, 0);
  std::size_t e = 0;
  for (std::size_t v = 0; v < V; ++v)
    for (std::size_t i = 0; i < n; ++i) {
      if (!(v >> i & 1)) continue;
      std::size_t u = v & ~(std::size_t{1} << i);
      for (std::size_t k = 0; k < d; ++k) {
        M(e * d + k, v * d + k) = 1;
        M(e * d + k, u * d + k) = -1;
      }
      IntMatrix R(edges * d, rels[i].rank());
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t c = 0; c < rels[i].rank(); ++c) R(e * d + k, c) = rels[i].basis()(k, c);
      rel = rel.hcat(R);
      ++e;
    }
  FgAbHom diff(FgAbGroup::free(V * d), FgAbGroup(rel), M);
  return AbNFoldEqRel{n, ctx.base, rels, kernel_lattice(diff)};
}

inline IntLattice face_relation(const AbNFoldEqRel& D, std::size_t i) {
  std::size_t d = D.base.ambient_rank(), w = std::size_t{1} << i;
  IntMatrix P(d, D.carrier.basis().rows());
  for (std::size_t k = 0; k < d; ++k) {
    P(k, k) = 1;
    P(k, w * d + k) = -1;
  }
  IntMatrix img = P * D.carrier.basis();
  return lattice_join(IntLattice::generated(d, img), D.base);
}

inline IntLattice tower_lattice(const EqTower<AbEnv>& T, const IntLattice& base) {
  std::size_t d = base.ambient_rank(), V = T.projections.size();
  IntMatrix stacked(0, T.object.generators());
  for (const auto& p : T.projections) stacked = stacked.vcat(p.matrix());
  IntMatrix rel(V * d, 0);
  for (std::size_t v = 0; v < V; ++v) {
    IntMatrix R(V * d, base.rank());
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t c = 0; c < base.rank(); ++c) R(v * d + k, c) = base.basis()(k, c);
    rel = rel.hcat(R);
  }
  return IntLattice::generated(V * d, stacked.hcat(rel));
}

inline std::pair<CheckReport, CheckReport> ab_effectiveness(const AbNFoldEqRel& D) {
  AbContext ctx{D.base};
  std::vector<IntLattice> faces;
  for (std::size_t i = 0; i < D.n; ++i) faces.push_back(face_relation(D, i));
  AbNFoldEqRel B = box_n(ctx, faces);
  CheckReport par = B.carrier == D.carrier ? CheckReport::pass({"equals the box product of its faces"})
                                           : CheckReport::fail(json{{"kind", "differs from box product"}}, {"differs from the box product of its faces"});
  IntLattice T = tower_lattice(eq_n(build_cube(ctx, faces)), D.base);
  CheckReport ef = T == D.carrier ? CheckReport::pass({"equals the iterated kernel pair of its coequaliser cube"})
                                  : CheckReport::fail(json{{"kind", "differs from iterated kernel pair"}}, {"differs from the iterated kernel pair"});
  return {par, ef};
}

inline CheckReport is_parallelistic(const AbNFoldEqRel& D) {
  auto [par, ef] = ab_effectiveness(D);
  par.details["effective"] = ef.verdict;
  par.details["agree"] = par.verdict == ef.verdict;
  return par;
}

inline CheckReport is_effective(const AbNFoldEqRel& D) {
  auto [par, ef] = ab_effectiveness(D);
  ef.details["parallelistic"] = par.verdict;
  ef.details["agree"] = par.verdict == ef.verdict;
  return ef;
}

}  // namespace cubelab
