#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "cubelab/sequence.hpp"

namespace cubelab {

namespace detail {

inline std::vector<EqRel> faces_of_box(const SetContext& ctx, const std::vector<EqRel>& rels) {
  return face_relations(box_n(ctx.X, rels));
}
inline std::vector<EqRel> faces_of_box(const GroupContext& ctx, const std::vector<EqRel>& rels) {
  return face_relations(box_n(ctx.G.carrier(), rels));
}
inline std::vector<IntLattice> faces_of_box(const AbContext& ctx, const std::vector<IntLattice>& rels) {
  auto D = box_n(ctx, rels);
  std::vector<IntLattice> out;
  for (std::size_t i = 0; i < rels.size(); ++i) out.push_back(face_relation(D, i));
  return out;
}

}  // namespace detail

// Runs every available characterisation of "the induced cube is an extension"
// and compares them. The verdict is that of the cube itself.
template <class C>
CheckReport equivalence_theorem_check(const C& ctx, const std::vector<typename C::Rel>& R) {
  if constexpr (!C::maltsev) {
    throw InputError("equivalence check needs a Mal'tsev context (groups or abelian groups)");
  } else {
    check_all(ctx, R);
    std::size_t n = R.size();
    if (n == 0) throw InputError("equivalence check: no relations");
    json clauses = json::object();
    std::vector<std::string> trace;
    auto F = build_cube(ctx, R);
    CheckReport ext = is_n_cubic_extension(F, {false});
    clauses["i"] = ext.verdict;
    trace.push_back(std::string("(i) cube ") + (ext.verdict ? "is" : "is not") + " an extension");
    if (n == 3) {
      const auto &R0 = R[0], &R1 = R[1], &R2 = R[2];
      clauses["ii"] = join(R2, meet(R0, R1)) == meet(join(R2, R0), join(R2, R1));
      clauses["ii'"] = join(R1, meet(R0, R2)) == meet(join(R1, R0), join(R1, R2));
      clauses["ii''"] = join(R0, meet(R1, R2)) == meet(join(R0, R1), join(R0, R2));
      clauses["iii"] = meet(R2, join(R0, R1)) == join(meet(R2, R0), meet(R2, R1));
      clauses["iii'"] = meet(R1, join(R0, R2)) == join(meet(R1, R0), meet(R1, R2));
      clauses["iii''"] = meet(R0, join(R1, R2)) == join(meet(R0, R1), meet(R0, R2));
      clauses["iv"] = check_distributive(R).verdict;
      clauses["v"] = check_distributive(detail::faces_of_box(ctx, R)).verdict;
      clauses["vi"] = relation_box(join(R0, R1), R2) == join(relation_box(R0, R2), relation_box(R1, R2));
      clauses["vi'"] = relation_box(join(R0, R2), R1) == join(relation_box(R0, R1), relation_box(R2, R1));
      clauses["vi''"] = relation_box(join(R1, R2), R0) == join(relation_box(R1, R0), relation_box(R2, R0));
    } else {
      clauses["ii"] = check_distributive(R).verdict;
      clauses["iii"] = check_distributive(detail::faces_of_box(ctx, R)).verdict;
    }
    bool unanimous = true;
    for (const auto& [k, v] : clauses.items()) {
      if (v.template get<bool>() != ext.verdict) unanimous = false;
      trace.push_back("(" + k + ") " + (v.template get<bool>() ? "holds" : "fails"));
    }
    if (!unanimous) trace.push_back("DEFECT: clauses disagree");
    CheckReport r = ext.verdict ? CheckReport::pass(trace) : CheckReport::fail(ext.witness, trace);
    r.details["clauses"] = clauses;
    r.details["unanimous"] = unanimous;
    r.details["n"] = n;
    return r;
  }
}

// ---- closure under the lemma on sub-extensions ---------------------------------

// clause 1: the relations indexed by I;
// 2 / 3: as 1 with the last slot met / joined with the relations in J;
// 4: slots ⋀_{J_i} R for disjoint nonempty J_0..J_{k-1};
// 5: as 4 with slot l replaced by ⋀ over J_l ∪ I;
// 6: as 4 with slot l replaced by (⋀_{J_l} R) ∨ (⋀_I R).
struct ClosureSelection {
  int clause = 1;
  std::vector<std::size_t> I, J;
  std::vector<std::vector<std::size_t>> Js;
  std::size_t l = 0;
};

inline json to_json_selection(const ClosureSelection& s) {
  json j{{"clause", s.clause}, {"I", s.I}};
  if (s.clause == 2 || s.clause == 3) j["J"] = s.J;
  if (s.clause >= 4) j["Js"] = s.Js;
  if (s.clause >= 5) j["l"] = s.l;
  return j;
}

inline void validate_selection(const ClosureSelection& s, std::size_t n) {
  auto mask = [&](const std::vector<std::size_t>& v) {
    unsigned m = 0;
    for (std::size_t i : v) {
      if (i >= n) throw InputError("selection index out of range");
      if (m >> i & 1) throw InputError("selection repeats an index");
      m |= 1u << i;
    }
    return m;
  };
  if (s.clause < 1 || s.clause > 6) throw InputError("selection clause must be 1..6");
  unsigned I = mask(s.I);
  if (s.clause <= 3) {
    if (I == 0) throw InputError("selection: I must be nonempty");
    if (mask(s.J) & I) throw InputError("selection: I and J overlap");
    return;
  }
  if (s.Js.size() < 2) throw InputError("selection: need at least two blocks");
  unsigned seen = 0;
  for (const auto& b : s.Js) {
    unsigned m = mask(b);
    if (m == 0) throw InputError("selection: empty block");
    if (m & seen) throw InputError("selection: blocks overlap");
    seen |= m;
  }
  if (s.clause >= 5) {
    if (I == 0) throw InputError("selection: I must be nonempty");
    if (I & seen) throw InputError("selection: I meets a block");
    if (s.l >= s.Js.size()) throw InputError("selection: slot out of range");
  }
}

template <class C>
std::vector<typename C::Rel> derived_relations(const C& ctx, const std::vector<typename C::Rel>& R, const ClosureSelection& s) {
  using Rel = typename C::Rel;
  validate_selection(s, R.size());
  auto meet_of = [&](const std::vector<std::size_t>& idx) {
    Rel out = ctx.top();
    for (std::size_t i : idx) out = meet(out, R[i]);
    return out;
  };
  std::vector<Rel> out;
  if (s.clause <= 3) {
    for (std::size_t i : s.I) out.push_back(R[i]);
    if (s.clause == 2) out.back() = meet(out.back(), meet_of(s.J));
    if (s.clause == 3)
      for (std::size_t j : s.J) out.back() = join(out.back(), R[j]);
    return out;
  }
  for (const auto& b : s.Js) out.push_back(meet_of(b));
  if (s.clause == 5) {
    std::vector<std::size_t> u = s.Js[s.l];
    u.insert(u.end(), s.I.begin(), s.I.end());
    out[s.l] = meet_of(u);
  } else if (s.clause == 6) {
    out[s.l] = join(out[s.l], meet_of(s.I));
  }
  return out;
}

// Every selection for n relations, in a fixed order.
inline std::vector<ClosureSelection> all_selections(std::size_t n) {
  std::vector<ClosureSelection> out;
  unsigned full = (1u << n) - 1;
  for (unsigned I = 1; I <= full; ++I) {
    out.push_back({1, mask_members(I), {}, {}, 0});
    unsigned rest = full & ~I;
    for (unsigned J = 1; J <= rest; ++J)
      if ((J & rest) == J) {
        out.push_back({2, mask_members(I), mask_members(J), {}, 0});
        out.push_back({3, mask_members(I), mask_members(J), {}, 0});
      }
  }
  for (unsigned U = 1; U <= full; ++U) {
    auto members = mask_members(U);
    for_each_partition(members.size(), [&](const EqRel& p) {
      if (p.num_classes() < 2) return;
      std::vector<std::vector<std::size_t>> Js;
      for (const auto& blk : p.blocks()) {
        std::vector<std::size_t> b;
        for (Elem t : blk) b.push_back(members[t]);
        Js.push_back(b);
      }
      out.push_back({4, {}, {}, Js, 0});
      unsigned rest = full & ~U;
      for (unsigned I = 1; I <= rest; ++I)
        if ((I & rest) == I)
          for (std::size_t l = 0; l < Js.size(); ++l) {
            out.push_back({5, mask_members(I), {}, Js, l});
            out.push_back({6, mask_members(I), {}, Js, l});
          }
    });
  }
  return out;
}

template <class C>
CheckReport subcube_closure_check(const C& ctx, const std::vector<typename C::Rel>& R, const ClosureSelection& s) {
  auto F = build_cube(ctx, R);
  if (!is_n_cubic_extension(F, {false}).verdict) throw InputError("closure check: the induced cube is not an extension");
  auto D = derived_relations(ctx, R, s);
  auto r = is_n_cubic_extension(build_cube(ctx, D), {false});
  r.details["selection"] = to_json_selection(s);
  r.details["k"] = D.size();
  return r;
}

// ---- box product laws -----------------------------------------------------------

// Intersection stability, join distribution (when the tuple is distributive) and
// inheritance of distributivity by (R_i □ R_m)_{i≠m}.
template <class C>
CheckReport box_laws(const C& ctx, const std::vector<typename C::Rel>& R) {
  using Rel = typename C::Rel;
  check_all(ctx, R);
  std::size_t n = R.size();
  if (n < 2) throw InputError("box laws: need at least two relations");
  const Rel& last = R[n - 1];
  json failures = json::array();
  std::size_t checked = 0;
  unsigned low = (1u << (n - 1)) - 1;
  std::vector<Rel> boxed;
  for (std::size_t j = 0; j < n; ++j) boxed.push_back(relation_box(R[j], last));
  for (unsigned I = 1; I <= low; ++I) {
    ++checked;
    Rel m = ctx.top();
    std::optional<Rel> bm;
    for (std::size_t j : mask_members(I)) {
      m = meet(m, R[j]);
      bm = bm ? meet(*bm, boxed[j]) : boxed[j];
    }
    if (!(relation_box(m, last) == *bm)) failures.push_back(json{{"law", "intersection"}, {"I", mask_members(I)}});
  }
  bool distributive = check_distributive(R).verdict;
  if (distributive) {
    std::optional<Rel> j, bj;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      j = j ? join(*j, R[i]) : R[i];
      bj = bj ? join(*bj, boxed[i]) : boxed[i];
    }
    ++checked;
    if (!(relation_box(*j, last) == *bj)) failures.push_back(json{{"law", "join"}});
    // (⋁_i ⋀_{J_i} R) □ R_{n-1} = ⋁_i ⋀_{J_i} (R □ R_{n-1}) over disjoint families
    for_each_family(n, [&](const DistributivityFamily& f) {
      ++checked;
      std::optional<Rel> lhs, rhs;
      for (unsigned b : f.blocks) {
        Rel m = ctx.top();
        std::optional<Rel> bm;
        for (std::size_t k : mask_members(b)) {
          m = meet(m, R[k]);
          bm = bm ? meet(*bm, boxed[k]) : boxed[k];
        }
        lhs = lhs ? join(*lhs, m) : m;
        rhs = rhs ? join(*rhs, *bm) : *bm;
      }
      if (!(relation_box(*lhs, last) == *rhs)) failures.push_back(json{{"law", "join over family"}, {"family", to_json_family(f)}});
    });
    for (std::size_t m = 0; m < n; ++m) {
      std::vector<Rel> sq;
      for (std::size_t i = 0; i < n; ++i)
        if (i != m) sq.push_back(relation_box(R[i], R[m]));
      ++checked;
      if (!check_distributive(sq).verdict) failures.push_back(json{{"law", "inherited distributivity"}, {"m", m}});
    }
  }
  std::vector<std::string> trace{std::to_string(checked) + " identities checked, " + std::to_string(failures.size()) + " failing"};
  if (!distributive) trace.push_back("tuple not distributive: join laws not applicable");
  CheckReport r = failures.empty() ? CheckReport::pass(trace) : CheckReport::fail(failures[0], trace);
  r.details["distributive"] = distributive;
  r.details["failures"] = failures;
  r.details["checked"] = checked;
  return r;
}

// ---- the denormalised 3^n-lemma ---------------------------------------------------

// (i) all forks of the grid exact; (ii) the arrow part is an extension and the grid
// is Eq of it; (iii) the top relation is parallelistic and distributive, and the grid
// is Coeq of it; (iv) both round trips.
inline CheckReport denormalised_lemma_check(const GroupContext& ctx, const std::vector<EqRel>& R) {
  check_all(ctx, R);
  auto F = build_cube(ctx, R);
  auto E = build_sequence_fork(F);
  json clauses = json::object();
  auto v = verify_sequence(E);
  clauses["i"] = v.verdict;
  auto rt = fork_round_trips(E);
  // the graph half of the round trip holds by construction of Eq; the arrow half is the test
  bool eq_side = true, coeq_side = true;
  for (const auto& f : rt.details["failures"]) {
    eq_side = eq_side && f["graph_is_eq"].get<bool>();
    coeq_side = coeq_side && f["arrow_is_coeq"].get<bool>();
  }
  clauses["ii"] = is_n_cubic_extension(F, {false}).verdict && eq_side;
  auto D = box_n(ctx.G.carrier(), R);
  bool par = is_parallelistic(D).verdict;
  clauses["iii"] = par && check_distributive(face_relations(D)).verdict && coeq_side;
  clauses["iv"] = rt.verdict;
  bool unanimous = true;
  std::vector<std::string> trace;
  for (const auto& [k, b] : clauses.items()) {
    unanimous = unanimous && b.get<bool>() == v.verdict;
    trace.push_back("(" + k + ") " + (b.get<bool>() ? "holds" : "fails"));
  }
  if (!unanimous) trace.push_back("DEFECT: clauses disagree");
  CheckReport r = v.verdict ? CheckReport::pass(trace) : CheckReport::fail(v.witness, trace);
  r.details["clauses"] = clauses;
  r.details["unanimous"] = unanimous;
  return r;
}

}  // namespace cubelab
