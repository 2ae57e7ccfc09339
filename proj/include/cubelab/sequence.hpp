#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "cubelab/nfold.hpp"

namespace cubelab {

// Positions of the 3^n grid: coordinate i contributes e_i·3^i; the key has char i = e_i.
inline std::size_t pow3(std::size_t n) {
  std::size_t p = 1;
  while (n--) p *= 3;
  return p;
}

inline std::size_t grid_digit(std::size_t p, std::size_t i) { return p / pow3(i) % 3; }

inline std::string grid_key(std::size_t p, std::size_t n) {
  std::string s(n, '0');
  for (std::size_t i = 0; i < n; ++i) s[i] = static_cast<char>('0' + grid_digit(p, i));
  return s;
}

inline std::size_t parse_grid_key(const std::string& s) {
  std::size_t p = 0;
  for (std::size_t i = s.size(); i-- > 0;) {
    if (s[i] < '0' || s[i] > '2') throw InputError("grid key must be a base-3 string: " + s);
    p = p * 3 + static_cast<std::size_t>(s[i] - '0');
  }
  return p;
}

// Key of a line in direction i through p, with '*' in place of coordinate i.
inline std::string line_key(std::size_t p, std::size_t n, std::size_t i) {
  std::string s = grid_key(p, n);
  s[i] = '*';
  return s;
}

// Positions with coordinate i equal to v.
inline std::vector<std::size_t> grid_slice(std::size_t n, std::size_t i, std::size_t v) {
  std::vector<std::size_t> out;
  for (std::size_t p = 0; p < pow3(n); ++p)
    if (grid_digit(p, i) == v) out.push_back(p);
  return out;
}

template <class L>
bool lattice_leq(const L& a, const L& b) {
  return meet(a, b) == a;
}

// ---- pointed grids ------------------------------------------------------------

// Position e carries num[e] / den[e], normal subobjects of X; every map is induced
// by the identity of X. Along a line the value 2 is the kernel side, 1 the middle
// and 0 the quotient side, so X sits at (1..1), A at (2..2), the last quotient at (0..0).
template <class L>
struct PointedSequence {
  std::size_t n = 0;
  L top, bottom;
  std::vector<L> num, den;
  std::string construction;  // "intersections" or "kernels"
  std::vector<L> inputs;

  std::size_t positions() const { return pow3(n); }
};

template <class L>
void validate_sequence(const PointedSequence<L>& E) {
  if (E.num.size() != E.positions() || E.den.size() != E.positions()) throw InputError("malformed grid: wrong number of positions");
  for (std::size_t p = 0; p < E.positions(); ++p)
    if (!lattice_leq(E.den[p], E.num[p]))
      throw InputError("malformed grid: denominator not below numerator at " + grid_key(p, E.n));
  for (std::size_t i = 0; i < E.n; ++i)
    for (std::size_t p : grid_slice(E.n, i, 0))
      for (std::size_t v = 1; v < 3; ++v) {
        std::size_t hi = p + v * pow3(i), lo = hi - pow3(i);
        if (!lattice_leq(E.num[hi], E.num[lo]) || !lattice_leq(E.den[hi], E.den[lo]))
          throw InputError("malformed grid: no induced map from " + grid_key(hi, E.n) + " to " + grid_key(lo, E.n));
      }
}

namespace detail {

template <class L>
L meet_over(const std::vector<L>& rels, unsigned mask, const L& top) {
  L out = top;
  for (std::size_t i = 0; i < rels.size(); ++i)
    if (mask >> i & 1) out = meet(out, rels[i]);
  return out;
}

template <class L>
L join_over(const std::vector<L>& rels, unsigned mask, const L& bottom) {
  L out = bottom;
  for (std::size_t i = 0; i < rels.size(); ++i)
    if (mask >> i & 1) out = join(out, rels[i]);
  return out;
}

inline unsigned digit_mask(std::size_t p, std::size_t n, std::size_t value) {
  unsigned m = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (grid_digit(p, i) == value) m |= 1u << i;
  return m;
}

}  // namespace detail

// Intersections first, then cokernels: num = A_M, den = ⋁_{j∈Q} A_{M∪j}, with
// A_S = ⋀_{i∈S} K_i, M = {e_i = 2}, Q = {e_i = 0}.
template <class L>
PointedSequence<L> sequence_from_intersections(const L& top, const L& bottom, const std::vector<L>& K) {
  std::size_t n = K.size();
  if (n == 0 || n > 6) throw InputError("pointed grid: need between 1 and 6 subobjects");
  std::vector<L> A;
  for (unsigned m = 0; m < (1u << n); ++m) A.push_back(detail::meet_over(K, m, top));
  PointedSequence<L> E{n, top, bottom, {}, {}, "intersections", K};
  for (std::size_t p = 0; p < pow3(n); ++p) {
    unsigned M = detail::digit_mask(p, n, 2), Q = detail::digit_mask(p, n, 0);
    L d = bottom;
    for (std::size_t j = 0; j < n; ++j)
      if (Q >> j & 1) d = join(d, A[M | 1u << j]);
    E.num.push_back(A[M]);
    E.den.push_back(d);
  }
  return E;
}

// Quotients first, then kernels: num = ⋀_{i∈D} J_{S∖i}, den = J_S, with
// J_S = ⋁_{i∉S} R_i, S = {e_i ≥ 1}, D = {e_i = 2}.
template <class L>
PointedSequence<L> sequence_from_kernels(const L& top, const L& bottom, const std::vector<L>& R) {
  std::size_t n = R.size();
  if (n == 0 || n > 6) throw InputError("pointed grid: need between 1 and 6 subobjects");
  unsigned full = (1u << n) - 1;
  std::vector<L> J;
  for (unsigned S = 0; S <= full; ++S) J.push_back(detail::join_over(R, full & ~S, bottom));
  PointedSequence<L> E{n, top, bottom, {}, {}, "kernels", R};
  for (std::size_t p = 0; p < pow3(n); ++p) {
    unsigned D = detail::digit_mask(p, n, 2), S = D | detail::digit_mask(p, n, 1);
    L num = top;
    for (std::size_t i = 0; i < n; ++i)
      if (D >> i & 1) num = meet(num, J[S & ~(1u << i)]);
    E.num.push_back(num);
    E.den.push_back(J[S]);
  }
  return E;
}

inline PointedSequence<NormalSubgroup> build_sequence_pointed(const GroupContext& ctx, const std::vector<NormalSubgroup>& K) {
  for (const auto& k : K)
    if (!(k.parent() == ctx.G)) throw InputError("normal subgroup of a different group");
  return sequence_from_intersections(NormalSubgroup::whole(ctx.G), NormalSubgroup::trivial(ctx.G), K);
}

inline PointedSequence<IntLattice> build_sequence_pointed(const AbContext& ctx, const std::vector<IntLattice>& K) {
  check_all(ctx, K);
  return sequence_from_intersections(ctx.top(), ctx.bottom(), K);
}

inline PointedSequence<NormalSubgroup> complete_by_kernels(const GroupContext& ctx, const std::vector<NormalSubgroup>& R) {
  return sequence_from_kernels(NormalSubgroup::whole(ctx.G), NormalSubgroup::trivial(ctx.G), R);
}

inline PointedSequence<IntLattice> complete_by_kernels(const AbContext& ctx, const std::vector<IntLattice>& R) {
  check_all(ctx, R);
  return sequence_from_kernels(ctx.top(), ctx.bottom(), R);
}

// The subquotient num / den as an object.
inline std::size_t subquotient_order(const NormalSubgroup& num, const NormalSubgroup& den) { return num.order() / den.order(); }

inline FgAbGroup subquotient_group(const IntLattice& num, const IntLattice& den) {
  std::vector<std::vector<Int>> cols;
  for (std::size_t j = 0; j < den.rank(); ++j) cols.push_back(num.coordinates(den.basis().column(j)));
  return FgAbGroup(IntMatrix::from_columns(num.rank(), cols));
}

struct LineStatus {
  bool mono_injective, epi_surjective, exact;
  bool mono_is_kernel() const { return mono_injective && exact; }
  bool epi_is_cokernel() const { return epi_surjective && exact; }
};

// N2/D2 → N1/D1 → N0/D0.
template <class L>
LineStatus line_status(const L& n2, const L& d2, const L& n1, const L& d1, const L& n0, const L& d0) {
  return {meet(n2, d1) == d2, join(n1, d0) == n0, join(n2, d1) == meet(n1, d0)};
}

template <class L>
CheckReport verify_sequence(const PointedSequence<L>& E) {
  validate_sequence(E);
  json failures = json::array();
  std::size_t lines = 0;
  for (std::size_t i = 0; i < E.n; ++i)
    for (std::size_t p : grid_slice(E.n, i, 0)) {
      ++lines;
      std::size_t p1 = p + pow3(i), p2 = p1 + pow3(i);
      LineStatus s = line_status(E.num[p2], E.den[p2], E.num[p1], E.den[p1], E.num[p], E.den[p]);
      if (s.mono_is_kernel() && s.epi_is_cokernel()) continue;
      failures.push_back(json{{"line", line_key(p, E.n, i)},
                              {"direction", i},
                              {"kind", !s.mono_is_kernel() ? "mono is not a kernel" : "epi is not a cokernel"},
                              {"mono_injective", s.mono_injective},
                              {"epi_surjective", s.epi_surjective},
                              {"exact_in_middle", s.exact},
                              {"mono_is_kernel", s.mono_is_kernel()},
                              {"epi_is_cokernel", s.epi_is_cokernel()}});
    }
  std::vector<std::string> trace{std::to_string(lines) + " lines checked, " + std::to_string(failures.size()) + " not short exact"};
  for (const auto& f : failures) trace.push_back("line " + f["line"].get<std::string>() + ": " + f["kind"].get<std::string>());
  CheckReport r = failures.empty() ? CheckReport::pass(trace) : CheckReport::fail(failures[0], trace);
  r.details["mode"] = "pointed";
  r.details["lines_checked"] = lines;
  r.details["failures"] = failures;
  return r;
}

// ---- fork grids (finite carriers) ---------------------------------------------

// Position e carries, over the cube vertex S = {e_i ≥ 1}, the box of the kernel
// pairs of the edges F(S) → F(S∖i), i ∈ D = {e_i = 2}. Along direction i: d, c
// project a 2-position onto the 1-position, e is the diagonal, f applies the edge.
struct ForkSequence {
  std::size_t n = 0;
  std::vector<FinSet> objects;
  std::map<std::tuple<std::size_t, std::size_t, char>, FinMap> maps;  // (position, direction, role)

  std::size_t positions() const { return pow3(n); }
  const FinMap& map(std::size_t p, std::size_t i, char role) const {
    auto it = maps.find({p, i, role});
    if (it == maps.end()) throw InputError("malformed grid: missing " + std::string(1, role) + " map at " + grid_key(p, n) + " direction " + std::to_string(i));
    return it->second;
  }
};

// Roles by the coordinate at the source: 2 → d, c; 1 → f and e (the latter going up).
inline std::size_t fork_target(std::size_t p, std::size_t i, char role) {
  return role == 'e' ? p + pow3(i) : p - pow3(i);
}

inline void validate_sequence(const ForkSequence& E) {
  if (E.objects.size() != E.positions()) throw InputError("malformed grid: wrong number of positions");
  for (std::size_t p = 0; p < E.positions(); ++p)
    for (std::size_t i = 0; i < E.n; ++i) {
      std::size_t v = grid_digit(p, i);
      std::string roles = v == 2 ? "dc" : v == 1 ? "fe" : "";
      for (char r : roles) {
        const FinMap& m = E.map(p, i, r);
        std::size_t q = fork_target(p, i, r);
        if (m.dom().size() != E.objects[p].size() || m.cod().size() != E.objects[q].size())
          throw InputError("malformed grid: " + std::string(1, r) + " map at " + grid_key(p, E.n) + " has the wrong ends");
      }
    }
  // downward squares commute
  for (std::size_t p = 0; p < E.positions(); ++p)
    for (std::size_t i = 0; i < E.n; ++i)
      for (std::size_t j = i + 1; j < E.n; ++j) {
        std::size_t vi = grid_digit(p, i), vj = grid_digit(p, j);
        if (vi == 0 || vj == 0) continue;
        std::string ri = vi == 2 ? "dc" : "f", rj = vj == 2 ? "dc" : "f";
        for (char a : ri)
          for (char b : rj) {
            FinMap x = compose(E.map(fork_target(p, i, a), j, b), E.map(p, i, a));
            FinMap y = compose(E.map(fork_target(p, j, b), i, a), E.map(p, j, b));
            if (x != y)
              throw InputError("malformed grid: square at " + grid_key(p, E.n) + " directions " + std::to_string(i) + "," +
                               std::to_string(j) + " does not commute");
          }
      }
}

inline Fork grid_fork(const ForkSequence& E, std::size_t p0, std::size_t i) {
  std::size_t p1 = p0 + pow3(i), p2 = p1 + pow3(i);
  return Fork(ReflexiveGraph(E.map(p2, i, 'd'), E.map(p2, i, 'c'), E.map(p1, i, 'e')), E.map(p1, i, 'f'));
}

inline CheckReport verify_sequence(const ForkSequence& E) {
  validate_sequence(E);
  json failures = json::array();
  std::size_t lines = 0;
  for (std::size_t i = 0; i < E.n; ++i)
    for (std::size_t p : grid_slice(E.n, i, 0)) {
      ++lines;
      auto r = exact_fork_report(grid_fork(E, p, i));
      if (!r.verdict) failures.push_back(json{{"line", line_key(p, E.n, i)}, {"direction", i}, {"kind", "fork not exact"}, {"reason", r.witness}});
    }
  std::vector<std::string> trace{std::to_string(lines) + " forks checked, " + std::to_string(failures.size()) + " not exact"};
  for (const auto& f : failures) trace.push_back("line " + f["line"].get<std::string>() + ": " + f["reason"]["kind"].get<std::string>());
  CheckReport r = failures.empty() ? CheckReport::pass(trace) : CheckReport::fail(failures[0], trace);
  r.details["mode"] = "fork";
  r.details["lines_checked"] = lines;
  r.details["failures"] = failures;
  return r;
}

namespace detail {

inline Elem tuple_index(const std::vector<std::vector<Elem>>& tuples, const std::vector<Elem>& t) {
  auto it = std::lower_bound(tuples.begin(), tuples.end(), t);
  if (it == tuples.end() || *it != t) throw std::logic_error("fork grid: tuple missing from target box");
  return static_cast<Elem>(it - tuples.begin());
}

}  // namespace detail

inline ForkSequence build_sequence_fork(const NCube<SetEnv>& F) {
  std::size_t n = F.dim();
  if (n == 0 || n > 5) throw InputError("fork grid: dimension must be between 1 and 5");
  for (std::size_t v = 0; v < F.vertices(); ++v)
    for (std::size_t i = 0; i < n; ++i)
      if ((v >> i & 1) && !is_surjective(F.edge(v, i))) throw InputError("fork grid: cube edge is not surjective");
  std::size_t P = pow3(n);
  std::vector<std::vector<std::vector<Elem>>> tuples(P);
  std::vector<std::vector<std::size_t>> dmembers(P);
  ForkSequence E;
  E.n = n;
  auto vertex_of = [&](std::size_t p) { return static_cast<std::size_t>(detail::digit_mask(p, n, 2) | detail::digit_mask(p, n, 1)); };
  for (std::size_t p = 0; p < P; ++p) {
    std::size_t S = vertex_of(p);
    unsigned D = detail::digit_mask(p, n, 2);
    std::vector<EqRel> rels;
    for (std::size_t i : mask_members(D)) {
      rels.push_back(kernel_pair(F.edge(S, i)));
      dmembers[p].push_back(i);
    }
    if (rels.empty()) {
      for (Elem x = 0; x < F.obj(S).size(); ++x) tuples[p].push_back({x});
    } else {
      auto B = box_n(F.obj(S), rels);
      if (!B.realized) throw SizeLimitExceeded("fork grid: " + B.note);
      tuples[p] = std::move(B.tuples);
    }
    E.objects.push_back(FinSet(tuples[p].size()));
  }
  for (std::size_t p = 0; p < P; ++p)
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t v = grid_digit(p, i);
      if (v == 2) {
        std::size_t q = p - pow3(i);
        const auto& mem = dmembers[p];
        std::size_t k = static_cast<std::size_t>(std::find(mem.begin(), mem.end(), i) - mem.begin());
        for (int side = 0; side < 2; ++side) {
          std::vector<Elem> t;
          for (const auto& tp : tuples[p]) {
            std::vector<Elem> img;
            for (std::size_t w = 0; w < (std::size_t{1} << dmembers[q].size()); ++w) img.push_back(tp[insert_bit(w, k, side == 1)]);
            t.push_back(detail::tuple_index(tuples[q], img));
          }
          E.maps.emplace(std::make_tuple(p, i, side ? 'c' : 'd'), FinMap(E.objects[p], E.objects[q], std::move(t)));
        }
      } else if (v == 1) {
        std::size_t up = p + pow3(i), down = p - pow3(i);
        const auto& mem = dmembers[up];
        std::size_t k = static_cast<std::size_t>(std::find(mem.begin(), mem.end(), i) - mem.begin());
        std::vector<Elem> te;
        for (const auto& tp : tuples[p]) {
          std::vector<Elem> img;
          for (std::size_t m = 0; m < (std::size_t{1} << mem.size()); ++m) img.push_back(tp[remove_bit(m, k)]);
          te.push_back(detail::tuple_index(tuples[up], img));
        }
        E.maps.emplace(std::make_tuple(p, i, 'e'), FinMap(E.objects[p], E.objects[up], std::move(te)));
        const FinMap& g = F.edge(vertex_of(p), i);
        std::vector<Elem> tf;
        for (const auto& tp : tuples[p]) {
          std::vector<Elem> img;
          for (Elem x : tp) img.push_back(g(x));
          tf.push_back(detail::tuple_index(tuples[down], img));
        }
        E.maps.emplace(std::make_tuple(p, i, 'f'), FinMap(E.objects[p], E.objects[down], std::move(tf)));
      }
    }
  return E;
}

// Round trips along every line: the graph is Eq of the arrow, and the arrow is Coeq of the graph.
inline CheckReport fork_round_trips(const ForkSequence& E) {
  validate_sequence(E);
  json failures = json::array();
  std::size_t lines = 0;
  for (std::size_t i = 0; i < E.n; ++i)
    for (std::size_t p : grid_slice(E.n, i, 0)) {
      ++lines;
      Fork fk = grid_fork(E, p, i);
      // graph = Eq(f): ⟨d,c⟩ is a bijection onto the kernel pair
      EqRel K = kernel_pair(fk.f);
      BinaryRelation img = fk.graph.image();
      bool graph_is_eq = img == as_relation(K) && img.size() == fk.graph.edges.size();
      // f = Coeq(graph): f is surjective with fibres the classes generated by the graph
      FinMap q = coequaliser(fk.graph);
      bool arrow_is_coeq = is_surjective(fk.f) && kernel_pair(q) == K;
      if (!graph_is_eq || !arrow_is_coeq)
        failures.push_back(json{{"line", line_key(p, E.n, i)}, {"graph_is_eq", graph_is_eq}, {"arrow_is_coeq", arrow_is_coeq}});
    }
  std::vector<std::string> trace{std::to_string(lines) + " lines, " + std::to_string(failures.size()) + " failing a round trip"};
  CheckReport r = failures.empty() ? CheckReport::pass(trace) : CheckReport::fail(failures[0], trace);
  r.details["failures"] = failures;
  return r;
}

}  // namespace cubelab
