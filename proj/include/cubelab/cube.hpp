#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "cubelab/env.hpp"

namespace cubelab {

// Vertex v of {0,1}^n is a bitmask; bit i set means the upper end in direction i.
// Edge (v, i) with bit i of v set goes from v to v with bit i cleared.

inline std::size_t remove_bit(std::size_t v, std::size_t d) {
  std::size_t low = v & ((std::size_t{1} << d) - 1);
  return low | ((v >> (d + 1)) << d);
}

inline std::size_t insert_bit(std::size_t w, std::size_t d, bool b) {
  std::size_t low = w & ((std::size_t{1} << d) - 1);
  return low | (std::size_t{b} << d) | ((w >> d) << (d + 1));
}

inline std::string vertex_key(std::size_t v, std::size_t n) {
  std::string s(n, '0');
  for (std::size_t i = 0; i < n; ++i)
    if (v >> i & 1) s[i] = '1';
  return s;
}

inline std::size_t parse_vertex_key(const std::string& s) {
  std::size_t v = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1') v |= std::size_t{1} << i;
    else if (s[i] != '0') throw InputError("bad vertex key '" + s + "'");
  }
  return v;
}

template <class E>
class NCube {
 public:
  using Env = E;
  using Obj = typename E::Obj;
  using Mor = typename E::Mor;

  NCube(std::size_t n, std::vector<Obj> objects, std::vector<std::optional<Mor>> edges)
      : n_(n), objs_(std::move(objects)), edges_(std::move(edges)) {
    validate();
  }

  static NCube point(Obj x) { return NCube(0, {std::move(x)}, {}); }
  static NCube arrow(const Mor& f) { return NCube(1, {E::cod(f), E::dom(f)}, {std::nullopt, f}); }

  std::size_t dim() const { return n_; }
  std::size_t vertices() const { return std::size_t{1} << n_; }
  std::size_t top() const { return vertices() - 1; }
  const Obj& obj(std::size_t v) const { return objs_.at(v); }
  const Mor& edge(std::size_t v, std::size_t i) const {
    if (i >= n_ || !(v >> i & 1)) throw InputError("no edge in direction " + std::to_string(i) + " at this vertex");
    return *edges_[v * n_ + i];
  }

  NCube face(std::size_t dir, bool bit) const {
    if (dir >= n_) throw InputError("face: direction out of range");
    std::size_t m = n_ - 1;
    std::vector<Obj> objs;
    std::vector<std::optional<Mor>> es((std::size_t{1} << m) * m);
    for (std::size_t w = 0; w < (std::size_t{1} << m); ++w) {
      std::size_t v = insert_bit(w, dir, bit);
      objs.push_back(objs_[v]);
      for (std::size_t i = 0; i < m; ++i)
        if (w >> i & 1) es[w * m + i] = edge(v, i < dir ? i : i + 1);
    }
    return NCube(m, std::move(objs), std::move(es));
  }

  // Direction k of the result is direction perm[k] of this cube.
  NCube permuted(const std::vector<std::size_t>& perm) const {
    if (perm.size() != n_) throw InputError("permutation has wrong length");
    std::vector<std::size_t> check = perm;
    std::sort(check.begin(), check.end());
    for (std::size_t i = 0; i < n_; ++i)
      if (check[i] != i) throw InputError("not a permutation");
    std::vector<Obj> objs;
    std::vector<std::optional<Mor>> es(vertices() * n_);
    for (std::size_t w = 0; w < vertices(); ++w) {
      std::size_t v = 0;
      for (std::size_t k = 0; k < n_; ++k)
        if (w >> k & 1) v |= std::size_t{1} << perm[k];
      objs.push_back(objs_[v]);
      for (std::size_t k = 0; k < n_; ++k)
        if (w >> k & 1) es[w * n_ + k] = edge(v, perm[k]);
    }
    return NCube(n_, std::move(objs), std::move(es));
  }

  // The arrow dom → cod of k-cubes as a (k+1)-cube; it runs in direction dir.
  static NCube from_arrow(const NCube& dom, const NCube& cod, const std::vector<Mor>& comps, std::size_t dir) {
    if (dom.dim() != cod.dim() || comps.size() != dom.vertices() || dir > dom.dim())
      throw InputError("from_arrow: shape mismatch");
    std::size_t n = dom.dim() + 1;
    std::vector<Obj> objs;
    std::vector<std::optional<Mor>> es((std::size_t{1} << n) * n);
    for (std::size_t v = 0; v < (std::size_t{1} << n); ++v) {
      bool up = v >> dir & 1;
      std::size_t w = remove_bit(v, dir);
      const NCube& side = up ? dom : cod;
      objs.push_back(side.obj(w));
      for (std::size_t i = 0; i < n; ++i) {
        if (!(v >> i & 1)) continue;
        if (i == dir) es[v * n + i] = comps[w];
        else es[v * n + i] = side.edge(w, i < dir ? i : i - 1);
      }
    }
    return NCube(n, std::move(objs), std::move(es));
  }

  // Composite from the top vertex down to v, clearing bits in increasing order.
  Mor from_top(std::size_t v) const {
    Mor m = E::identity(objs_[top()]);
    std::size_t cur = top();
    for (std::size_t i = 0; i < n_; ++i)
      if ((cur >> i & 1) && !(v >> i & 1)) {
        m = E::compose(edge(cur, i), m);
        cur &= ~(std::size_t{1} << i);
      }
    return m;
  }

 private:
  void validate() const {
    if (n_ > 8) throw InputError("cube dimension too large");
    if (objs_.size() != vertices() || edges_.size() != vertices() * n_) throw InputError("malformed cube: wrong number of vertices or edges");
    for (std::size_t v = 0; v < vertices(); ++v)
      for (std::size_t i = 0; i < n_; ++i) {
        const auto& e = edges_[v * n_ + i];
        if (!(v >> i & 1)) {
          if (e) throw InputError("malformed cube: edge leaving a lower vertex");
          continue;
        }
        if (!e) throw InputError("malformed cube: missing edge at " + vertex_key(v, n_) + " direction " + std::to_string(i));
        std::size_t u = v & ~(std::size_t{1} << i);
        if (!E::same(E::dom(*e), objs_[v]) || !E::same(E::cod(*e), objs_[u]))
          throw InputError("malformed cube: edge at " + vertex_key(v, n_) + " direction " + std::to_string(i) + " has the wrong ends");
      }
    for (std::size_t v = 0; v < vertices(); ++v)
      for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j) {
          if (!(v >> i & 1) || !(v >> j & 1)) continue;
          std::size_t vi = v & ~(std::size_t{1} << i), vj = v & ~(std::size_t{1} << j);
          if (!E::equal(E::compose(edge(vi, j), edge(v, i)), E::compose(edge(vj, i), edge(v, j))))
            throw InputError("malformed cube: face at " + vertex_key(v, n_) + " directions " + std::to_string(i) + "," +
                             std::to_string(j) + " does not commute");
        }
  }

  std::size_t n_ = 0;
  std::vector<Obj> objs_;
  std::vector<std::optional<Mor>> edges_;
};

// ---- extensions ------------------------------------------------------------

namespace detail {

inline std::vector<std::size_t> drop_direction(const std::vector<std::size_t>& order, std::size_t d) {
  std::vector<std::size_t> out;
  for (std::size_t t : order)
    if (t != d) out.push_back(t > d ? t - 1 : t);
  return out;
}

// The comparison A1 → A0 ×_{B0} B1 of F seen as a square of (n-2)-cubes, with
// arrow direction d and square direction s. Directions are those of F without s.
template <class E>
NCube<E> comparison_cube(const NCube<E>& F, std::size_t d, std::size_t s) {
  using Mor = typename E::Mor;
  using Obj = typename E::Obj;
  std::size_t n = F.dim(), m = n - 1;
  std::size_t dd = d > s ? d - 1 : d;
  auto at = [&](std::size_t u, bool bs) { return insert_bit(u, s, bs); };
  auto fdir = [&](std::size_t r) { return r >= s ? r + 1 : r; };
  std::size_t N = std::size_t{1} << m;
  std::vector<std::optional<typename E::Pullback>> pbs(N);
  for (std::size_t u = 0; u < N; ++u) {
    if (u >> dd & 1) continue;
    std::size_t ud = u | (std::size_t{1} << dd);
    pbs[u] = E::pullback(F.edge(at(ud, false), d), F.edge(at(u, true), s));
  }
  std::vector<Obj> objs;
  std::vector<std::optional<Mor>> es(N * m);
  for (std::size_t u = 0; u < N; ++u) {
    bool upper = u >> dd & 1;
    objs.push_back(upper ? F.obj(at(u, true)) : pbs[u]->object);
    for (std::size_t r = 0; r < m; ++r) {
      if (!(u >> r & 1)) continue;
      std::size_t ur = u & ~(std::size_t{1} << r);
      if (r == dd) {
        es[u * m + r] = E::lift(*pbs[ur], F.edge(at(u, true), s), F.edge(at(u, true), d));
      } else if (upper) {
        es[u * m + r] = F.edge(at(u, true), fdir(r));
      } else {
        std::size_t ud = u | (std::size_t{1} << dd);
        const auto& pb = *pbs[u];
        es[u * m + r] = E::lift(*pbs[ur], E::compose(F.edge(at(ud, false), fdir(r)), pb.p1),
                                E::compose(F.edge(at(u, true), fdir(r)), pb.p2));
      }
    }
  }
  return NCube<E>(m, std::move(objs), std::move(es));
}

template <class E>
bool extension_rec(const NCube<E>& F, const std::vector<std::size_t>& order, const std::string& path,
                   std::vector<std::string>& trace, json& witness) {
  std::size_t n = F.dim();
  if (n == 0) return true;
  if (n == 1) {
    bool ok = E::surjective(F.edge(1, 0));
    trace.push_back(path + ": arrow " + (ok ? "surjective" : "not surjective"));
    if (!ok) witness = json{{"path", path}, {"kind", "arrow not surjective"}, {"unreached", E::unreached(F.edge(1, 0))}};
    return ok;
  }
  std::size_t d = order[n - 1], s = order[n - 2];
  auto od = drop_direction(order, d), os = drop_direction(order, s);
  std::string sd = std::to_string(d), ss = std::to_string(s);
  struct Part {
    std::string name;
    std::function<NCube<E>()> make;
    const std::vector<std::size_t>* sub;
  };
  std::vector<Part> parts = {
      {"a(" + sd + "=1)", [&] { return F.face(d, true); }, &od},
      {"b(" + sd + "=0)", [&] { return F.face(d, false); }, &od},
      {"f1(" + ss + "=1)", [&] { return F.face(s, true); }, &os},
      {"f0(" + ss + "=0)", [&] { return F.face(s, false); }, &os},
      {"comparison(" + sd + "," + ss + ")", [&] { return comparison_cube(F, d, s); }, &os},
  };
  for (const auto& p : parts) {
    std::string sub = path + "/" + p.name;
    if (!extension_rec(p.make(), *p.sub, sub, trace, witness)) {
      trace.push_back(path + ": " + p.name + " is not an extension");
      return false;
    }
  }
  trace.push_back(path + ": " + std::to_string(n) + "-cubic extension");
  return true;
}

}  // namespace detail

// Verdict for a fixed order of directions: the last entry is the arrow direction.
template <class E>
CheckReport extension_for_order(const NCube<E>& F, std::vector<std::size_t> order) {
  std::size_t n = F.dim();
  if (order.empty() && n > 0) {
    order.resize(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
  }
  if (order.size() != n) throw InputError("direction order has wrong length");
  std::vector<std::string> trace;
  json witness;
  bool ok = detail::extension_rec(F, order, "F", trace, witness);
  CheckReport r = ok ? CheckReport::pass(std::move(trace)) : CheckReport::fail(witness, std::move(trace));
  r.details["order"] = order;
  return r;
}

struct ExtensionOptions {
  bool check_symmetry = true;  // rerun with each direction as the arrow direction
};

template <class E>
CheckReport is_n_cubic_extension(const NCube<E>& F, ExtensionOptions opt = {}) {
  std::size_t n = F.dim();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  CheckReport r = extension_for_order(F, order);
  r.details["n"] = n;
  if (opt.check_symmetry && n >= 2) {
    json runs = json::array();
    bool symmetric = true;
    for (std::size_t k = 1; k < n; ++k) {
      std::vector<std::size_t> o(order);
      std::rotate(o.begin(), o.begin() + static_cast<std::ptrdiff_t>(k), o.end());
      bool v = extension_for_order(F, o).verdict;
      runs.push_back(json{{"order", o}, {"verdict", v}});
      symmetric = symmetric && v == r.verdict;
    }
    r.details["other_orders"] = runs;
    r.details["symmetric"] = symmetric;
    if (!symmetric) r.note("DEFECT: verdict depends on the order of directions");
  }
  return r;
}

template <class E>
CheckReport is_n_fold_regular_epi(const NCube<E>& F) {
  std::size_t n = F.dim();
  std::vector<std::string> trace;
  for (std::size_t v = 0; v < F.vertices(); ++v)
    for (std::size_t i = 0; i < n; ++i)
      if ((v >> i & 1) && !E::surjective(F.edge(v, i))) {
        trace.push_back("edge at " + vertex_key(v, n) + " direction " + std::to_string(i) + " not surjective");
        return CheckReport::fail(json{{"kind", "edge not surjective"},
                                      {"vertex", vertex_key(v, n)},
                                      {"direction", i},
                                      {"unreached", E::unreached(F.edge(v, i))}},
                                 std::move(trace));
      }
  trace.push_back("all edges surjective");
  for (std::size_t v = 0; v < F.vertices(); ++v)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!(v >> i & 1) || !(v >> j & 1)) continue;
        std::size_t vi = v & ~(std::size_t{1} << i), vj = v & ~(std::size_t{1} << j);
        auto po = E::pushout(F.edge(v, i), F.edge(v, j));
        auto c = E::colift(po, F.edge(vi, j), F.edge(vj, i));
        if (!E::injective(c) || !E::surjective(c)) {
          trace.push_back("face " + vertex_key(v, n) + " (" + std::to_string(i) + "," + std::to_string(j) + ") is not a pushout");
          return CheckReport::fail(json{{"kind", "face not a pushout"}, {"vertex", vertex_key(v, n)}, {"directions", {i, j}}},
                                   std::move(trace));
        }
      }
  trace.push_back("all faces are pushouts");
  return CheckReport::pass(std::move(trace));
}

// ---- kernel pairs ----------------------------------------------------------

template <class E>
struct KernelPairCube {
  NCube<E> cube;                                // directions of F without dir
  std::vector<typename E::Pullback> pullbacks;  // per vertex of cube
};

template <class E>
KernelPairCube<E> kernel_pair_cube(const NCube<E>& F, std::size_t dir, bool require_surjective = true) {
  using Mor = typename E::Mor;
  if (dir >= F.dim()) throw InputError("kernel pair: direction out of range");
  std::size_t m = F.dim() - 1, N = std::size_t{1} << m;
  std::vector<typename E::Pullback> pbs;
  for (std::size_t w = 0; w < N; ++w) {
    const Mor& f = F.edge(insert_bit(w, dir, true), dir);
    if (require_surjective && !E::surjective(f)) throw InputError("kernel pair cube: rib is not surjective");
    pbs.push_back(E::pullback(f, f));
  }
  std::vector<typename E::Obj> objs;
  std::vector<std::optional<Mor>> es(N * m);
  for (std::size_t w = 0; w < N; ++w) {
    objs.push_back(pbs[w].object);
    for (std::size_t r = 0; r < m; ++r) {
      if (!(w >> r & 1)) continue;
      std::size_t wr = w & ~(std::size_t{1} << r);
      const Mor& a = F.edge(insert_bit(w, dir, true), r < dir ? r : r + 1);
      es[w * m + r] = E::lift(pbs[wr], E::compose(a, pbs[w].p1), E::compose(a, pbs[w].p2));
    }
  }
  return {NCube<E>(m, std::move(objs), std::move(es)), std::move(pbs)};
}

// Iterated kernel pairs in every direction: an object with 2^n projections to
// the top object of F. Projection m picks, in direction i, the second leg iff bit i of m.
// Only the edges of F need be surjective; later stages are plain limits.
template <class E>
struct EqTower {
  typename E::Obj object;
  std::vector<typename E::Mor> projections;
};

template <class E>
EqTower<E> eq_n(const NCube<E>& F) {
  std::size_t n = F.dim();
  for (std::size_t v = 0; v < F.vertices(); ++v)
    for (std::size_t i = 0; i < n; ++i)
      if ((v >> i & 1) && !E::surjective(F.edge(v, i))) throw InputError("eq_n: edge is not surjective");
  std::vector<std::optional<typename E::Mor>> proj(std::size_t{1} << n);
  proj[0] = E::identity(F.obj(F.top()));
  NCube<E> cur = F;
  std::size_t filled = 1;
  for (std::size_t k = n; k-- > 0;) {
    auto kp = kernel_pair_cube(cur, k, false);
    const auto& pb = kp.pullbacks.back();  // top vertex
    for (std::size_t m = 0; m < filled; ++m) {
      std::size_t mask = m << (k + 1);
      proj[mask | (std::size_t{1} << k)] = E::compose(*proj[mask], pb.p2);
      proj[mask] = E::compose(*proj[mask], pb.p1);
    }
    filled *= 2;
    cur = kp.cube;
  }
  EqTower<E> out{cur.obj(0), {}};
  for (auto& p : proj) out.projections.push_back(*p);
  return out;
}

// Cubes under a common top object whose vertices agree up to the canonical comparison.
template <class E>
bool canonically_isomorphic(const NCube<E>& F, const NCube<E>& G) {
  if (F.dim() != G.dim() || !E::same(F.obj(F.top()), G.obj(G.top()))) return false;
  for (std::size_t v = 0; v < F.vertices(); ++v) {
    typename E::Mor m = E::factor(F.from_top(v), G.from_top(v));
    if (!E::injective(m) || !E::surjective(m)) return false;
  }
  return true;
}

}  // namespace cubelab
