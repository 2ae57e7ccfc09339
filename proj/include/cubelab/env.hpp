#pragma once

#include <string>

#include "cubelab/abfg.hpp"
#include "cubelab/relcore.hpp"

namespace cubelab {

// Object/morphism operations the cube machinery needs from an ambient category.
// Group cubes use SetEnv: pullbacks and surjections of groups are those of the
// underlying sets, and pushouts of surjective spans agree too.

struct SetEnv {
  using Obj = FinSet;
  using Mor = FinMap;
  using Pullback = SetPullback;
  using Pushout = SetPushout;
  static constexpr bool finite = true;

  static const Obj& dom(const Mor& f) { return f.dom(); }
  static const Obj& cod(const Mor& f) { return f.cod(); }
  static Mor compose(const Mor& g, const Mor& f) { return cubelab::compose(g, f); }
  static Mor identity(const Obj& x) { return identity_map(x); }
  static bool equal(const Mor& f, const Mor& g) { return f.table() == g.table() && same(f.cod(), g.cod()); }
  static bool same(const Obj& a, const Obj& b) { return a.size() == b.size(); }
  static bool surjective(const Mor& f) { return is_surjective(f); }
  static bool injective(const Mor& f) { return is_injective(f); }
  static Pullback pullback(const Mor& f, const Mor& g) { return cubelab::pullback(f, g); }
  static Mor lift(const Pullback& pb, const Mor& h, const Mor& k) { return cubelab::lift(pb, h, k); }
  static Pushout pushout(const Mor& f, const Mor& g) { return cubelab::pushout(f, g); }
  static Mor colift(const Pushout& po, const Mor& u, const Mor& v) { return cubelab::colift(po, u, v); }

  // The unique m with m∘p = h, for surjective p.
  static Mor factor(const Mor& p, const Mor& h) {
    if (p.dom().size() != h.dom().size()) throw InputError("factor: domain mismatch");
    std::vector<Elem> t(p.cod().size(), ~Elem{0});
    for (Elem x = 0; x < p.dom().size(); ++x) {
      Elem& slot = t[p(x)];
      if (slot == ~Elem{0}) slot = h(x);
      else if (slot != h(x)) throw InputError("factor: map is not constant on fibres");
    }
    for (Elem y : t)
      if (y == ~Elem{0}) throw InputError("factor: first map is not surjective");
    return FinMap(p.cod(), h.cod(), std::move(t));
  }

  static json unreached(const Mor& f) { return json{{"element", first_unreached(f)}}; }
  static std::string describe(const Obj& x) { return "set of size " + std::to_string(x.size()); }
};

struct AbEnv {
  using Obj = FgAbGroup;
  using Mor = FgAbHom;
  using Pullback = AbPullback;
  using Pushout = AbPushout;
  static constexpr bool finite = false;

  static const Obj& dom(const Mor& f) { return f.dom(); }
  static const Obj& cod(const Mor& f) { return f.cod(); }
  static Mor compose(const Mor& g, const Mor& f) { return cubelab::compose(g, f); }
  static Mor identity(const Obj& x) { return identity_hom(x); }
  static bool equal(const Mor& f, const Mor& g) { return hom_equal(f, g); }
  static bool same(const Obj& a, const Obj& b) { return a.same_presentation(b); }
  static bool surjective(const Mor& f) { return is_surjective_ab(f); }
  static bool injective(const Mor& f) { return is_injective_ab(f); }
  static Pullback pullback(const Mor& f, const Mor& g) { return pullback_ab(f, g); }
  static Mor lift(const Pullback& pb, const Mor& h, const Mor& k) { return cubelab::lift(pb, h, k); }
  static Pushout pushout(const Mor& f, const Mor& g) { return pushout_ab(f, g); }
  static Mor colift(const Pushout& po, const Mor& u, const Mor& v) { return cubelab::colift(po, u, v); }

  static Mor factor(const Mor& p, const Mor& h) {
    if (!p.dom().same_presentation(h.dom())) throw InputError("factor: domain mismatch");
    // preimages of the codomain generators of p, modulo its relations
    const IntMatrix& rel = p.cod().presentation();
    IntMatrix span = p.matrix().hcat(rel);
    HnfResult hr = hnf(span);
    IntMatrix B = hr.H.slice_cols(0, hr.rank);
    std::size_t r = p.cod().generators(), g = p.dom().generators();
    std::vector<std::vector<Int>> cols;
    for (std::size_t j = 0; j < r; ++j) {
      std::vector<Int> e(r, 0), y;
      e[j] = 1;
      if (!solve_hnf(B, e, &y)) throw InputError("factor: first map is not surjective");
      // y are coordinates in B = span·U restricted to the leading rank columns
      std::vector<Int> full(span.cols(), 0);
      for (std::size_t k = 0; k < y.size(); ++k)
        for (std::size_t i = 0; i < span.cols(); ++i) full[i] += hr.U(i, k) * y[k];
      std::vector<Int> pre(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(g));
      cols.push_back(h.matrix() * pre);
    }
    Mor m(p.cod(), h.cod(), IntMatrix::from_columns(h.cod().generators(), cols));
    if (!hom_equal(compose(m, p), h)) throw InputError("factor: map does not factor");
    return m;
  }

  static json unreached(const Mor& f) {
    auto g = unreached_generator(f);
    return json{{"generator", g ? json(*g) : json()}};
  }
  static std::string describe(const Obj& x) {
    std::string s = "fgab [";
    for (std::size_t i = 0; i < x.invariant_factors().size(); ++i)
      s += (i ? "," : "") + x.invariant_factors()[i].get_str();
    return s + "]";
  }
};

}  // namespace cubelab
