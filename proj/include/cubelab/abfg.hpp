#pragma once

// Finitely generated abelian groups as cokernels of integer matrices, and
// subgroups of ℤ^d as lattices in Hermite normal form.

#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "intmat.hpp"

namespace cubelab {

class IntLattice {
 public:
  IntLattice() = default;

  static IntLattice generated(std::size_t d, const IntMatrix& gens) {
    if (gens.rows() != d) throw InputError("lattice: generator length differs from ambient rank");
    IntLattice L;
    L.d_ = d;
    L.basis_ = hnf_basis(gens);
    return L;
  }
  static IntLattice generated(std::size_t d, const std::vector<std::vector<Int>>& gens) {
    return generated(d, IntMatrix::from_columns(d, gens));
  }
  static IntLattice zero(std::size_t d) { return generated(d, IntMatrix(d, 0)); }
  static IntLattice full(std::size_t d) { return generated(d, IntMatrix::identity(d)); }

  std::size_t ambient_rank() const { return d_; }
  std::size_t rank() const { return basis_.cols(); }
  const IntMatrix& basis() const { return basis_; }

  bool contains(const std::vector<Int>& v) const {
    if (v.size() != d_) throw InputError("lattice: vector length differs from ambient rank");
    return solve_hnf(basis_, v);
  }
  // Coordinates of v in the basis; throws if v ∉ L.
  std::vector<Int> coordinates(const std::vector<Int>& v) const {
    std::vector<Int> y;
    if (!solve_hnf(basis_, v, &y)) throw InputError("lattice: vector not in lattice");
    return y;
  }
  bool contains(const IntLattice& o) const {
    for (std::size_t j = 0; j < o.rank(); ++j)
      if (!contains(o.basis_.column(j))) return false;
    return true;
  }

  bool operator==(const IntLattice& o) const { return d_ == o.d_ && basis_ == o.basis_; }
  bool operator!=(const IntLattice& o) const { return !(*this == o); }

 private:
  std::size_t d_ = 0;
  IntMatrix basis_;
};

inline void require_same_rank(const IntLattice& a, const IntLattice& b) {
  if (a.ambient_rank() != b.ambient_rank()) throw InputError("lattices of different ambient rank");
}

inline IntLattice lattice_join(const IntLattice& a, const IntLattice& b) {
  require_same_rank(a, b);
  return IntLattice::generated(a.ambient_rank(), a.basis().hcat(b.basis()));
}

// {x : A·u = x = B·v}: solve A·u − B·v = 0.
inline IntLattice lattice_meet(const IntLattice& a, const IntLattice& b) {
  require_same_rank(a, b);
  IntMatrix K = kernel_basis(a.basis().hcat(-b.basis()));
  return IntLattice::generated(a.ambient_rank(), a.basis() * K.slice_rows(0, a.rank()));
}

inline IntLattice meet(const IntLattice& a, const IntLattice& b) { return lattice_meet(a, b); }
inline IntLattice join(const IntLattice& a, const IntLattice& b) { return lattice_join(a, b); }

// ℤ^rows / im(presentation).
class FgAbGroup {
 public:
  FgAbGroup() = default;
  explicit FgAbGroup(IntMatrix presentation)
      : pres_(std::move(presentation)), rel_(IntLattice::generated(pres_.rows(), pres_)) {
    SnfResult s = snf(pres_);
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < std::min(s.D.rows(), s.D.cols()); ++i)
      if (s.D(i, i) != 0) {
        ++nonzero;
        if (s.D(i, i) != 1) inv_.push_back(s.D(i, i));
      }
    for (std::size_t i = nonzero; i < pres_.rows(); ++i) inv_.push_back(0);
  }
  static FgAbGroup free(std::size_t r) { return FgAbGroup(IntMatrix(r, 0)); }

  const IntMatrix& presentation() const { return pres_; }
  std::size_t generators() const { return pres_.rows(); }
  const IntLattice& relations() const { return rel_; }
  // Divisibility chain without units; zeros (free rank) trail.
  const std::vector<Int>& invariant_factors() const { return inv_; }
  bool is_trivial() const { return inv_.empty(); }
  // Order, or 0 if infinite.
  Int order() const {
    Int n = 1;
    for (const Int& d : inv_) n *= d;
    return n;
  }

  bool isomorphic(const FgAbGroup& o) const { return inv_ == o.inv_; }
  // Same presentation; the identity matrix is then a hom between them.
  bool same_presentation(const FgAbGroup& o) const { return generators() == o.generators() && rel_ == o.rel_; }

 private:
  IntMatrix pres_;
  IntLattice rel_;
  std::vector<Int> inv_;
};

class FgAbHom {
 public:
  FgAbHom() = default;
  FgAbHom(FgAbGroup dom, FgAbGroup cod, IntMatrix m) : dom_(std::move(dom)), cod_(std::move(cod)), m_(std::move(m)) {
    if (m_.rows() != cod_.generators() || m_.cols() != dom_.generators())
      throw InputError("hom: matrix shape does not match generators");
    IntMatrix img = m_ * dom_.presentation();
    for (std::size_t j = 0; j < img.cols(); ++j)
      if (!cod_.relations().contains(img.column(j))) throw InputError("hom: relations not respected (ill-defined)");
  }
  const FgAbGroup& dom() const { return dom_; }
  const FgAbGroup& cod() const { return cod_; }
  const IntMatrix& matrix() const { return m_; }

 private:
  FgAbGroup dom_, cod_;
  IntMatrix m_;
};

inline FgAbHom identity_hom(const FgAbGroup& a) { return FgAbHom(a, a, IntMatrix::identity(a.generators())); }

// g ∘ f
inline FgAbHom compose(const FgAbHom& g, const FgAbHom& f) {
  if (f.cod().generators() != g.dom().generators()) throw InputError("compose: codomain/domain mismatch");
  return FgAbHom(f.dom(), g.cod(), g.matrix() * f.matrix());
}

// Generator-wise equality modulo codomain relations.
inline bool hom_equal(const FgAbHom& f, const FgAbHom& g) {
  if (f.matrix().rows() != g.matrix().rows() || f.matrix().cols() != g.matrix().cols()) return false;
  IntMatrix diff = f.matrix() + (-g.matrix());
  for (std::size_t j = 0; j < diff.cols(); ++j)
    if (!f.cod().relations().contains(diff.column(j))) return false;
  return true;
}

// im f + relations, inside ℤ^{cod generators}.
inline IntLattice image_lattice(const FgAbHom& f) {
  return IntLattice::generated(f.cod().generators(), f.matrix().hcat(f.cod().presentation()));
}

// {x : f(x) = 0} inside ℤ^{dom generators}; contains the domain relations.
inline IntLattice kernel_lattice(const FgAbHom& f) {
  std::size_t r = f.dom().generators();
  IntMatrix K = kernel_basis(f.matrix().hcat(f.cod().presentation()));
  return IntLattice::generated(r, K.slice_rows(0, r).hcat(f.dom().presentation()));
}

inline bool is_surjective_ab(const FgAbHom& f) { return image_lattice(f) == IntLattice::full(f.cod().generators()); }
inline bool is_injective_ab(const FgAbHom& f) { return kernel_lattice(f) == f.dom().relations(); }
inline bool is_surjective(const FgAbHom& f) { return is_surjective_ab(f); }
inline bool is_injective(const FgAbHom& f) { return is_injective_ab(f); }

// Index of a codomain generator outside the image, if any.
inline std::optional<std::size_t> unreached_generator(const FgAbHom& f) {
  IntLattice img = image_lattice(f);
  std::size_t r = f.cod().generators();
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<Int> e(r, 0);
    e[i] = 1;
    if (!img.contains(e)) return i;
  }
  return std::nullopt;
}

// Group on the basis of a lattice L ⊇ rel(A), with its inclusion into A.
inline std::pair<FgAbGroup, FgAbHom> sublattice_object(const FgAbGroup& A, const IntLattice& L) {
  const IntMatrix& B = L.basis();
  std::vector<std::vector<Int>> cols;
  for (std::size_t j = 0; j < A.presentation().cols(); ++j) cols.push_back(L.coordinates(A.presentation().column(j)));
  FgAbGroup K(IntMatrix::from_columns(B.cols(), cols));
  return {K, FgAbHom(K, A, B)};
}

inline std::pair<FgAbGroup, FgAbHom> hom_kernel(const FgAbHom& f) { return sublattice_object(f.dom(), kernel_lattice(f)); }

inline std::pair<FgAbGroup, FgAbHom> hom_cokernel(const FgAbHom& f) {
  FgAbGroup Q(f.cod().presentation().hcat(f.matrix()));
  return {Q, FgAbHom(f.cod(), Q, IntMatrix::identity(f.cod().generators()))};
}

inline FgAbGroup direct_sum(const FgAbGroup& a, const FgAbGroup& b) {
  return FgAbGroup(IntMatrix::block_diag(a.presentation(), b.presentation()));
}

struct AbPullback {
  FgAbGroup object;
  FgAbHom p1, p2;
  IntLattice carrier;  // the pullback as a lattice in ℤ^{rA + rB}
};

inline AbPullback pullback_ab(const FgAbHom& f, const FgAbHom& g) {
  if (!f.cod().same_presentation(g.cod())) throw InputError("pullback: codomain mismatch");
  FgAbGroup S = direct_sum(f.dom(), g.dom());
  FgAbHom diff(S, f.cod(), f.matrix().hcat(-g.matrix()));
  IntLattice L = kernel_lattice(diff);
  auto [P, incl] = sublattice_object(S, L);
  std::size_t ra = f.dom().generators(), rb = g.dom().generators();
  const IntMatrix& B = L.basis();
  return AbPullback{P, FgAbHom(P, f.dom(), B.slice_rows(0, ra)), FgAbHom(P, g.dom(), B.slice_rows(ra, ra + rb)), L};
}

inline FgAbHom lift(const AbPullback& pb, const FgAbHom& h, const FgAbHom& k) {
  if (h.dom().generators() != k.dom().generators()) throw InputError("lift: domain mismatch");
  IntMatrix stacked = h.matrix().vcat(k.matrix());
  std::vector<std::vector<Int>> cols;
  for (std::size_t j = 0; j < stacked.cols(); ++j) {
    std::vector<Int> y;
    if (!solve_hnf(pb.carrier.basis(), stacked.column(j), &y)) throw InputError("lift: cone does not commute");
    cols.push_back(std::move(y));
  }
  return FgAbHom(h.dom(), pb.object, IntMatrix::from_columns(pb.object.generators(), cols));
}

struct AbPushout {
  FgAbGroup object;
  FgAbHom i1, i2;
};

// Pushout of the span B <-f- A -g-> C: (B ⊕ C) / im(f, −g).
inline AbPushout pushout_ab(const FgAbHom& f, const FgAbHom& g) {
  if (!f.dom().same_presentation(g.dom())) throw InputError("pushout: domain mismatch");
  std::size_t rb = f.cod().generators(), rc = g.cod().generators();
  IntMatrix rel = IntMatrix::block_diag(f.cod().presentation(), g.cod().presentation()).hcat(f.matrix().vcat(-g.matrix()));
  FgAbGroup Q(rel);
  IntMatrix I = IntMatrix::identity(rb + rc);
  return AbPushout{Q, FgAbHom(f.cod(), Q, I.slice_cols(0, rb)), FgAbHom(g.cod(), Q, I.slice_cols(rb, rb + rc))};
}

inline FgAbHom colift(const AbPushout& po, const FgAbHom& u, const FgAbHom& v) {
  if (u.cod().generators() != v.cod().generators()) throw InputError("colift: codomain mismatch");
  return FgAbHom(po.object, u.cod(), u.matrix().hcat(v.matrix()));
}

// ---- ℤ[a] with 1 + a + a² = 0 ---------------------------------------------

inline std::map<std::string, std::vector<Int>> complexes_embedding() {
  return {{"1", {1, 0}}, {"a", {0, 1}}, {"a^2", {-1, -1}}};
}

// Parses sums such as "2a", "-a^2", "1+a+a^2", "6a^2".
inline std::vector<Int> complexes_vector(const std::string& text) {
  auto emb = complexes_embedding();
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw InputError("empty ℤ[a] expression");
  std::vector<Int> out{0, 0};
  std::size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    }
    std::size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    bool digits = j > i;
    Int coef = digits ? Int(s.substr(i, j - i)) : Int(1);
    i = j;
    bool star = i < s.size() && s[i] == '*';
    if (star) ++i;
    std::string sym = "1";
    if (i < s.size() && s[i] == 'a') {
      sym = "a";
      ++i;
      if (i + 1 < s.size() && s[i] == '^' && s[i + 1] == '2') {
        sym = "a^2";
        i += 2;
      }
    } else if (!digits || star) {
      throw InputError("malformed ℤ[a] expression: " + text);
    }
    if (i < s.size() && s[i] != '+' && s[i] != '-') throw InputError("malformed ℤ[a] expression: " + text);
    const auto& v = emb.at(sym);
    out[0] += sign * coef * v[0];
    out[1] += sign * coef * v[1];
  }
  return out;
}

inline IntLattice complexes_subgroup(const std::vector<std::string>& gens) {
  std::vector<std::vector<Int>> cols;
  for (const auto& g : gens) cols.push_back(complexes_vector(g));
  return IntLattice::generated(2, cols);
}

}  // namespace cubelab
