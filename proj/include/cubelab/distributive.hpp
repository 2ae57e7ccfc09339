#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "cubelab/abfg.hpp"
#include "cubelab/grpalg.hpp"
#include "cubelab/relcore.hpp"

namespace cubelab {

// J_0, ..., J_k: pairwise disjoint nonempty subsets of {0..n-1}, k >= 1, as bitmasks.
struct DistributivityFamily {
  std::vector<unsigned> blocks;

  void validate(std::size_t n) const {
    if (blocks.size() < 2) throw InputError("family needs at least J_0 and J_1");
    unsigned seen = 0;
    for (unsigned b : blocks) {
      if (b == 0) throw InputError("family block is empty");
      if (b >> n) throw InputError("family block out of range");
      if (seen & b) throw InputError("family blocks overlap");
      seen |= b;
    }
  }
};

inline std::vector<std::size_t> mask_members(unsigned m) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; m >> i; ++i)
    if (m >> i & 1) out.push_back(i);
  return out;
}

inline json to_json_family(const DistributivityFamily& f) {
  json j = json::array();
  for (unsigned b : f.blocks) j.push_back(mask_members(b));
  return j;
}

// Every family in a fixed order: J_0 by mask, then the union of J_1..J_k by
// mask, then set partitions of that union in restricted-growth order.
template <class Fn>
void for_each_family(std::size_t n, Fn&& fn) {
  unsigned full = (1u << n) - 1;
  for (unsigned j0 = 1; j0 <= full; ++j0) {
    unsigned rest = full & ~j0;
    std::vector<unsigned> subsets;
    for (unsigned u = 1; u <= rest; ++u)
      if ((u & rest) == u) subsets.push_back(u);
    for (unsigned u : subsets) {
      auto members = mask_members(u);
      for_each_partition(members.size(), [&](const EqRel& p) {
        DistributivityFamily fam;
        fam.blocks.push_back(j0);
        std::vector<unsigned> bl(p.num_classes(), 0);
        for (std::size_t t = 0; t < members.size(); ++t) bl[p.class_of(static_cast<Elem>(t))] |= 1u << members[t];
        fam.blocks.insert(fam.blocks.end(), bl.begin(), bl.end());
        fn(fam);
      });
    }
  }
}

inline json describe(const EqRel& r) { return r.blocks(); }
inline json describe(const NormalSubgroup& k) { return k.elements(); }
inline json describe(const IntLattice& l) {
  json cols = json::array();
  for (const auto& c : l.basis().columns()) {
    json v = json::array();
    for (const auto& x : c) v.push_back(x.get_str());
    cols.push_back(v);
  }
  return cols;
}

// Meets over every nonempty index set, indexed by bitmask.
template <class L>
std::vector<L> all_meets(const std::vector<L>& rels) {
  std::size_t n = rels.size();
  std::vector<L> out;
  out.reserve(std::size_t{1} << n);
  if (rels.empty()) throw InputError("no relations");
  out.push_back(rels[0]);  // placeholder at mask 0
  for (unsigned m = 1; m < (1u << n); ++m) {
    unsigned low = m & (~m + 1);
    std::size_t i = static_cast<std::size_t>(__builtin_ctz(low));
    unsigned rest = m & ~low;
    out.push_back(rest ? meet(out[rest], rels[i]) : rels[i]);
  }
  return out;
}

// (⋀_{J_0}R) ∧ ⋁_i ⋀_{J_i}R  =  ⋁_i ⋀_{J_0 ∪ J_i}R  over all families.
// The report carries the first failing family; details list all failures.
template <class L>
CheckReport check_distributive(const std::vector<L>& rels) {
  std::size_t n = rels.size();
  if (n == 0) throw InputError("check_distributive: no relations");
  if (n > 8) throw InputError("check_distributive: too many relations");
  auto M = all_meets(rels);
  json failures = json::array();
  std::size_t checked = 0;
  for_each_family(n, [&](const DistributivityFamily& f) {
    ++checked;
    std::optional<L> lj, rj;
    for (std::size_t i = 1; i < f.blocks.size(); ++i) {
      const L& a = M[f.blocks[i]];
      const L& b = M[f.blocks[i] | f.blocks[0]];
      lj = lj ? join(*lj, a) : a;
      rj = rj ? join(*rj, b) : b;
    }
    L left = meet(M[f.blocks[0]], *lj);
    if (!(left == *rj)) failures.push_back(json{{"family", to_json_family(f)}, {"left", describe(left)}, {"right", describe(*rj)}});
  });
  std::vector<std::string> trace{std::to_string(checked) + " families checked, " + std::to_string(failures.size()) + " failing"};
  CheckReport r = failures.empty() ? CheckReport::pass(trace) : CheckReport::fail(failures[0], trace);
  r.details["families_checked"] = checked;
  r.details["failures"] = failures;
  return r;
}

}  // namespace cubelab
