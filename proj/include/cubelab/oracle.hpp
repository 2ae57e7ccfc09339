#pragma once

// Brute-force cross-checks and counterexample search.

#include <random>
#include <set>
#include <thread>

#include "cubelab/io.hpp"
#include "cubelab/theorems.hpp"

namespace cubelab {

// ---- extension oracle -------------------------------------------------------------

// For every sub-cube (top vertex t, directions I) the map F(t) → lim of the
// punctured sub-cube must be onto. For |I| ≤ 3 a point of that limit is a
// choice of elements at the t∖{i} agreeing pairwise at the t∖{i,j}.
inline CheckReport brute_extension_report(const NCube<SetEnv>& F) {
  std::size_t n = F.dim();
  if (n > 3) throw InputError("brute extension oracle handles n <= 3");
  std::size_t checked = 0;
  for (std::size_t t = 0; t < F.vertices(); ++t)
    for (std::size_t I = 1; I < F.vertices(); ++I) {
      if ((t & I) != I) continue;
      std::vector<std::size_t> dirs;
      for (std::size_t i = 0; i < n; ++i)
        if (I >> i & 1) dirs.push_back(i);
      std::size_t k = dirs.size();
      auto bit = [](std::size_t i) { return std::size_t{1} << i; };
      // reached points, as tuples over dirs
      std::set<std::vector<Elem>> reached;
      for (Elem x = 0; x < F.obj(t).size(); ++x) {
        std::vector<Elem> pt;
        for (std::size_t i : dirs) pt.push_back(F.edge(t, i)(x));
        reached.insert(pt);
      }
      std::vector<Elem> cur(k);
      std::optional<std::vector<Elem>> missing;
      std::function<void(std::size_t)> walk = [&](std::size_t a) {
        if (missing) return;
        if (a == k) {
          if (!reached.count(cur)) missing = cur;
          return;
        }
        std::size_t va = t & ~bit(dirs[a]);
        for (Elem y = 0; y < F.obj(va).size() && !missing; ++y) {
          bool ok = true;
          for (std::size_t b = 0; b < a && ok; ++b) {
            std::size_t vb = t & ~bit(dirs[b]);
            // both lie over t∖{a,b}: y via direction b, cur[b] via direction a
            ok = F.edge(va, dirs[b])(y) == F.edge(vb, dirs[a])(cur[b]);
          }
          if (!ok) continue;
          cur[a] = y;
          walk(a + 1);
        }
      };
      walk(0);
      ++checked;
      if (missing) {
        std::vector<std::size_t> dv(dirs.begin(), dirs.end());
        return CheckReport::fail(json{{"kind", "comparison not surjective"}, {"top", vertex_key(t, n)}, {"directions", dv}, {"unreached", *missing}},
                                 {"sub-cube at " + vertex_key(t, n) + " misses a point of its limit"});
      }
    }
  CheckReport r = CheckReport::pass({"all " + std::to_string(checked) + " comparison maps are onto"});
  r.details["comparisons"] = checked;
  return r;
}

inline bool brute_extension_oracle(const NCube<SetEnv>& F) { return brute_extension_report(F).verdict; }

inline bool brute_extension_oracle(const NCube<AbEnv>&) { throw InputError("brute extension oracle needs finite carriers"); }

// ---- search -------------------------------------------------------------------------

struct SearchSpec {
  std::string context = "fingroup";  // fingroup, cyclic, fgab, finset
  std::size_t bound = 8;             // group order, modulus, set size, or |generator entries|
  std::size_t rank = 2;              // fgab only
  std::size_t n = 3;
  std::string predicate = "non_distributive";
  std::size_t budget = 10000;        // instances examined
  std::size_t max_witnesses = 0;     // 0: no cap
  std::uint64_t seed = 1;
};

inline const std::vector<std::string>& search_predicates() {
  static const std::vector<std::string> p{"distributive", "non_distributive", "subtuples_distributive_not_tuple", "regular_epi_not_extension"};
  return p;
}

inline SearchSpec search_spec_from_json(const json& j) {
  if (!j.is_object()) throw InputError("search spec must be a JSON object");
  SearchSpec s;
  static const std::set<std::string> known{"context", "bound", "rank", "n", "predicate", "budget", "max_witnesses", "seed"};
  for (const auto& [k, v] : j.items())
    if (!known.count(k)) throw InputError("search spec: unknown field " + k);
  auto get = [&](const char* key, auto& field) {
    if (j.contains(key)) at_path(key, [&] { field = j.at(key).get<std::decay_t<decltype(field)>>(); });
  };
  get("context", s.context);
  get("bound", s.bound);
  get("rank", s.rank);
  get("n", s.n);
  get("predicate", s.predicate);
  get("budget", s.budget);
  get("max_witnesses", s.max_witnesses);
  get("seed", s.seed);
  static const std::set<std::string> contexts{"fingroup", "cyclic", "fgab", "finset"};
  if (!contexts.count(s.context)) throw InputError("context: expected fingroup, cyclic, fgab or finset");
  const auto& ps = search_predicates();
  if (std::find(ps.begin(), ps.end(), s.predicate) == ps.end()) throw InputError("predicate: unknown predicate " + s.predicate);
  if (s.bound == 0 || s.n == 0 || s.budget == 0 || s.rank == 0) throw InputError("bound, n, rank and budget must be positive");
  if (s.n > 5) throw InputError("n: at most 5");
  if (s.context == "finset" && s.bound > 8) throw InputError("bound: finset carriers are limited to 8 elements");
  return s;
}

inline json search_spec_to_json(const SearchSpec& s) {
  return json{{"context", s.context}, {"bound", s.bound}, {"rank", s.rank}, {"n", s.n}, {"predicate", s.predicate},
              {"budget", s.budget}, {"max_witnesses", s.max_witnesses}, {"seed", s.seed}};
}

struct SearchWitness {
  json instance;
  CheckReport report;
};

inline json to_json_value(const SearchWitness& w) { return json{{"instance", w.instance}, {"report", w.report}}; }

namespace detail {

// Index tuples i_0 <= ... <= i_{n-1} < m, in lexicographic order.
template <class Fn>
bool for_each_multiset(std::size_t m, std::size_t n, Fn&& fn) {
  std::vector<std::size_t> idx(n, 0);
  if (m == 0) return true;
  while (true) {
    if (!fn(idx)) return false;
    std::size_t k = n;
    while (k > 0 && idx[k - 1] == m - 1) --k;
    if (k == 0) return true;
    ++idx[k - 1];
    for (std::size_t r = k; r < n; ++r) idx[r] = idx[k - 1];
  }
}

template <class C>
CheckReport evaluate_predicate(const std::string& pred, const C& ctx, const std::vector<typename C::Rel>& R) {
  if (pred == "distributive" || pred == "non_distributive") {
    CheckReport d = check_distributive(R);
    bool hit = pred == "distributive" ? d.verdict : !d.verdict;
    CheckReport r = hit ? CheckReport::pass(d.trace) : CheckReport::fail(json{{"kind", "predicate not met"}}, d.trace);
    r.details["distributive"] = d;
    return r;
  }
  if (pred == "subtuples_distributive_not_tuple") {
    std::size_t n = R.size();
    json subs = json::array();
    bool all = true;
    for (std::size_t drop = 0; drop < n && all; ++drop) {
      std::vector<typename C::Rel> s;
      for (std::size_t i = 0; i < n; ++i)
        if (i != drop) s.push_back(R[i]);
      bool v = check_distributive(s).verdict;
      subs.push_back(v);
      all = v;
    }
    CheckReport whole = all ? check_distributive(R) : CheckReport::pass();
    bool hit = all && !whole.verdict;
    CheckReport r = hit ? CheckReport::pass({"every sub-tuple distributes", "the tuple does not"})
                        : CheckReport::fail(json{{"kind", "predicate not met"}});
    r.details["subtuples"] = subs;
    if (hit) r.details["tuple_witness"] = whole.witness;
    return r;
  }
  // regular_epi_not_extension
  auto F = build_cube(ctx, R);
  CheckReport re = is_n_fold_regular_epi(F);
  CheckReport ext = re.verdict ? is_n_cubic_extension(F, {false}) : CheckReport::pass();
  bool hit = re.verdict && !ext.verdict;
  CheckReport r = hit ? CheckReport::pass({"all faces are pushouts", "not an extension"}) : CheckReport::fail(json{{"kind", "predicate not met"}});
  if (hit) r.details["extension_witness"] = ext.witness;
  return r;
}

using Job = std::function<std::optional<SearchWitness>()>;

template <class C>
Job make_job(const std::string& pred, C ctx, std::vector<typename C::Rel> R, std::function<json()> describe) {
  return [=]() -> std::optional<SearchWitness> {
    CheckReport r = evaluate_predicate(pred, ctx, R);
    if (!r.verdict) return std::nullopt;
    return SearchWitness{describe(), r};
  };
}

inline std::vector<Job> search_jobs(const SearchSpec& s) {
  std::vector<Job> jobs;
  auto full = [&] { return jobs.size() >= s.budget; };
  if (s.context == "fingroup" || s.context == "cyclic") {
    std::vector<NamedGroup> groups;
    if (s.context == "cyclic")
      for (std::size_t m = 1; m <= s.bound; ++m) groups.push_back({"Z" + std::to_string(m), cyclic_group(m)});
    else
      for (const auto& g : active_catalog())
        if (g.group.order() <= s.bound) groups.push_back(g);
    for (const auto& g : groups) {
      if (full()) break;
      GroupContext ctx{g.group, g.name};
      auto ns = enumerate_normal_subgroups(g.group);
      for_each_multiset(ns.size(), s.n, [&](const std::vector<std::size_t>& idx) {
        std::vector<NormalSubgroup> K;
        std::vector<EqRel> R;
        for (std::size_t i : idx) {
          K.push_back(ns[i]);
          R.push_back(congruence_of(ns[i]));
        }
        jobs.push_back(make_job<GroupContext>(s.predicate, ctx, R, [ctx, K] { return instance_to_json(GroupInstance{ctx, K, {}}); }));
        return !full();
      });
    }
  } else if (s.context == "finset") {
    for (std::size_t m = 1; m <= s.bound && !full(); ++m) {
      SetContext ctx{FinSet(m)};
      auto ps = all_partitions(m);
      for_each_multiset(ps.size(), s.n, [&](const std::vector<std::size_t>& idx) {
        std::vector<EqRel> R;
        for (std::size_t i : idx) R.push_back(ps[i]);
        jobs.push_back(make_job<SetContext>(s.predicate, ctx, R, [ctx, R] { return instance_to_json(SetInstance{ctx, R}); }));
        return !full();
      });
    }
  } else {
    // random lattices in ℤ^rank on one or two generators with entries in [-bound, bound]
    std::mt19937_64 rng(s.seed);
    std::uniform_int_distribution<long> entry(-static_cast<long>(s.bound), static_cast<long>(s.bound));
    std::uniform_int_distribution<int> ngens(1, 2);
    AbContext ctx = AbContext::free(s.rank);
    while (!full()) {
      std::vector<IntLattice> R;
      for (std::size_t k = 0; k < s.n; ++k) {
        std::vector<std::vector<Int>> gens(static_cast<std::size_t>(ngens(rng)), std::vector<Int>(s.rank));
        for (auto& v : gens)
          for (auto& x : v) x = entry(rng);
        R.push_back(IntLattice::generated(s.rank, gens));
      }
      jobs.push_back(make_job<AbContext>(s.predicate, ctx, R, [ctx, R] { return instance_to_json(AbInstance{ctx, R}); }));
    }
  }
  return jobs;
}

}  // namespace detail

// Deterministic for a fixed spec: instances are listed in a fixed order (the
// fgab ones drawn from a generator seeded by spec.seed), evaluated in shards,
// and merged back in instance order.
inline std::vector<SearchWitness> search(const SearchSpec& s, std::size_t jobs = 1) {
  auto work = detail::search_jobs(s);
  std::vector<std::optional<SearchWitness>> out(work.size());
  std::size_t shards = std::max<std::size_t>(1, std::min(jobs, work.size()));
  std::vector<std::exception_ptr> errors(shards);
  auto run = [&](std::size_t shard) {
    try {
      for (std::size_t k = shard; k < work.size(); k += shards) out[k] = work[k]();
    } catch (...) {
      errors[shard] = std::current_exception();
    }
  };
  if (shards == 1) {
    run(0);
  } else {
    std::vector<std::thread> ts;
    for (std::size_t t = 0; t < shards; ++t) ts.emplace_back(run, t);
    for (auto& t : ts) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<SearchWitness> found;
  for (auto& w : out) {
    if (!w) continue;
    found.push_back(std::move(*w));
    if (s.max_witnesses && found.size() == s.max_witnesses) break;
  }
  return found;
}

}  // namespace cubelab
