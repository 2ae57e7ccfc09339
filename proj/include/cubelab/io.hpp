#pragma once

// JSON files for instances, cubes and grids, plus DOT rendering.

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <variant>

#include "cubelab/sequence.hpp"

namespace cubelab {

// ---- scalars -------------------------------------------------------------------

inline json int_to_json(const Int& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

inline Int int_from_json(const json& j) {
  if (j.is_number_integer()) return Int(j.get<long>());
  if (j.is_string()) {
    Int x;
    if (x.set_str(j.get<std::string>(), 10) != 0) throw InputError("not an integer: " + j.dump());
    return x;
  }
  throw InputError("expected an integer, got " + j.dump());
}

inline json vectors_to_json(const std::vector<std::vector<Int>>& vs) {
  json out = json::array();
  for (const auto& v : vs) {
    json row = json::array();
    for (const auto& x : v) row.push_back(int_to_json(x));
    out.push_back(row);
  }
  return out;
}

inline std::vector<std::vector<Int>> vectors_from_json(const json& j, std::size_t d) {
  if (!j.is_array()) throw InputError("expected a list of vectors");
  std::vector<std::vector<Int>> out;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != d) throw InputError("vector " + row.dump() + " does not have length " + std::to_string(d));
    std::vector<Int> v;
    for (const auto& x : row) v.push_back(int_from_json(x));
    out.push_back(std::move(v));
  }
  return out;
}

// Runs fn, prefixing any InputError with the JSON path being read.
template <class Fn>
auto at_path(const std::string& path, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  } catch (const json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

// ---- catalog ----------------------------------------------------------------------

// The builtin catalog, or the file named by CUBELAB_CATALOG:
// {"groups": [{"name": ..., "table": [[...]]}, ...]}.
inline std::vector<NamedGroup> load_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open catalog " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw InputError("catalog " + path + ": " + e.what());
  }
  std::vector<NamedGroup> out;
  const json& gs = j.at("groups");
  for (std::size_t k = 0; k < gs.size(); ++k)
    at_path("groups[" + std::to_string(k) + "]", [&] {
      out.push_back({gs[k].at("name").get<std::string>(), FinGroup::from_table(gs[k].at("table").get<std::vector<std::vector<Elem>>>())});
    });
  return out;
}

inline const std::vector<NamedGroup>& active_catalog() {
  static const std::vector<NamedGroup> c = [] {
    const char* env = std::getenv("CUBELAB_CATALOG");
    return env && *env ? load_catalog(env) : builtin_catalog();
  }();
  return c;
}

// A catalog group, or ℤ/m for any name "Zm".
inline std::optional<FinGroup> named_group(const std::string& name) {
  if (const FinGroup* g = find_in(active_catalog(), name)) return *g;
  if (name.size() > 1 && name[0] == 'Z' && name.size() <= 7 && std::all_of(name.begin() + 1, name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    std::size_t m = std::stoul(name.substr(1));
    if (m > 0 && m <= 4096) return cyclic_group(m);
  }
  return std::nullopt;
}

// ---- relations and objects ------------------------------------------------------------

inline json to_json_value(const EqRel& R) { return json{{"blocks", R.blocks()}}; }
inline json to_json_value(const NormalSubgroup& K) { return json{{"elements", K.elements()}}; }
inline json to_json_value(const IntLattice& L) { return json{{"generators", vectors_to_json(L.basis().columns())}}; }

inline json to_json_value(const FinMap& f) { return json{{"dom", f.dom().size()}, {"cod", f.cod().size()}, {"table", f.table()}}; }

inline json to_json_value(const FinSet& X) { return json{{"size", X.size()}}; }

inline json to_json_value(const FgAbGroup& A) {
  return json{{"generators", A.generators()}, {"relations", vectors_to_json(A.presentation().columns())}};
}

inline json to_json_value(const FgAbHom& f) {
  json rows = json::array();
  for (std::size_t i = 0; i < f.matrix().rows(); ++i) {
    json r = json::array();
    for (std::size_t k = 0; k < f.matrix().cols(); ++k) r.push_back(int_to_json(f.matrix()(i, k)));
    rows.push_back(r);
  }
  return json{{"dom", to_json_value(f.dom())}, {"cod", to_json_value(f.cod())}, {"matrix", rows}};
}

inline FinSet finset_from_json(const json& j) { return FinSet(j.at("size").get<std::size_t>()); }

inline FinMap finmap_from_json(const json& j) {
  return FinMap(FinSet(j.at("dom").get<std::size_t>()), FinSet(j.at("cod").get<std::size_t>()), j.at("table").get<std::vector<Elem>>());
}

inline FgAbGroup fgab_from_json(const json& j) {
  std::size_t r = j.at("generators").get<std::size_t>();
  auto rel = vectors_from_json(j.at("relations"), r);
  return FgAbGroup(IntMatrix::from_columns(r, rel));
}

inline FgAbHom fgabhom_from_json(const json& j) {
  FgAbGroup dom = fgab_from_json(j.at("dom")), cod = fgab_from_json(j.at("cod"));
  auto rows = vectors_from_json(j.at("matrix"), dom.generators());
  if (rows.size() != cod.generators()) throw InputError("matrix has the wrong number of rows");
  IntMatrix m(cod.generators(), dom.generators());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t k = 0; k < rows[i].size(); ++k) m(i, k) = rows[i][k];
  return FgAbHom(dom, cod, m);
}

// ---- contexts -----------------------------------------------------------------------

inline json context_to_json(const SetContext& c) { return json{{"kind", "finset"}, {"size", c.X.size()}}; }

inline json context_to_json(const GroupContext& c) {
  json j{{"kind", "fingroup"}};
  if (!c.name.empty()) j["name"] = c.name;
  auto g = c.name.empty() ? std::nullopt : named_group(c.name);
  if (!g || !(*g == c.G)) j["table"] = c.G.table();
  return j;
}

inline json context_to_json(const AbContext& c) {
  json j{{"kind", "fgab"}, {"rank", c.rank()}};
  if (c.base.rank() > 0) j["base"] = vectors_to_json(c.base.basis().columns());
  return j;
}

inline GroupContext group_context_from_json(const json& j) {
  if (j.contains("table")) return GroupContext{FinGroup::from_table(j.at("table").get<std::vector<std::vector<Elem>>>()), j.value("name", std::string())};
  std::string name = j.at("name").get<std::string>();
  auto g = named_group(name);
  if (!g) throw InputError("unknown group " + name);
  return GroupContext{*g, canonical_group_name(name)};
}

inline AbContext ab_context_from_json(const json& j) {
  std::size_t d = j.at("rank").get<std::size_t>();
  if (d == 0) throw InputError("rank must be positive");
  if (!j.contains("base")) return AbContext::free(d);
  return AbContext{IntLattice::generated(d, vectors_from_json(j.at("base"), d))};
}

// ---- instances ------------------------------------------------------------------------

struct SetInstance {
  SetContext ctx;
  std::vector<EqRel> relations;
};
struct GroupInstance {
  GroupContext ctx;
  std::vector<NormalSubgroup> subgroups;
  std::vector<EqRel> relations;
};
struct AbInstance {
  AbContext ctx;
  std::vector<IntLattice> relations;
};
using Instance = std::variant<SetInstance, GroupInstance, AbInstance>;

namespace detail {

inline std::vector<Elem> subgroup_closure(const FinGroup& G, std::vector<Elem> gens) {
  std::vector<char> in(G.order(), 0);
  std::vector<Elem> elems{G.identity()};
  in[G.identity()] = 1;
  for (Elem g : gens)
    if (g >= G.order()) throw InputError("generator out of range");
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (Elem g : gens) {
      Elem y = G.mul(elems[i], g);
      if (!in[y]) {
        in[y] = 1;
        elems.push_back(y);
      }
    }
  return elems;
}

inline NormalSubgroup subgroup_from_json(const GroupContext& ctx, const json& r) {
  if (r.contains("elements")) return NormalSubgroup(ctx.G, r.at("elements").get<std::vector<Elem>>());
  if (r.contains("generators")) return NormalSubgroup(ctx.G, subgroup_closure(ctx.G, r.at("generators").get<std::vector<Elem>>()));
  if (r.contains("blocks")) {
    EqRel R = EqRel::from_blocks(ctx.G.carrier(), r.at("blocks").get<std::vector<std::vector<Elem>>>());
    ctx.check(R);
    return ctx.normal(R);
  }
  throw InputError("expected one of elements, generators, blocks");
}

inline IntLattice lattice_from_json(const AbContext& ctx, const json& r) {
  IntLattice L;
  if (r.contains("generators")) L = ctx.relation(vectors_from_json(r.at("generators"), ctx.rank()));
  else if (r.contains("symbolic")) {
    if (ctx.rank() != 2) throw InputError("symbolic ℤ[a] generators need rank 2");
    std::vector<std::vector<Int>> cols;
    for (const auto& s : r.at("symbolic")) cols.push_back(complexes_vector(s.get<std::string>()));
    L = ctx.relation(cols);
  } else {
    throw InputError("expected one of generators, symbolic");
  }
  ctx.check(L);
  return L;
}

}  // namespace detail

inline Instance instance_from_json(const json& j) {
  if (!j.is_object()) throw InputError("instance must be a JSON object");
  const json& c = at_path("context", [&]() -> const json& { return j.at("context"); });
  std::string kind = at_path("context.kind", [&] { return c.at("kind").get<std::string>(); });
  if (!j.contains("relations") || !j["relations"].is_array()) throw InputError("relations: missing or not a list");
  const json& rs = j["relations"];
  auto path = [](std::size_t k) { return "relations[" + std::to_string(k) + "]"; };
  if (kind == "finset") {
    SetInstance I{SetContext{at_path("context", [&] { return finset_from_json(c); })}, {}};
    for (std::size_t k = 0; k < rs.size(); ++k)
      I.relations.push_back(at_path(path(k), [&] {
        return EqRel::from_blocks(I.ctx.X, rs[k].at("blocks").get<std::vector<std::vector<Elem>>>());
      }));
    return I;
  }
  if (kind == "fingroup") {
    GroupInstance I{at_path("context", [&] { return group_context_from_json(c); }), {}, {}};
    for (std::size_t k = 0; k < rs.size(); ++k) {
      I.subgroups.push_back(at_path(path(k), [&] { return detail::subgroup_from_json(I.ctx, rs[k]); }));
      I.relations.push_back(congruence_of(I.subgroups.back()));
    }
    return I;
  }
  if (kind == "fgab") {
    AbInstance I{at_path("context", [&] { return ab_context_from_json(c); }), {}};
    for (std::size_t k = 0; k < rs.size(); ++k) I.relations.push_back(at_path(path(k), [&] { return detail::lattice_from_json(I.ctx, rs[k]); }));
    return I;
  }
  throw InputError("context.kind: unknown kind " + kind + " (finset, fingroup, fgab)");
}

inline json instance_to_json(const SetInstance& I) {
  json rs = json::array();
  for (const auto& R : I.relations) rs.push_back(to_json_value(R));
  return json{{"context", context_to_json(I.ctx)}, {"relations", rs}};
}
inline json instance_to_json(const GroupInstance& I) {
  json rs = json::array();
  for (const auto& K : I.subgroups) rs.push_back(to_json_value(K));
  return json{{"context", context_to_json(I.ctx)}, {"relations", rs}};
}
inline json instance_to_json(const AbInstance& I) {
  json rs = json::array();
  for (const auto& L : I.relations) rs.push_back(to_json_value(L));
  return json{{"context", context_to_json(I.ctx)}, {"relations", rs}};
}
inline json instance_to_json(const Instance& I) {
  return std::visit([](const auto& x) { return instance_to_json(x); }, I);
}

inline std::size_t instance_size(const Instance& I) {
  return std::visit([](const auto& x) { return x.relations.size(); }, I);
}

// ---- cubes ----------------------------------------------------------------------

template <class E>
constexpr const char* env_name() {
  return std::is_same_v<E, SetEnv> ? "finset" : "fgab";
}

template <class E>
json cube_to_json(const NCube<E>& F, const json& source = json()) {
  json verts = json::object(), edges = json::array();
  for (std::size_t v = 0; v < F.vertices(); ++v) {
    verts[vertex_key(v, F.dim())] = to_json_value(F.obj(v));
    for (std::size_t i = 0; i < F.dim(); ++i)
      if (v >> i & 1) edges.push_back(json{{"vertex", vertex_key(v, F.dim())}, {"direction", i}, {"map", to_json_value(F.edge(v, i))}});
  }
  json j{{"kind", "cube"}, {"env", env_name<E>()}, {"n", F.dim()}, {"vertices", verts}, {"edges", edges}};
  if (!source.is_null()) j["source"] = source;
  return j;
}

template <class E>
NCube<E> cube_from_json(const json& j) {
  std::size_t n = at_path("n", [&] { return j.at("n").get<std::size_t>(); });
  if (n > 8) throw InputError("n: cube dimension too large");
  std::size_t V = std::size_t{1} << n;
  std::vector<typename E::Obj> objs(V);
  std::vector<char> seen(V, 0);
  const json& vs = at_path("vertices", [&]() -> const json& { return j.at("vertices"); });
  for (const auto& [key, val] : vs.items()) {
    at_path("vertices." + key, [&] {
      if (key.size() != n) throw InputError("vertex key has the wrong length");
      std::size_t v = parse_vertex_key(key);
      if constexpr (std::is_same_v<E, SetEnv>) objs[v] = finset_from_json(val);
      else objs[v] = fgab_from_json(val);
      seen[v] = 1;
    });
  }
  for (std::size_t v = 0; v < V; ++v)
    if (!seen[v]) throw InputError("vertices: missing vertex " + vertex_key(v, n));
  std::vector<std::optional<typename E::Mor>> es(V * n);
  const json& ej = at_path("edges", [&]() -> const json& { return j.at("edges"); });
  for (std::size_t k = 0; k < ej.size(); ++k)
    at_path("edges[" + std::to_string(k) + "]", [&] {
      std::string key = ej[k].at("vertex").get<std::string>();
      if (key.size() != n) throw InputError("vertex key has the wrong length");
      std::size_t v = parse_vertex_key(key), i = ej[k].at("direction").get<std::size_t>();
      if (i >= n || !(v >> i & 1)) throw InputError("no edge in direction " + std::to_string(i) + " at " + key);
      if (es[v * n + i]) throw InputError("duplicate edge");
      if constexpr (std::is_same_v<E, SetEnv>) es[v * n + i] = finmap_from_json(ej[k].at("map"));
      else es[v * n + i] = fgabhom_from_json(ej[k].at("map"));
    });
  return NCube<E>(n, std::move(objs), std::move(es));
}

// ---- grids ------------------------------------------------------------------------

template <class C, class L>
json sequence_to_json(const C& ctx, const PointedSequence<L>& E) {
  json grid = json::object();
  for (std::size_t p = 0; p < E.positions(); ++p) {
    json cell{{"num", to_json_value(E.num[p])}, {"den", to_json_value(E.den[p])}};
    if constexpr (std::is_same_v<L, NormalSubgroup>) cell["order"] = subquotient_order(E.num[p], E.den[p]);
    else {
      json inv = json::array();
      FgAbGroup q = subquotient_group(E.num[p], E.den[p]);
      for (const auto& d : q.invariant_factors()) inv.push_back(int_to_json(d));
      cell["invariants"] = inv;
    }
    grid[grid_key(p, E.n)] = cell;
  }
  json inputs = json::array();
  for (const auto& x : E.inputs) inputs.push_back(to_json_value(x));
  return json{{"kind", "sequence"},        {"mode", "pointed"},
              {"n", E.n},                  {"context", context_to_json(ctx)},
              {"construction", E.construction}, {"inputs", inputs},
              {"top", to_json_value(E.top)}, {"bottom", to_json_value(E.bottom)},
              {"grid", grid}};
}

inline json sequence_to_json(const ForkSequence& E) {
  json objs = json::object(), maps = json::array();
  for (std::size_t p = 0; p < E.positions(); ++p) objs[grid_key(p, E.n)] = E.objects[p].size();
  for (const auto& [k, f] : E.maps) {
    const auto& [p, i, role] = k;
    maps.push_back(json{{"position", grid_key(p, E.n)}, {"direction", i}, {"role", std::string(1, role)}, {"table", f.table()}});
  }
  return json{{"kind", "sequence"}, {"mode", "fork"}, {"n", E.n}, {"objects", objs}, {"maps", maps}};
}

struct GroupGrid {
  GroupContext ctx;
  PointedSequence<NormalSubgroup> seq;
};
struct AbGrid {
  AbContext ctx;
  PointedSequence<IntLattice> seq;
};
using Grid = std::variant<GroupGrid, AbGrid, ForkSequence>;

namespace detail {

inline std::size_t grid_position(const std::string& key, std::size_t n) {
  if (key.size() != n) throw InputError("grid key " + key + " has the wrong length");
  return parse_grid_key(key);
}

template <class C, class L, class Read>
PointedSequence<L> pointed_from_json(const json& j, std::size_t n, Read&& read) {
  PointedSequence<L> E;
  E.n = n;
  E.construction = j.value("construction", std::string("intersections"));
  E.top = at_path("top", [&] { return read(j.at("top")); });
  E.bottom = at_path("bottom", [&] { return read(j.at("bottom")); });
  if (j.contains("inputs"))
    for (std::size_t k = 0; k < j["inputs"].size(); ++k)
      E.inputs.push_back(at_path("inputs[" + std::to_string(k) + "]", [&] { return read(j["inputs"][k]); }));
  E.num.assign(E.positions(), E.top);
  E.den.assign(E.positions(), E.top);
  std::vector<char> seen(E.positions(), 0);
  const json& g = at_path("grid", [&]() -> const json& { return j.at("grid"); });
  for (const auto& [key, cell] : g.items())
    at_path("grid." + key, [&] {
      std::size_t p = grid_position(key, n);
      E.num[p] = read(cell.at("num"));
      E.den[p] = read(cell.at("den"));
      seen[p] = 1;
    });
  for (std::size_t p = 0; p < E.positions(); ++p)
    if (!seen[p]) throw InputError("grid: missing position " + grid_key(p, n));
  validate_sequence(E);
  return E;
}

}  // namespace detail

inline Grid grid_from_json(const json& j) {
  if (j.value("kind", std::string()) != "sequence") throw InputError("kind: expected \"sequence\"");
  std::string mode = at_path("mode", [&] { return j.at("mode").get<std::string>(); });
  std::size_t n = at_path("n", [&] { return j.at("n").get<std::size_t>(); });
  if (n == 0 || n > 6) throw InputError("n: grid dimension must be 1..6");
  if (mode == "fork") {
    ForkSequence E;
    E.n = n;
    E.objects.resize(E.positions());
    std::vector<char> seen(E.positions(), 0);
    const json& os = at_path("objects", [&]() -> const json& { return j.at("objects"); });
    for (const auto& [key, val] : os.items())
      at_path("objects." + key, [&] {
        std::size_t p = detail::grid_position(key, n);
        E.objects[p] = FinSet(val.get<std::size_t>());
        seen[p] = 1;
      });
    for (std::size_t p = 0; p < E.positions(); ++p)
      if (!seen[p]) throw InputError("objects: missing position " + grid_key(p, n));
    const json& ms = at_path("maps", [&]() -> const json& { return j.at("maps"); });
    for (std::size_t k = 0; k < ms.size(); ++k)
      at_path("maps[" + std::to_string(k) + "]", [&] {
        std::size_t p = detail::grid_position(ms[k].at("position").get<std::string>(), n);
        std::size_t i = ms[k].at("direction").get<std::size_t>();
        std::string role = ms[k].at("role").get<std::string>();
        if (i >= n) throw InputError("direction out of range");
        if (role.size() != 1 || std::string("dcef").find(role[0]) == std::string::npos) throw InputError("role must be d, c, e or f");
        std::size_t digit = grid_digit(p, i);
        bool ok = role[0] == 'e' ? digit == 1 : role[0] == 'f' ? digit == 1 : digit == 2;
        if (!ok) throw InputError("role " + role + " does not start at coordinate " + std::to_string(digit));
        std::size_t q = fork_target(p, i, role[0]);
        E.maps[{p, i, role[0]}] = FinMap(E.objects[p], E.objects[q], ms[k].at("table").get<std::vector<Elem>>());
      });
    validate_sequence(E);
    return E;
  }
  if (mode != "pointed") throw InputError("mode: expected pointed or fork");
  const json& c = at_path("context", [&]() -> const json& { return j.at("context"); });
  std::string kind = at_path("context.kind", [&] { return c.at("kind").get<std::string>(); });
  if (kind == "fingroup") {
    GroupContext ctx = at_path("context", [&] { return group_context_from_json(c); });
    auto read = [&](const json& x) { return detail::subgroup_from_json(ctx, x); };
    return GroupGrid{ctx, detail::pointed_from_json<GroupContext, NormalSubgroup>(j, n, read)};
  }
  if (kind == "fgab") {
    AbContext ctx = at_path("context", [&] { return ab_context_from_json(c); });
    auto read = [&](const json& x) { return detail::lattice_from_json(ctx, x); };
    return AbGrid{ctx, detail::pointed_from_json<AbContext, IntLattice>(j, n, read)};
  }
  throw InputError("context.kind: pointed grids need fingroup or fgab");
}

inline CheckReport verify_grid(const Grid& g) {
  return std::visit(
      [](const auto& x) {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, ForkSequence>) return verify_sequence(x);
        else return verify_sequence(x.seq);
      },
      g);
}

inline std::size_t grid_dim(const Grid& g) {
  return std::visit(
      [](const auto& x) {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, ForkSequence>) return x.n;
        else return x.seq.n;
      },
      g);
}

// ---- DOT ----------------------------------------------------------------------------

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

template <class E>
std::string cube_to_dot(const NCube<E>& F) {
  std::ostringstream os;
  os << "digraph cube {\n  rankdir=BT;\n";
  for (std::size_t v = 0; v < F.vertices(); ++v)
    os << "  \"" << vertex_key(v, F.dim()) << "\" [label=\"" << vertex_key(v, F.dim()) << "\\n" << dot_escape(E::describe(F.obj(v))) << "\"];\n";
  for (std::size_t v = 0; v < F.vertices(); ++v)
    for (std::size_t i = 0; i < F.dim(); ++i) {
      if (!(v >> i & 1)) continue;
      bool epi = E::surjective(F.edge(v, i));
      os << "  \"" << vertex_key(v, F.dim()) << "\" -> \"" << vertex_key(v & ~(std::size_t{1} << i), F.dim()) << "\" [label=\"" << i << "\""
         << (epi ? "" : ", color=red") << "];\n";
    }
  os << "}\n";
  return os.str();
}

// One node per position and one edge per step along a line; failing lines in red.
inline std::string grid_to_dot(const Grid& g) {
  std::size_t n = grid_dim(g);
  CheckReport r = verify_grid(g);
  std::set<std::string> bad;
  for (const auto& f : r.details.value("failures", json::array())) bad.insert(f.at("line").get<std::string>());
  auto label = [&](std::size_t p) -> std::string {
    return std::visit(
        [&](const auto& x) -> std::string {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, ForkSequence>) return "|" + std::to_string(x.objects[p].size()) + "|";
          else if constexpr (std::is_same_v<T, GroupGrid>) return "order " + std::to_string(subquotient_order(x.seq.num[p], x.seq.den[p]));
          else return AbEnv::describe(subquotient_group(x.seq.num[p], x.seq.den[p]));
        },
        g);
  };
  std::ostringstream os;
  os << "digraph grid {\n";
  for (std::size_t p = 0; p < pow3(n); ++p) os << "  \"" << grid_key(p, n) << "\" [label=\"" << grid_key(p, n) << "\\n" << dot_escape(label(p)) << "\"];\n";
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t p : grid_slice(n, i, 0)) {
      bool red = bad.count(line_key(p, n, i)) > 0;
      for (std::size_t s = 2; s >= 1; --s) {
        std::size_t a = p + s * pow3(i), b = a - pow3(i);
        os << "  \"" << grid_key(a, n) << "\" -> \"" << grid_key(b, n) << "\" [label=\"" << i << "\"" << (red ? ", color=red" : "") << "];\n";
      }
    }
  os << "}\n";
  return os.str();
}

// ---- files ---------------------------------------------------------------------------

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
  if (!out) throw InputError("write failed: " + path);
}

}  // namespace cubelab
