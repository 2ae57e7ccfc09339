// cubelab: command-line front end. stdout carries JSON only; exit 0 when the
// property holds, 1 when it fails, 2 on bad input.

#include <iostream>

#include <CLI11.hpp>

#include "cubelab/cubelab.hpp"

using namespace cubelab;

namespace {

struct Options {
  bool verbose = false;
  std::size_t jobs = 1;
  std::optional<std::uint64_t> seed;
};

Options opts;

void say(const std::string& s) {
  if (opts.verbose) std::cerr << s << "\n";
}

int report(const CheckReport& r) {
  std::cout << json(r).dump(2) << "\n";
  if (opts.verbose)
    for (const auto& t : r.trace) std::cerr << "  " << t << "\n";
  say(r.verdict ? "verdict: holds" : "verdict: fails");
  return r.verdict ? 0 : 1;
}

void write_artifact(const std::string& out, const json& j, const std::string& what) {
  write_text_file(out, j.dump(2) + "\n");
  std::cout << json{{"written", out}, {"kind", what}}.dump() << "\n";
  say("wrote " + what + " to " + out);
}

bool is_cube(const json& j) { return j.is_object() && j.value("kind", std::string()) == "cube"; }

int check_distributive_cmd(const std::string& file, std::optional<std::size_t> n_override) {
  Instance I = instance_from_json(read_json_file(file));
  return std::visit(
      [&](auto& x) {
        if (n_override) {
          if (*n_override > x.relations.size())
            throw InputError("--n-override " + std::to_string(*n_override) + " exceeds the " + std::to_string(x.relations.size()) + " relations in the file");
          x.relations.resize(*n_override);
        }
        say("checking " + std::to_string(x.relations.size()) + " relations");
        return report(check_distributive(x.relations));
      },
      I);
}

int build_cube_cmd(const std::string& file, const std::string& out) {
  json src = read_json_file(file);
  Instance I = instance_from_json(src);
  json cube = std::visit([&](const auto& x) { return cube_to_json(build_cube(x.ctx, x.relations), instance_to_json(x)); }, I);
  write_artifact(out, cube, "cube");
  return 0;
}

int check_extension_cmd(const std::string& file) {
  json j = read_json_file(file);
  if (is_cube(j)) {
    std::string env = j.value("env", std::string("finset"));
    if (env == "finset") return report(is_n_cubic_extension(cube_from_json<SetEnv>(j)));
    if (env == "fgab") return report(is_n_cubic_extension(cube_from_json<AbEnv>(j)));
    throw InputError("env: expected finset or fgab");
  }
  Instance I = instance_from_json(j);
  return std::visit([](const auto& x) { return report(is_n_cubic_extension(build_cube(x.ctx, x.relations))); }, I);
}

int build_diagram_cmd(const std::string& file, bool pointed, const std::string& out) {
  json j = read_json_file(file);
  if (!pointed && is_cube(j)) {
    if (j.value("env", std::string()) != "finset") throw InputError("env: fork grids need a finite cube");
    write_artifact(out, sequence_to_json(build_sequence_fork(cube_from_json<SetEnv>(j))), "fork grid");
    return 0;
  }
  Instance I = instance_from_json(j);
  json grid;
  if (pointed) {
    if (auto* g = std::get_if<GroupInstance>(&I)) grid = sequence_to_json(g->ctx, build_sequence_pointed(g->ctx, g->subgroups));
    else if (auto* a = std::get_if<AbInstance>(&I)) grid = sequence_to_json(a->ctx, build_sequence_pointed(a->ctx, a->relations));
    else throw InputError("context.kind: pointed grids need fingroup or fgab");
  } else {
    if (auto* g = std::get_if<GroupInstance>(&I)) grid = sequence_to_json(build_sequence_fork(build_cube(g->ctx, g->relations)));
    else if (auto* s = std::get_if<SetInstance>(&I)) grid = sequence_to_json(build_sequence_fork(build_cube(s->ctx, s->relations)));
    else throw InputError("context.kind: fork grids need finite carriers");
  }
  write_artifact(out, grid, pointed ? "pointed grid" : "fork grid");
  return 0;
}

int verify_diagram_cmd(const std::string& file) {
  Grid g = grid_from_json(read_json_file(file));
  CheckReport r = verify_grid(g);
  if (opts.verbose)
    for (const auto& f : r.details.value("failures", json::array())) std::cerr << "inexact line " << f.at("line").get<std::string>() << ": " << f.at("kind").get<std::string>() << "\n";
  return report(r);
}

int search_cmd(const std::string& file) {
  SearchSpec s = search_spec_from_json(read_json_file(file));
  if (opts.seed) s.seed = *opts.seed;
  say("searching " + s.context + " for " + s.predicate + " with budget " + std::to_string(s.budget));
  auto ws = search(s, opts.jobs);
  for (const auto& w : ws) std::cout << to_json_value(w).dump() << "\n";
  say(std::to_string(ws.size()) + " witnesses");
  return 0;
}

int export_dot_cmd(const std::string& file, const std::string& out) {
  json j = read_json_file(file);
  std::string dot;
  if (is_cube(j)) {
    std::string env = j.value("env", std::string("finset"));
    if (env == "finset") dot = cube_to_dot(cube_from_json<SetEnv>(j));
    else if (env == "fgab") dot = cube_to_dot(cube_from_json<AbEnv>(j));
    else throw InputError("env: expected finset or fgab");
  } else {
    dot = grid_to_dot(grid_from_json(j));
  }
  write_text_file(out, dot);
  std::cout << json{{"written", out}, {"kind", "dot"}}.dump() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cubelab: higher extensions, box products and 3^n grids"};
  app.require_subcommand(1);
  app.add_flag("--verbose,-v", opts.verbose, "human-readable notes on stderr");
  app.add_option("--jobs,-j", opts.jobs, "worker threads for search")->check(CLI::PositiveNumber);
  app.add_option("--seed", opts.seed, "override the search seed");

  std::string file, out;
  std::optional<std::size_t> n_override;
  bool pointed = false, fork = false;
  std::function<int()> action;

  auto* cd = app.add_subcommand("check-distributive", "distributivity of the relations in an instance");
  cd->add_option("file", file, "instance JSON")->required();
  cd->add_option("--n-override", n_override, "use only the first N relations");
  cd->callback([&] { action = [&] { return check_distributive_cmd(file, n_override); }; });

  auto* bc = app.add_subcommand("build-cube", "write the quotient cube of an instance");
  bc->add_option("file", file, "instance JSON")->required();
  bc->add_option("-o,--output", out, "output path")->required();
  bc->callback([&] { action = [&] { return build_cube_cmd(file, out); }; });

  auto* ce = app.add_subcommand("check-extension", "is a cube (or the cube of an instance) an n-cubic extension");
  ce->add_option("file", file, "cube or instance JSON")->required();
  ce->callback([&] { action = [&] { return check_extension_cmd(file); }; });

  auto* bd = app.add_subcommand("build-diagram", "write the 3^n grid of an instance");
  bd->add_option("file", file, "instance JSON (or a finite cube with --fork)")->required();
  auto* pf = bd->add_flag("--pointed", pointed, "short exact sequences of subquotients");
  auto* ff = bd->add_flag("--fork", fork, "exact forks of kernel pairs");
  pf->excludes(ff);
  bd->add_option("-o,--output", out, "output path")->required();
  bd->callback([&] {
    if (!pointed && !fork) throw CLI::ValidationError("build-diagram", "one of --pointed or --fork is required");
    action = [&] { return build_diagram_cmd(file, pointed, out); };
  });

  auto* vd = app.add_subcommand("verify-diagram", "check every line of a grid");
  vd->add_option("grid", file, "grid JSON")->required();
  vd->callback([&] { action = [&] { return verify_diagram_cmd(file); }; });

  auto* se = app.add_subcommand("search", "enumerate instances matching a predicate; one JSON witness per line");
  se->add_option("spec", file, "search spec JSON")->required();
  se->callback([&] { action = [&] { return search_cmd(file); }; });

  auto* ed = app.add_subcommand("export-dot", "render a cube or grid as DOT");
  ed->add_option("artifact", file, "cube or grid JSON")->required();
  ed->add_option("-o,--output", out, "output path")->required();
  ed->callback([&] { action = [&] { return export_dot_cmd(file, out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success&) {
    std::cerr << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << json{{"error", e.what()}}.dump() << "\n";
    return 2;
  }
  try {
    return action();
  } catch (const InputError& e) {
    std::cerr << json{{"error", e.what()}}.dump() << "\n";
  } catch (const SizeLimitExceeded& e) {
    std::cerr << json{{"error", std::string("size limit: ") + e.what()}}.dump() << "\n";
  } catch (const std::exception& e) {
    std::cerr << json{{"error", e.what()}}.dump() << "\n";
  }
  return 2;
}
