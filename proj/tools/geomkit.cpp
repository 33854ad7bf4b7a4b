// geomkit command line tool. Exit codes: 0 pass, 1 violation, 2 usage or
// precondition, 3 budget.
#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "geomkit/error.hpp"
#include "geomkit/random.hpp"
#include "geomkit/serialization.hpp"
#include "geomkit/suites.hpp"

using namespace geomkit;

namespace {

enum Exit { kPass = 0, kViolation = 1, kUsage = 2, kBudget = 3 };

struct Config {
  std::string command;
  std::string geometry;
  std::string target;
  std::string input;
  std::string output;
  std::string synthetic;
  std::string filter = "image_not_in_line";
  std::string format = "json";
  std::string q = "2";
  std::string target_q;
  int n = 2;
  int target_n = -1;
  int dim = 3;
  int wdim = 1;
  std::uint64_t budget = 1'000'000'000;
  unsigned workers = 1;
  std::uint64_t seed = 1;
  std::size_t count = 200;
  std::size_t fractional_count = 50;
};

// Workers only change scheduling, so they stay out of the report.
Json config_json(const Config& c) {
  return Json{{"command", c.command},   {"geometry", c.geometry}, {"target", c.target},
              {"input", c.input},       {"output", c.output},     {"synthetic", c.synthetic},
              {"filter", c.filter},     {"format", c.format},     {"q", c.q},
              {"target_q", c.target_q}, {"n", c.n},               {"target_n", c.target_n},
              {"dim", c.dim},           {"wdim", c.wdim},         {"budget", c.budget},
              {"seed", c.seed},         {"count", c.count},       {"fractional_count", c.fractional_count}};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::InvalidInput, "cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::InvalidInput, "malformed JSON in " + what + ": " + e.what());
  }
}

// Inline JSON when it starts with '{', otherwise a file path.
Json load_json(const std::string& source, const char* flag) {
  if (source.empty()) fail(ErrorKind::InvalidInput, std::string(flag) + " is required");
  const auto first = source.find_first_not_of(" \t\n");
  if (first != std::string::npos && source[first] == '{') return parse_json(source, flag);
  return parse_json(read_file(source), source);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::InvalidInput, "cannot write '" + path + "'");
  out << text;
}

std::string dump(const Config& c, const Json& j) { return c.format == "text" ? render_text(j) : j.dump(2) + "\n"; }

int emit(const Config& c, const Json& result, int code) {
  const Json report = make_report(config_json(c), result);
  const std::string text = dump(c, report);
  std::cout << text;
  if (!c.output.empty() && c.command != "counterexample") write_file(c.output, text);
  return code;
}

Field field_of(const std::string& q) { return field_parse(q); }

int cmd_check(const Config& c) {
  AxiomReport rep;
  Json extra = Json::object();
  if (c.synthetic == "affine") {
    rep = synthetic_affine_check(synthetic_from_json(load_json(c.input, "--input")));
  } else if (c.synthetic == "projective") {
    const Json j = load_json(c.input, "--input");
    try {
      const auto n = j.at("points").is_number_integer() ? j.at("points").get<std::size_t>()
                                                         : j.at("points").get<std::vector<std::string>>().size();
      rep = veblen_young_check(n, j.at("lines").get<std::vector<std::vector<PointId>>>());
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorKind::InvalidInput, std::string("malformed incidence: ") + e.what());
    }
  } else if (!c.synthetic.empty()) {
    fail(ErrorKind::InvalidInput, "--synthetic takes 'affine' or 'projective'");
  } else {
    auto g = geometry_from_json(load_json(c.geometry.empty() ? c.input : c.geometry, "--geometry"));
    rep = check_axioms(*g);
    extra["points"] = g->size();
    if (rep.all_pass()) {
      extra["dimension"] = g->dimension();
      extra["lines_generate"] = g->lines_generate();
      extra["lines_and_planes_generate"] = g->lines_and_planes_generate();
    }
  }
  Json result = axiom_report_to_json(rep);
  result.update(extra);
  return emit(c, result, rep.all_pass() ? kPass : kViolation);
}

int cmd_verify(const Config& c, const std::string& theorem) {
  SearchOptions opts{c.budget, c.workers};
  const Field K = field_of(c.q);
  const Field K2 = c.target_q.empty() ? K : field_of(c.target_q);
  const int n2 = c.target_n < 0 ? c.n : c.target_n;
  if (theorem == "ft-affine" || theorem == "ft-projective") {
    const bool affine = theorem == "ft-affine";
    auto X = affine ? affine_space(K, c.n) : projective_space(K, c.n);
    auto Y = affine ? affine_space(K2, n2) : projective_space(K2, n2);
    const auto r = affine ? ft_affine_verify(X, Y, opts) : ft_projective_verify(X, Y, opts);
    std::cerr << "enumeration " << r.search.seconds << " s, construction " << r.construct_seconds << " s\n";
    return emit(c, verification_to_json(r), r.sets_equal ? kPass : kViolation);
  }
  if (theorem == "extension") {
    const auto r = extension_suite(c.seed, c.count, c.fractional_count, c.workers);
    Json j{{"suite", r.name}, {"runs", r.runs}, {"failures", r.failures}, {"notes", r.notes}};
    return emit(c, j, r.ok() ? kPass : kViolation);
  }
  if (theorem == "quotient-iso") {
    if (c.wdim < 0 || c.wdim >= c.dim) fail(ErrorKind::InvalidInput, "--wdim must lie in [0, --dim)");
    Rng rng(c.seed);
    std::vector<Vec> w;
    if (c.wdim > 0) {
      const auto m = random_matrix_of_rank(rng, K, static_cast<std::size_t>(c.wdim), static_cast<std::size_t>(c.dim),
                                           static_cast<std::size_t>(c.wdim));
      for (std::size_t r = 0; r < m.rows(); ++r) w.push_back(m.row(r));
    }
    const auto r = quotient_projective_iso(K, c.dim, w);
    Json j{{"space", describe(*r.space)},
           {"W", w},
           {"exceptional", to_ids(r.exceptional)},
           {"quotient_points", r.quotient->size()},
           {"target", describe(*r.target)},
           {"forward", r.forward.images},
           {"backward", r.backward.images},
           {"composites_identity", r.composites_identity},
           {"both_morphisms", r.both_morphisms}};
    return emit(c, j, r.ok() ? kPass : kViolation);
  }
  fail(ErrorKind::InvalidInput, "unknown theorem '" + theorem + "'");
}

int cmd_counterexample(const Config& c, const std::string& kind) {
  const auto q = field_of(c.q)->order();
  Json map_json, witness_json, result;
  int code = kPass;
  if (kind == "octagon") {
    const auto r = counterexample_octagon(q);
    map_json = map_to_json(r.map);
    witness_json = extension_to_json(r.extension);
    result = Json{{"conic", r.conic}, {"sides", r.sides}, {"is_morphism", r.is_morphism},
                  {"extends", r.extension.success()}};
    if (r.extension.witness) result["witness"] = witness_json["witness"];
    code = r.is_morphism && !r.extension.success() ? kPass : kViolation;
  } else if (kind == "hesse") {
    const auto r = counterexample_hesse(q);
    map_json = map_to_json(r.embedding);
    witness_json = Json{{"no_field_morphism_from_GF3", r.no_field_morphism}, {"extension", extension_to_json(r.extension)}};
    result = Json{{"points", r.embedding.images}, {"is_embedding", r.is_embedding},
                  {"no_field_morphism", r.no_field_morphism}, {"extends", r.extension.success()},
                  {"certified", r.certified()}};
    if (r.extension.witness) result["witness"] = extension_to_json(r.extension)["witness"];
    code = r.certified() ? kPass : kViolation;
  } else {
    fail(ErrorKind::InvalidInput, "unknown counterexample '" + kind + "'");
  }
  const std::filesystem::path dir = c.output.empty() ? "." : c.output;
  std::filesystem::create_directories(dir);
  const std::string stem = kind + "-q" + c.q;
  write_file((dir / (stem + "-map.json")).string(), map_json.dump(2) + "\n");
  write_file((dir / (stem + "-witness.json")).string(), witness_json.dump(2) + "\n");
  result["files"] = {stem + "-map.json", stem + "-witness.json"};
  return emit(c, result, code);
}

GeoMap load_map(const Config& c) { return map_from_json(load_json(c.input, "--input")); }

int cmd_extend(const Config& c) {
  GeoMap f = load_map(c);
  if (f.codomain->backend() == Backend::Affine) f = into_closure(f, projective_closure(f.codomain));
  ExtensionOptions opts;
  opts.workers = c.workers;
  const auto r = extend_to_closure(f, opts);
  return emit(c, extension_to_json(r), r.success() ? kPass : kViolation);
}

int cmd_decompose(const Config& c) {
  const auto d = fractional_decompose(load_map(c));
  return emit(c, fractional_to_json(d), kPass);
}

int cmd_affine(const Config& c, const std::string& action) {
  const GeoMap f = load_map(c);
  if (action == "extract") return emit(c, semiaffine_to_json(semiaffine_extract(f)), kPass);
  if (action == "parallel") {
    const auto r = is_parallel_morphism(f);
    Json j{{"is_parallel", r.is_parallel}, {"witness", r.witness}};
    if (r.oracle_agrees) j["oracle_agrees"] = *r.oracle_agrees;
    return emit(c, j, r.is_parallel ? kPass : kViolation);
  }
  fail(ErrorKind::InvalidInput, "unknown affine action '" + action + "'");
}

int cmd_enumerate(const Config& c) {
  auto X = geometry_from_json(load_json(c.geometry, "--geometry"));
  auto Y = geometry_from_json(load_json(c.target, "--target"));
  SearchStats stats;
  const auto maps = enumerate_morphisms(X, Y, parse_filter(c.filter), SearchOptions{c.budget, c.workers}, &stats);
  for (const auto& m : maps) std::cout << Json{{"images", m.images}}.dump() << "\n";
  Json result{{"count", maps.size()}, {"nodes", stats.nodes}};
  const Json report = make_report(config_json(c), result);
  std::cout << report.dump() << "\n";
  if (!c.output.empty()) write_file(c.output, dump(c, report));
  return kPass;
}

int exit_for(const GeomError& e) {
  switch (e.kind()) {
    case ErrorKind::SearchBudgetExceeded:
    case ErrorKind::BoundExceeded:
      return kBudget;
    case ErrorKind::NotSemiaffine:
    case ErrorKind::DecompositionFailed:
      return kViolation;
    default:
      return kUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite incidence geometries: axioms, morphisms, fundamental theorems, extensions"};
  app.set_version_flag("--version", GEOMKIT_VERSION);
  app.require_subcommand(1);
  Config c;
  std::string theorem, kind, action;

  auto common = [&](CLI::App* s) {
    s->add_option("--budget", c.budget, "Node-expansion cap")->check(CLI::PositiveNumber);
    s->add_option("--workers", c.workers, "Worker threads")->check(CLI::PositiveNumber);
    s->add_option("--format", c.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    s->add_option("--seed", c.seed, "Seed for generated corpora");
    s->add_option("--output", c.output, "Write the report here (a directory for counterexample)");
  };

  auto* check = app.add_subcommand("check", "Check geometry or synthetic axioms");
  check->add_option("--geometry", c.geometry, "Geometry JSON, inline or a file");
  check->add_option("--input", c.input, "Input file");
  check->add_option("--synthetic", c.synthetic, "affine or projective incidence input");
  common(check);

  auto* verify = app.add_subcommand("verify", "Verify a theorem at desk scale");
  verify->add_option("theorem", theorem, "ft-affine, ft-projective, extension or quotient-iso")
      ->required()
      ->check(CLI::IsMember({"ft-affine", "ft-projective", "extension", "quotient-iso"}));
  verify->add_option("--q", c.q, "Field order of the domain");
  verify->add_option("--n", c.n, "Dimension of the domain space");
  verify->add_option("--target-q", c.target_q, "Field order of the codomain");
  verify->add_option("--target-n", c.target_n, "Dimension of the codomain space");
  verify->add_option("--dim", c.dim, "Vector dimension for quotient-iso");
  verify->add_option("--wdim", c.wdim, "Dimension of W for quotient-iso");
  verify->add_option("--count", c.count, "Semiaffine maps in the extension suite");
  verify->add_option("--fractional-count", c.fractional_count, "Fractional maps in the extension suite");
  common(verify);

  auto* counter = app.add_subcommand("counterexample", "Build a non-extendable morphism");
  counter->add_option("kind", kind, "octagon or hesse")->required()->check(CLI::IsMember({"octagon", "hesse"}));
  counter->add_option("--q", c.q, "Field order of the target plane")->required();
  common(counter);

  auto* extend = app.add_subcommand("extend", "Extend a morphism A -> P' to the projective closure");
  extend->add_option("--input", c.input, "Map JSON")->required();
  extend->add_option("--report", c.output, "Report file");
  common(extend);

  auto* decompose = app.add_subcommand("decompose", "Fractional semilinear decomposition of a map V -> V'");
  decompose->add_option("--map,--input", c.input, "Map JSON")->required();
  common(decompose);

  auto* affine = app.add_subcommand("affine", "Semiaffine extraction and parallelism");
  affine->add_option("action", action, "extract or parallel")->required()->check(CLI::IsMember({"extract", "parallel"}));
  affine->add_option("--input", c.input, "Map JSON")->required();
  common(affine);

  auto* enumerate = app.add_subcommand("enumerate", "Enumerate morphisms as JSON lines");
  enumerate->add_option("--geometry", c.geometry, "Domain geometry")->required();
  enumerate->add_option("--target", c.target, "Codomain geometry")->required();
  enumerate->add_option("--filter", c.filter, "all, image_not_in_line, bijective or constant");
  common(enumerate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*check) return c.command = "check", cmd_check(c);
    if (*verify) return c.command = "verify " + theorem, cmd_verify(c, theorem);
    if (*counter) return c.command = "counterexample", cmd_counterexample(c, kind);
    if (*extend) return c.command = "extend", cmd_extend(c);
    if (*decompose) return c.command = "decompose", cmd_decompose(c);
    if (*affine) return c.command = "affine " + action, cmd_affine(c, action);
    if (*enumerate) return c.command = "enumerate", cmd_enumerate(c);
  } catch (const GeomError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
