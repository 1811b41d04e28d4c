#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "gca/explore.hpp"
#include "gca/io.hpp"
#include "gca/pattern.hpp"
#include "gca/verify.hpp"

using namespace gca;

namespace {

struct RunConfig {
  std::string seed_file;
  std::string word = "";
  int depth = 8;
  int trials = 100;
  std::uint64_t rand_seed = 1;
  std::size_t budget = 20000;
  int max_seeds = 5000;
  std::string suite = "all";
  std::string out;
  bool text = false;
  bool unlabeled = false;
};

json seed_report(const Seed& s, const std::optional<CompatiblePair>& cp) {
  json out = seed_to_json(s);
  if (cp) out["Lambda"] = matrix_to_json(cp->Lambda());
  return out;
}

std::pair<json, int> cmd_mutate(const RunConfig& cfg) {
  const SeedSpec spec = load_seed_file(cfg.seed_file);
  const Word w = parse_word(cfg.word, spec.md.n());
  Seed s = Seed::initial(spec.md, spec.bt);
  std::optional<CompatiblePair> cp = spec.compatible_pair();
  json steps = json::array();
  for (int k : w) {
    s = mutate_seed(s, k);
    if (cp) cp = mutate_compatible_pair(*cp, k);
    steps.push_back({{"direction", k + 1}, {"Btilde", matrix_to_json(s.Btilde())},
                     {"new_variable", to_string(s.x()[k])}});
  }
  json report{{"command", "mutate"}, {"seed_file", spec.source}, {"word", word_to_json(w)}, {"steps", steps}};
  report["seed"] = seed_report(s, cp);
  return {report, 0};
}

std::pair<json, int> cmd_pattern(const RunConfig& cfg) {
  const SeedSpec spec = load_seed_file(cfg.seed_file);
  const Word w = parse_word(cfg.word, spec.md.n());
  PatternOptions opts;
  opts.strict = false;
  const PatternState st = run_pattern(spec.md, spec.bt, w, opts);
  CheckReport rep = check_dualities(st);
  json fpolys = json::array();
  for (int i = 0; i < spec.md.n(); ++i) {
    fpolys.push_back(to_string(st.Fpolys()[i]));
    const auto f = max_divisor_monomial(st.Fpolys()[i]);
    rep.add("F-matrix column " + std::to_string(i + 1) + " is the maximal monomial of F" + std::to_string(i + 1),
            f && *f == st.Fmat().column(i), vec_str(st.Fmat().column(i)));
  }
  json checks = json::array();
  for (const auto& c : rep.checks) {
    json e{{"name", c.name}, {"pass", c.pass}};
    if (!c.pass) e["witness"] = c.witness;
    checks.push_back(e);
  }
  json report{{"command", "pattern"}, {"seed_file", spec.source}, {"vertex_word", word_to_json(w)},
              {"D", vec_to_json(st.D())}, {"Btilde", matrix_to_json(st.Btilde())}, {"F_polynomials", fpolys},
              {"checks", checks},         {"pass", rep.all_pass()}};
  report["matrices"] = {{"C_plus", matrix_to_json(st.C_plus())}, {"C_minus", matrix_to_json(st.C_minus())},
                        {"G", matrix_to_json(st.G())},           {"Gext", matrix_to_json(st.Gext())},
                        {"F", matrix_to_json(st.Fmat())}};
  return {report, rep.all_pass() ? 0 : 1};
}

std::pair<json, int> cmd_verify(const RunConfig& cfg) {
  VerifyConfig vc;
  vc.trials = cfg.trials;
  vc.depth = cfg.depth;
  vc.rand_seed = cfg.rand_seed;
  vc.max_terms = cfg.budget;
  if (!cfg.seed_file.empty()) vc.seed = load_seed_file(cfg.seed_file);
  bool pass = true;
  json suites = json::array();
  for (const auto& r : run_suites(cfg.suite, vc)) {
    pass = pass && r.pass();
    suites.push_back(r.to_json());
  }
  json report{{"command", "verify"}, {"suite", cfg.suite}, {"trials", cfg.trials}, {"depth", cfg.depth},
              {"rand_seed", cfg.rand_seed}, {"budget", cfg.budget}, {"suites", suites}, {"pass", pass}};
  report["seed_file"] = cfg.seed_file.empty() ? json(nullptr) : json(cfg.seed_file);
  return {report, pass ? 0 : 1};
}

std::pair<json, int> cmd_explore(const RunConfig& cfg) {
  const SeedSpec spec = load_seed_file(cfg.seed_file);
  ExploreOptions opts;
  opts.max_seeds = cfg.max_seeds;
  opts.max_depth = cfg.depth;
  opts.unlabeled = cfg.unlabeled;
  const Exploration ex = explore(spec.md, spec.bt, opts);
  json variables = json::array(), clusters = json::array(), edges = json::array();
  for (const auto& v : ex.variables) variables.push_back(to_string(v));
  std::set<std::vector<int>> seen;
  for (const auto& s : ex.seeds) {
    if (!seen.insert(s.cluster).second) continue;
    json c = json::array();
    for (int i : s.cluster) c.push_back(i + 1);
    clusters.push_back({{"variables", c}, {"word", word_to_json(s.word)}});
  }
  for (const auto& e : ex.edges) edges.push_back({{"from", e.from}, {"to", e.to}, {"direction", e.direction + 1}});
  json report{{"command", "explore"},         {"seed_file", spec.source},
              {"unlabeled", cfg.unlabeled},   {"closed", ex.closed},
              {"seed_count", ex.seeds.size()}, {"cluster_count", ex.cluster_count()},
              {"variables", variables},       {"clusters", clusters},
              {"edges", edges}};
  report["truncation"] = ex.closed ? json(nullptr) : json(ex.truncation);
  return {report, 0};
}

bool is_flat(const json& j) {
  if (j.is_object()) return false;
  if (!j.is_array()) return true;
  for (const auto& e : j)
    if (!is_flat(e)) return false;
  return true;
}

std::string scalar_text(const json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

void render_text(std::ostream& os, const json& j, int indent) {
  const std::string pad(indent, ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_array() && !v.empty() && v[0].is_string()) {
        os << pad << k << ":\n";
        for (const auto& e : v) os << pad << "  " << scalar_text(e) << "\n";
      } else if (is_flat(v)) {
        os << pad << k << ": " << scalar_text(v) << "\n";
      } else {
        os << pad << k << ":\n";
        render_text(os, v, indent + 2);
      }
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (is_flat(j[i])) {
        os << pad << "- " << scalar_text(j[i]) << "\n";
      } else {
        os << pad << "- [" << i + 1 << "]\n";
        render_text(os, j[i], indent + 2);
      }
    }
  } else {
    os << pad << scalar_text(j) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized cluster algebra engine"};
  app.require_subcommand(1, 1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub, bool needs_seed) {
    auto* opt = sub->add_option("--seed", cfg.seed_file, "seed file (JSON)");
    if (needs_seed) opt->required();
    sub->add_option("--out", cfg.out, "write the report to this file");
    sub->add_flag("--text", cfg.text, "human-readable report");
  };
  auto* mutate = app.add_subcommand("mutate", "mutate a seed along a word");
  add_common(mutate, true);
  mutate->add_option("--word", cfg.word, "comma-separated directions, 1-based");
  auto* pattern = app.add_subcommand("pattern", "C/G/F patterns at the end of a word");
  add_common(pattern, true);
  pattern->add_option("--word", cfg.word, "comma-separated directions, 1-based");
  auto* verify = app.add_subcommand("verify", "randomized verification suites");
  add_common(verify, false);
  verify->add_option("--suite", cfg.suite, "suite name or 'all'");
  verify->add_option("--trials", cfg.trials, "cases per suite")->check(CLI::PositiveNumber);
  verify->add_option("--depth", cfg.depth, "maximal word length")->check(CLI::PositiveNumber);
  verify->add_option("--rand-seed", cfg.rand_seed, "random seed");
  verify->add_option("--budget", cfg.budget, "maximal polynomial size before a case is skipped")
      ->check(CLI::PositiveNumber);
  auto* exp = app.add_subcommand("explore", "enumerate the exchange graph");
  add_common(exp, true);
  exp->add_option("--depth", cfg.depth, "maximal distance from the initial seed")->check(CLI::PositiveNumber);
  exp->add_option("--budget", cfg.max_seeds, "maximal number of seeds")->check(CLI::PositiveNumber);
  exp->add_flag("--unlabeled", cfg.unlabeled, "identify seeds up to permutation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (exp->parsed() && !exp->count("--depth")) cfg.depth = 64;

  std::pair<json, int> result;
  try {
    if (mutate->parsed()) result = cmd_mutate(cfg);
    if (pattern->parsed()) result = cmd_pattern(cfg);
    if (verify->parsed()) result = cmd_verify(cfg);
    if (exp->parsed()) result = cmd_explore(cfg);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error (" << error_kind(e) << "): " << e.what() << "\n";
    return 1;
  }

  std::ostringstream os;
  if (cfg.text)
    render_text(os, result.first, 0);
  else
    os << result.first.dump(2) << "\n";
  if (cfg.out.empty()) {
    std::cout << os.str();
  } else {
    std::ofstream f(cfg.out);
    if (!f) {
      std::cerr << "error: cannot write " << cfg.out << "\n";
      return 2;
    }
    f << os.str();
  }
  return result.second;
}
