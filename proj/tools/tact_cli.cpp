// Command-line front end: parse presentations, words and automorphisms, run
// the lemma suites and experiments, emit reproducible JSON/CSV/DOT reports.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "tact/quasi_tree.hpp"
#include "tact/sweeps.hpp"

using namespace tact;

namespace {

GroupPresentation parse_presentation_spec(const std::string& spec) {
  if (std::filesystem::exists(spec)) {
    std::ifstream in(spec);
    std::string line;
    int free_rank = 0;
    std::vector<int> orders;
    while (std::getline(in, line)) {
      auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      std::string key = line.substr(0, eq);
      std::string val = line.substr(eq + 1);
      auto strip = [](std::string s) {
        while (!s.empty() && std::isspace((unsigned char)s.front())) s.erase(s.begin());
        while (!s.empty() && std::isspace((unsigned char)s.back())) s.pop_back();
        return s;
      };
      key = strip(key);
      val = strip(val);
      if (key == "free_rank") free_rank = std::stoi(val);
      else if (key == "finite_orders" && !val.empty()) {
        std::istringstream vs(val);
        std::string tok;
        while (std::getline(vs, tok, ',')) orders.push_back(std::stoi(strip(tok)));
      }
    }
    return GroupPresentation(free_rank, orders);
  }
  if (spec.size() >= 2 && (spec[0] == 'F' || spec[0] == 'f') &&
      std::isdigit((unsigned char)spec[1]))
    return GroupPresentation(std::stoi(spec.substr(1)));
  int free_rank = 0;
  std::vector<int> orders;
  std::istringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ';')) {
    auto eq = part.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("bad presentation spec: " + spec);
    std::string key = part.substr(0, eq), val = part.substr(eq + 1);
    if (key == "free_rank") free_rank = std::stoi(val);
    else if (key == "finite_orders") {
      std::istringstream vs(val);
      std::string tok;
      while (std::getline(vs, tok, ',')) orders.push_back(std::stoi(tok));
    } else {
      throw std::invalid_argument("bad presentation key: " + key);
    }
  }
  return GroupPresentation(free_rank, orders);
}

TreeModel model_for(const GroupPresentation& pres) {
  if (pres.num_finite() == 0) return cayley_tree(pres.free_rank);
  return bass_serre_tree(pres);
}

void emit(const std::string& payload, const std::string& out_path) {
  if (out_path.empty()) std::cout << payload;
  else {
    std::ofstream out(out_path);
    out << payload;
  }
}

std::vector<Automorphism> load_pool(const GroupPresentation& pres, int depth,
                                    const std::string& aut_file) {
  if (aut_file.empty()) return nielsen_pool(pres, depth);
  std::ifstream in(aut_file);
  std::stringstream buf;
  buf << in.rdbuf();
  // the file may hold several automorphisms separated by blank lines
  std::vector<Automorphism> pool;
  std::string block, line;
  std::istringstream is(buf.str());
  auto flush = [&]() {
    if (!block.empty()) {
      pool.push_back(parse_automorphism(pres, block));
      block.clear();
    }
  };
  while (std::getline(is, line)) {
    if (line.empty()) flush();
    else block += line + "\n";
  }
  flush();
  return pool;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact computations for group actions on simplicial trees"};
  app.require_subcommand(1);

  std::string presentation = "F2";
  std::uint64_t seed = 1;
  std::string format = "json";
  std::string out_path;
  int workers = 2;
  app.add_option("--presentation", presentation,
                 "presentation file or inline spec (F2, free_rank=1;finite_orders=2)");
  app.add_option("--seed", seed, "random seed recorded in every report");
  app.add_option("--format", format, "json | text | dot | csv")
      ->check(CLI::IsMember({"json", "text", "dot", "csv"}));
  app.add_option("--out", out_path, "output path (stdout when omitted)");
  app.add_option("--workers", workers, "worker threads for the sweeps");

  auto* analyze = app.add_subcommand("analyze", "normal form, root, axis data of one word");
  analyze->fallthrough();
  std::string word_text;
  int ball_radius = 0;
  analyze->add_option("--word", word_text, "word in ASCII form")->required();
  analyze->add_option("--ball-dot", ball_radius,
                      "with --format dot: emit the tree ball of this radius at the base vertex");

  auto* lemmas = app.add_subcommand("lemmas", "tree-lemma and fold suites");
  lemmas->fallthrough();
  int budget_words = 5;
  int budget_samples = 100;
  bool corrupt = false;
  lemmas->add_option("--budget-words", budget_words, "exhaustive word length bound");
  lemmas->add_option("--budget-samples", budget_samples, "randomized instances per suite");
  lemmas->add_flag("--self-test-corrupt", corrupt,
                   "deliberately corrupt one verdict (harness self-test)");

  auto* complex_cmd = app.add_subcommand("complex", "projection family, axioms, quasi-tree");
  complex_cmd->fallthrough();
  std::string complex_word = "abAB";
  int pool_depth = 3;
  std::int64_t k_param = 0;
  std::int64_t window = 0;
  int probe_quadruples = 2000;
  int sandwich_samples = 200;
  std::string aut_file;
  complex_cmd->add_option("--word", complex_word, "base element g");
  complex_cmd->add_option("--pool-depth", pool_depth, "Nielsen pool depth");
  complex_cmd->add_option("--pool-file", aut_file, "automorphism pool file (move lists)");
  complex_cmd->add_option("--K", k_param, "quasi-tree parameter (0 = 4 theta + 1)");
  complex_cmd->add_option("--window", window, "axis window radius (0 = auto)");
  complex_cmd->add_option("--budget-quadruples", probe_quadruples, "hyperbolicity probe size");
  complex_cmd->add_option("--budget-samples", sandwich_samples, "sandwich sample count");

  auto* persistence_cmd = app.add_subcommand("persistence", "persistence estimates and twists");
  persistence_cmd->fallthrough();
  std::string pword = "abAB";
  int c_max = 3;
  int p_pool_depth = 3;
  int trials = 3;
  int m_max = 6;
  persistence_cmd->add_option("--word", pword, "base element g");
  persistence_cmd->add_option("--c-max", c_max, "largest C to estimate");
  persistence_cmd->add_option("--pool-depth", p_pool_depth, "Nielsen pool depth");
  persistence_cmd->add_option("--budget-trials", trials, "partners per overlap bucket");
  persistence_cmd->add_option("--budget-m", m_max, "largest overlap multiple");

  auto* folds_cmd = app.add_subcommand("folds", "fold decomposition and BBT suites");
  folds_cmd->fallthrough();
  int fold_samples = 25;
  int bbt_triples = 200;
  std::string moves_out;
  folds_cmd->add_option("--budget-samples", fold_samples, "random morphisms");
  folds_cmd->add_option("--budget-triples", bbt_triples, "BBT triples per morphism");
  folds_cmd->add_option("--export-moves", moves_out, "write one decomposition move log here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    GroupPresentation pres = parse_presentation_spec(presentation);
    TreeModel model = model_for(pres);
    Stopwatch watch;
    SuiteResult suite;
    suite.config = {{"presentation", pres.describe()},
                    {"seed", seed},
                    {"workers", workers},
                    {"format", format}};
    std::string extra_text;

    if (*analyze) {
      suite.command = "analyze";
      ReducedWord w = parse_word(pres, word_text);
      suite.config["word"] = word_text;
      CheckReport r;
      r.lemma_id = "analyze";
      r.inputs = {{"word", word_text}};
      auto cd = cyclic_reduce(pres, w);
      json data{{"reduced", word_str(pres, w)},
                {"length", w.size()},
                {"cyclic_core", word_str(pres, cd.core)},
                {"conjugator", word_str(pres, cd.conjugator)},
                {"translation_length", translation_length(model, w)}};
      if (w.empty()) {
        data["identity"] = true;
      } else if (translation_length(model, w) == 0) {
        data["elliptic"] = true;
        auto cs = char_set(model, w);
        data["fixed_vertex"] = vertex_str(model, std::get<FixedSetDescriptor>(cs).vertex);
      } else {
        auto rt = root(pres, w);
        data["root"] = word_str(pres, rt.root);
        data["root_exponent"] = rt.exponent;
        auto ax = axis_of(model, w);
        data["axis_base"] = vertex_str(model, ax.base);
        data["axis_period"] = word_str(pres, ax.period);
        if (pres.num_finite() == 0) data["primitive"] = is_primitive(pres, w);
      }
      r.computed = data;
      r.verdict = "pass";
      suite.checks.push_back(r);
      if (ball_radius > 0 && format == "dot")
        extra_text = ball_to_dot(model, base_vertex(model), ball_radius);
    } else if (*lemmas) {
      suite.command = "lemmas";
      suite.config["budget_words"] = budget_words;
      suite.config["budget_samples"] = budget_samples;
      if (budget_words < 1 || budget_samples < 1) {
        CheckReport r;
        r.lemma_id = "lemma-suites";
        r.verdict = "skipped";
        r.reason = "zero budgets";
        suite.checks.push_back(r);
      } else {
        suite.checks.push_back(paulin_sweep_f2(std::min(budget_words, 6), workers));
        suite.checks.push_back(paulin_sweep_product(GroupPresentation(0, {2, 3}), 4));
        TreeModel f2 = cayley_tree(2);
        suite.checks.push_back(far_projection_suite(f2, budget_samples, seed));
        suite.checks.push_back(direction_suite(f2, budget_samples, derive_seed(seed, 2)));
        suite.checks.push_back(
            direction_suite(bass_serre_tree(GroupPresentation(0, {2, 3})),
                            budget_samples / 2 + 1, derive_seed(seed, 3)));
        suite.checks.push_back(
            axis_intersection_suite(f2, budget_samples, 4, derive_seed(seed, 4)));
        suite.checks.push_back(overlap_lemma_sweep_f2(std::min(budget_words + 1, 8), workers));
        suite.checks.push_back(
            folds_suite(GroupPresentation(2), std::max(5, budget_samples / 10), 100,
                        derive_seed(seed, 5)));
        suite.checks.push_back(collapse_counting_suite(GroupPresentation(2), 5,
                                                       budget_samples, derive_seed(seed, 6)));
        if (corrupt) {
          CheckReport bad;
          bad.lemma_id = "self-test-corrupted";
          bad.verdict = "fail";
          bad.reason = "deliberate corruption for harness self-test";
          suite.checks.push_back(bad);
        }
      }
    } else if (*complex_cmd) {
      suite.command = "complex";
      ReducedWord g = parse_word(pres, complex_word);
      suite.config["word"] = complex_word;
      suite.config["pool_depth"] = pool_depth;
      auto pool = load_pool(pres, pool_depth, aut_file);
      auto fam = build_family(model, g, pool);
      if (fam.size() < 2)
        throw std::invalid_argument(
            "complex: the pool produced a single axis class; every automorphism moved g "
            "inside E(g), so there is nothing to project");
      auto table = build_projection_table(model, fam);
      AxiomOptions opt;
      // a cheap persistence estimate feeds the theta formula
      if (pres.num_finite() == 0) {
        PersistenceExperiment pexp;
        pexp.g = cyclic_reduce(pres, g).core;
        pexp.pool = nielsen_pool(pres, std::min(pool_depth, 2));
        pexp.trials_per_m = 2;
        pexp.m_max = 6;
        pexp.seed = seed;
        auto pest = estimate(model, pexp);
        opt.n_2d1 = std::max<std::int64_t>(1, pest.n_hat[3] < 0 ? 6 : pest.n_hat[3]);
        opt.n_k = opt.n_2d1;
      }
      auto axioms = verify_axioms(model, fam, table, opt);
      CheckReport ar;
      ar.lemma_id = "projection-axioms";
      ar.computed = axioms;
      ar.verdict = (axioms.p0_pass && axioms.p1_pass) ? "pass" : "fail";
      suite.checks.push_back(ar);

      std::int64_t theta = axioms.theta_empirical;
      std::int64_t K = k_param > 0 ? k_param : 4 * theta + 1;
      std::int64_t max_len = 0;
      for (const auto& rep : fam.representatives) max_len = std::max(max_len, rep.axis.length);
      std::int64_t R = window > 0 ? window : 8 * max_len;
      auto qt = build_complex(fam, table, K, R, theta);
      CheckReport cr;
      cr.lemma_id = "quasi-tree-window";
      cr.computed = {{"K", K},
                     {"window_radius", R},
                     {"axes", qt.n_axes},
                     {"portals", qt.portals.size()},
                     {"truncated_pairs", qt.truncated_pairs},
                     {"warnings", qt.warnings}};
      cr.verdict = "pass";
      suite.checks.push_back(cr);
      suite.checks.push_back(distance_sandwich_check(qt, theta, sandwich_samples, seed));
      auto est = hyperbolicity_probe(qt, probe_quadruples, derive_seed(seed, 9));
      CheckReport hr;
      hr.lemma_id = "hyperbolicity-probe";
      hr.computed = {{"delta_hat", est.delta_hat},
                     {"components", est.component_count},
                     {"quadruples", est.quadruples},
                     {"threshold_2K", 2 * K}};
      hr.verdict = est.delta_hat <= double(2 * K) ? "pass" : "fail";
      suite.checks.push_back(hr);
      if (format == "dot") extra_text = complex_to_dot(qt);
    } else if (*persistence_cmd) {
      suite.command = "persistence";
      ReducedWord g = parse_word(pres, pword);
      suite.config["word"] = pword;
      if (pres.num_finite() != 0)
        throw std::invalid_argument("persistence: pure free groups only");
      bool primitive = !g.empty() && is_primitive(pres, g);
      if (primitive) {
        suite.checks.push_back(basis_element_counterexample(model, 50));
      } else {
        PersistenceExperiment exp;
        exp.g = cyclic_reduce(pres, g).core;
        exp.pool = nielsen_pool(pres, p_pool_depth);
        exp.c_values.clear();
        for (int c = 1; c <= c_max; ++c) exp.c_values.push_back(c);
        exp.trials_per_m = trials;
        exp.m_max = m_max;
        exp.seed = seed;
        auto est = estimate(model, exp);
        CheckReport er;
        er.lemma_id = "persistence-estimate";
        er.computed = estimate_to_json(model, exp, est);
        er.verdict = est.failures.empty() ? "pass" : "fail";
        suite.checks.push_back(er);
        if (format == "csv") extra_text = trials_to_csv(est);
      }
    } else if (*folds_cmd) {
      suite.command = "folds";
      suite.config["budget_samples"] = fold_samples;
      GroupPresentation fold_pres = pres.num_finite() == 0 ? pres : GroupPresentation(2);
      suite.checks.push_back(folds_suite(fold_pres, fold_samples, bbt_triples, seed));
      suite.checks.push_back(
          collapse_counting_suite(fold_pres, 5, fold_samples * 4, derive_seed(seed, 31)));
      if (!moves_out.empty()) {
        GraphMorphism f = random_morphism(GroupPresentation(2), seed);
        std::ofstream mo(moves_out);
        mo << fold_sequence_str(fold_decompose(f, GroupPresentation(2)));
      }
    }

    suite.timing_ms = watch.ms();
    std::string payload;
    if (format == "text") {
      std::ostringstream os;
      os << suite.command << ": " << suite.overall() << "\n";
      for (const auto& c : suite.checks)
        os << "  [" << c.verdict << "] " << c.lemma_id
           << (c.reason.empty() ? "" : "  (" + c.reason + ")") << "\n";
      payload = os.str();
    } else if ((format == "dot" || format == "csv") && !extra_text.empty()) {
      payload = extra_text;
    } else {
      json j = suite;
      payload = j.dump(2) + "\n";
    }
    emit(payload, out_path);
    return suite.any_failed() ? 1 : 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
