#include "symctl/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "symctl/catalog.hpp"
#include "symctl/flow.hpp"

namespace symctl::cli {

using nlohmann::json;

namespace {

constexpr double kMinFittedOrder = 0.9;

const std::vector<double> kDefaultTGrid = {1e-1, 3e-2, 1e-2, 3e-3, 1e-3};

// The matrices a command works on, with the labels used to print words.
struct Problem {
  std::optional<CatalogEntry> entry;
  std::string source;
  std::vector<Matrix> ambient;
  std::vector<int> ambient_labels;
  std::vector<std::string> ambient_names;
  std::vector<Matrix> generators;
  std::vector<int> generator_labels;
  std::vector<std::string> generator_names;
  std::optional<int> target_dim;

  int require_target() const {
    if (!target_dim) throw InputError("target_dim", "missing (use --target-dim or the input file)");
    return *target_dim;
  }
};

Problem load_catalog(const RunConfig& config) {
  std::map<std::string, double> params;
  if (config.pitch) params["pitch"] = *config.pitch;
  Problem p;
  try {
    p.entry = catalog_get(config.catalog_id, params);
  } catch (const std::invalid_argument& e) {
    throw InputError("catalog", e.what());
  }
  const CatalogEntry& entry = *p.entry;
  p.source = entry.id;
  for (const NamedMatrix& m : entry.ambient) {
    p.ambient.push_back(m.matrix);
    p.ambient_labels.push_back(m.label);
    p.ambient_names.push_back(m.name);
  }
  std::vector<const NamedMatrix*> chosen;
  try {
    if (config.generators.empty()) {
      for (int label : entry.generator_labels) chosen.push_back(&entry.by_label(label));
    } else {
      for (const std::string& name : config.generators) chosen.push_back(&entry.by_name(name));
    }
  } catch (const std::invalid_argument& e) {
    throw InputError("generators", e.what());
  }
  for (const NamedMatrix* m : chosen) {
    p.generators.push_back(m->matrix);
    p.generator_labels.push_back(m->label);
    p.generator_names.push_back(m->name);
  }
  p.target_dim = entry.target_dim;
  return p;
}

Problem load_file(const RunConfig& config) {
  std::ifstream in(config.file);
  if (!in) throw InputError("file", "cannot read '" + config.file + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("file", std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw InputError("file", "expected a JSON object");
  if (!j.contains("generators") && !j.contains("ambient")) {
    throw InputError("generators", "missing");
  }

  Problem p;
  p.source = config.file;
  if (j.contains("generators")) p.generators = matrices_from_json(j["generators"], "generators");
  if (j.contains("ambient")) p.ambient = matrices_from_json(j["ambient"], "ambient");
  if (p.generators.empty()) p.generators = p.ambient;
  if (p.ambient.empty()) p.ambient = p.generators;
  if (p.ambient.front().dim() != p.generators.front().dim()) {
    throw InputError("ambient", "dimension mismatch with generators");
  }

  if (j.contains("labels")) {
    const json& labels = j["labels"];
    if (!labels.is_array() || labels.size() != p.generators.size()) {
      throw InputError("labels", "expected one integer label per generator");
    }
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (!labels[i].is_number_integer() || labels[i].get<int>() < 1) {
        throw InputError("labels[" + std::to_string(i) + "]", "expected a positive integer");
      }
      p.generator_labels.push_back(labels[i].get<int>());
    }
  } else {
    for (std::size_t i = 0; i < p.generators.size(); ++i) {
      p.generator_labels.push_back(static_cast<int>(i + 1));
    }
  }
  for (int label : p.generator_labels) p.generator_names.push_back("g" + std::to_string(label));
  for (std::size_t i = 0; i < p.ambient.size(); ++i) {
    p.ambient_labels.push_back(static_cast<int>(i + 1));
    p.ambient_names.push_back("b" + std::to_string(i + 1));
  }

  if (j.contains("target_dim")) {
    if (!j["target_dim"].is_number_integer() || j["target_dim"].get<int>() < 1) {
      throw InputError("target_dim", "expected a positive integer");
    }
    p.target_dim = j["target_dim"].get<int>();
  }
  return p;
}

Problem load_problem(const RunConfig& config) {
  if (!config.catalog_id.empty() && !config.file.empty()) {
    throw InputError("input", "give either --catalog or --file, not both");
  }
  if (config.catalog_id.empty() && config.file.empty()) {
    throw InputError("input", "missing --catalog or --file");
  }
  if (!config.file.empty() && !config.generators.empty()) {
    throw InputError("generators", "--generators only applies to catalog entries");
  }
  Problem p = config.file.empty() ? load_catalog(config) : load_file(config);
  if (config.target_dim) p.target_dim = *config.target_dim;
  return p;
}

// Parses a word written with generator labels and re-indexes it to positions
// in the generator list.
BracketWord parse_word(const std::string& text, const Problem& p) {
  BracketWord labelled = BracketWord::leaf(1);
  try {
    labelled = BracketWord::parse(text);
  } catch (const std::invalid_argument& e) {
    throw InputError("word", e.what());
  }
  std::vector<int> mapping(static_cast<std::size_t>(labelled.max_index()), 0);
  for (std::size_t pos = 0; pos < p.generator_labels.size(); ++pos) {
    const int label = p.generator_labels[pos];
    if (label <= labelled.max_index() && mapping[static_cast<std::size_t>(label - 1)] == 0) {
      mapping[static_cast<std::size_t>(label - 1)] = static_cast<int>(pos + 1);
    }
  }
  try {
    return labelled.relabel(mapping);
  } catch (const std::logic_error&) {
    throw InputError("word", "word '" + text + "' uses a label that is not a selected generator");
  }
}

json names_json(const std::vector<std::string>& names) { return json(names); }

json published_claims(const Problem& p, const ClosureReport& closure) {
  json out = json::object();
  if (!p.entry) return out;
  const CatalogEntry& entry = *p.entry;
  const std::vector<Matrix> ambient = entry.ambient_matrices();
  json claims = json::array();
  for (const BracketClaim& c : entry.claims) {
    const NamedMatrix& a = entry.by_label(c.operands[0]);
    const NamedMatrix& b = entry.by_label(c.operands[1]);
    const NamedMatrix& d = entry.by_label(c.operands[2]);
    const Matrix computed = double_bracket(a.matrix, b.matrix, d.matrix);
    const std::vector<double> coeffs = coordinates(computed, ambient);
    const bool agrees = distance(computed, evaluate_combination(c.value, entry)) <=
                        kDefaultTol * std::max(1.0, computed.frobenius_norm());
    claims.push_back({{"expression", "[[" + a.name + "," + b.name + "]," + d.name + "]"},
                      {"published", format_combination(c.value, entry)},
                      {"computed", format_combination(coeffs, p.ambient_names)},
                      {"agrees", agrees}});
  }
  out["brackets"] = std::move(claims);

  std::vector<int> chosen = p.generator_labels;
  std::vector<int> suggested = entry.generator_labels;
  std::sort(chosen.begin(), chosen.end());
  std::sort(suggested.begin(), suggested.end());
  if (entry.claimed_controllable && chosen == suggested) {
    out["controllable"] = {{"published", *entry.claimed_controllable},
                           {"computed", closure.controllable},
                           {"agrees", *entry.claimed_controllable == closure.controllable}};
  }
  return out;
}

json closure_json(const Problem& p, const ClosureReport& closure) {
  json report = closure_report_json(closure, p.generator_labels);
  report["system"] = p.source;
  report["generators"] = names_json(p.generator_names);
  if (!closure.controllable && closure.dim > 0) {
    const std::vector<Matrix> basis = closure.basis.members();
    json blocks = invariant_blocks(basis);
    json missing = json::array();
    for (std::size_t i = 0; i < p.ambient.size(); ++i) {
      if (!closure.basis.contains(p.ambient[i]).member) missing.push_back(p.ambient_names[i]);
    }
    report["witness"] = {{"blocks", std::move(blocks)}, {"missing", std::move(missing)}};
  }
  return report;
}

RunResult finish(json report, int code, const RunConfig& config) {
  report["exit_code"] = code;
  return {code, render(report, config.format)};
}

RunResult run_check(const RunConfig& config, const Problem& p, bool close_only) {
  const int target = close_only ? p.target_dim.value_or(0) : p.require_target();
  const ChowResult result = chow_check(p.generators, target, config.tol, config.max_depth);
  json report = closure_json(p, result.closure);
  json certificate = json::array();
  for (const BracketWord& w : result.certificate) certificate.push_back(w.to_string(p.generator_labels));
  report["certificate"] = std::move(certificate);
  if (config.paper_mode) report["published_claims"] = published_claims(p, result.closure);
  int code = kExitOk;
  if (close_only) {
    code = result.closure.stabilized ? kExitOk : kExitFailed;
  } else {
    code = result.controllable ? kExitOk : kExitFailed;
  }
  return finish(std::move(report), code, config);
}

RunResult run_min_controls(const RunConfig& config, const Problem& p) {
  const int target = p.require_target();
  std::vector<std::vector<std::size_t>> subsets;
  try {
    subsets = minimal_generators(p.ambient, target, config.mode, config.tol);
  } catch (const std::invalid_argument& e) {
    throw InputError("ambient", e.what());
  }
  json list = json::array();
  for (const auto& subset : subsets) {
    json names = json::array();
    for (std::size_t i : subset) names.push_back(p.ambient_names[i]);
    list.push_back(std::move(names));
  }
  json report{{"system", p.source},
              {"mode", config.mode == SearchMode::kExhaustive ? "exhaustive" : "greedy"},
              {"target_dim", target},
              {"minimum_size", subsets.empty() ? 0 : subsets.front().size()},
              {"subsets", std::move(list)}};
  return finish(std::move(report), subsets.empty() ? kExitFailed : kExitOk, config);
}

RunResult run_verify_axioms(const RunConfig& config, const Problem& p) {
  AxiomOptions options;
  options.tol = config.tol;
  options.lift_cap = config.lift_cap;
  const AxiomReport axioms = verify_lts_axioms(p.ambient, options);
  const SubspaceCheck closed = is_lts_subspace(p.ambient, config.tol);
  json report = axiom_report_json(axioms);
  report["system"] = p.source;
  report["basis"] = names_json(p.ambient_names);
  json subspace{{"closed", closed.closed}};
  if (closed.witness) {
    const TripleWitness& w = *closed.witness;
    subspace["witness"] = {{"triple", {p.ambient_names[w.a], p.ambient_names[w.b], p.ambient_names[w.c]}},
                           {"residual", w.residual}};
  }
  report["lts_subspace"] = std::move(subspace);
  const bool ok = axioms.all_passed() && closed.closed;
  return finish(std::move(report), ok ? kExitOk : kExitFailed, config);
}

bool certified(const ConvergenceReport& conv) {
  return conv.exact || conv.fitted_order >= kMinFittedOrder;
}

WordFlowConvention convention(const RunConfig& config) {
  return config.literal_words ? WordFlowConvention::kLiteral : WordFlowConvention::kInverse;
}

std::vector<BracketWord> certificate_words(const RunConfig& config, const Problem& p) {
  const ChowResult chow = chow_check(p.generators, p.require_target(), config.tol, config.max_depth);
  if (!chow.controllable) {
    throw InputError("generators", "not controllable: no certificate (closure dim " +
                                       std::to_string(chow.closure.dim) + " of " +
                                       std::to_string(p.require_target()) + ")");
  }
  return chow.certificate;
}

RunResult run_flow_cert(const RunConfig& config, const Problem& p) {
  const std::vector<double>& grid = config.t_grid.empty() ? kDefaultTGrid : config.t_grid;
  const Matrix x = Matrix::identity(p.generators.front().dim());

  if (config.flow_kind == FlowCertKind::kGamma) {
    BracketWord word = BracketWord::node(BracketWord::leaf(1), BracketWord::leaf(2),
                                         BracketWord::leaf(std::min<int>(3, static_cast<int>(p.generators.size()))));
    if (!config.word.empty()) word = parse_word(config.word, p);
    if (word.length() != 3 || word.depth() != 1) {
      throw InputError("word", "gamma certification needs a word [[a,b],c] of length 3");
    }
    if (p.generators.size() < 2 && config.word.empty()) {
      throw InputError("generators", "gamma certification needs at least two generators");
    }
    const auto& g = p.generators;
    const ConvergenceReport conv =
        gamma_convergence(g[static_cast<std::size_t>(word.left().index() - 1)],
                          g[static_cast<std::size_t>(word.mid().index() - 1)],
                          g[static_cast<std::size_t>(word.right().index() - 1)], x, grid,
                          config.richardson);
    json report = convergence_report_json(conv);
    report["word"] = word.to_string(p.generator_labels);
    report["system"] = p.source;
    report["required_order"] = kMinFittedOrder;
    return finish(std::move(report), certified(conv) ? kExitOk : kExitFailed,
                  config);
  }

  if (config.flow_kind == FlowCertKind::kWord) {
    std::vector<BracketWord> words;
    if (config.word.empty()) {
      words = certificate_words(config, p);
    } else {
      words.push_back(parse_word(config.word, p));
    }
    json reports = json::array();
    bool ok = true;
    for (const BracketWord& w : words) {
      const ConvergenceReport conv =
          word_tangency(w, x, p.generators, grid, config.richardson, convention(config));
      json r = convergence_report_json(conv);
      r["word"] = w.to_string(p.generator_labels);
      ok = ok && certified(conv);
      reports.push_back(std::move(r));
    }
    json report{{"system", p.source}, {"required_order", kMinFittedOrder}, {"words", std::move(reports)}};
    return finish(std::move(report), ok ? kExitOk : kExitFailed, config);
  }

  const std::vector<BracketWord> words = certificate_words(config, p);
  const JacobianRank jr = phi_jacobian_rank(words, x, p.generators, config.h, config.tol,
                                            convention(config));
  json names = json::array();
  for (const BracketWord& w : words) names.push_back(w.to_string(p.generator_labels));
  const bool full = jr.rank == static_cast<int>(words.size());
  json report{{"system", p.source},
              {"words", std::move(names)},
              {"h", config.h},
              {"rank", jr.rank},
              {"full_rank", full},
              {"singular_values", jr.singular_values},
              {"smallest_retained_ratio", jr.smallest_retained_ratio}};
  return finish(std::move(report), full ? kExitOk : kExitFailed, config);
}

RunResult run_catalog(const RunConfig& config) {
  if (config.catalog_action == CatalogAction::kList) {
    json entries = json::array();
    for (const CatalogListing& l : catalog_list()) {
      entries.push_back({{"id", l.id}, {"dimension", l.dimension}, {"description", l.description}});
    }
    return finish(json{{"entries", std::move(entries)}}, kExitOk, config);
  }
  if (config.catalog_id.empty()) throw InputError("id", "catalog export needs an entry id");
  std::map<std::string, double> params;
  if (config.pitch) params["pitch"] = *config.pitch;
  try {
    return finish(catalog_entry_json(catalog_get(config.catalog_id, params)), kExitOk, config);
  } catch (const std::invalid_argument& e) {
    throw InputError("catalog", e.what());
  }
}

RunResult error_result(const RunConfig& config, const std::string& message,
                       const std::string& field) {
  json report{{"error", message}};
  if (!field.empty()) report["field"] = field;
  return finish(std::move(report), kExitUsage, config);
}

}  // namespace

void validate(const RunConfig& config) {
  if (!(config.tol > 0.0)) throw InputError("tol", "must be positive");
  if (!(config.h > 0.0)) throw InputError("h", "must be positive");
  for (std::size_t i = 0; i < config.t_grid.size(); ++i) {
    if (!(config.t_grid[i] > 0.0)) throw InputError("t_grid", "values must be positive");
    if (i > 0 && !(config.t_grid[i] < config.t_grid[i - 1])) {
      throw InputError("t_grid", "values must be strictly decreasing");
    }
  }
  if (config.t_grid.size() == 1) throw InputError("t_grid", "needs at least two values");
}

RunResult run(const RunConfig& config) {
  try {
    validate(config);
    if (config.command == Command::kCatalog) return run_catalog(config);
    const Problem p = load_problem(config);
    switch (config.command) {
      case Command::kCheck: return run_check(config, p, false);
      case Command::kClose: return run_check(config, p, true);
      case Command::kMinControls: return run_min_controls(config, p);
      case Command::kVerifyAxioms: return run_verify_axioms(config, p);
      case Command::kFlowCert: return run_flow_cert(config, p);
      case Command::kCatalog: break;
    }
    return error_result(config, "unknown command", "command");
  } catch (const InputError& e) {
    return error_result(config, e.what(), e.field());
  } catch (const std::exception& e) {
    return error_result(config, e.what(), "");
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  CLI::App app{"Controllability of driftless systems on matrix symmetric spaces"};
  app.require_subcommand(1);

  std::string mode = "exhaustive";
  std::string format = "json";
  std::string flow_kind;
  std::string catalog_action;
  std::string export_id;

  const auto add_common = [&](CLI::App* sub) {
    // --h is the finite-difference step, so help is long-form only.
    sub->set_help_flag("--help", "Print this help message and exit");
    sub->add_option("--catalog", config.catalog_id, "Catalog entry id");
    sub->add_option("--file", config.file, "JSON input file");
    sub->add_option("--generators", config.generators, "Comma-separated generator names")
        ->delimiter(',');
    sub->add_option("--pitch", config.pitch, "Screw pitch for se3_lts_2");
    sub->add_option("--target-dim", config.target_dim, "Manifold dimension");
    sub->add_option("--tol", config.tol, "Relative rank tolerance");
    sub->add_option("--max-depth", config.max_depth, "Closure depth limit (0 = 2n^2)");
    sub->add_option("--mode", mode, "exhaustive|greedy")
        ->check(CLI::IsMember({"exhaustive", "greedy"}));
    sub->add_option("--t-grid", config.t_grid, "Comma-separated decreasing times")->delimiter(',');
    sub->add_option("--h", config.h, "Finite-difference step");
    sub->add_option("--word", config.word, "Bracket word in generator labels, e.g. [[2,4],5]");
    sub->add_flag("--lift-cap", config.lift_cap, "Check the derivation identity on any basis size");
    sub->add_flag("--richardson", config.richardson, "Richardson-extrapolated estimates");
    sub->add_flag("--literal-words", config.literal_words,
                  "Backward word-flow factors at time -t instead of exact inverses");
    sub->add_flag("--paper-mode", config.paper_mode,
                  "Show published bracket values next to computed ones");
    sub->add_option("--format", format, "json|text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--output", config.output, "Report path (default stdout)");
  };

  CLI::App* check = app.add_subcommand("check", "Chow's condition for the generators");
  CLI::App* close = app.add_subcommand("close", "Lie-triple-system closure");
  CLI::App* minc = app.add_subcommand("min-controls", "Smallest generating subsets of the ambient basis");
  CLI::App* axioms = app.add_subcommand("verify-axioms", "LTS axioms and closure of the ambient basis");
  CLI::App* flowc = app.add_subcommand("flow-cert", "Numerical flow certificates");
  CLI::App* cat = app.add_subcommand("catalog", "Built-in symmetric spaces");
  for (CLI::App* sub : {check, close, minc, axioms, flowc, cat}) add_common(sub);
  flowc->add_option("kind", flow_kind, "gamma|word|phi")
      ->required()
      ->check(CLI::IsMember({"gamma", "word", "phi"}));
  cat->add_option("action", catalog_action, "list|export")
      ->required()
      ->check(CLI::IsMember({"list", "export"}));
  cat->add_option("id", export_id, "Entry id for export");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    out << render(json{{"error", e.what()}, {"exit_code", kExitUsage}}, Format::kJson);
    return kExitUsage;
  }

  config.mode = mode == "greedy" ? SearchMode::kGreedy : SearchMode::kExhaustive;
  config.format = format == "text" ? Format::kText : Format::kJson;
  if (check->parsed()) config.command = Command::kCheck;
  if (close->parsed()) config.command = Command::kClose;
  if (minc->parsed()) config.command = Command::kMinControls;
  if (axioms->parsed()) config.command = Command::kVerifyAxioms;
  if (flowc->parsed()) {
    config.command = Command::kFlowCert;
    config.flow_kind = flow_kind == "gamma" ? FlowCertKind::kGamma
                       : flow_kind == "word" ? FlowCertKind::kWord
                                             : FlowCertKind::kPhi;
  }
  if (cat->parsed()) {
    config.command = Command::kCatalog;
    config.catalog_action = catalog_action == "export" ? CatalogAction::kExport : CatalogAction::kList;
    if (!export_id.empty()) config.catalog_id = export_id;
  }

  RunResult result;
  bool tol_given = false;
  for (CLI::App* sub : {check, close, minc, axioms, flowc, cat}) {
    if (sub->parsed() && sub->count("--tol") > 0) tol_given = true;
  }
  const char* env_tol = std::getenv("LTS_TOL");
  bool env_ok = true;
  if (!tol_given && env_tol != nullptr) {
    try {
      std::size_t used = 0;
      config.tol = std::stod(env_tol, &used);
      env_ok = used == std::string(env_tol).size();
    } catch (const std::exception&) {
      env_ok = false;
    }
  }
  if (!env_ok) {
    result = {kExitUsage, render(json{{"error", "LTS_TOL is not a number"},
                                      {"field", "LTS_TOL"},
                                      {"exit_code", kExitUsage}},
                                 config.format)};
  } else {
    result = run(config);
  }

  if (config.output.empty()) {
    out << result.report;
  } else {
    std::ofstream file(config.output, std::ios::binary);
    file << result.report;
    if (!file) {
      err << "cannot write report to " << config.output << "\n";
      out << result.report;
      return kExitUsage;
    }
  }
  if (result.exit_code == kExitUsage) err << "error: see report\n";
  return result.exit_code;
}

}  // namespace symctl::cli
