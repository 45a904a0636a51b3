#include "folnerlab/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>

#include <CLI11.hpp>
#include <json.hpp>

#include "folnerlab/ergodic.hpp"
#include "folnerlab/error.hpp"
#include "folnerlab/folner.hpp"
#include "folnerlab/inequality.hpp"
#include "folnerlab/sets.hpp"

namespace folnerlab {
namespace {

using nlohmann::ordered_json;

const char* error_token(const Error& e) {
  if (dynamic_cast<const ExhaustionError*>(&e)) return "exhaustion";
  if (dynamic_cast<const ParseError*>(&e)) return "parse";
  if (dynamic_cast<const DescriptorMismatchError*>(&e)) return "descriptor-mismatch";
  if (dynamic_cast<const RankExceededError*>(&e)) return "rank-exceeded";
  if (dynamic_cast<const EmptySetError*>(&e)) return "empty-set";
  if (dynamic_cast<const ContainmentError*>(&e)) return "containment";
  if (dynamic_cast<const OverflowError*>(&e)) return "overflow";
  if (dynamic_cast<const EmbeddingError*>(&e)) return "embedding";
  if (dynamic_cast<const GuardExceededError*>(&e)) return "guard-exceeded";
  if (dynamic_cast<const InsufficientDataError*>(&e)) return "insufficient-data";
  if (dynamic_cast<const ConstructionError*>(&e)) return "construction";
  return "error";
}

/// Report sink: append mode so reruns extend the file with identical bytes.
class OutputTarget {
 public:
  explicit OutputTarget(const std::string& resolved) {
    if (!resolved.empty()) {
      file_.open(resolved, std::ios::app);
      if (!file_) throw Error("cannot open output file " + resolved);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::string resolve_out(const std::string& out) {
  if (out.empty()) return out;
  std::filesystem::path p(out);
  if (p.is_absolute()) return out;
  if (const char* dir = std::getenv("FOLNERLAB_OUTDIR"); dir && *dir)
    return (std::filesystem::path(dir) / p).string();
  return out;
}

FolnerFamily family_of(const std::string& family, const GroupDescriptor& desc) {
  if (family == "boxes") return FolnerFamily::Boxes;
  if (family == "tempelman") return FolnerFamily::AbelianTempelman;
  if (family == "standard") {
    if (desc.kind() == GroupKind::Lamplighter) return FolnerFamily::LamplighterStandard;
    if (desc.kind() == GroupKind::WreathZZ) return FolnerFamily::WreathStandard;
    throw Error("family 'standard' applies to lamplighter and wreath-zz groups");
  }
  throw Error("unknown family '" + family + "' (expected boxes, standard or tempelman)");
}

ZdEmbedding embedding_of(const GroupDescriptor& desc, int dimension) {
  int d = dimension > 0 ? dimension : desc.declared_rank().value_or(1);
  return standard_embedding(desc, d);
}

GroupDescriptor group_of(const CommandConfig& cfg) {
  if (cfg.group_dsl.empty()) throw Error("--group is required for this command");
  return parse_group_dsl(cfg.group_dsl);
}

FolnerSequenceSpec sequence_spec(const GroupDescriptor& desc, const CommandConfig& cfg,
                                 int max_index) {
  return FolnerSequenceSpec{desc, family_of(cfg.family, desc), HeightRule{}, {}, max_index};
}

std::vector<FiniteGroupSet> build_sequence(const FolnerSequenceSpec& spec, int max_index) {
  std::vector<FiniteGroupSet> seq;
  seq.reserve(static_cast<std::size_t>(max_index));
  for (int n = 1; n <= max_index; ++n) seq.push_back(generate(spec, n));
  return seq;
}

FiniteGroupSet load_set(const std::string& path, const GroupDescriptor& desc,
                        const char* which) {
  if (path.empty()) throw Error(std::string("missing set file option ") + which);
  std::ifstream in(path);
  if (!in) throw Error("cannot open set file " + path);
  return parse_set_literal(desc, in);
}

ordered_json report_json(const InequalityReport& r) {
  ordered_json j;
  j["statement"] = statement_token(r.statement);
  if (r.lhs >= 0 && r.lhs <= BigInt(std::numeric_limits<std::uint64_t>::max()))
    j["lhs"] = r.lhs.convert_to<std::uint64_t>();
  else
    j["lhs"] = r.lhs.str();
  j["rhs"] = r.rhs;
  j["delta"] = r.delta_used;
  j["d"] = r.dimension;
  j["holds"] = r.holds;
  j["vacuous"] = r.vacuous;
  j["verdict"] = verdict_token(r.verdict);
  j["inputs_digest"] = r.inputs_digest;
  return j;
}

int emit_reports(const std::vector<InequalityReport>& reports, const CommandConfig& cfg) {
  ordered_json arr = ordered_json::array();
  bool all_hold = true;
  for (const InequalityReport& r : reports) {
    arr.push_back(report_json(r));
    all_hold = all_hold && r.holds;
  }
  OutputTarget target(resolve_out(cfg.out));
  target.stream() << arr.dump(2) << "\n";
  return all_hold ? 0 : 1;
}

int parse_assignment(const std::vector<std::string>& tokens, const std::string& key) {
  for (const std::string& tok : tokens) {
    auto eq = tok.find('=');
    if (eq != std::string::npos && tok.substr(0, eq) == key)
      return std::stoi(tok.substr(eq + 1));
  }
  throw Error("exhaustive sweep needs a '" + key + "=...' token");
}

int run_gen(const CommandConfig& cfg) {
  GroupDescriptor desc = group_of(cfg);
  FolnerSequenceSpec spec = sequence_spec(desc, cfg, std::max(cfg.n, 64));
  FiniteGroupSet f = generate(spec, cfg.n);
  OutputTarget target(resolve_out(cfg.out));
  for (const GroupElement& g : f) target.stream() << format_element(desc, g) << "\n";
  return 0;
}

int run_report(const CommandConfig& cfg) {
  GroupDescriptor desc = group_of(cfg);
  FolnerSequenceSpec spec = sequence_spec(desc, cfg, cfg.max_index);
  std::vector<FiniteGroupSet> seq = build_sequence(spec, cfg.max_index);
  SequenceReport report = sequence_report(seq, embedding_of(desc, cfg.dimension));
  OutputTarget target(resolve_out(cfg.out));
  write_report_csv(report, target.stream());
  return 0;
}

int run_verify(const CommandConfig& cfg) {
  if (!cfg.exhaustive.empty()) {
    if (cfg.statement != "dbm")
      throw Error("--exhaustive sweeps are defined for the dbm statement");
    int d = parse_assignment(cfg.exhaustive, "d");
    int side = parse_assignment(cfg.exhaustive, "side");
    OracleResult result =
        brute_force_oracle(d, side, discrete_bm_predicate(), std::max(cfg.workers, 1));
    int violations = result.counterexample ? 1 : 0;
    OutputTarget target(resolve_out(cfg.out));
    target.stream() << result.pairs_checked << " pairs, " << violations << " violations\n";
    return violations == 0 ? 0 : 1;
  }

  GroupDescriptor desc = group_of(cfg);
  std::vector<InequalityReport> reports;
  if (cfg.statement == "dbm") {
    reports.push_back(check_discrete_bm(load_set(cfg.set_a, desc, "--a"),
                                        load_set(cfg.set_b, desc, "--b")));
  } else if (cfg.statement == "lemma-ab") {
    auto pair = check_lemma_abelian_product(load_set(cfg.set_a, desc, "--a"),
                                            load_set(cfg.set_b, desc, "--b"),
                                            embedding_of(desc, cfg.dimension));
    reports.push_back(std::move(pair.first));
    reports.push_back(std::move(pair.second));
  } else if (cfg.statement == "lemma-ff") {
    reports.push_back(check_lemma_same_size(load_set(cfg.set_a, desc, "--a"),
                                            embedding_of(desc, cfg.dimension)));
  } else if (cfg.statement == "lemma-f1f2") {
    reports.push_back(check_lemma_diff_size(load_set(cfg.set_a, desc, "--a"),
                                            load_set(cfg.set_b, desc, "--b"),
                                            embedding_of(desc, cfg.dimension)));
  } else if (cfg.statement == "lower-bound") {
    FolnerSequenceSpec spec = sequence_spec(desc, cfg, cfg.max_index);
    LowerBoundReport lb = check_lower_bound_claim(build_sequence(spec, cfg.max_index),
                                                  embedding_of(desc, cfg.dimension));
    reports = std::move(lb.per_index);
  } else if (cfg.statement == "growth") {
    if (cfg.constant.empty()) throw Error("--C is required for the growth statement");
    FolnerSequenceSpec spec = sequence_spec(desc, cfg, cfg.max_index);
    reports = check_growth_implication(build_sequence(spec, cfg.max_index),
                                       parse_rational(cfg.constant),
                                       embedding_of(desc, cfg.dimension));
  } else {
    throw Error("unknown statement '" + cfg.statement + "'");
  }
  return emit_reports(reports, cfg);
}

int run_extract(const CommandConfig& cfg) {
  GroupDescriptor desc = group_of(cfg);
  if (cfg.constant.empty()) throw Error("--C is required for extract-tempered");
  if (cfg.count < 1) throw Error("--count must be at least 1");
  FolnerSequenceSpec spec = sequence_spec(desc, cfg, cfg.max_index);
  std::vector<int> indices = extract_tempered(spec, parse_rational(cfg.constant), cfg.count);
  OutputTarget target(resolve_out(cfg.out));
  for (std::size_t i = 0; i < indices.size(); ++i)
    target.stream() << indices[i] << (i + 1 < indices.size() ? ' ' : '\n');
  return 0;
}

int run_ergodic(const CommandConfig& cfg) {
  GroupDescriptor desc = group_of(cfg);
  if (cfg.indices.empty()) throw Error("--indices is required for ergodic sweeps");
  BernoulliAction action = make_bernoulli(desc, cfg.p, cfg.seed);
  CylinderFunction phi = make_cylinder(desc, {identity(desc)}, {0.0, 1.0});
  int max_needed = *std::max_element(cfg.indices.begin(), cfg.indices.end());
  FolnerSequenceSpec spec = sequence_spec(desc, cfg, std::max(64, max_needed));
  std::vector<ConvergencePoint> points =
      convergence_sweep(action, phi, spec, cfg.indices, cfg.paths);
  OutputTarget target(resolve_out(cfg.out));
  target.stream() << "n,size,mse,target\n";
  char row[128];
  for (const ConvergencePoint& pt : points) {
    std::snprintf(row, sizeof row, "%d,%llu,%.17g,%.17g\n", pt.index,
                  static_cast<unsigned long long>(pt.set_size), pt.mse, pt.target);
    target.stream() << row;
  }
  return 0;
}

}  // namespace

int run(const CommandConfig& config) {
  try {
    if (config.subcommand == "gen") return run_gen(config);
    if (config.subcommand == "report") return run_report(config);
    if (config.subcommand == "verify") return run_verify(config);
    if (config.subcommand == "extract-tempered") return run_extract(config);
    if (config.subcommand == "ergodic") return run_ergodic(config);
    throw Error("unknown subcommand '" + config.subcommand + "'");
  } catch (const Error& e) {
    ordered_json record;
    record["error"]["type"] = error_token(e);
    record["error"]["what"] = e.what();
    if (const auto* ex = dynamic_cast<const ExhaustionError*>(&e))
      record["error"]["partial"] = ex->partial;
    std::cerr << record.dump(2) << "\n";
    return 2;
  } catch (const std::exception& e) {
    ordered_json record;
    record["error"]["type"] = "error";
    record["error"]["what"] = e.what();
    std::cerr << record.dump(2) << "\n";
    return 2;
  }
}

int run_command_line(const std::vector<std::string>& args) {
  CommandConfig cfg;
  CLI::App app{"finite set calculations in countable groups"};
  app.require_subcommand(1);

  CLI::App* gen = app.add_subcommand("gen", "emit the n-th set of a sequence, one element per line");
  gen->add_option("--group", cfg.group_dsl, "group DSL, e.g. Z^2 or lamplighter")->required();
  gen->add_option("--family", cfg.family, "boxes, standard or tempelman");
  gen->add_option("--n", cfg.n, "sequence index (1-based)")->required();
  gen->add_option("--out", cfg.out, "output file (append mode)");

  CLI::App* report = app.add_subcommand("report", "per-index constants and defects as CSV");
  report->add_option("--group", cfg.group_dsl)->required();
  report->add_option("--family", cfg.family);
  report->add_option("--max", cfg.max_index, "last index of the sequence");
  report->add_option("--dim", cfg.dimension, "embedding dimension (default: declared rank)");
  report->add_option("--out", cfg.out);

  CLI::App* verify = app.add_subcommand("verify", "check one bound; exit 0 iff it holds");
  verify->add_option("statement", cfg.statement, "which bound to check")
      ->required()
      ->check(CLI::IsMember(
          {"dbm", "lemma-ab", "lemma-ff", "lemma-f1f2", "lower-bound", "growth"}));
  verify->add_option("--exhaustive", cfg.exhaustive,
                     "exhaustive sweep tokens, e.g. --exhaustive d=1 side=8");
  verify->add_option("--group", cfg.group_dsl);
  verify->add_option("--family", cfg.family);
  verify->add_option("--max", cfg.max_index);
  verify->add_option("--dim", cfg.dimension);
  verify->add_option("--a", cfg.set_a, "first set literal file");
  verify->add_option("--b", cfg.set_b, "second set literal file");
  verify->add_option("--C", cfg.constant, "growth constant, exact rational");
  verify->add_option("--workers", cfg.workers, "oracle worker threads");
  verify->add_option("--out", cfg.out);

  CLI::App* extract = app.add_subcommand("extract-tempered", "greedy subsequence extraction");
  extract->add_option("--group", cfg.group_dsl)->required();
  extract->add_option("--family", cfg.family);
  extract->add_option("--C", cfg.constant, "target constant, exact rational")->required();
  extract->add_option("--count", cfg.count, "how many indices to select")->required();
  extract->add_option("--max", cfg.max_index, "search horizon");
  extract->add_option("--out", cfg.out);

  CLI::App* ergodic = app.add_subcommand("ergodic", "Monte-Carlo averages of the bit at the origin");
  ergodic->add_option("--group", cfg.group_dsl)->required();
  ergodic->add_option("--family", cfg.family);
  ergodic->add_option("--indices", cfg.indices, "sequence indices to sample")
      ->required()
      ->delimiter(',');
  ergodic->add_option("--p", cfg.p, "symbol probability in (0,1)");
  ergodic->add_option("--seed", cfg.seed);
  ergodic->add_option("--paths", cfg.paths, "independent sample paths per index");
  ergodic->add_option("--out", cfg.out);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  for (CLI::App* sub : {gen, report, verify, extract, ergodic}) {
    if (sub->parsed()) {
      cfg.subcommand = sub->get_name();
      break;
    }
  }
  return run(cfg);
}

}  // namespace folnerlab
