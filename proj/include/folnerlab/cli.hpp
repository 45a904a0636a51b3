#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "folnerlab/groups.hpp"

namespace folnerlab {

/// Alias for the descriptor DSL parser, the grammar the CLI accepts.
inline GroupDescriptor parse_group_dsl(const std::string& text) { return parse_descriptor(text); }

/// Everything a single invocation needs, filled in by the flag parser.
struct CommandConfig {
  std::string subcommand;         // gen | report | verify | extract-tempered | ergodic
  std::string statement;          // verify: dbm | lemma-ab | lemma-ff | lemma-f1f2 |
                                  //         lower-bound | growth
  std::string group_dsl;
  std::string family = "boxes";   // boxes | standard | tempelman
  int n = 1;                      // gen: which set
  int max_index = 10;             // sequence length for report/verify/extract
  int dimension = 0;              // embedding dimension; 0 = group's declared rank
  std::vector<std::string> exhaustive;  // verify dbm: "d=..." "side=..." tokens
  std::string set_a;              // set literal files for pairwise checks
  std::string set_b;
  std::string constant;           // C, parsed as an exact rational
  int count = 0;                  // extract-tempered: how many indices
  std::vector<int> indices;       // ergodic sweep indices
  double p = 0.5;                 // ergodic symbol probability
  std::uint64_t seed = 1;
  int paths = 32;                 // ergodic sample paths per index
  int workers = 1;                // oracle worker threads
  std::string out;                // report file; empty = stdout. Relative paths
                                  // resolve under $FOLNERLAB_OUTDIR when set.
  std::string format = "json";    // json | csv (where a choice exists)
};

/// Executes one parsed config. Returns 0 when every checked inequality
/// holds (vacuous counts as holding), 1 when some check failed, 2 on any
/// error (a structured record goes to stderr). Report files are opened in
/// append mode; a rerun with the same config appends identical bytes.
int run(const CommandConfig& config);

/// Flag parsing plus run(); the `args` vector excludes the program name.
int run_command_line(const std::vector<std::string>& args);

}  // namespace folnerlab
