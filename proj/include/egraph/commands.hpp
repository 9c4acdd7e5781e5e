#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "egraph/io.hpp"
#include "egraph/linearize.hpp"
#include "egraph/relation.hpp"
#include "egraph/sidecar.hpp"

namespace egraph {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitError = 2;

struct CommandStreams {
  std::ostream& out;
  std::ostream& err;
};

RelationVocabulary vocabulary_for(const Config& config);

// Scorers selected by a config. Owns the sidecar client when one is used.
class ScorerSet {
 public:
  explicit ScorerSet(const Config& config);
  Scorers scorers() { return {*similarity_, *stance_, *classifier_}; }

 private:
  std::unique_ptr<SidecarClient> client_;
  std::unique_ptr<EdgeSimilarityScorer> similarity_;
  std::unique_ptr<StanceScorer> stance_;
  std::unique_ptr<GraphStanceClassifier> classifier_;
};

// Samples with ids "0", "1", ... in row order. A gold graph that fails to
// parse throws FormatError in strict mode; in lenient mode the row is
// dropped with a warning and `kept` (when given) lists the surviving rows.
std::vector<Sample> samples_from_rows(std::span<const DatasetRow> rows, ParseMode mode, std::ostream& warn,
                                      const std::string& source, std::vector<std::size_t>* kept = nullptr);

struct SplitStats {
  std::string name;
  std::size_t graphs = 0;
  double nodes = 0;          // mean #N
  double edges = 0;          // mean #E
  double external = 0;       // mean #EN
  double depth = 0;          // mean D
  double non_linear = 0;     // % of graphs that are not a single chain
  double with_external = 0;  // % of graphs with at least one external node
};

// Statistics over every gold graph (both columns) of the rows. Graphs that
// do not parse or are cyclic throw FormatError in strict mode and are
// skipped with a warning in lenient mode.
SplitStats summarize_split(const std::string& name, std::span<const DatasetRow> rows, ParseMode mode,
                           std::ostream& warn);
// Pools the graphs of several splits, weighting by graph count.
SplitStats pool_splits(const std::string& name, std::span<const SplitStats> splits);

struct ValidateOptions {
  std::vector<std::string> datasets;
  std::optional<std::string> graph, belief, argument;  // single-graph mode
  Config config;
};
// One JSON line per row; exit 1 in strict mode when any row is invalid.
int cmd_validate(const ValidateOptions& options, CommandStreams io);

struct StatsOptions {
  std::vector<std::string> datasets;  // one split per file, named by file stem
  Config config;
  bool json = false;
};
int cmd_stats(const StatsOptions& options, CommandStreams io);

struct EvalOptions {
  std::string dataset;
  std::string predictions;
  Config config;
};
int cmd_eval(const EvalOptions& options, CommandStreams io);

struct DecodeOptions {
  std::vector<std::string> tensors;
  Config config;
};
// One line per tensor in input order: the decoded graph, or an empty line
// with the error on the error stream (exit 1).
int cmd_decode(const DecodeOptions& options, CommandStreams io);

struct SecaDataOptions {
  std::string dataset;
  std::uint64_t seed = 0;
  int negatives = 1;
  Config config;
};
// belief <TAB> graph <TAB> label rows: each gold graph with its stance, then
// `negatives` perturbations of it labeled incorrect.
int cmd_seca_data(const SecaDataOptions& options, CommandStreams io);

struct LinearizeOptions {
  std::vector<std::string> datasets;
  EdgeOrdering ordering = EdgeOrdering::dfs;
  std::uint64_t seed = 0;
  Config config;
};
// One line per row with the first gold graph reordered.
int cmd_linearize(const LinearizeOptions& options, CommandStreams io);

}  // namespace egraph
