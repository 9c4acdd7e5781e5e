#pragma once

#include <chrono>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "egraph/metrics.hpp"
#include "egraph/scorers.hpp"

namespace egraph {

// belief <TAB> argument <TAB> stance <TAB> graph [<TAB> graph2]. Blank lines
// are skipped; a first row whose stance column reads "stance" is a header.
struct DatasetRow {
  std::size_t line = 0;  // 1-based line in the source file
  std::string belief;
  std::string argument;
  Stance stance = Stance::support;
  std::string graph;
  std::optional<std::string> graph2;
};

// stance <TAB> graph; row i answers dataset row i. The graph column may be
// empty or malformed (such predictions are simply scored as wrong).
struct PredictionRow {
  std::size_t line = 0;
  Stance stance = Stance::support;
  std::string graph;
};

// Throw FormatError naming `source` and the line on bad rows.
std::vector<DatasetRow> read_dataset(std::istream& in, const std::string& source);
std::vector<DatasetRow> load_dataset(const std::string& path);
std::vector<PredictionRow> read_predictions(std::istream& in, const std::string& source);
std::vector<PredictionRow> load_predictions(const std::string& path);

enum class ParseMode { strict, lenient };
enum class SimilarityKind { token_f1, sidecar };
enum class StanceKind { stub, sidecar };
enum class ClassifierKind { rule, sidecar };

// key = value lines; lines starting with '#' are comments.
struct Config {
  std::optional<std::string> vocabulary;  // path; built-in vocabulary when unset
  SimilarityKind similarity = SimilarityKind::token_f1;
  StanceKind stance = StanceKind::stub;
  ClassifierKind classifier = ClassifierKind::rule;
  std::string sidecar_command;
  std::chrono::milliseconds sidecar_timeout{30000};
  GedAggregation ged_aggregation = GedAggregation::min_over_golds;
  ParseMode parse_mode = ParseMode::strict;
  int threads = 0;

  bool uses_sidecar() const {
    return similarity == SimilarityKind::sidecar || stance == StanceKind::sidecar ||
           classifier == ClassifierKind::sidecar;
  }
};

// Relative vocabulary paths are resolved against `base_dir`.
Config parse_config(std::istream& in, const std::string& source, const std::string& base_dir = "");
Config load_config(const std::string& path);

// {"aggregate": {"SA", "StCA", "SeCA", "GBS", "GED", "EA"}, "per_sample": [...]}.
// Aggregates other than GED are percentages.
std::string report_to_json(const MetricReport& report, int indent = 2);

}  // namespace egraph
