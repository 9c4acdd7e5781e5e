#include "egraph/commands.hpp"

#include <filesystem>
#include <iomanip>
#include <ostream>

#include <json.hpp>

#include "egraph/decode.hpp"
#include "egraph/error.hpp"
#include "egraph/metrics.hpp"
#include "egraph/perturb.hpp"
#include "egraph/plugins.hpp"
#include "egraph/rng.hpp"
#include "egraph/stats.hpp"
#include "egraph/validate.hpp"

namespace egraph {

namespace {

using json = nlohmann::ordered_json;

std::string where(const std::string& source, std::size_t line) { return source + ":" + std::to_string(line); }

std::string split_name(const std::string& path) { return std::filesystem::path(path).stem().string(); }

// Gold graphs of a row, with the column they came from.
std::vector<std::pair<const char*, const std::string*>> gold_columns(const DatasetRow& row) {
  std::vector<std::pair<const char*, const std::string*>> out{{"graph", &row.graph}};
  if (row.graph2) out.emplace_back("graph2", &*row.graph2);
  return out;
}

}  // namespace

RelationVocabulary vocabulary_for(const Config& config) {
  return config.vocabulary ? RelationVocabulary::load(*config.vocabulary) : RelationVocabulary::defaults();
}

ScorerSet::ScorerSet(const Config& config) {
  if (config.uses_sidecar()) client_ = std::make_unique<SidecarClient>(SidecarOptions{config.sidecar_command, config.sidecar_timeout});
  if (config.similarity == SimilarityKind::sidecar) {
    similarity_ = std::make_unique<SidecarSimilarity>(*client_);
  } else {
    similarity_ = std::make_unique<TokenF1Scorer>();
  }
  if (config.stance == StanceKind::sidecar) {
    stance_ = std::make_unique<SidecarStance>(*client_);
  } else {
    stance_ = std::make_unique<LexicalStanceScorer>();
  }
  if (config.classifier == ClassifierKind::sidecar) {
    classifier_ = std::make_unique<SidecarClassifier>(*client_);
  } else {
    classifier_ = std::make_unique<RuleBasedClassifier>();
  }
}

std::vector<Sample> samples_from_rows(std::span<const DatasetRow> rows, ParseMode mode, std::ostream& warn,
                                      const std::string& source, std::vector<std::size_t>* kept) {
  std::vector<Sample> samples;
  if (kept) kept->clear();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    Sample s;
    s.id = std::to_string(i);
    s.belief = row.belief;
    s.argument = row.argument;
    s.gold_stance = row.stance;
    try {
      for (const auto& [column, text] : gold_columns(row)) s.gold_graphs.push_back(parse_graph(*text));
    } catch (const ParseError& e) {
      const std::string message = where(source, row.line) + ": gold graph: " + e.what();
      if (mode == ParseMode::strict) throw FormatError(message);
      warn << "warning: " << message << " (row skipped)\n";
      continue;
    }
    samples.push_back(std::move(s));
    if (kept) kept->push_back(i);
  }
  return samples;
}

SplitStats summarize_split(const std::string& name, std::span<const DatasetRow> rows, ParseMode mode,
                           std::ostream& warn) {
  SplitStats s;
  s.name = name;
  for (const auto& row : rows) {
    for (const auto& [column, text] : gold_columns(row)) {
      GraphStats g;
      try {
        g = compute_stats(parse_graph(*text), row.belief, row.argument);
      } catch (const Error& e) {
        const std::string message = where(name, row.line) + ": " + column + ": " + e.what();
        if (mode == ParseMode::strict) throw FormatError(message);
        warn << "warning: " << message << " (graph skipped)\n";
        continue;
      }
      ++s.graphs;
      s.nodes += static_cast<double>(g.node_count);
      s.edges += static_cast<double>(g.edge_count);
      s.external += static_cast<double>(g.external_node_count);
      s.depth += static_cast<double>(g.depth);
      s.non_linear += g.is_linear ? 0.0 : 1.0;
      s.with_external += g.external_node_count > 0 ? 1.0 : 0.0;
    }
  }
  if (s.graphs == 0) throw FormatError(name + ": no graphs");
  const double n = static_cast<double>(s.graphs);
  s.nodes /= n;
  s.edges /= n;
  s.external /= n;
  s.depth /= n;
  s.non_linear = 100.0 * s.non_linear / n;
  s.with_external = 100.0 * s.with_external / n;
  return s;
}

SplitStats pool_splits(const std::string& name, std::span<const SplitStats> splits) {
  SplitStats total;
  total.name = name;
  for (const auto& s : splits) {
    const double w = static_cast<double>(s.graphs);
    total.graphs += s.graphs;
    total.nodes += w * s.nodes;
    total.edges += w * s.edges;
    total.external += w * s.external;
    total.depth += w * s.depth;
    total.non_linear += w * s.non_linear;
    total.with_external += w * s.with_external;
  }
  if (total.graphs == 0) return total;
  const double n = static_cast<double>(total.graphs);
  total.nodes /= n;
  total.edges /= n;
  total.external /= n;
  total.depth /= n;
  total.non_linear /= n;
  total.with_external /= n;
  return total;
}

int cmd_validate(const ValidateOptions& options, CommandStreams io) {
  const auto vocab = vocabulary_for(options.config);
  bool any_invalid = false;
  auto emit = [&](json line, const std::string& graph_text, const std::string& belief, const std::string& argument,
                  const std::string& location) {
    try {
      const auto report = validate(parse_graph(graph_text), belief, argument, vocab);
      line["valid"] = report.overall();
      line["failures"] = json::array();
      for (auto f : report.failures()) line["failures"].push_back(std::string(f));
      any_invalid = any_invalid || !report.overall();
    } catch (const ParseError& e) {
      line["valid"] = false;
      line["error"] = e.what();
      io.err << location << ": " << e.what() << "\n";
      any_invalid = true;
    }
    io.out << line.dump() << "\n";
  };

  if (options.graph) {
    if (!options.belief || !options.argument) throw FormatError("--graph needs --belief and --argument");
    emit(json{{"row", 1}}, *options.graph, *options.belief, *options.argument, "row 1");
  }
  for (const auto& path : options.datasets) {
    const auto rows = load_dataset(path);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (const auto& [column, text] : gold_columns(rows[i])) {
        emit(json{{"source", path}, {"row", i + 1}, {"line", rows[i].line}, {"column", column}}, *text, rows[i].belief,
             rows[i].argument, where(path, rows[i].line) + " (row " + std::to_string(i + 1) + ")");
      }
    }
  }
  return any_invalid && options.config.parse_mode == ParseMode::strict ? kExitInvalid : kExitOk;
}

int cmd_stats(const StatsOptions& options, CommandStreams io) {
  if (options.datasets.empty()) throw FormatError("stats needs at least one --dataset");
  std::vector<SplitStats> splits;
  for (const auto& path : options.datasets) {
    const auto rows = load_dataset(path);
    if (rows.empty()) throw FormatError(path + ": empty dataset");
    auto s = summarize_split(path, rows, options.config.parse_mode, io.err);
    s.name = split_name(path);
    splits.push_back(std::move(s));
  }
  splits.push_back(pool_splits("Total", splits));

  if (options.json) {
    json doc = json::array();
    for (const auto& s : splits) {
      doc.push_back({{"split", s.name},
                     {"graphs", s.graphs},
                     {"#N", s.nodes},
                     {"#E", s.edges},
                     {"#EN", s.external},
                     {"D", s.depth},
                     {"%Non-linear", s.non_linear},
                     {"%EN", s.with_external}});
    }
    io.out << doc.dump(2) << "\n";
    return kExitOk;
  }
  io.out << "split\tgraphs\t#N\t#E\t#EN\tD\t%Non-linear\t%EN\n";
  io.out << std::fixed;
  for (const auto& s : splits) {
    io.out << s.name << '\t' << s.graphs << std::setprecision(2) << '\t' << s.nodes << '\t' << s.edges << '\t'
           << s.external << '\t' << s.depth << std::setprecision(1) << '\t' << s.non_linear << '\t'
           << s.with_external << "\n";
  }
  io.out << std::defaultfloat;
  return kExitOk;
}

int cmd_eval(const EvalOptions& options, CommandStreams io) {
  const auto vocab = vocabulary_for(options.config);
  const auto rows = load_dataset(options.dataset);
  const auto predictions = load_predictions(options.predictions);
  if (rows.size() != predictions.size()) {
    throw FormatError("row-count mismatch: " + options.dataset + " has " + std::to_string(rows.size()) + " rows, " +
                      options.predictions + " has " + std::to_string(predictions.size()));
  }
  std::vector<std::size_t> kept;
  const auto samples = samples_from_rows(rows, options.config.parse_mode, io.err, options.dataset, &kept);
  std::vector<Prediction> preds;
  preds.reserve(kept.size());
  for (std::size_t i : kept) preds.push_back({std::to_string(i), predictions[i].stance, predictions[i].graph});

  ScorerSet scorers(options.config);
  const auto report = evaluate_corpus(samples, preds, vocab, scorers.scorers(),
                                      {options.config.ged_aggregation, options.config.threads});
  io.out << report_to_json(report) << "\n";
  return kExitOk;
}

int cmd_decode(const DecodeOptions& options, CommandStreams io) {
  const auto vocab = vocabulary_for(options.config);
  std::vector<EdgeProbTensor> tensors;
  std::vector<std::string> load_errors(options.tensors.size());
  std::vector<std::size_t> loaded;
  for (std::size_t i = 0; i < options.tensors.size(); ++i) {
    try {
      tensors.push_back(load_tensor(options.tensors[i]));
      loaded.push_back(i);
    } catch (const FormatError& e) {
      load_errors[i] = e.what();
    }
  }
  const auto outcomes = decode_batch(tensors, vocab, options.config.threads);
  int status = kExitOk;
  std::size_t next = 0;
  for (std::size_t i = 0; i < options.tensors.size(); ++i) {
    if (!load_errors[i].empty()) {
      io.err << options.tensors[i] << ": " << load_errors[i] << "\n";
      io.out << "\n";
      status = kExitError;
      continue;
    }
    const auto& outcome = outcomes[next++];
    if (outcome.result) {
      io.out << serialize_graph(outcome.result->graph) << "\n";
    } else {
      io.err << options.tensors[i] << ": " << outcome.error << "\n";
      io.out << "\n";
      if (status == kExitOk) status = kExitInvalid;
    }
  }
  return status;
}

int cmd_seca_data(const SecaDataOptions& options, CommandStreams io) {
  if (options.negatives < 0) throw FormatError("--negatives must be non-negative");
  const auto vocab = vocabulary_for(options.config);
  const auto rows = load_dataset(options.dataset);
  std::vector<std::size_t> kept;
  const auto samples = samples_from_rows(rows, options.config.parse_mode, io.err, options.dataset, &kept);
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const auto& s = samples[k];
    const auto& row = rows[kept[k]];
    for (std::size_t c = 0; c < s.gold_graphs.size(); ++c) {
      const auto& gold = s.gold_graphs[c];
      io.out << s.belief << '\t' << serialize_graph(gold) << '\t' << to_string(s.gold_stance) << "\n";
      for (int n = 0; n < options.negatives; ++n) {
        const std::uint64_t seed =
            mix_seed(mix_seed(options.seed, kept[k] * 2 + c), static_cast<std::uint64_t>(n));
        const int ops = 1 + static_cast<int>(seed % 3);
        try {
          const auto negative = perturb(gold, vocab, ops, seed, StanceTexts{s.belief, s.argument});
          io.out << s.belief << '\t' << serialize_graph(negative) << "\tincorrect\n";
        } catch (const Error& e) {
          io.err << "warning: " << where(options.dataset, row.line) << ": negative " << n + 1 << " skipped: " << e.what()
                 << "\n";
        }
      }
    }
  }
  return kExitOk;
}

int cmd_linearize(const LinearizeOptions& options, CommandStreams io) {
  bool failed = false;
  std::size_t index = 0;
  for (const auto& path : options.datasets) {
    for (const auto& row : load_dataset(path)) {
      const std::uint64_t seed = mix_seed(options.seed, index++);
      try {
        io.out << serialize_edges(linearize(parse_graph(row.graph), options.ordering, seed)) << "\n";
      } catch (const Error& e) {
        io.err << where(path, row.line) << ": " << e.what() << "\n";
        io.out << "\n";
        failed = true;
      }
    }
  }
  return failed && options.config.parse_mode == ParseMode::strict ? kExitInvalid : kExitOk;
}

}  // namespace egraph
