#include "egraph/io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>

#include <json.hpp>

#include "egraph/error.hpp"
#include "egraph/text.hpp"

namespace egraph {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto tab = line.find('\t', start);
    out.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
    if (tab == std::string::npos) return out;
    start = tab + 1;
  }
}

[[noreturn]] void bad_row(const std::string& source, std::size_t line, const std::string& what) {
  throw FormatError(source + ":" + std::to_string(line) + ": " + what);
}

// Calls fn(line_number, columns) for every non-blank line.
template <typename Fn>
void for_each_row(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty()) continue;
    fn(number, split_tabs(line));
  }
}

Stance stance_column(const std::string& value, const std::string& source, std::size_t line) {
  auto s = parse_stance(text::normalize(value));
  if (!s) bad_row(source, line, "unknown stance \"" + value + "\"");
  return *s;
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  return in;
}

}  // namespace

std::vector<DatasetRow> read_dataset(std::istream& in, const std::string& source) {
  std::vector<DatasetRow> rows;
  bool first = true;
  for_each_row(in, [&](std::size_t line, const std::vector<std::string>& cols) {
    const bool header = first && cols.size() >= 3 && text::normalize(cols[2]) == "stance";
    first = false;
    if (header) return;
    if (cols.size() != 4 && cols.size() != 5) {
      bad_row(source, line, "expected 4 or 5 tab-separated columns, found " + std::to_string(cols.size()));
    }
    DatasetRow row;
    row.line = line;
    row.belief = cols[0];
    row.argument = cols[1];
    row.stance = stance_column(cols[2], source, line);
    row.graph = cols[3];
    if (cols.size() == 5 && !text::trim(cols[4]).empty()) row.graph2 = cols[4];
    rows.push_back(std::move(row));
  });
  return rows;
}

std::vector<DatasetRow> load_dataset(const std::string& path) {
  auto in = open(path);
  return read_dataset(in, path);
}

std::vector<PredictionRow> read_predictions(std::istream& in, const std::string& source) {
  std::vector<PredictionRow> rows;
  for_each_row(in, [&](std::size_t line, const std::vector<std::string>& cols) {
    if (cols.size() > 2) bad_row(source, line, "expected 2 tab-separated columns, found " + std::to_string(cols.size()));
    PredictionRow row;
    row.line = line;
    row.stance = stance_column(cols[0], source, line);
    if (cols.size() == 2) row.graph = cols[1];
    rows.push_back(std::move(row));
  });
  return rows;
}

std::vector<PredictionRow> load_predictions(const std::string& path) {
  auto in = open(path);
  return read_predictions(in, path);
}

Config parse_config(std::istream& in, const std::string& source, const std::string& base_dir) {
  Config config;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string trimmed(text::trim(line));
    if (trimmed.empty() || trimmed.front() == '#') continue;
    const auto eq = trimmed.find('=');
    if (eq == std::string::npos) bad_row(source, number, "expected key = value");
    const std::string key(text::trim(std::string_view(trimmed).substr(0, eq)));
    const std::string value(text::trim(std::string_view(trimmed).substr(eq + 1)));
    auto choice = [&](std::initializer_list<const char*> allowed) {
      for (const char* a : allowed) {
        if (value == a) return;
      }
      bad_row(source, number, "invalid value \"" + value + "\" for " + key);
    };
    if (key == "vocabulary") {
      std::filesystem::path p(value);
      if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
      config.vocabulary = p.string();
    } else if (key == "similarity") {
      choice({"token-f1", "sidecar"});
      config.similarity = value == "sidecar" ? SimilarityKind::sidecar : SimilarityKind::token_f1;
    } else if (key == "stance") {
      choice({"stub", "sidecar"});
      config.stance = value == "sidecar" ? StanceKind::sidecar : StanceKind::stub;
    } else if (key == "classifier") {
      choice({"rule", "sidecar"});
      config.classifier = value == "sidecar" ? ClassifierKind::sidecar : ClassifierKind::rule;
    } else if (key == "sidecar_command") {
      config.sidecar_command = value;
    } else if (key == "sidecar_timeout") {
      double seconds = 0;
      try {
        std::size_t used = 0;
        seconds = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
      } catch (const std::exception&) {
        bad_row(source, number, "sidecar_timeout must be a number of seconds");
      }
      if (!(seconds > 0)) bad_row(source, number, "sidecar_timeout must be positive");
      config.sidecar_timeout = std::chrono::milliseconds(static_cast<long long>(std::ceil(seconds * 1000)));
    } else if (key == "ged_aggregation") {
      choice({"min", "first"});
      config.ged_aggregation = value == "first" ? GedAggregation::first_gold : GedAggregation::min_over_golds;
    } else if (key == "parse_mode") {
      choice({"strict", "lenient"});
      config.parse_mode = value == "lenient" ? ParseMode::lenient : ParseMode::strict;
    } else if (key == "threads") {
      try {
        std::size_t used = 0;
        config.threads = std::stoi(value, &used);
        if (used != value.size() || config.threads < 0) throw std::invalid_argument(value);
      } catch (const std::exception&) {
        bad_row(source, number, "threads must be a non-negative integer");
      }
    } else {
      bad_row(source, number, "unknown key \"" + key + "\"");
    }
  }
  if (config.uses_sidecar() && config.sidecar_command.empty()) {
    throw FormatError(source + ": a sidecar scorer is selected but sidecar_command is not set");
  }
  return config;
}

Config load_config(const std::string& path) {
  auto in = open(path);
  return parse_config(in, path, std::filesystem::path(path).parent_path().string());
}

std::string report_to_json(const MetricReport& report, int indent) {
  using json = nlohmann::ordered_json;
  json doc;
  const auto& a = report.aggregate;
  doc["aggregate"] = {{"SA", 100.0 * a.sa},     {"StCA", 100.0 * a.stca}, {"SeCA", 100.0 * a.seca},
                      {"GBS", 100.0 * a.gbs},   {"GED", a.ged},           {"EA", 100.0 * a.ea}};
  doc["count"] = report.per_sample.size();
  doc["per_sample"] = json::array();
  for (const auto& o : report.per_sample) {
    json row = {{"id", o.id},
                {"stance_correct", o.stance_correct},
                {"structurally_correct", o.structurally_correct},
                {"seca_label", o.seca_label ? json(std::string(to_string(*o.seca_label))) : json(nullptr)},
                {"seca_correct", o.seca_correct},
                {"gbs", o.gbs},
                {"ged", o.ged},
                {"ea", o.ea}};
    doc["per_sample"].push_back(std::move(row));
  }
  return doc.dump(indent);
}

}  // namespace egraph
