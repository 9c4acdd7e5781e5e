#include <fstream>
#include <iostream>
#include <memory>

#include <CLI11.hpp>

#include "egraph/commands.hpp"
#include "egraph/error.hpp"

using namespace egraph;

namespace {

struct Common {
  std::string config_path;
  std::string out_path;
  bool lenient = false;
  int threads = -1;

  void attach(CLI::App* app) {
    app->add_option("--config", config_path, "key = value config file")->check(CLI::ExistingFile);
    app->add_option("--out", out_path, "write output to this file instead of stdout");
    app->add_flag("--lenient", lenient, "skip malformed rows with a warning");
    app->add_option("--threads", threads, "worker threads (0 = OpenMP default)")->check(CLI::NonNegativeNumber);
  }

  Config config() const {
    Config c = config_path.empty() ? Config{} : load_config(config_path);
    if (lenient) c.parse_mode = ParseMode::lenient;
    if (threads >= 0) c.threads = threads;
    return c;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Explanation-graph toolkit"};
  app.require_subcommand(1);
  Common common;

  ValidateOptions validate;
  auto* v = app.add_subcommand("validate", "check graphs for structural correctness");
  v->add_option("--dataset", validate.datasets, "TSV dataset (repeatable)");
  v->add_option("--graph", validate.graph, "a single graph in (a; rel; b)(...) form");
  v->add_option("--belief", validate.belief);
  v->add_option("--argument", validate.argument);
  common.attach(v);

  StatsOptions stats;
  auto* s = app.add_subcommand("stats", "per-split and pooled graph statistics");
  s->add_option("--dataset", stats.datasets, "TSV dataset, one per split")->required();
  s->add_flag("--json", stats.json, "emit JSON instead of a table");
  common.attach(s);

  EvalOptions eval;
  auto* e = app.add_subcommand("eval", "score predictions against a dataset");
  e->add_option("--dataset", eval.dataset)->required()->check(CLI::ExistingFile);
  e->add_option("--predictions", eval.predictions, "stance <TAB> graph per row")->required()->check(CLI::ExistingFile);
  common.attach(e);

  DecodeOptions decode;
  auto* d = app.add_subcommand("decode", "decode edge-probability tensors into graphs");
  d->add_option("tensors", decode.tensors, "tensor JSON files")->required();
  common.attach(d);

  SecaDataOptions seca;
  auto* sd = app.add_subcommand("seca-data", "build semantic-correctness training rows");
  sd->add_option("--dataset", seca.dataset)->required()->check(CLI::ExistingFile);
  sd->add_option("--seed", seca.seed);
  sd->add_option("--negatives", seca.negatives, "perturbed negatives per gold graph")->check(CLI::NonNegativeNumber);
  common.attach(sd);

  LinearizeOptions lin;
  std::string ordering = "dfs";
  auto* l = app.add_subcommand("linearize", "reorder the edges of each gold graph");
  l->add_option("--dataset", lin.datasets)->required();
  l->add_option("--ordering", ordering)->check(CLI::IsMember({"dfs", "bfs", "topological", "random"}));
  l->add_option("--seed", lin.seed);
  common.attach(l);

  CLI11_PARSE(app, argc, argv);

  try {
    std::unique_ptr<std::ofstream> file;
    if (!common.out_path.empty()) {
      file = std::make_unique<std::ofstream>(common.out_path);
      if (!*file) throw FormatError("cannot write " + common.out_path);
    }
    CommandStreams io{file ? static_cast<std::ostream&>(*file) : std::cout, std::cerr};
    const Config config = common.config();

    int status = kExitOk;
    if (v->parsed()) {
      validate.config = config;
      status = cmd_validate(validate, io);
    } else if (s->parsed()) {
      stats.config = config;
      status = cmd_stats(stats, io);
    } else if (e->parsed()) {
      eval.config = config;
      status = cmd_eval(eval, io);
    } else if (d->parsed()) {
      decode.config = config;
      status = cmd_decode(decode, io);
    } else if (sd->parsed()) {
      seca.config = config;
      status = cmd_seca_data(seca, io);
    } else if (l->parsed()) {
      lin.config = config;
      lin.ordering = *parse_ordering(ordering);
      status = cmd_linearize(lin, io);
    }
    io.out.flush();
    return status;
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitError;
  }
}
