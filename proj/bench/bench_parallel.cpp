// Serial reference vs OpenMP kernels: corpus evaluation and batch decoding.
// Usage: bench_parallel [samples] [tensors] [threads]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "egraph/decode.hpp"
#include "egraph/metrics.hpp"
#include "egraph/plugins.hpp"
#include "support/fixtures.hpp"
#include "support/tensors.hpp"

using namespace egraph;
using namespace egraph::testing;

namespace {

template <typename Fn>
double seconds(Fn&& fn, int repeats = 3) {
  double best = 1e300;
  for (int i = 0; i < repeats; ++i) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  return best;
}

void row(const char* name, double serial, double parallel, bool same) {
  std::printf("%-16s serial %8.4f s  parallel %8.4f s  speedup %5.2fx  %s\n", name, serial, parallel,
              serial / parallel, same ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t samples = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 2000;
  const std::size_t tensors = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 400;
  const int threads = argc > 3 ? std::atoi(argv[3]) : omp_get_max_threads();
  const auto vocab = RelationVocabulary::defaults();
  std::printf("threads %d, samples %zu, tensors %zu\n", threads, samples, tensors);

  const auto corpus = synthetic_corpus(samples, 1, vocab);
  auto preds = gold_predictions(corpus);
  Rng rng(2);
  for (std::size_t i = 0; i < preds.size(); i += 3) {
    preds[i].graph_text = serialize_graph(corpus[(i + 1) % corpus.size()].gold_graphs.front());
  }
  TokenF1Scorer sim;
  LexicalStanceScorer stance;
  RuleBasedClassifier classifier;
  const Scorers scorers{sim, stance, classifier};
  MetricReport serial_report, parallel_report;
  const double es = seconds([&] { serial_report = evaluate_corpus_serial(corpus, preds, vocab, scorers); });
  const double ep = seconds([&] { parallel_report = evaluate_corpus(corpus, preds, vocab, scorers, {{}, threads}); });
  row("evaluate_corpus", es, ep,
      serial_report.aggregate.gbs == parallel_report.aggregate.gbs &&
          serial_report.aggregate.ged == parallel_report.aggregate.ged &&
          serial_report.aggregate.ea == parallel_report.aggregate.ea);

  std::vector<EdgeProbTensor> batch;
  for (std::size_t i = 0; i < tensors; ++i) batch.push_back(random_tensor(rng, 4 + i % 5, vocab, 1 + rng.below(8)));
  std::vector<DecodeOutcome> ds, dp;
  const double s = seconds([&] { ds = decode_batch_serial(batch, vocab); });
  const double p = seconds([&] { dp = decode_batch(batch, vocab, threads); });
  bool same = ds.size() == dp.size();
  for (std::size_t i = 0; same && i < ds.size(); ++i) {
    same = ds[i].result.has_value() == dp[i].result.has_value() &&
           (!ds[i].result || ds[i].result->selected == dp[i].result->selected);
  }
  row("decode_batch", s, p, same);
  return same ? 0 : 1;
}
