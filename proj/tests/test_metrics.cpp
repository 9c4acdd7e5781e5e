#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "egraph/error.hpp"
#include "egraph/gbs.hpp"
#include "egraph/ged.hpp"
#include "egraph/hungarian.hpp"
#include "egraph/metrics.hpp"
#include "egraph/perturb.hpp"
#include "egraph/plugins.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace egraph;
using egraph::testing::small_random_graph;
using egraph::testing::to_labeled;

namespace {

class ConstantStance : public StanceScorer {
 public:
  explicit ConstantStance(double p) : p_(p) {}
  double probability(std::string_view, std::string_view, std::string_view, Stance) override { return p_; }

 private:
  double p_;
};

// Probability proportional to the number of edges in the graph text.
class EdgeCountStance : public StanceScorer {
 public:
  double probability(std::string_view, std::string_view, std::string_view graph, Stance) override {
    return static_cast<double>(std::count(graph.begin(), graph.end(), '(')) / 10.0;
  }
};

// FNV-1a of the graph text with a 64-bit finalizer, mapped to [0, 1).
class HashStance : public StanceScorer {
 public:
  double probability(std::string_view, std::string_view, std::string_view graph, Stance) override {
    std::uint64_t h = 1469598103934665603ULL;
    for (char c : graph) {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ULL;
    }
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdULL;
    h ^= h >> 33;
    return static_cast<double>(h >> 11) / static_cast<double>(1ULL << 53);
  }
};

class FixedClassifier : public GraphStanceClassifier {
 public:
  explicit FixedClassifier(GraphLabel label) : label_(label) {}
  GraphLabel classify(std::string_view, std::string_view) override { return label_; }

 private:
  GraphLabel label_;
};

ExplanationGraph perturb_for_test(const Sample& s, const RelationVocabulary& vocab, Rng& rng) {
  return perturb(s.gold_graphs.front(), vocab, 1 + static_cast<int>(rng.below(3)), rng.next(),
                 StanceTexts{s.belief, s.argument});
}

// Three of the four single-edge removals lower the hashed probability.
constexpr double EA_HASH_GOLDEN = 0.75;

}  // namespace

TEST_SUITE("ged") {
  TEST_CASE("identical graphs have distance zero") {
    auto g = egraph::testing::factory_graph();
    CHECK(graph_edit_distance(g, g).cost == 0);
    CHECK(ged(g, g) == 0.0);
  }

  TEST_CASE("one relation changed on a chain") {
    auto a = parse_graph("(a; causes; b)(b; causes; c)(c; causes; d)");
    auto b = parse_graph("(a; causes; b)(b; not causes; c)(c; causes; d)");
    auto r = graph_edit_distance(a, b);
    CHECK(r.cost == 1);
    CHECK(r.normalizer == 14);
    CHECK(ged(a, b) == doctest::Approx(1.0 / 14.0).epsilon(1e-15));
    CHECK(oracle::brute_force_ged(to_labeled(a), to_labeled(b)) == 1);
  }

  TEST_CASE("disjoint single-edge graphs") {
    auto a = parse_graph("(a; causes; b)");
    auto b = parse_graph("(x; desires; y)");
    const int oracle_cost = oracle::brute_force_ged(to_labeled(a), to_labeled(b));
    CHECK(oracle_cost == 3);  // two node relabels and one edge relabel
    CHECK(graph_edit_distance(a, b).cost == oracle_cost);
    CHECK(graph_edit_distance(a, b).cost <= 6);
  }

  TEST_CASE("reversed edge costs a delete and an insert") {
    auto a = parse_graph("(a; causes; b)");
    auto b = parse_graph("(b; causes; a)");
    CHECK(graph_edit_distance(a, b).cost == oracle::brute_force_ged(to_labeled(a), to_labeled(b)));
    CHECK(graph_edit_distance(a, b).cost == 2);
  }

  TEST_CASE("agrees with brute force, symmetric, bounded") {
    Rng rng(31337);
    for (int trial = 0; trial < 300; ++trial) {
      auto a = small_random_graph(rng);
      auto b = small_random_graph(rng);
      const auto ab = graph_edit_distance(a, b);
      const auto ba = graph_edit_distance(b, a);
      CHECK(ab.cost == oracle::brute_force_ged(to_labeled(a), to_labeled(b)));
      CHECK(ab.cost == ba.cost);
      CHECK(ab.normalized() >= 0.0);
      CHECK(ab.normalized() <= 1.0);
    }
  }

  TEST_CASE("triangle inequality on raw costs") {
    Rng rng(8);
    for (int trial = 0; trial < 200; ++trial) {
      auto a = small_random_graph(rng);
      auto b = small_random_graph(rng);
      auto c = small_random_graph(rng);
      CHECK(graph_edit_distance(a, c).cost <= graph_edit_distance(a, b).cost + graph_edit_distance(b, c).cost);
    }
  }

  TEST_CASE("full-size graphs finish and respect symmetry") {
    auto vocab = RelationVocabulary::defaults();
    Rng rng(4);
    for (int trial = 0; trial < 30; ++trial) {
      auto a = egraph::testing::random_connected_dag(rng, 9, 8, vocab, 14);
      auto b = egraph::testing::random_connected_dag(rng, 9, 8, vocab, 14);
      CHECK(graph_edit_distance(a, b).cost == graph_edit_distance(b, a).cost);
    }
  }

  TEST_CASE("size limit") {
    std::string text;
    for (int i = 0; i < 9; ++i) text += "(n" + std::to_string(i) + "; causes; n" + std::to_string(i + 1) + ")";
    auto big = parse_graph(text);
    CHECK_THROWS_AS(ged(big, egraph::testing::factory_graph()), SizeLimitError);
  }
}

TEST_SUITE("hungarian") {
  TEST_CASE("identity matrix") {
    auto a = max_weight_assignment({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    CHECK(a.row_to_col == std::vector<int>{0, 1, 2});
    CHECK(a.weight == 3.0);
  }

  TEST_CASE("anti-diagonal") {
    auto a = max_weight_assignment({{0, 1}, {1, 0}});
    CHECK(a.row_to_col == std::vector<int>{1, 0});
    CHECK(a.weight == 2.0);
  }

  TEST_CASE("3x3 example takes the diagonal") {
    ScoreMatrix m{{.9, .1, .2}, {.4, .8, .1}, {.3, .2, .7}};
    auto a = max_weight_assignment(m);
    CHECK(a.row_to_col == std::vector<int>{0, 1, 2});
    CHECK(a.weight == doctest::Approx(2.4).epsilon(1e-12));
    std::vector<std::vector<double>> rows = {{.9, .1, .2}, {.4, .8, .1}, {.3, .2, .7}};
    CHECK(oracle::brute_force_assignment(rows) == doctest::Approx(2.4).epsilon(1e-12));
  }

  TEST_CASE("random square and rectangular matrices match permutation enumeration") {
    Rng rng(77);
    for (int trial = 0; trial < 150; ++trial) {
      const std::size_t rows = 1 + rng.below(6), cols = 1 + rng.below(6);
      ScoreMatrix m(rows, cols);
      std::vector<std::vector<double>> ref(rows, std::vector<double>(cols));
      for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
          ref[r][c] = m(r, c) = static_cast<double>(rng.below(1000)) / 1000.0;
        }
      }
      auto a = max_weight_assignment(m);
      CHECK(a.weight == doctest::Approx(oracle::brute_force_assignment(ref)).epsilon(1e-12));
      std::set<int> cols_used;
      int matched = 0;
      for (int c : a.row_to_col) {
        if (c < 0) continue;
        ++matched;
        CHECK(cols_used.insert(c).second);
      }
      CHECK(matched == static_cast<int>(std::min(rows, cols)));
    }
  }

  TEST_CASE("never beaten by a random permutation") {
    Rng rng(1);
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t n = 2 + rng.below(6);
      ScoreMatrix m(n, n);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) m(r, c) = static_cast<double>(rng.below(10000)) / 10000.0;
      const double best = max_weight_assignment(m).weight;
      std::vector<std::size_t> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      for (int probe = 0; probe < 100; ++probe) {
        for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
        double w = 0;
        for (std::size_t r = 0; r < n; ++r) w += m(r, perm[r]);
        CHECK(best >= w - 1e-12);
      }
    }
  }

  TEST_CASE("empty matrix") {
    auto a = max_weight_assignment(ScoreMatrix(0, 3));
    CHECK(a.weight == 0.0);
    CHECK(a.row_to_col.empty());
  }
}

TEST_SUITE("gbs") {
  TEST_CASE("edge sentence keeps the relation verbatim") {
    auto g = parse_graph("(necessary; not desires; banned)");
    CHECK(edge_sentence(g.edges()[0]) == "necessary not desires banned");
  }

  TEST_CASE("prediction equal to gold scores 1") {
    TokenF1Scorer scorer;
    auto g = egraph::testing::factory_graph();
    std::vector<ExplanationGraph> golds{g};
    CHECK(gbs(g, golds, scorer) == 1.0);
  }

  TEST_CASE("two of four gold edges matched perfectly") {
    ExactMatchScorer scorer;
    auto gold = parse_graph("(a; causes; b)(b; causes; c)(c; causes; d)(d; causes; e)");
    auto pred = parse_graph("(a; causes; b)(b; causes; c)");
    auto s = edge_match(pred, gold, scorer);
    CHECK(s.precision == 1.0);
    CHECK(s.recall == 0.5);
    CHECK(s.f1 == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  }

  TEST_CASE("best match across gold graphs") {
    ExactMatchScorer scorer;
    auto pred = parse_graph("(a; causes; b)(b; causes; c)(c; causes; d)");
    std::vector<ExplanationGraph> golds{parse_graph("(x; causes; y)(y; causes; z)(z; causes; w)"), pred};
    CHECK(gbs(pred, golds, scorer) == 1.0);
    CHECK_THROWS_AS(gbs(pred, std::span<const ExplanationGraph>{}, scorer), MetricError);
  }

  TEST_CASE("exact-string scorer equals edge-set F1") {
    ExactMatchScorer scorer;
    std::vector<std::string> relations = {"causes", "desires"};
    std::vector<std::string> labels = {"a", "b", "c", "d"};
    Rng rng(12);
    for (int trial = 0; trial < 300; ++trial) {
      auto pred = egraph::testing::random_graph(rng, 4, 1 + rng.below(6), relations, labels);
      auto gold = egraph::testing::random_graph(rng, 4, 1 + rng.below(6), relations, labels);
      std::set<std::string> ps, gs;
      for (const auto& e : pred.edges()) ps.insert(edge_sentence(e));
      for (const auto& e : gold.edges()) gs.insert(edge_sentence(e));
      std::size_t common = 0;
      for (const auto& s : ps) common += gs.count(s);
      const double p = static_cast<double>(common) / ps.size();
      const double r = static_cast<double>(common) / gs.size();
      const double f1 = common == 0 ? 0.0 : 2 * p * r / (p + r);
      CHECK(edge_match(pred, gold, scorer).f1 == doctest::Approx(f1).epsilon(1e-12));
    }
  }
}

TEST_SUITE("edge importance") {
  Sample factory_sample() {
    Sample s;
    s.id = "example";
    s.belief = egraph::testing::kFactoryBelief;
    s.argument = egraph::testing::kFactoryArgument;
    s.gold_stance = Stance::counter;
    s.gold_graphs.push_back(egraph::testing::factory_graph());
    return s;
  }

  TEST_CASE("constant scorer finds no important edge") {
    ConstantStance scorer(0.5);
    CHECK(edge_importance(factory_sample(), egraph::testing::factory_graph(), scorer) == 0.0);
  }

  TEST_CASE("edge-count scorer finds every edge important") {
    EdgeCountStance scorer;
    CHECK(edge_importance(factory_sample(), egraph::testing::factory_graph(), scorer) == 1.0);
  }

  TEST_CASE("hash scorer golden value") {
    HashStance scorer;
    CHECK(edge_importance(factory_sample(), egraph::testing::factory_graph(), scorer) == EA_HASH_GOLDEN);
  }

  TEST_CASE("one-edge graph is scored against the empty graph") {
    EdgeCountStance scorer;
    CHECK(edge_importance(factory_sample(), parse_graph("(a; causes; b)"), scorer) == 1.0);
  }
}

TEST_SUITE("seca") {
  TEST_CASE("fixed classifiers") {
    Sample s;
    s.belief = egraph::testing::kFactoryBelief;
    s.gold_stance = Stance::counter;
    FixedClassifier always_gold(GraphLabel::counter), always_incorrect(GraphLabel::incorrect);
    CHECK(semantic_correct(s, egraph::testing::factory_graph(), always_gold));
    CHECK_FALSE(semantic_correct(s, egraph::testing::factory_graph(), always_incorrect));
  }

  TEST_CASE("rule-based classifier on the factory farming counter graph") {
    RuleBasedClassifier classifier;
    CHECK(classifier.classify(egraph::testing::kFactoryBelief, egraph::testing::kFactoryGraph) ==
          GraphLabel::counter);
    CHECK(classifier.classify(egraph::testing::kFactoryBelief, "(a; causes; b)") == GraphLabel::incorrect);
    CHECK(classifier.classify(egraph::testing::kFactoryBelief, "(a; causes") == GraphLabel::incorrect);
  }
}

TEST_SUITE("corpus") {
  const auto vocab = RelationVocabulary::defaults();

  TEST_CASE("self-evaluation") {
    auto samples = egraph::testing::synthetic_corpus(30, 3, vocab);
    auto preds = egraph::testing::gold_predictions(samples);
    TokenF1Scorer sim;
    LexicalStanceScorer stance;
    RuleBasedClassifier cls;
    auto report = evaluate_corpus(samples, preds, vocab, {sim, stance, cls});
    CHECK(report.aggregate.sa == 1.0);
    CHECK(report.aggregate.stca == 1.0);
    CHECK(report.aggregate.ged == 0.0);
    CHECK(report.aggregate.gbs == 1.0);
    CHECK(report.aggregate.seca <= report.aggregate.stca);
  }

  TEST_CASE("all stances wrong") {
    auto samples = egraph::testing::synthetic_corpus(20, 4, vocab);
    auto preds = egraph::testing::gold_predictions(samples);
    for (auto& p : preds) p.stance = p.stance == Stance::support ? Stance::counter : Stance::support;
    TokenF1Scorer sim;
    LexicalStanceScorer stance;
    FixedClassifier cls(GraphLabel::support);
    auto report = evaluate_corpus(samples, preds, vocab, {sim, stance, cls});
    CHECK(report.aggregate.sa == 0.0);
    CHECK(report.aggregate.stca == 0.0);
    CHECK(report.aggregate.ged == 1.0);
    CHECK(report.aggregate.gbs == 0.0);
    CHECK(report.aggregate.ea == 0.0);
    CHECK(report.aggregate.seca == 0.0);
    for (const auto& o : report.per_sample) CHECK_FALSE(o.seca_label.has_value());
  }

  TEST_CASE("ten samples, seven right stances, five of them valid graphs") {
    auto samples = egraph::testing::synthetic_corpus(10, 5, vocab);
    auto preds = egraph::testing::gold_predictions(samples);
    for (std::size_t i = 7; i < 10; ++i) {
      preds[i].stance = preds[i].stance == Stance::support ? Stance::counter : Stance::support;
    }
    preds[5].graph_text = "(x; causes; y)(y; causes; z)";  // two edges
    preds[6].graph_text = "(x; causes";                      // malformed
    TokenF1Scorer sim;
    LexicalStanceScorer stance;
    RuleBasedClassifier cls;
    auto report = evaluate_corpus(samples, preds, vocab, {sim, stance, cls});
    CHECK(report.aggregate.sa == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(report.aggregate.stca == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(report.aggregate.ged == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(report.aggregate.gbs == doctest::Approx(0.5).epsilon(1e-15));
  }

  TEST_CASE("parallel and serial evaluation agree and ignore input order") {
    auto samples = egraph::testing::synthetic_corpus(40, 6, vocab);
    auto preds = egraph::testing::gold_predictions(samples);
    Rng rng(6);
    // Perturb some predictions so scores are non-trivial.
    for (std::size_t i = 0; i < preds.size(); i += 3) {
      preds[i].graph_text = serialize_graph(perturb_for_test(samples[i], vocab, rng));
    }
    TokenF1Scorer sim;
    LexicalStanceScorer stance;
    RuleBasedClassifier cls;
    auto par = evaluate_corpus(samples, preds, vocab, {sim, stance, cls}, {GedAggregation::min_over_golds, 4});
    auto ser = evaluate_corpus_serial(samples, preds, vocab, {sim, stance, cls});
    CHECK(par.aggregate.sa == ser.aggregate.sa);
    CHECK(par.aggregate.gbs == ser.aggregate.gbs);
    CHECK(par.aggregate.ged == ser.aggregate.ged);
    CHECK(par.aggregate.ea == ser.aggregate.ea);
    CHECK(par.aggregate.seca == ser.aggregate.seca);
    for (std::size_t i = 0; i < samples.size(); ++i) {
      CHECK(par.per_sample[i].id == ser.per_sample[i].id);
      CHECK(par.per_sample[i].ged == ser.per_sample[i].ged);
    }
    CHECK(par.aggregate.ged > 0.0);

    auto shuffled = samples;
    auto shuffled_preds = preds;
    for (std::size_t i = shuffled.size(); i > 1; --i) std::swap(shuffled[i - 1], shuffled[rng.below(i)]);
    for (std::size_t i = shuffled_preds.size(); i > 1; --i)
      std::swap(shuffled_preds[i - 1], shuffled_preds[rng.below(i)]);
    auto again = evaluate_corpus(shuffled, shuffled_preds, vocab, {sim, stance, cls});
    CHECK(again.aggregate.sa == par.aggregate.sa);
    CHECK(again.aggregate.stca == par.aggregate.stca);
    CHECK(again.aggregate.seca == par.aggregate.seca);
    CHECK(again.aggregate.gbs == par.aggregate.gbs);
    CHECK(again.aggregate.ged == par.aggregate.ged);
    CHECK(again.aggregate.ea == par.aggregate.ea);
  }

  TEST_CASE("first-gold aggregation never lowers per-sample ged") {
    auto samples = egraph::testing::synthetic_corpus(20, 9, vocab);
    Rng rng(9);
    for (auto& s : samples) s.gold_graphs.push_back(perturb_for_test(s, vocab, rng));
    auto preds = egraph::testing::gold_predictions(samples);
    for (std::size_t i = 0; i < preds.size(); i += 2) {
      preds[i].graph_text = serialize_graph(samples[i].gold_graphs[1]);
    }
    TokenF1Scorer sim;
    LexicalStanceScorer stance;
    RuleBasedClassifier cls;
    auto min_report = evaluate_corpus(samples, preds, vocab, {sim, stance, cls}, {GedAggregation::min_over_golds});
    auto first_report = evaluate_corpus(samples, preds, vocab, {sim, stance, cls}, {GedAggregation::first_gold});
    bool some_higher = false;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      CHECK(first_report.per_sample[i].ged >= min_report.per_sample[i].ged);
      some_higher = some_higher || first_report.per_sample[i].ged > min_report.per_sample[i].ged;
    }
    CHECK(some_higher);
  }

  TEST_CASE("gating monotonicity on random corpora") {
    Rng rng(10);
    for (int trial = 0; trial < 10; ++trial) {
      auto samples = egraph::testing::synthetic_corpus(15, 100 + trial, vocab);
      auto preds = egraph::testing::gold_predictions(samples);
      for (auto& p : preds) {
        if (rng.below(3) == 0) p.stance = p.stance == Stance::support ? Stance::counter : Stance::support;
        if (rng.below(3) == 0) p.graph_text = "(a; causes; b)(b; causes; c)";
      }
      TokenF1Scorer sim;
      LexicalStanceScorer stance;
      RuleBasedClassifier cls;
      auto r = evaluate_corpus(samples, preds, vocab, {sim, stance, cls});
      CHECK(r.aggregate.sa >= r.aggregate.stca);
      CHECK(r.aggregate.stca >= r.aggregate.seca);
      for (const auto& o : r.per_sample) {
        if (!o.gated()) {
          CHECK(o.ged == 1.0);
          CHECK(o.gbs == 0.0);
          CHECK(o.ea == 0.0);
        }
      }
    }
  }

  TEST_CASE("id errors") {
    auto samples = egraph::testing::synthetic_corpus(3, 1, vocab);
    auto preds = egraph::testing::gold_predictions(samples);
    TokenF1Scorer sim;
    LexicalStanceScorer stance;
    RuleBasedClassifier cls;
    auto unknown = preds;
    unknown[0].id = "nope";
    CHECK_THROWS_AS(evaluate_corpus(samples, unknown, vocab, {sim, stance, cls}), MetricError);
    auto duplicate = preds;
    duplicate.push_back(preds[0]);
    try {
      evaluate_corpus(samples, duplicate, vocab, {sim, stance, cls});
      FAIL("expected error");
    } catch (const MetricError& e) {
      CHECK(e.kind() == MetricError::Kind::duplicate_id);
    }
    auto dup_samples = samples;
    dup_samples.push_back(samples[0]);
    CHECK_THROWS_AS(evaluate_corpus_serial(dup_samples, preds, vocab, {sim, stance, cls}), MetricError);
  }
}

TEST_SUITE("token f1") {
  TEST_CASE("partial overlap") {
    CHECK(token_f1("a b c", "a b d") == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(token_f1("A  b", "a B") == 1.0);
    CHECK(token_f1("", "") == 1.0);
    CHECK(token_f1("a", "") == 0.0);
  }

  TEST_CASE("symmetric and bounded") {
    const std::vector<std::string> words = {"x", "y", "z", "w"};
    Rng rng(2);
    for (int trial = 0; trial < 200; ++trial) {
      std::string a, b;
      for (std::size_t i = rng.below(5); i > 0; --i) a += words[rng.below(4)] + " ";
      for (std::size_t i = rng.below(5); i > 0; --i) b += words[rng.below(4)] + " ";
      const double ab = token_f1(a, b);
      CHECK(ab == doctest::Approx(token_f1(b, a)).epsilon(1e-15));
      CHECK(ab >= 0.0);
      CHECK(ab <= 1.0);
    }
  }
}
