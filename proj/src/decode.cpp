#include "egraph/decode.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include <omp.h>

#include <json.hpp>

#include "egraph/error.hpp"
#include "egraph/flow.hpp"
#include "egraph/text.hpp"
#include "egraph/validate.hpp"

namespace egraph {

namespace {

using json = nlohmann::json;
using Pair = std::pair<std::size_t, std::size_t>;

constexpr double kEps = 1e-12;

[[noreturn]] void invalid(const std::string& what) { throw DecodeError(DecodeError::Kind::invalid_tensor, what); }

}  // namespace

std::pair<std::size_t, std::size_t> EdgeProbTensor::pair_at(std::size_t index) const {
  const std::size_t row = nodes.size() - 1;
  const std::size_t m = index / row;
  std::size_t n = index % row;
  if (n >= m) ++n;
  return {m, n};
}

void check_tensor(const EdgeProbTensor& t, const RelationVocabulary& vocab) {
  const std::size_t n = t.node_count();
  if (n < kMinTensorNodes || n > kMaxTensorNodes) {
    invalid("tensor has " + std::to_string(n) + " nodes, expected 2 to 8");
  }
  std::set<std::string> keys;
  for (const auto& node : t.nodes) {
    std::optional<Concept> c;
    try {
      c.emplace(node.label);
    } catch (const GraphError&) {
      invalid("invalid node label \"" + node.label + "\"");
    }
    if (c->word_count() > kMaxConceptWords) invalid("node label \"" + node.label + "\" has more than three words");
    if (!keys.insert(c->key()).second) invalid("duplicate node label \"" + node.label + "\"");
  }
  if (t.relations.empty()) invalid("tensor has no relations");
  std::set<std::string> relation_keys;
  for (const auto& r : t.relations) {
    if (!vocab.contains(r)) invalid("relation \"" + r + "\" is not in the vocabulary");
    if (!relation_keys.insert(text::normalize(r)).second) invalid("duplicate relation \"" + r + "\"");
  }
  if (t.probs.size() != t.pair_count()) {
    invalid("expected " + std::to_string(t.pair_count()) + " probability vectors, got " +
            std::to_string(t.probs.size()));
  }
  for (std::size_t i = 0; i < t.probs.size(); ++i) {
    const auto& v = t.probs[i];
    const auto [m, k] = t.pair_at(i);
    const std::string where = "pair (" + std::to_string(m) + ", " + std::to_string(k) + ")";
    if (v.size() != t.relations.size() + 1) invalid(where + " has " + std::to_string(v.size()) + " entries");
    double sum = 0.0;
    for (double p : v) {
      if (!(p >= 0.0 && p <= 1.0)) invalid(where + " has an entry outside [0, 1]");
      sum += p;
    }
    if (std::abs(sum - 1.0) > kTensorSumTolerance) invalid(where + " does not sum to 1");
  }
}

EdgeProbTensor parse_tensor(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("tensor is not valid JSON: ") + e.what());
  }
  EdgeProbTensor t;
  try {
    for (const auto& node : doc.at("nodes")) {
      TensorNode tn;
      tn.label = node.at("label").get<std::string>();
      const auto origin_name = node.at("origin").get<std::string>();
      auto origin = parse_origin(origin_name);
      if (!origin) throw FormatError("unknown node origin \"" + origin_name + "\"");
      tn.origin = *origin;
      t.nodes.push_back(std::move(tn));
    }
    t.relations = doc.at("relations").get<std::vector<std::string>>();
    t.probs = doc.at("probs").get<std::vector<std::vector<double>>>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed tensor: ") + e.what());
  }
  return t;
}

EdgeProbTensor load_tensor(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open tensor file " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_tensor(buffer.str());
}

std::string tensor_to_json(const EdgeProbTensor& t) {
  json doc;
  doc["nodes"] = json::array();
  for (const auto& node : t.nodes) doc["nodes"].push_back({{"label", node.label}, {"origin", to_string(node.origin)}});
  doc["relations"] = t.relations;
  doc["probs"] = t.probs;
  return doc.dump();
}

std::size_t best_relation(const EdgeProbTensor& t, std::size_t m, std::size_t n) {
  const auto& v = t.at(m, n);
  std::size_t best = 0;
  for (std::size_t r = 1; r + 1 < v.size(); ++r) {
    if (v[r] > v[best]) best = r;
  }
  return best;
}

double selection_objective(const EdgeProbTensor& t, std::span<const Pair> selected) {
  std::vector<bool> on(t.pair_count(), false);
  for (auto [m, n] : selected) on[t.pair_index(m, n)] = true;
  double total = 0.0;
  for (std::size_t i = 0; i < t.pair_count(); ++i) {
    const auto [m, n] = t.pair_at(i);
    total += on[i] ? t.at(m, n)[best_relation(t, m, n)] : t.no_edge(m, n);
  }
  return total;
}

namespace {

// Branch and bound over pair selections in lexicographic order of the
// sorted pair list. Only strict improvements replace the incumbent, so the
// first optimum reached is the lexicographically smallest one.
class Decoder {
 public:
  explicit Decoder(const EdgeProbTensor& t) : t_(t), n_(static_cast<int>(t.node_count())), p_(t.pair_count()) {
    gain_.resize(p_);
    head_.resize(p_);
    tail_.resize(p_);
    for (std::size_t i = 0; i < p_; ++i) {
      const auto [m, n] = t.pair_at(i);
      head_[i] = static_cast<int>(m);
      tail_[i] = static_cast<int>(n);
      gain_[i] = t.at(m, n)[best_relation(t, m, n)] - t.no_edge(m, n);
    }
    // top_[i][k]: sum of the k largest gains among pairs i.., positives_[i]:
    // how many of them are positive.
    top_.assign(p_ + 1, {});
    positives_.assign(p_ + 1, 0);
    for (std::size_t i = 0; i <= p_; ++i) {
      std::vector<double> suffix(gain_.begin() + static_cast<std::ptrdiff_t>(i), gain_.end());
      std::sort(suffix.begin(), suffix.end(), std::greater<>());
      top_[i].assign(suffix.size() + 1, 0.0);
      for (std::size_t k = 0; k < suffix.size(); ++k) top_[i][k + 1] = top_[i][k] + suffix[k];
      positives_[i] = static_cast<int>(std::count_if(suffix.begin(), suffix.end(), [](double g) { return g > 0; }));
    }
  }

  std::optional<std::vector<std::size_t>> run() {
    State s;
    for (int v = 0; v < n_; ++v) {
      s.reach[static_cast<std::size_t>(v)] = static_cast<std::uint16_t>(1u << v);
      s.component[static_cast<std::size_t>(v)] = v;
    }
    s.components = n_;
    seed_incumbent();
    search(0, s);
    return best_selection_;
  }

 private:
  struct State {
    std::array<std::uint16_t, kMaxTensorNodes> reach{};  // nodes reachable from v, v included
    std::array<int, kMaxTensorNodes> component{};
    int components = 0;
    double gain = 0.0;
  };

  static constexpr int kMaxEdgesSelected = static_cast<int>(kMaxEdges);
  static constexpr int kMinEdgesSelected = static_cast<int>(kMinEdges);

  // Best possible gain from adding k in [need, limit] pairs taken from i..
  // Returns -infinity when no admissible k exists.
  double extension_bound(std::size_t i, int need, int capacity) const {
    const int available = static_cast<int>(p_ - i);
    const int limit = std::min(capacity, available);
    if (need > limit) return -std::numeric_limits<double>::infinity();
    const int k = std::clamp(positives_[i], need, limit);
    return top_[i][static_cast<std::size_t>(k)];
  }

  bool creates_cycle(const State& s, std::size_t j) const {
    return (s.reach[static_cast<std::size_t>(tail_[j])] >> head_[j]) & 1u;
  }

  State add(const State& s, std::size_t j) const {
    State next = s;
    const int h = head_[j], t = tail_[j];
    const auto from_tail = s.reach[static_cast<std::size_t>(t)];
    for (int u = 0; u < n_; ++u) {
      if ((s.reach[static_cast<std::size_t>(u)] >> h) & 1u) next.reach[static_cast<std::size_t>(u)] |= from_tail;
    }
    const int a = s.component[static_cast<std::size_t>(h)], b = s.component[static_cast<std::size_t>(t)];
    if (a != b) {
      for (int u = 0; u < n_; ++u) {
        if (next.component[static_cast<std::size_t>(u)] == b) next.component[static_cast<std::size_t>(u)] = a;
      }
      --next.components;
    }
    next.gain = s.gain + gain_[j];
    return next;
  }

  std::vector<std::pair<int, int>> as_pairs(const std::vector<std::size_t>& selection) const {
    std::vector<std::pair<int, int>> out;
    for (std::size_t j : selection) out.emplace_back(head_[j], tail_[j]);
    return out;
  }

  void consider_leaf(const State& s) {
    const int count = static_cast<int>(chosen_.size());
    if (count < kMinEdgesSelected || count > kMaxEdgesSelected) return;
    if (!(s.gain > best_gain_ + kEps)) return;
    if (!check_connectivity_flow(as_pairs(chosen_), n_).connected) return;
    best_gain_ = s.gain;
    best_selection_ = chosen_;
  }

  void search(std::size_t i, const State& s) {
    consider_leaf(s);
    const int count = static_cast<int>(chosen_.size());
    const int capacity = kMaxEdgesSelected - count;
    const int need = std::max({1, kMinEdgesSelected - count, s.components - 1});
    if (s.gain + extension_bound(i, need, capacity) <= best_gain_ + kEps) return;
    for (std::size_t j = i; j < p_; ++j) {
      // Extensions whose next pair is j.
      const double bound = s.gain + gain_[j] + extension_bound(j + 1, std::max(0, need - 1), capacity - 1);
      if (bound <= best_gain_ + kEps) continue;
      if (creates_cycle(s, j)) continue;
      chosen_.push_back(j);
      search(j + 1, add(s, j));
      chosen_.pop_back();
    }
  }

  // A feasible selection whose gain, less a margin, becomes the initial
  // threshold: a maximum spanning tree over unordered pairs, padded to
  // three edges, plus any remaining positive-gain pairs that keep it acyclic.
  void seed_incumbent() {
    std::vector<std::size_t> order(p_);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return gain_[a] > gain_[b]; });
    State s;
    for (int v = 0; v < n_; ++v) {
      s.reach[static_cast<std::size_t>(v)] = static_cast<std::uint16_t>(1u << v);
      s.component[static_cast<std::size_t>(v)] = v;
    }
    s.components = n_;
    std::vector<std::size_t> picked;
    auto try_add = [&](std::size_t j, bool must_join) {
      if (static_cast<int>(picked.size()) >= kMaxEdgesSelected || creates_cycle(s, j)) return;
      const bool joins = s.component[static_cast<std::size_t>(head_[j])] != s.component[static_cast<std::size_t>(tail_[j])];
      if (must_join && !joins) return;
      s = add(s, j);
      picked.push_back(j);
    };
    for (std::size_t j : order) try_add(j, true);
    for (std::size_t j : order) {
      const bool wanted = static_cast<int>(picked.size()) < kMinEdgesSelected || gain_[j] > 0;
      if (wanted && std::find(picked.begin(), picked.end(), j) == picked.end()) try_add(j, false);
    }
    if (s.components != 1 || static_cast<int>(picked.size()) < kMinEdgesSelected) return;
    best_gain_ = s.gain - 2 * kEps;
  }

  const EdgeProbTensor& t_;
  int n_;
  std::size_t p_;
  std::vector<double> gain_;
  std::vector<int> head_, tail_;
  std::vector<std::vector<double>> top_;
  std::vector<int> positives_;
  double best_gain_ = -std::numeric_limits<double>::infinity();
  std::optional<std::vector<std::size_t>> best_selection_;
  std::vector<std::size_t> chosen_;
};

}  // namespace

DecodedGraph decode(const EdgeProbTensor& t, const RelationVocabulary& vocab) {
  check_tensor(t, vocab);
  const auto belief = std::count_if(t.nodes.begin(), t.nodes.end(), [](const TensorNode& n) { return counts_for_belief(n.origin); });
  const auto argument =
      std::count_if(t.nodes.begin(), t.nodes.end(), [](const TensorNode& n) { return counts_for_argument(n.origin); });
  if (belief < static_cast<long>(kMinInternalConcepts) || argument < static_cast<long>(kMinInternalConcepts)) {
    throw DecodeError(DecodeError::Kind::infeasible, "tensor needs at least two belief and two argument nodes");
  }
  Decoder decoder(t);
  const auto selection = decoder.run();
  if (!selection) {
    throw DecodeError(DecodeError::Kind::infeasible, "no connected acyclic selection with 3 to 8 edges exists");
  }

  std::vector<Pair> selected;
  std::vector<Edge> edges;
  for (std::size_t j : *selection) {
    const auto [m, n] = t.pair_at(j);
    selected.emplace_back(m, n);
    edges.emplace_back(t.nodes[m].label, t.relations[best_relation(t, m, n)], t.nodes[n].label);
  }
  DecodedGraph out{ExplanationGraph(std::move(edges)), selection_objective(t, selected), std::move(selected), {}};
  for (const Concept& c : out.graph.nodes()) {
    for (const auto& node : t.nodes) {
      if (Concept(node.label) == c) out.origins.push_back(node.origin);
    }
  }
  const auto report = validate(out.graph, out.origins, vocab);
  if (!report.overall()) {
    std::string failed;
    for (auto name : report.failures()) failed += (failed.empty() ? "" : ", ") + std::string(name);
    throw Error("decoder produced an invalid graph: " + failed);
  }
  return out;
}

namespace {

DecodeOutcome decode_one(const EdgeProbTensor& t, const RelationVocabulary& vocab) {
  DecodeOutcome outcome;
  try {
    outcome.result = decode(t, vocab);
  } catch (const std::exception& e) {
    outcome.error = e.what();
  }
  return outcome;
}

}  // namespace

std::vector<DecodeOutcome> decode_batch(std::span<const EdgeProbTensor> tensors, const RelationVocabulary& vocab,
                                        int threads) {
  std::vector<DecodeOutcome> out(tensors.size());
  const int team = threads > 0 ? threads : omp_get_max_threads();
  const auto n = static_cast<std::ptrdiff_t>(tensors.size());
#pragma omp parallel for schedule(dynamic) num_threads(team)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = decode_one(tensors[static_cast<std::size_t>(i)], vocab);
  return out;
}

std::vector<DecodeOutcome> decode_batch_serial(std::span<const EdgeProbTensor> tensors,
                                               const RelationVocabulary& vocab) {
  std::vector<DecodeOutcome> out;
  out.reserve(tensors.size());
  for (const auto& t : tensors) out.push_back(decode_one(t, vocab));
  return out;
}

}  // namespace egraph
