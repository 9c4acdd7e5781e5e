#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <string_view>

#include <sys/types.h>

#include "egraph/scorers.hpp"

namespace egraph {

inline constexpr int kSidecarProtocolVersion = 1;

struct SidecarOptions {
  std::string command;  // run through /bin/sh -c
  std::chrono::milliseconds timeout{30000};
};

// Client for an external scorer process speaking newline-delimited JSON on
// its standard input and output. One request is in flight at a time; each
// response must carry the id of the request it answers.
//
// Any protocol failure (malformed line, id mismatch, timeout, child exit)
// stops the child. Further requests throw until restart() succeeds.
class SidecarClient {
 public:
  // Launches the command and performs the handshake.
  explicit SidecarClient(SidecarOptions options);
  ~SidecarClient();
  SidecarClient(const SidecarClient&) = delete;
  SidecarClient& operator=(const SidecarClient&) = delete;

  void restart();
  bool running() const { return pid_ > 0; }
  std::uint64_t requests_sent() const { return next_id_; }

  double similarity(std::string_view a, std::string_view b);
  double stance(std::string_view belief, std::string_view argument, std::string_view graph_text,
                Stance target);
  GraphLabel classify(std::string_view belief, std::string_view graph_text);

 private:
  void launch();
  void handshake();
  void stop();
  std::string exchange(const std::string& line);
  void write_line(const std::string& line, std::chrono::steady_clock::time_point deadline);
  std::string read_line(std::chrono::steady_clock::time_point deadline);
  [[noreturn]] void fail_child_exit(const std::string& context);

  SidecarOptions options_;
  pid_t pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;
  std::uint64_t next_id_ = 0;
};

// Scorer adapters over one client. Calls are not reentrant.
class SidecarSimilarity : public EdgeSimilarityScorer {
 public:
  explicit SidecarSimilarity(SidecarClient& client) : client_(client) {}
  double score(std::string_view a, std::string_view b) override;
  bool reentrant() const override { return false; }

 private:
  SidecarClient& client_;
};

class SidecarStance : public StanceScorer {
 public:
  explicit SidecarStance(SidecarClient& client) : client_(client) {}
  double probability(std::string_view belief, std::string_view argument, std::string_view graph_text,
                     Stance target) override;
  bool reentrant() const override { return false; }

 private:
  SidecarClient& client_;
};

class SidecarClassifier : public GraphStanceClassifier {
 public:
  explicit SidecarClassifier(SidecarClient& client) : client_(client) {}
  GraphLabel classify(std::string_view belief, std::string_view graph_text) override;
  bool reentrant() const override { return false; }

 private:
  SidecarClient& client_;
};

}  // namespace egraph
