#include "egraph/sidecar.hpp"

#include <algorithm>
#include <cerrno>
#include <csignal>
#include <cstring>
#include <optional>
#include <thread>

#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

#include "egraph/error.hpp"

namespace egraph {

namespace {

using Clock = std::chrono::steady_clock;
using json = nlohmann::json;

int remaining_ms(Clock::time_point deadline) {
  const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now()).count();
  return static_cast<int>(std::clamp<long long>(left, 0, 1 << 30));
}

std::string describe_status(int status) {
  if (WIFEXITED(status)) return "exit status " + std::to_string(WEXITSTATUS(status));
  if (WIFSIGNALED(status)) return "signal " + std::to_string(WTERMSIG(status));
  return "unknown status";
}

// Writes with SIGPIPE blocked for this thread so that a dead reader yields
// EPIPE instead of terminating the process.
class SigpipeGuard {
 public:
  SigpipeGuard() {
    sigemptyset(&pipe_set_);
    sigaddset(&pipe_set_, SIGPIPE);
    sigset_t pending;
    sigpending(&pending);
    was_pending_ = sigismember(&pending, SIGPIPE) == 1;
    pthread_sigmask(SIG_BLOCK, &pipe_set_, &old_);
  }
  ~SigpipeGuard() {
    if (!was_pending_) {
      const timespec zero{0, 0};
      while (sigtimedwait(&pipe_set_, nullptr, &zero) > 0) {
      }
    }
    pthread_sigmask(SIG_SETMASK, &old_, nullptr);
  }

 private:
  sigset_t pipe_set_{};
  sigset_t old_{};
  bool was_pending_ = false;
};

json parse_response(const std::string& line, std::uint64_t id) {
  json response;
  try {
    response = json::parse(line);
  } catch (const json::parse_error&) {
    throw ProtocolError(ProtocolError::Kind::malformed, "sidecar sent a non-JSON line: " + line);
  }
  if (!response.is_object()) {
    throw ProtocolError(ProtocolError::Kind::malformed, "sidecar response is not an object: " + line);
  }
  if (response.contains("error")) {
    const auto& e = response["error"];
    throw ProtocolError(ProtocolError::Kind::remote, "sidecar error: " + (e.is_string() ? e.get<std::string>() : e.dump()));
  }
  auto it = response.find("id");
  if (it == response.end() || !it->is_number_unsigned()) {
    throw ProtocolError(ProtocolError::Kind::malformed, "sidecar response lacks a numeric id: " + line);
  }
  if (it->get<std::uint64_t>() != id) {
    throw ProtocolError(ProtocolError::Kind::id_mismatch,
                        "sidecar answered id " + it->dump() + " to request " + std::to_string(id));
  }
  return response;
}

double number_field(const json& response, const char* key) {
  auto it = response.find(key);
  if (it == response.end() || !it->is_number()) {
    throw ProtocolError(ProtocolError::Kind::malformed, std::string("sidecar response lacks numeric \"") + key + "\"");
  }
  return it->get<double>();
}

}  // namespace

SidecarClient::SidecarClient(SidecarOptions options) : options_(std::move(options)) {
  launch();
  handshake();
}

SidecarClient::~SidecarClient() { stop(); }

void SidecarClient::restart() {
  stop();
  launch();
  handshake();
}

void SidecarClient::launch() {
  if (options_.command.empty()) throw ProtocolError(ProtocolError::Kind::launch, "empty sidecar command");
  int in_pipe[2], out_pipe[2];
  if (pipe2(in_pipe, O_CLOEXEC) != 0) {
    throw ProtocolError(ProtocolError::Kind::launch, std::string("pipe: ") + std::strerror(errno));
  }
  if (pipe2(out_pipe, O_CLOEXEC) != 0) {
    const int err = errno;
    close(in_pipe[0]);
    close(in_pipe[1]);
    throw ProtocolError(ProtocolError::Kind::launch, std::string("pipe: ") + std::strerror(err));
  }
  const pid_t pid = fork();
  if (pid < 0) {
    const int err = errno;
    for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1]}) close(fd);
    throw ProtocolError(ProtocolError::Kind::launch, std::string("fork: ") + std::strerror(err));
  }
  if (pid == 0) {
    setpgid(0, 0);
    dup2(in_pipe[0], STDIN_FILENO);
    dup2(out_pipe[1], STDOUT_FILENO);
    execl("/bin/sh", "sh", "-c", options_.command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  setpgid(pid, pid);
  close(in_pipe[0]);
  close(out_pipe[1]);
  pid_ = pid;
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];
  buffer_.clear();
  next_id_ = 0;
}

void SidecarClient::handshake() {
  const auto deadline = Clock::now() + options_.timeout;
  std::string line;
  try {
    write_line(json{{"op", "hello"}, {"version", kSidecarProtocolVersion}}.dump(), deadline);
    line = read_line(deadline);
  } catch (const ProtocolError& e) {
    throw ProtocolError(ProtocolError::Kind::launch, std::string("sidecar handshake failed: ") + e.what());
  }
  json response;
  try {
    response = json::parse(line);
  } catch (const json::parse_error&) {
    stop();
    throw ProtocolError(ProtocolError::Kind::malformed, "sidecar handshake reply is not JSON: " + line);
  }
  const auto version = response.is_object() ? response.find("version") : response.end();
  if (version != response.end() && version->is_number_integer() && version->get<int>() != kSidecarProtocolVersion) {
    stop();
    throw ProtocolError(ProtocolError::Kind::version_mismatch,
                        "sidecar speaks protocol version " + version->dump() + ", expected " +
                            std::to_string(kSidecarProtocolVersion));
  }
  if (version == response.end() || !version->is_number_integer() || response.value("ok", false) != true) {
    stop();
    throw ProtocolError(ProtocolError::Kind::malformed, "unexpected sidecar handshake reply: " + line);
  }
}

void SidecarClient::stop() {
  if (to_child_ >= 0) close(to_child_);
  if (from_child_ >= 0) close(from_child_);
  to_child_ = from_child_ = -1;
  if (pid_ > 0) {
    // Closed stdin asks the child to finish; give it a moment, then kill.
    int status = 0;
    bool reaped = false;
    for (int i = 0; i < 50 && !reaped; ++i) {
      reaped = waitpid(pid_, &status, WNOHANG) == pid_;
      if (!reaped) std::this_thread::sleep_for(std::chrono::milliseconds(2));
    }
    if (!reaped) {
      kill(pid_, SIGKILL);
      waitpid(pid_, &status, 0);
    }
    // The command may have spawned helpers (the shell wrapper among them).
    kill(-pid_, SIGKILL);
  }
  pid_ = -1;
  buffer_.clear();
}

void SidecarClient::fail_child_exit(const std::string& context) {
  std::string detail = "no status";
  if (pid_ > 0) {
    int status = 0;
    // The pipe closed, so the child is exiting or gone.
    for (int i = 0; i < 500; ++i) {
      if (waitpid(pid_, &status, WNOHANG) == pid_) {
        detail = describe_status(status);
        kill(-pid_, SIGKILL);
        pid_ = -1;
        break;
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(2));
    }
  }
  stop();
  throw ProtocolError(ProtocolError::Kind::child_exit, "sidecar exited " + context + " (" + detail + ")");
}

void SidecarClient::write_line(const std::string& line, Clock::time_point deadline) {
  if (!running()) throw ProtocolError(ProtocolError::Kind::child_exit, "sidecar is not running");
  const std::string data = line + "\n";
  std::size_t written = 0;
  SigpipeGuard guard;
  while (written < data.size()) {
    pollfd p{to_child_, POLLOUT, 0};
    const int ready = poll(&p, 1, remaining_ms(deadline));
    if (ready < 0 && errno == EINTR) continue;
    if (ready == 0) {
      stop();
      throw ProtocolError(ProtocolError::Kind::timeout, "timed out writing to sidecar");
    }
    const ssize_t n = write(to_child_, data.data() + written, data.size() - written);
    if (n < 0) {
      if (errno == EINTR || errno == EAGAIN) continue;
      fail_child_exit("while receiving a request");
    }
    written += static_cast<std::size_t>(n);
  }
}

std::string SidecarClient::read_line(Clock::time_point deadline) {
  if (!running()) throw ProtocolError(ProtocolError::Kind::child_exit, "sidecar is not running");
  for (;;) {
    const auto newline = buffer_.find('\n');
    if (newline != std::string::npos) {
      std::string line = buffer_.substr(0, newline);
      buffer_.erase(0, newline + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      return line;
    }
    pollfd p{from_child_, POLLIN, 0};
    const int ready = poll(&p, 1, remaining_ms(deadline));
    if (ready < 0 && errno == EINTR) continue;
    if (ready == 0) {
      stop();
      throw ProtocolError(ProtocolError::Kind::timeout, "timed out waiting for sidecar response");
    }
    char chunk[4096];
    const ssize_t n = read(from_child_, chunk, sizeof chunk);
    if (n < 0 && (errno == EINTR || errno == EAGAIN)) continue;
    if (n <= 0) fail_child_exit("before responding");
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

std::string SidecarClient::exchange(const std::string& line) {
  const auto deadline = Clock::now() + options_.timeout;
  write_line(line, deadline);
  return read_line(deadline);
}

double SidecarClient::similarity(std::string_view a, std::string_view b) {
  const std::uint64_t id = next_id_++;
  const json request{{"op", "sim"}, {"id", id}, {"a", a}, {"b", b}};
  try {
    return number_field(parse_response(exchange(request.dump()), id), "score");
  } catch (const ProtocolError& e) {
    if (e.kind() != ProtocolError::Kind::remote) stop();
    throw;
  }
}

double SidecarClient::stance(std::string_view belief, std::string_view argument, std::string_view graph_text,
                             Stance target) {
  const std::uint64_t id = next_id_++;
  const json request{{"op", "stance"}, {"id", id},           {"belief", belief}, {"argument", argument},
                     {"graph", graph_text}, {"target", to_string(target)}};
  try {
    return number_field(parse_response(exchange(request.dump()), id), "score");
  } catch (const ProtocolError& e) {
    if (e.kind() != ProtocolError::Kind::remote) stop();
    throw;
  }
}

GraphLabel SidecarClient::classify(std::string_view belief, std::string_view graph_text) {
  const std::uint64_t id = next_id_++;
  const json request{{"op", "classify"}, {"id", id}, {"belief", belief}, {"graph", graph_text}};
  try {
    const json response = parse_response(exchange(request.dump()), id);
    auto it = response.find("label");
    std::optional<GraphLabel> label;
    if (it != response.end() && it->is_string()) label = parse_graph_label(it->get<std::string>());
    if (!label) throw ProtocolError(ProtocolError::Kind::malformed, "sidecar response lacks a valid \"label\"");
    return *label;
  } catch (const ProtocolError& e) {
    if (e.kind() != ProtocolError::Kind::remote) stop();
    throw;
  }
}

double SidecarSimilarity::score(std::string_view a, std::string_view b) {
  return std::clamp(client_.similarity(a, b), 0.0, 1.0);
}

double SidecarStance::probability(std::string_view belief, std::string_view argument, std::string_view graph_text,
                                  Stance target) {
  return std::clamp(client_.stance(belief, argument, graph_text, target), 0.0, 1.0);
}

GraphLabel SidecarClassifier::classify(std::string_view belief, std::string_view graph_text) {
  return client_.classify(belief, graph_text);
}

}  // namespace egraph
