#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace egraph {

// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  enum class Kind { syntax, self_loop, duplicate_edge, empty_graph };

  ParseError(Kind kind, std::size_t offset, const std::string& what)
      : Error(what + " at byte " + std::to_string(offset)),
        kind_(kind),
        offset_(offset) {}

  Kind kind() const { return kind_; }
  std::size_t offset() const { return offset_; }

 private:
  Kind kind_;
  std::size_t offset_;
};

class GraphError : public Error {
 public:
  enum class Kind { not_a_dag, disconnected, empty, self_loop, duplicate_edge, invalid_concept };

  GraphError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

class VocabularyError : public Error {
 public:
  using Error::Error;
};

class PerturbationError : public Error {
 public:
  using Error::Error;
};

class SizeLimitError : public Error {
 public:
  using Error::Error;
};

class MetricError : public Error {
 public:
  enum class Kind { unknown_id, duplicate_id, missing_prediction, bad_input };

  MetricError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

class DecodeError : public Error {
 public:
  enum class Kind { infeasible, invalid_tensor };

  DecodeError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

class ProtocolError : public Error {
 public:
  enum class Kind { malformed, id_mismatch, version_mismatch, remote, timeout, child_exit, launch };

  ProtocolError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Bad file contents or unreadable files (maps to CLI exit code 2).
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace egraph
