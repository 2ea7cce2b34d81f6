#pragma once

#include <stdexcept>
#include <string>

namespace sc {

// Error kinds map onto the CLI exit-code contract:
// validation -> 1, verification -> 2, parse -> 3.
struct Error : std::runtime_error {
  enum class Kind { validation, verification, parse };
  Kind kind;
  Error(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

struct ValidationError : Error {
  explicit ValidationError(const std::string& msg)
      : Error(Kind::validation, msg) {}
};

struct VerificationError : Error {
  explicit VerificationError(const std::string& msg)
      : Error(Kind::verification, msg) {}
};

struct ParseError : Error {
  int line;
  int col;
  ParseError(const std::string& msg, int line_ = 0, int col_ = 0)
      : Error(Kind::parse, format(msg, line_, col_)), line(line_), col(col_) {}

 private:
  static std::string format(const std::string& msg, int line, int col) {
    if (line <= 0) return msg;
    return "line " + std::to_string(line) + ", col " + std::to_string(col) +
           ": " + msg;
  }
};

}  // namespace sc
