#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace sgfem {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

[[noreturn]] inline void fail(const std::string& msg) { throw Error(msg); }

inline void require(bool condition, const std::string& msg) {
  if (!condition) fail(msg);
}

// 17 significant digits: enough to round-trip a double exactly.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace sgfem
