#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rov {

struct ParseError : std::runtime_error {
  std::string file;
  int line;
  ParseError(std::string f, int ln, const std::string& msg)
      : std::runtime_error(f + ":" + std::to_string(ln) + ": " + msg),
        file(std::move(f)),
        line(ln) {}
};

// Line reader for the text formats used throughout: '#' comments and blank
// lines are skipped unless strict mode is on, in which case comments are
// still allowed but malformed records raise instead of being dropped by the
// caller. The strictness decision itself lives with each parser; the reader
// only tracks line numbers.
class LineReader {
 public:
  LineReader(std::istream& in, std::string name)
      : in_(in), name_(std::move(name)) {}

  bool next(std::string& out) {
    std::string raw;
    while (std::getline(in_, raw)) {
      ++line_;
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      auto first = raw.find_first_not_of(" \t");
      if (first == std::string::npos) continue;
      if (raw[first] == '#') continue;
      out = raw;
      return true;
    }
    return false;
  }

  int line() const { return line_; }
  const std::string& name() const { return name_; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(name_, line_, msg);
  }

 private:
  std::istream& in_;
  std::string name_;
  int line_ = 0;
};

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return in;
}

inline std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

}  // namespace rov
