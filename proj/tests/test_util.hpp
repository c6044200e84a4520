#pragma once

// Small helpers shared by the test files.

#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <mdwell/error.hpp>

namespace testutil {

// Runs f and reports the Error kind it threw, or "" if it did not throw.
inline std::string thrown_kind(const std::function<void()>& f) {
  try {
    f();
  } catch (const mdwell::Error& e) {
    return e.kind();
  }
  return "";
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CsvData {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;  // raw cells
  std::vector<std::string> comments;           // lines starting with '#'
};

inline CsvData parse_csv(const std::string& text) {
  CsvData out;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '#') {
      out.comments.push_back(line);
      continue;
    }
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    if (first) {
      out.header = cells;
      first = false;
    } else {
      out.rows.push_back(cells);
    }
  }
  return out;
}

}  // namespace testutil
