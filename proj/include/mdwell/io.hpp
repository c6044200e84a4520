#pragma once

// File output helpers. Writes go through a temp file plus rename so a crashed
// run never leaves a truncated CSV/JSON behind, and all numbers use a fixed
// %.12e rendering so identical runs produce identical bytes.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "error.hpp"

namespace mdwell {

inline std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12e", v);
  return buf;
}

// Whole-file atomic write: temp file in the destination directory, fsync-free
// rename (good enough for batch outputs), LF endings guaranteed by binary mode.
inline void atomic_write_file(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail("io-error", "cannot open " + tmp + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) fail("io-error", "short write to " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    fail("io-error", "cannot rename into place: " + path);
  }
}

}  // namespace mdwell
