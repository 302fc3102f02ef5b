#pragma once

#include <filesystem>
#include <string>

#include "eegscore/io.hpp"

namespace eegscore::testing {

inline std::filesystem::path fixture_dir() { return EEGSCORE_FIXTURE_DIR; }
inline std::filesystem::path corpus_dir() { return fixture_dir() / "corpus"; }
inline std::filesystem::path data_dir() { return EEGSCORE_DATA_DIR; }

inline Report fixture_report(const std::string& id) {
  return read_report(corpus_dir() / (id + ".txt"), id);
}

/// Fresh empty scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("eegscore_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace eegscore::testing
