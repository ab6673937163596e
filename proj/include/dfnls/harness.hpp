#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "dfnls/config.hpp"

namespace dfnls::harness {

const char* artifact_version();

struct FileRecord {
  std::string name;
  std::string sha256;
  std::size_t bytes = 0;
};

struct RunManifest {
  std::map<std::string, std::string> config;
  std::string version;
  double wall_seconds = 0.0;
  int threads = 1;
  std::vector<FileRecord> files;
  std::vector<std::string> failures;  // per-item failures, partial results kept
};

// Runs the configured experiment, writing data files, optional plots and manifest.json
// into cfg.out_dir.
RunManifest run(const ExperimentConfig& cfg);

std::string sha256_hex(const std::string& bytes);

// Fast oracle checks; one line per check, returns the number of failures.
int selftest(std::uint64_t seed, std::ostream& out);

}  // namespace dfnls::harness
