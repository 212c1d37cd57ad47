#pragma once

#include <string>
#include <vector>

#include "zonempc/harness.hpp"

// Results export. Each run directory receives trajectory.csv and
// metrics.json; wall-clock solve times go to a separate timings.json so
// metrics.json stays bit-identical across repeated seeded runs. Concurrent
// runs must target distinct directories, enforced by a lock file.
namespace zonempc {

// Creates <dir>/.zonempc.lock exclusively; throws DataError if the directory
// is already in use. The lock is removed on destruction.
class RunDirLock {
 public:
  explicit RunDirLock(const std::string& dir);
  ~RunDirLock();
  RunDirLock(const RunDirLock&) = delete;
  RunDirLock& operator=(const RunDirLock&) = delete;

 private:
  std::string lock_path_;
};

// Writes trajectory.csv, metrics.json and timings.json into dir (created if
// missing). Returns the list of files written.
std::vector<std::string> export_run(const RunResult& result, const std::string& dir);

// metrics.json content as a string (exposed for the determinism tests).
std::string metrics_json(const RunResult& result);

}  // namespace zonempc
