#pragma once

#include <json.hpp>

#include <chrono>
#include <cstddef>
#include <string>
#include <vector>

namespace uqcn {

// One pass/fail record. A check passes iff its residual list is empty.
struct CheckRecord {
  std::string name;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  std::vector<std::string> residual;
  double elapsed_ms = 0;

  bool pass() const { return residual.empty(); }
};

class VerificationReport {
public:
  VerificationReport() = default;
  VerificationReport(std::string command, int rank) : command_(std::move(command)), rank_(rank) {}

  void add(CheckRecord r) { checks_.push_back(std::move(r)); }
  void merge(const VerificationReport& o) { checks_.insert(checks_.end(), o.checks_.begin(), o.checks_.end()); }
  // Orders records by name, then by the serialized parameters.
  void sort();

  const std::vector<CheckRecord>& checks() const { return checks_; }
  std::size_t total() const { return checks_.size(); }
  std::size_t failed() const;
  bool ok() const { return failed() == 0; }

  const std::string& command() const { return command_; }
  int rank() const { return rank_; }

  // With timing off every elapsed_ms is written as 0, so reruns are byte-identical.
  nlohmann::ordered_json to_json(bool timing = true) const;
  std::string to_text(bool timing = true) const;

private:
  std::string command_;
  int rank_ = 0;
  std::vector<CheckRecord> checks_;
};

// Wall-clock helper for CheckRecord::elapsed_ms.
class Stopwatch {
public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_;
};

} // namespace uqcn
