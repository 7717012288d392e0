#include "uqcn/report.hpp"

#include <algorithm>
#include <sstream>

namespace uqcn {

void VerificationReport::sort() {
  std::stable_sort(checks_.begin(), checks_.end(), [](const CheckRecord& a, const CheckRecord& b) {
    if (a.name != b.name) return a.name < b.name;
    return a.params.dump() < b.params.dump();
  });
}

std::size_t VerificationReport::failed() const {
  return static_cast<std::size_t>(
      std::count_if(checks_.begin(), checks_.end(), [](const CheckRecord& r) { return !r.pass(); }));
}

nlohmann::ordered_json VerificationReport::to_json(bool timing) const {
  nlohmann::ordered_json j;
  j["command"] = command_;
  j["rank"] = rank_;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& r : checks_) {
    nlohmann::ordered_json c;
    c["name"] = r.name;
    c["params"] = r.params;
    c["status"] = r.pass() ? "pass" : "fail";
    c["residual"] = r.residual;
    c["elapsed_ms"] = timing ? r.elapsed_ms : 0.0;
    j["checks"].push_back(std::move(c));
  }
  j["summary"] = {{"total", total()}, {"failed", failed()}};
  return j;
}

std::string VerificationReport::to_text(bool timing) const {
  std::ostringstream os;
  os << command_ << " (rank " << rank_ << ")\n";
  for (const auto& r : checks_) {
    os << (r.pass() ? "PASS " : "FAIL ") << r.name;
    if (!r.params.empty()) os << ' ' << r.params.dump();
    if (timing) os << "  [" << static_cast<long long>(r.elapsed_ms * 1000) / 1000.0 << " ms]";
    os << '\n';
    for (const auto& line : r.residual) os << "    residual: " << line << '\n';
  }
  os << "total " << total() << ", failed " << failed() << '\n';
  return os.str();
}

} // namespace uqcn
