#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace cubelab {

using json = nlohmann::json;

// Bad caller input: mismatched carriers, malformed diagrams, non-congruences.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A construction would exceed the configured element budget.
struct SizeLimitExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CheckReport {
  bool verdict = true;
  json witness;                 // null unless verdict is false
  std::vector<std::string> trace;
  json details = json::object();

  static CheckReport pass(std::vector<std::string> trace = {}) {
    CheckReport r;
    r.trace = std::move(trace);
    return r;
  }
  static CheckReport fail(json witness, std::vector<std::string> trace = {}) {
    if (witness.is_null()) throw std::logic_error("failing report needs a witness");
    CheckReport r;
    r.verdict = false;
    r.witness = std::move(witness);
    r.trace = std::move(trace);
    return r;
  }

  void note(std::string s) { trace.push_back(std::move(s)); }
  explicit operator bool() const { return verdict; }
};

inline void to_json(json& j, const CheckReport& r) {
  j = json{{"verdict", r.verdict}, {"trace", r.trace}};
  if (!r.witness.is_null()) j["witness"] = r.witness;
  if (!r.details.empty()) j["details"] = r.details;
}

inline void from_json(const json& j, CheckReport& r) {
  r.verdict = j.at("verdict").get<bool>();
  r.trace = j.value("trace", std::vector<std::string>{});
  r.witness = j.contains("witness") ? j.at("witness") : json();
  r.details = j.value("details", json::object());
  if (!r.verdict && r.witness.is_null()) throw InputError("report: failing verdict without witness");
}

// Element budget for explicit constructions (pullbacks, tuple sets).
struct Limits {
  std::size_t max_elements = 10'000'000;
  std::size_t max_tuples = 2'000'000;
};

inline Limits& limits() {
  thread_local Limits l;
  return l;
}

class ScopedLimits {
 public:
  explicit ScopedLimits(Limits l) : saved_(limits()) { limits() = l; }
  ~ScopedLimits() { limits() = saved_; }
  ScopedLimits(const ScopedLimits&) = delete;
  ScopedLimits& operator=(const ScopedLimits&) = delete;
 private:
  Limits saved_;
};

}  // namespace cubelab
