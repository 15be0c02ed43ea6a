#pragma once

#include <string>
#include <utility>

#include "hamlie/sparse_matrix.hpp"
#include "hamlie/symplectic.hpp"

namespace hamlie {

/// Outcome of a verification sweep: {check, params, samples, passes, failures}.
struct Report {
  std::string check;
  json params = json::object();
  std::size_t samples = 0;
  std::size_t passes = 0;
  json failures = json::array();
  json details = json::object();
  bool complete = true;  // false when a sweep stopped before covering its domain

  [[nodiscard]] bool ok() const { return complete && passes == samples && failures.empty(); }

  void record(bool pass, json counterexample = nullptr) {
    ++samples;
    if (pass)
      ++passes;
    else
      failures.push_back(std::move(counterexample));
  }

  void merge(const Report& other) {
    samples += other.samples;
    passes += other.passes;
    for (const auto& f : other.failures) failures.push_back(f);
  }

  [[nodiscard]] json to_json() const {
    json j{{"check", check}, {"params", params}, {"samples", samples}, {"passes", passes}, {"failures", failures}};
    if (!complete) j["complete"] = false;
    if (!details.empty()) j["details"] = details;
    return j;
  }
};

inline json grade_to_json(const Grade& g) { return json(g); }

inline std::string grade_key(const Grade& g) {
  std::string s;
  for (std::size_t i = 0; i < g.size(); ++i) s += (i ? "," : "") + std::to_string(g[i]);
  return s;
}

}  // namespace hamlie
