#pragma once

#include <string>
#include <utility>

#include <json.hpp>

namespace derand {

/// Result of a property checker. A failing verdict carries a witness that
/// pins down the counterexample.
struct Verdict {
  std::string check;
  bool passed = true;
  std::string message;
  nlohmann::json witness;

  static Verdict pass(std::string check) { return Verdict{std::move(check), true, {}, nullptr}; }

  static Verdict fail(std::string check, std::string message, nlohmann::json witness) {
    return Verdict{std::move(check), false, std::move(message), std::move(witness)};
  }

  explicit operator bool() const { return passed; }

  nlohmann::json to_json() const {
    nlohmann::json j{{"check", check}, {"passed", passed}};
    if (!passed) {
      j["message"] = message;
      j["witness"] = witness;
    }
    return j;
  }
};

}  // namespace derand
