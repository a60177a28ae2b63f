#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include <json.hpp>

namespace pilekit {

using json = nlohmann::json;

/// All domain errors carry a stable machine-readable code plus a small JSON
/// detail object naming the first violating cell/triple/witness.
class Error : public std::runtime_error {
 public:
  Error(std::string code, json detail = json::object())
      : std::runtime_error(code + ": " + detail.dump()),
        code_(std::move(code)),
        detail_(std::move(detail)) {}

  const std::string& code() const { return code_; }
  const json& detail() const { return detail_; }

 private:
  std::string code_;
  json detail_;
};

/// Non-throwing failure value for check-style operations.
struct Failure {
  std::string code;
  json detail = json::object();

  json to_json() const { return json{{"code", code}, {"detail", detail}}; }
};

}  // namespace pilekit
