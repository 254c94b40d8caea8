#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace lfc {

/// Outcome of one verification. Serializes to
/// {check, params, residuals, singular_values?, decay?, pass, truncations}.
struct VerificationReport {
  std::string check;
  nlohmann::json params = nlohmann::json::object();
  std::map<std::string, double> residuals;
  std::optional<std::vector<double>> singular_values;
  std::optional<std::vector<double>> decay;
  bool pass = false;
  std::array<std::size_t, 2> truncations{0, 0};
};

nlohmann::json to_json(const VerificationReport& r);

/// Sort by check name, then by the serialized parameters.
void sort_reports(std::vector<VerificationReport>& reports);

}  // namespace lfc
