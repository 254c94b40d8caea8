#include "lfc/report.hpp"

#include <algorithm>

namespace lfc {

nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json j;
  j["check"] = r.check;
  j["params"] = r.params;
  j["residuals"] = r.residuals;
  if (r.singular_values) j["singular_values"] = *r.singular_values;
  if (r.decay) j["decay"] = *r.decay;
  j["pass"] = r.pass;
  j["truncations"] = r.truncations;
  return j;
}

void sort_reports(std::vector<VerificationReport>& reports) {
  std::stable_sort(reports.begin(), reports.end(), [](const VerificationReport& x, const VerificationReport& y) {
    if (x.check != y.check) return x.check < y.check;
    return x.params.dump() < y.params.dump();
  });
}

}  // namespace lfc
