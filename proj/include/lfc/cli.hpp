#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "lfc/maps.hpp"
#include "lfc/report.hpp"

namespace lfc::cli {

/// "a+bi", "a-bi", "a", "bi", "i", "-i"; no spaces. Throws std::invalid_argument.
complex parse_complex(std::string_view text);

/// Four comma-separated complex literals a,b,c,d.
LinearFractionalMap parse_map(std::string_view text);

/// RFC-4180 field: quoted when it holds a comma, quote or line break.
std::string csv_field(std::string_view text);

/// One row per residual: check,params,residual,value,pass.
std::string reports_csv(const std::vector<VerificationReport>& reports);

/// The fixed battery behind `suite`, sorted. Checks run in parallel.
std::vector<VerificationReport> run_suite(std::size_t M = 128);

/// Exit codes: 0 all checks pass, 1 a check failed, 2 usage or domain error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lfc::cli
