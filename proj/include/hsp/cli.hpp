#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hsp/verify.hpp"

namespace hsp {

inline constexpr const char* tool_version = "1.0.0";
inline constexpr int report_schema_version = 1;

// Deterministic renderings of a report batch. Text carries no timings so
// identical runs produce identical bytes; JSON keeps elapsed_ms per report.
std::string render_text(const std::vector<IdentityReport>& reports);
std::string render_json(const std::vector<IdentityReport>& reports);

// Full command line driver, args without the program name. Writes report
// output to `out` and diagnostics to `err`. Exit status: 0 all checks pass,
// 1 at least one check fails, 2 usage or selection error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hsp
