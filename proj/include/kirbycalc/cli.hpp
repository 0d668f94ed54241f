#pragma once

#include <ostream>

namespace kirbycalc {

/// Exit codes: 0 success, 1 a requested check failed, 2 invalid input or validation failure,
/// 3 resource limit. Errors are reported on `err` as {"error": kind, "message": text}.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kirbycalc
