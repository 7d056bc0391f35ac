#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace nsr {

/// Entry point of the `nsr` tool; `args` excludes the program name.
/// Returns 0 when everything passed (skips allowed), 1 on any failed check,
/// 2 on usage or input errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nsr
