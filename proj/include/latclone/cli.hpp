#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace latclone::cli {

// Runs one command line (without the program name). JSON goes to `out`,
// diagnostics and --pretty summaries to `err`.
// Exit status: 0 success, 1 input or validation error, 2 refusal.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace latclone::cli
