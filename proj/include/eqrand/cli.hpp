#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace eqrand {

// Entry point of the eqrand command-line tool. `args` excludes the program
// name. Returns 0 on success, 1 on runtime failure and 2 on usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// $EQRAND_DATA_DIR when set, otherwise the data directory of the source tree.
std::filesystem::path default_data_dir();

// "a:b:step" (inclusive, evaluated as a + i*step) or a comma-separated list.
std::vector<double> parse_grid(const std::string& text);

}  // namespace eqrand
