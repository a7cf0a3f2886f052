#ifndef EMBAL_CLI_HPP
#define EMBAL_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace embal {

/// Entry point of the `embal` tool. `args` excludes the program name.
/// Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace embal

#endif  // EMBAL_CLI_HPP
