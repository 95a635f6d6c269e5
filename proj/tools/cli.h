#ifndef SUBLAP_TOOLS_CLI_H_
#define SUBLAP_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace sublap::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInfeasible = 2;
inline constexpr int kIterationLimit = 3;
inline constexpr int kUsage = 64;
inline constexpr int kDataError = 65;
inline constexpr int kInternal = 70;
inline constexpr int kIoError = 74;

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sublap::cli

#endif  // SUBLAP_TOOLS_CLI_H_
