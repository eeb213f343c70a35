#ifndef SDR_CLI_HPP
#define SDR_CLI_HPP

#include <string>
#include <vector>

namespace sdr::io {

/// Command-line entry point. Exit codes: 0 success, 1 usage error, 2
/// numerical failure, 3 partial result (e.g. multistart found fewer than n
/// directions).
int cli_main(int argc, const char* const* argv);

/// Convenience overload; args exclude the program name.
int cli_main(const std::vector<std::string>& args);

}  // namespace sdr::io

#endif  // SDR_CLI_HPP
