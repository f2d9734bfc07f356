#ifndef CFKIT_TOOLS_CLI_HPP
#define CFKIT_TOOLS_CLI_HPP

namespace cfkit::cli {

/// Entry point of the cfkit command-line tool.
/// Exit codes: 0 success, 1 verification failure, 2 usage error,
/// 3 numerical failure.
int run(int argc, const char* const* argv);

}  // namespace cfkit::cli

#endif
