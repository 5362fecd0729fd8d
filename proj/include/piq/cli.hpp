#ifndef PIQ_CLI_HPP
#define PIQ_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace piq::cli {

/// Runs one CLI invocation. argv[0] is the program name. Reports go to
/// `out`, diagnostics to `err`. Exit code: 0 = property holds or the
/// construction succeeded, 1 = property fails (with a counterexample),
/// 2 = input error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience overload for tests: args without the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace piq::cli

#endif
