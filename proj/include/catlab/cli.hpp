// Command-line front end: loads category/weight/theory files, dispatches
// the checks, and emits a machine-readable report on standard output with
// a human summary on standard error.
//
// Exit codes: 0 decided/verified, 1 refuted (witness in the report),
// 2 input error, 3 inconclusive at the bound, 64 usage error.
#ifndef CATLAB_CLI_HPP_
#define CATLAB_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace catlab {

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace catlab

#endif  // CATLAB_CLI_HPP_
