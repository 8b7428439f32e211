#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace streq::cli {

// Runs the command line front end. Returns the process exit code:
// 0 = satisfiable / accepted, 1 = unsatisfiable / rejected, 2 = error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace streq::cli
