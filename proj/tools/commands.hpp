#pragma once

#include <string>
#include <vector>

namespace slag::cli {

// Runs one subcommand: flow, phase, surgery, stability, monodromy, twist,
// mirror, wall, figures.  Writes JSON/CSV outputs; the summary JSON also
// goes to stdout.  Exit codes: 0 success, 1 usage or input error,
// 2 singular flow, 3 flow timeout.
int dispatch(const std::vector<std::string>& args);

int dispatch(int argc, const char* const* argv);

}  // namespace slag::cli
