#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace plexmesh::cli
{

/// Process exit codes.
enum ExitCode : int
{
  ok = 0,
  usage_error = 1,
  file_error = 2,
  validation_error = 3
};

/// Run the command-line driver. `args` excludes the program name. JSON and
/// CSV results go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace plexmesh::cli
