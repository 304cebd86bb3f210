#pragma once

#include <plexmesh/cli.hpp>

#include <filesystem>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace fixtures
{

struct CliResult
{
  int code;
  std::string out;
  std::string err;
};

inline CliResult run_cli(const std::vector<std::string>& args)
{
  std::ostringstream out, err;
  const int code = plexmesh::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

/// Scratch directory removed on destruction.
class TempDir
{
public:
  TempDir()
  {
    std::random_device rd;
    _path = std::filesystem::temp_directory_path()
            / ("plexmesh-test-" + std::to_string(rd()) + "-" + std::to_string(rd()));
    std::filesystem::create_directories(_path);
  }
  ~TempDir()
  {
    std::error_code ec;
    std::filesystem::remove_all(_path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string operator/(const std::string& name) const { return (_path / name).string(); }
  const std::filesystem::path& path() const { return _path; }

private:
  std::filesystem::path _path;
};

} // namespace fixtures
