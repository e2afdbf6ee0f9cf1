#pragma once

#include <cstdio>
#include <string>

#include <sys/wait.h>

namespace testsupport {

struct CliResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr merged
};

// Runs the installed CLI binary with the given arguments.
inline CliResult run_cli(const std::string& args) {
  CliResult result;
  const std::string command = std::string(RSG_CLI_PATH) + " " + args + " 2>&1";
  std::FILE* pipe = ::popen(command.c_str(), "r");
  if (!pipe) return result;
  char buffer[4096];
  std::size_t n = 0;
  while ((n = std::fread(buffer, 1, sizeof buffer, pipe)) > 0) result.output.append(buffer, n);
  const int status = ::pclose(pipe);
  if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
  return result;
}

inline std::string scenario(const std::string& name) {
  return std::string(RSG_SCENARIO_DIR) + "/" + name;
}

} // namespace testsupport
