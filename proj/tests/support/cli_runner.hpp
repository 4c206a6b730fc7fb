// Copyright 2026 The MEI Metrics Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MEI_TESTS__CLI_RUNNER_HPP_
#define MEI_TESTS__CLI_RUNNER_HPP_

#include "mei/trajectory_io.hpp"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

namespace mei::testing
{

namespace fs = std::filesystem;

struct CliResult
{
  int exit_code = -1;
  std::string out;
};

/// Runs the command-line tool through the shell, capturing stdout.
inline CliResult run_cli(const std::string & exe, const std::string & args, const fs::path & work)
{
  const fs::path out = work / "stdout.txt";
  const std::string cmd = "\"" + exe + "\" " + args + " > \"" + out.string() + "\" 2> \"" +
                          (work / "stderr.txt").string() + "\"";
  const int status = std::system(cmd.c_str());
  CliResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream f(out, std::ios::binary);
  r.out.assign(std::istreambuf_iterator<char>(f), {});
  return r;
}

inline std::string slurp(const fs::path & p)
{
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

inline fs::path write_corpus(const fs::path & p, const std::vector<io::Scenario> & scenarios)
{
  std::ofstream f(p, std::ios::binary);
  io::write_canonical(f, scenarios);
  return p;
}

/// Fresh scratch directory under the system temp dir.
inline fs::path scratch_dir(const std::string & name)
{
  const fs::path dir = fs::temp_directory_path() / ("mei_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace mei::testing

#endif  // MEI_TESTS__CLI_RUNNER_HPP_
