/*
 *   Copyright 2026 The Roundtable Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Child-process helpers for tests that drive the command-line binary.

#ifndef ROUNDTABLE_TESTS_SUPPORT_PROC_HPP_
#define ROUNDTABLE_TESTS_SUPPORT_PROC_HPP_

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace roundtable::testsupport {

struct CommandResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) throw std::runtime_error("cannot write " + path);
}

/// Creates a fresh directory under the system temp root.
inline std::string make_temp_dir(const std::string& stem) {
    std::string pattern =
        (std::filesystem::temp_directory_path() / (stem + ".XXXXXX")).string();
    std::vector<char> buf(pattern.begin(), pattern.end());
    buf.push_back('\0');
    if (::mkdtemp(buf.data()) == nullptr)
        throw std::runtime_error("mkdtemp failed for " + pattern);
    return std::string(buf.data());
}

/**
 * Runs a shell command with stdout/stderr captured into files inside
 * work_dir. The command string is trusted test input, not user data.
 */
inline CommandResult run_command(const std::string& command,
                                 const std::string& work_dir) {
    const std::string out_path = work_dir + "/cmd_stdout.txt";
    const std::string err_path = work_dir + "/cmd_stderr.txt";
    const std::string full = "cd '" + work_dir + "' && " + command + " >'" + out_path +
                             "' 2>'" + err_path + "'";
    const int status = std::system(full.c_str());
    CommandResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = read_file(out_path);
    result.err = read_file(err_path);
    return result;
}

}  // namespace roundtable::testsupport

#endif  // ROUNDTABLE_TESTS_SUPPORT_PROC_HPP_
