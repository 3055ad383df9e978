#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace namemine {

struct ProcessResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

/// Runs argv[0] (PATH lookup) without a shell and captures both streams.
/// `env` entries override or extend the inherited environment. `input` is
/// written to the child's stdin, which is /dev/null when input is empty.
ProcessResult run_process(const std::vector<std::string>& argv,
                          const std::map<std::string, std::string>& env = {},
                          std::string_view input = {});

}  // namespace namemine
