// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace rateregion::cli {

enum class Command { rates, frontier2, classify, timeshare, frontiern, oracle_verify };
enum class Format { json, csv, table };

struct RunConfig {
    Command command = Command::rates;
    std::string input_path = "-";
    std::optional<int> resolution;
    Format output_format = Format::json;
    std::string output_path; // empty: stdout
    std::optional<double> tolerance;
    bool db_input = false;
    std::optional<std::int64_t> budget;
    std::vector<double> powers; // `rates` only; empty means every transmitter at Pmax
    bool hull = false;          // `frontiern`, n = 3 only
};

enum ExitCode : int { ok = 0, validation_error = 1, verification_failure = 2 };

/// Executes one command. Diagnostics go to `err`; the result goes to
/// config.output_path or `out`.
int run(const RunConfig &config, std::istream &in, std::ostream &out, std::ostream &err);

/// Parses argv and runs. Returns the process exit status.
int main_entry(int argc, const char *const *argv, std::istream &in, std::ostream &out, std::ostream &err);

} // namespace rateregion::cli
