#pragma once

#include "nilpet/json_io.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

namespace nilpet {

namespace exit_code {
constexpr int ok = 0;
constexpr int config = 2;
constexpr int certificate = 3;
constexpr int truncated = 4;
}  // namespace exit_code

struct CliOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
};

/// Runs one of verify-poly, pet, average, generic, vdc on a parsed config and
/// writes report.csv, sidecar.json and (where it applies) certificate.json
/// into `out`. Returns an exit code; errors are reported on `log`.
int run_command(const std::string& command, const Json& config, const std::filesystem::path& out,
                const CliOverrides& overrides, std::ostream& log);

int run_cli(int argc, char** argv);

}  // namespace nilpet
