#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "config.hpp"

namespace syspredict::cli {

/// Command-line overrides applied on top of the config file.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> size;
  std::optional<std::string> input;
};

void apply(RunConfig& c, const Overrides& o);

void cmd_curves(const RunConfig& c, std::ostream& out);
void cmd_predict(const RunConfig& c, std::ostream& out);
void cmd_simulate(const RunConfig& c, std::ostream& out);
void cmd_coverage(const RunConfig& c, std::ostream& out);
void cmd_fitqr(const RunConfig& c, std::ostream& out);

/// Sidecar describing how an output file was produced (no timestamps, so
/// repeated runs stay byte-identical).
std::string metadata(const std::string& command, const RunConfig& c);

}  // namespace syspredict::cli
