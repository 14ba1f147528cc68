#pragma once

#include <iosfwd>
#include <string>

#include "runconfig.hpp"

namespace toda::cli {

/// Subcommand bodies; each returns the process exit code (0 success/pass,
/// 1 verification or runtime failure, 2 configuration error).
int cmd_grid(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, double perturb, std::ostream& out,
               std::ostream& err);
int cmd_order(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_stokes(const RunConfig& config, const std::string& summary_path,
               std::ostream& out, std::ostream& err);
int cmd_growth(const RunConfig& config, const std::string& summary_path,
               std::ostream& out, std::ostream& err);

/// Full argv-level entry point used by main().
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace toda::cli
