#pragma once

namespace imgnn {

/// Entry point for the imgnn command-line tool. Subcommands: gen-data,
/// train, score, rank, baseline, evaluate, sweep, stats, oracle.
/// Returns 0 on success, 1 on config/runtime errors, 2 on usage errors.
int run_cli(int argc, const char* const* argv);

}  // namespace imgnn
