#pragma once

#include <iosfwd>

namespace sfr {

/// Entry point of the `sfr` command-line tool.
///
///   sfr run --config <path> --out <dir>
///   sfr preset-paper --out <dir> [--no-run]
///   sfr sweep --config <path> --out <dir> [--f-start F --f-end F --f-step F]
///   sfr field --config <path> --out <dir> --freq F
///   sfr validate --config <path>
///
/// Exit codes: 0 success, 1 usage or validation error, 2 runtime error.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sfr
