#pragma once
/*
 * Command-line front end. Subcommands:
 *
 *   kummer-table, verify-inequalities, simulate, decompose-check,
 *   decay-fit, blowup-scan, exponent-window
 *
 * Flags are uniform `--key value` overrides of config keys, plus
 * `--config <file>` and `--out <dir>`. Exit codes: 0 success, 1
 * validation error, 2 numerical failure.
 */

#include <ostream>
#include <string>
#include <vector>

namespace critwave::cli {

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace critwave::cli
