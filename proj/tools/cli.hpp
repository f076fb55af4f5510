#pragma once

#include <ostream>
#include <span>
#include <string>

namespace steer::cli {

/// Runs one command line (without the program name). Returns the process exit status:
/// 0 on success, 1 when an lhs-check finds a violation or a command fails, 2 for bad usage.
int run(std::span<const std::string> args, std::ostream &out, std::ostream &err);

}  // namespace steer::cli
