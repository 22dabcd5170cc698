#pragma once

#include <ostream>

namespace jlq::cli {

// Entry point of the jlq executable; returns the process exit code
// (0 success, 1 verification failure, 2 parse/config error, 3 ansatz insufficient).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace jlq::cli
