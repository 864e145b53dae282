#pragma once

#include <iosfwd>

namespace determina::cli {

// Exit codes: 0 ok, 1 internal error, 2 input error, 3 inconclusive with --strict.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace determina::cli
