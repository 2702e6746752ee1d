//
// Project fragretro
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fragretro/engine.h"

namespace fragretro::cli {

struct JsonOptions {
  bool timings = true;
  bool full_matches = false;
  std::size_t sample = 20;
};

// Stable-ordered JSON document for a retro run.
std::string retro_json(const RetroResult &result, const JsonOptions &options);

// Runs `fragretro <args...>` (args excludes the program name). Returns the
// process exit code: 0 solved or success, 2 unsolved, 1 error.
int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err);

}  // namespace fragretro::cli
