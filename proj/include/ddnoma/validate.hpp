#pragma once

#include <string>
#include <utility>
#include <vector>

namespace ddnoma {

// Quick invariant battery behind the `validate` CLI subcommand: unitarity and
// round trips, channel identities, equalizer-vs-Wiener agreement, the pinned
// power-allocation values, and a noiseless FEC chain.
std::vector<std::pair<std::string, bool>> run_validation();

}  // namespace ddnoma
