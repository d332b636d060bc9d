#pragma once

#include <iosfwd>

namespace p1nc::tools {

/// Runs the invariant suite on small meshes and prints one line per check.
/// Returns true when every check passes.
bool run_self_check(std::ostream& out);

}  // namespace p1nc::tools
