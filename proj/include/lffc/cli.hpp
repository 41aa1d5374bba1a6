#pragma once

namespace lffc {

// Exit 0 on success, 1 on domain errors (invariant violations while
// executing a well-formed request), 2 on argument errors (unknown command,
// missing file, malformed config). Diagnostics go to standard error.
int dispatch(int argc, const char* const* argv);

}  // namespace lffc
