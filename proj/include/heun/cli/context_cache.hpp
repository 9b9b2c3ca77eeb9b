#pragma once

// Per-k² EllipticContext cache persisted as JSON under $HEUN_CACHE_DIR.
// Purely an optimization: unreadable or inconsistent entries are recomputed.

#include <filesystem>
#include <optional>

#include "heun/elliptic.hpp"

namespace heun::cli {

/// $HEUN_CACHE_DIR/contexts.json when the variable is set and nonempty.
std::optional<std::filesystem::path> cache_file();

/// The context for k2, read from or added to the cache file when enabled.
EllipticContext cached_context(double k2);

}  // namespace heun::cli
