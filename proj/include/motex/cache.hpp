#pragma once

#include "motex/resolution.hpp"

#include <string>

namespace motex {

/* Versioned, self-describing resolution cache.  The payload is checksummed;
 * loads revalidate d . d = 0 before the resolution is handed back. */
std::string resolution_to_cache(const Resolution& res);
Resolution resolution_from_cache(const std::string& text, PresentedModule module);

void save_resolution(const std::string& path, const Resolution& res);
Resolution load_resolution(const std::string& path, PresentedModule module);

/* cache directory: $MOTEX_CACHE_DIR, else .motex-cache */
std::string cache_dir();
std::string cache_key(const PresentedModule& module, int max_s, int max_t);

} // namespace motex
