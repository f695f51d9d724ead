#ifndef CAPQ_CACHE_HPP
#define CAPQ_CACHE_HPP

#include <optional>
#include <string>
#include <vector>

#include "capq/ncpoly.hpp"

namespace capq {

/// Content hash of a completion request: relation set, monomial order,
/// degree bound, and field mode. Hex string, stable across processes.
std::string system_cache_key(const std::vector<NCPoly>& relations,
                             const MonomialOrder& order, int bound,
                             const QField& f);

/// Cache file path for a key inside a cache directory.
std::string system_cache_path(const std::string& cache_dir,
                              const std::string& key);

/// Persist a completed system under the given request key.
void save_system(const RewriteSystem& S, const std::string& key,
                 const std::string& path);

/// Load a cached system for the given request. Returns nullopt (caller
/// recomputes) when the file is missing, malformed, keyed to a different
/// request, tampered with, or no longer passes the revalidation audit
/// (confluence defects and membership of the defining relations).
std::optional<RewriteSystem> load_system(const std::string& path,
                                         const std::string& key,
                                         const std::vector<NCPoly>& relations,
                                         const MonomialOrder& order, int bound,
                                         const QField& f);

/// complete() behind a read-through cache; empty cache_dir disables caching.
/// cache_hit, when given, reports whether the result came from disk.
RewriteSystem complete_cached(const std::vector<NCPoly>& relations,
                              const MonomialOrder& order, int bound,
                              const QField& f, const std::string& cache_dir,
                              bool* cache_hit = nullptr);

}  // namespace capq

#endif
