#pragma once

#include <cstddef>
#include <functional>

namespace ttw::parallel {

/// Caps the worker pool. 0 restores automatic selection (TTW_THREADS env
/// var if set, otherwise hardware concurrency).
void set_max_workers(int workers);

/// Effective worker count (>= 1).
int max_workers();

/// Runs fn(i) for i in [0, count) on up to max_workers() threads.
/// Items are split into contiguous chunks, so results written to disjoint
/// slots are identical for any worker count.
void for_each_index(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace ttw::parallel
