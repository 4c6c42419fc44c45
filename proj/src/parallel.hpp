#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wfano::detail {

inline int resolve_threads(int requested)
{
    if (requested > 0)
        return requested;
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

/// body(i) for i in [0, count). threads == 1 is a plain loop; otherwise a
/// dynamically scheduled OpenMP loop. The first exception thrown by any
/// iteration is rethrown after the loop.
template <class F>
void parallel_for(std::size_t count, int threads, F &&body)
{
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }
#ifdef _OPENMP
    std::exception_ptr error;
    std::mutex error_lock;
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (long long i = 0; i < static_cast<long long>(count); ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            std::lock_guard<std::mutex> guard(error_lock);
            if (!error)
                error = std::current_exception();
        }
    }
    if (error)
        std::rethrow_exception(error);
#else
    for (std::size_t i = 0; i < count; ++i)
        body(i);
#endif
}

} // namespace wfano::detail
