// Process-wide knobs: default rank tolerance and worker count.
#pragma once

#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>

namespace hph {

namespace detail {
inline std::atomic<double>& tolerance_slot()
{
    static std::atomic<double> value{1e-9};
    return value;
}
} // namespace detail

/// Relative rank tolerance used when a caller does not pass one explicitly.
inline double default_tolerance() noexcept { return detail::tolerance_slot().load(); }

inline void set_default_tolerance(double tol) noexcept { detail::tolerance_slot().store(tol); }

/// Worker count for grid computations. HARMONIC_PH_THREADS caps it; 0 or unset means
/// one worker per hardware thread.
inline unsigned worker_count()
{
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0)
        hw = 1;
    if (const char* env = std::getenv("HARMONIC_PH_THREADS")) {
        try {
            long requested = std::stol(env);
            if (requested > 0)
                return static_cast<unsigned>(requested);
        } catch (...) {
            // ignore malformed values
        }
    }
    return hw;
}

} // namespace hph
