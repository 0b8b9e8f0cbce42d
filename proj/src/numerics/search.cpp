#include <algorithm>
#include <string>

#include "repeatkit/numerics.hpp"

namespace repeatkit::numerics {

std::int64_t min_integer_satisfying(const IntegerPredicate& predicate, std::int64_t start_hint,
                                    std::int64_t max_n) {
    if (max_n < 1) throw DomainError("min_integer_satisfying: max_n must be >= 1");
    const std::int64_t hint = std::clamp<std::int64_t>(start_hint, 1, max_n);

    // Invariant once bracketed: predicate(lo) is false (or lo == 0), predicate(hi) is true.
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    if (predicate(hint)) {
        hi = hint;
        std::int64_t step = 1;
        while (true) {
            const std::int64_t probe = hi - step;
            if (probe < 1) {
                lo = 0;
                break;
            }
            if (!predicate(probe)) {
                lo = probe;
                break;
            }
            hi = probe;
            step *= 2;
        }
    } else {
        lo = hint;
        std::int64_t step = 1;
        while (true) {
            if (lo == max_n) {
                throw InfeasibleError("no n <= " + std::to_string(max_n) + " satisfies the criterion");
            }
            const std::int64_t probe = std::min(max_n, lo + step);
            if (predicate(probe)) {
                hi = probe;
                break;
            }
            lo = probe;
            step *= 2;
        }
    }

    while (hi - lo > 1) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (predicate(mid)) hi = mid; else lo = mid;
    }
    return hi;
}

}  // namespace repeatkit::numerics
