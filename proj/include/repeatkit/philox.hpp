#pragma once

// Philox4x64-10 counter-based generator (Salmon et al., Random123).
// A stream is identified by (seed, stream_id, substream); draws are a pure
// function of that identity and the draw index, so results never depend on
// thread scheduling.

#include <array>
#include <cstdint>

namespace repeatkit::rng {

using PhiloxCounter = std::array<std::uint64_t, 4>;
using PhiloxKey = std::array<std::uint64_t, 2>;

/// The raw 10-round bijection.
PhiloxCounter philox4x64(PhiloxCounter counter, PhiloxKey key);

class CounterStream {
public:
    CounterStream(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t substream = 0);

    std::uint64_t next_u64();
    /// Uniform in the open interval (0, 1), 53-bit resolution.
    double uniform();
    /// Standard normal by inverse-CDF transform.
    double normal();

private:
    PhiloxKey key_;
    PhiloxCounter counter_;
    PhiloxCounter block_{};
    int used_ = 4;
};

}  // namespace repeatkit::rng
