#include "repeatkit/philox.hpp"

#include "repeatkit/numerics.hpp"

namespace repeatkit::rng {

namespace {

constexpr std::uint64_t kM0 = 0xD2E7470EE14C6C93ULL;
constexpr std::uint64_t kM1 = 0xCA5A826395121157ULL;
constexpr std::uint64_t kW0 = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kW1 = 0xBB67AE8584CAA73BULL;
constexpr std::uint64_t kSeedTweak = 0x5851F42D4C957F2DULL;

__extension__ using uint128 = unsigned __int128;

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo) {
    const uint128 p = static_cast<uint128>(a) * b;
    hi = static_cast<std::uint64_t>(p >> 64);
    lo = static_cast<std::uint64_t>(p);
}

inline PhiloxCounter round(const PhiloxCounter& x, const PhiloxKey& k) {
    std::uint64_t hi0, lo0, hi1, lo1;
    mulhilo(kM0, x[0], hi0, lo0);
    mulhilo(kM1, x[2], hi1, lo1);
    return {hi1 ^ x[1] ^ k[0], lo1, hi0 ^ x[3] ^ k[1], lo0};
}

}  // namespace

PhiloxCounter philox4x64(PhiloxCounter counter, PhiloxKey key) {
    counter = round(counter, key);
    for (int r = 1; r < 10; ++r) {
        key[0] += kW0;
        key[1] += kW1;
        counter = round(counter, key);
    }
    return counter;
}

CounterStream::CounterStream(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t substream)
    : key_{seed, seed ^ kSeedTweak}, counter_{0, stream_id, substream, 0} {}

std::uint64_t CounterStream::next_u64() {
    if (used_ == 4) {
        block_ = philox4x64(counter_, key_);
        ++counter_[0];
        used_ = 0;
    }
    return block_[used_++];
}

double CounterStream::uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double CounterStream::normal() { return numerics::normal_quantile(uniform()); }

}  // namespace repeatkit::rng
