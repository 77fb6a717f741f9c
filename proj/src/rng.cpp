#include "eqrand/rng.hpp"

#include "eqrand/errors.hpp"

namespace eqrand {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(product >> 32);
    lo = static_cast<std::uint32_t>(product);
}

inline PhiloxCounter round(const PhiloxCounter& c, const PhiloxKey& k) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, c[0], hi0, lo0);
    mulhilo(kMul1, c[2], hi1, lo1);
    return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

inline double to_open_unit(std::uint32_t hi, std::uint32_t lo) {
    const std::uint64_t bits = (static_cast<std::uint64_t>(hi) << 32) | lo;
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key) noexcept {
    for (int r = 0; r < 10; ++r) {
        if (r > 0) {
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        counter = round(counter, key);
    }
    return counter;
}

UniformStream::UniformStream(std::uint64_t seed, std::uint64_t replicate_id,
                             std::uint64_t hypothesis_id)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      hypothesis_(static_cast<std::uint32_t>(hypothesis_id)),
      replicate_lo_(static_cast<std::uint32_t>(replicate_id)),
      replicate_hi_(static_cast<std::uint32_t>(replicate_id >> 32)) {
    if (hypothesis_id > 0xFFFFFFFFull) throw DomainError("hypothesis id exceeds 32 bits");
}

double UniformStream::at(std::uint64_t index) const {
    const auto block = static_cast<std::uint32_t>(index >> 1);
    const PhiloxCounter out =
        philox4x32_10({block, hypothesis_, replicate_lo_, replicate_hi_}, key_);
    return (index & 1u) == 0 ? to_open_unit(out[0], out[1]) : to_open_unit(out[2], out[3]);
}

double UniformStream::next() { return at(index_++); }

}  // namespace eqrand
