#pragma once

#include <array>
#include <cstdint>

namespace eqrand {

// Philox4x32-10 block function (Salmon et al., counter-based).
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key) noexcept;

// Uniform draws in the open interval (0,1) that depend only on
// (seed, replicate_id, hypothesis_id, draw index). Streams with different
// identifiers are independent; no state is shared between streams.
class UniformStream {
public:
    UniformStream(std::uint64_t seed, std::uint64_t replicate_id, std::uint64_t hypothesis_id);

    double next();

    // Draw `index` of this stream without advancing it.
    double at(std::uint64_t index) const;

private:
    PhiloxKey key_;
    std::uint32_t hypothesis_;
    std::uint32_t replicate_lo_;
    std::uint32_t replicate_hi_;
    std::uint64_t index_ = 0;
};

inline UniformStream rng_stream(std::uint64_t seed, std::uint64_t replicate_id,
                                std::uint64_t hypothesis_id) {
    return {seed, replicate_id, hypothesis_id};
}

}  // namespace eqrand
