#pragma once

#include <array>
#include <complex>
#include <cstdint>

namespace youngmat {

/// Philox4x32-10 block function: 128-bit counter, 64-bit key.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key);

/// Counter-based random stream.
///
/// The master seed is the Philox key; the stream id occupies the upper 64
/// bits of the counter and the draw index the lower 64 bits. Streams with
/// different ids therefore never overlap, and replica i of an ensemble is the
/// same sequence regardless of which thread generates it.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed, std::uint64_t stream_id = 0) noexcept;

    std::uint32_t next_u32() noexcept;
    std::uint64_t next_u64() noexcept;

    /// Uniform on the open interval (0, 1) with 53 random bits.
    double uniform() noexcept;

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }
    /// Number of 128-bit blocks consumed so far.
    std::uint64_t blocks_used() const noexcept { return block_; }

private:
    void refill() noexcept;

    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    int position_ = 4;
};

/// Per-replica substream derived from (master seed, replica index).
inline RandomStream substream(std::uint64_t seed, std::uint64_t index) noexcept { return RandomStream(seed, index); }

/// Pair of independent N(0,1) draws (Box-Muller).
std::array<double, 2> normal_pair(RandomStream& stream) noexcept;
double standard_normal(RandomStream& stream) noexcept;

/// log of a Gamma(shape, 1) draw. Shapes below one use the boost
/// G(a) = G(a + 1) U^(1/a), kept in log space so tiny shapes cannot underflow.
double log_gamma_variate(RandomStream& stream, double shape);
double gamma_variate(RandomStream& stream, double shape);

/// Beta(a, b) via the ratio of two Gamma draws.
double beta_variate(RandomStream& stream, double a, double b);

}  // namespace youngmat
