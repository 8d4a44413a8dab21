#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>

namespace weingarten {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11). The key is
/// the 64-bit seed; the 128-bit counter holds a 64-bit stream id in its
/// upper half and a block index in its lower half, so streams never overlap.
class Philox4x32 {
public:
    using result_type = std::uint32_t;
    using counter_type = std::array<std::uint32_t, 4>;
    using key_type = std::array<std::uint32_t, 2>;

    explicit Philox4x32(std::uint64_t seed = 0, std::uint64_t stream = 0)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          counter_{0, 0, static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)} {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        if (used_ == 4) {
            block_ = encrypt(counter_, key_);
            if (++counter_[0] == 0) ++counter_[1];
            used_ = 0;
        }
        return block_[used_++];
    }

    /// The bare bijection, exposed for known-answer tests.
    static counter_type encrypt(counter_type c, key_type k) {
        constexpr std::uint32_t m0 = 0xD2511F53, m1 = 0xCD9E8D57;
        constexpr std::uint32_t w0 = 0x9E3779B9, w1 = 0xBB67AE85;
        for (int round = 0; round < 10; ++round) {
            if (round) {
                k[0] += w0;
                k[1] += w1;
            }
            const std::uint64_t p0 = std::uint64_t{m0} * c[0];
            const std::uint64_t p1 = std::uint64_t{m1} * c[2];
            c = {static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ k[0], static_cast<std::uint32_t>(p1),
                 static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ k[1], static_cast<std::uint32_t>(p0)};
        }
        return c;
    }

private:
    key_type key_;
    counter_type counter_;
    counter_type block_{};
    int used_ = 4;
};

/// Uniform double in the open interval (0, 1) from 53 random bits.
inline double uniform_open(Philox4x32& g) {
    const std::uint64_t hi = g(), lo = g();
    const std::uint64_t bits = ((hi << 32) | lo) >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1p-53;
}

/// Standard normals by Box-Muller. std::normal_distribution is not used
/// because its algorithm differs between standard libraries.
class NormalSource {
public:
    explicit NormalSource(Philox4x32& g) : g_(g) {}

    double operator()() {
        if (haveSpare_) {
            haveSpare_ = false;
            return spare_;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform_open(g_)));
        const double theta = 2.0 * std::numbers::pi * uniform_open(g_);
        spare_ = r * std::sin(theta);
        haveSpare_ = true;
        return r * std::cos(theta);
    }

    /// Complex normal with E|z|^2 = 1.
    std::complex<double> complex() {
        const double re = (*this)(), im = (*this)();
        return {re * std::numbers::sqrt2 / 2, im * std::numbers::sqrt2 / 2};
    }

private:
    Philox4x32& g_;
    double spare_ = 0;
    bool haveSpare_ = false;
};

} // namespace weingarten
