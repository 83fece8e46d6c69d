#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace pathbudget {

// 64-bit finalizer from splitmix64 (Vigna 2015, after Steele, Lea and Flood,
// "Fast splittable pseudorandom number generators"). Bijective on 64-bit
// words, so distinct inputs stay distinct.
[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t golden_gamma = 0x9e3779b97f4a7c15ULL;

// splitmix64: a Weyl counter pushed through the finalizer. Counter-based, so
// any position in the stream is reachable in O(1) and streams never share
// hidden state.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    SplitMix64() = default;
    explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    constexpr result_type operator()() noexcept { return mix64(state_ += golden_gamma); }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }

private:
    std::uint64_t state_ = 0;
};

// Splittable seed: (master, stream) pins every draw made from it. Child
// streams hash the parent stream together with the child index, so substream
// i is derivable directly, with no sequential draws in between. That keeps
// per-path and per-replication generation order-independent.
struct Seed {
    std::uint64_t master = 0;
    std::uint64_t stream = 0;

    [[nodiscard]] constexpr Seed substream(std::uint64_t index) const noexcept {
        return Seed{master, mix64(stream + golden_gamma * (index + 1))};
    }

    // engine key; both fields feed the hash so either one changes the stream
    [[nodiscard]] constexpr std::uint64_t key() const noexcept {
        return mix64(mix64(master + golden_gamma) ^ (stream + 0x94d049bb133111ebULL));
    }

    friend constexpr bool operator==(const Seed&, const Seed&) noexcept = default;
};

// Standard normal draws, Box-Muller over splitmix64 uniforms. One stream per
// path keeps consumption bookkeeping local to that path.
class GaussianStream {
public:
    explicit GaussianStream(Seed seed) noexcept : engine_(seed.key()) {}
    explicit GaussianStream(std::uint64_t key) noexcept : engine_(key) {}

    double operator()() noexcept {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = next_uniform();
        const double u2 = next_uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    // uniform on (0, 1]; the +1 keeps log() finite
    double next_uniform() noexcept {
        return static_cast<double>((engine_() >> 11) + 1) * 0x1p-53;
    }

    SplitMix64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace pathbudget
