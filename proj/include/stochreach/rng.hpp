#pragma once

#include <cmath>
#include <cstdint>

namespace stochreach {

/// Counter-based pseudorandom generator (SplitMix64 core). A stream is a pure
/// function of its key words, so draws keyed by (seed, state, action, sample)
/// are identical no matter which worker produces them or in what order.
class CounterRng {
  public:
    explicit CounterRng(std::uint64_t k0, std::uint64_t k1 = 0, std::uint64_t k2 = 0,
                        std::uint64_t k3 = 0) {
        state_ = mix(k0 + 0x9e3779b97f4a7c15ull);
        state_ = mix(state_ ^ mix(k1 + 0xbf58476d1ce4e5b9ull));
        state_ = mix(state_ ^ mix(k2 + 0x94d049bb133111ebull));
        state_ = mix(state_ ^ mix(k3 + 0x2545f4914f6cdd1dull));
    }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ull;
        return mix(state_);
    }

    /// Uniform draw in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform draw in (0, 1]; safe as a log argument.
    double uniform_pos() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller; draws two uniforms every other call.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform_pos();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    /// Stateless 64-bit finalizer, also used to derive component sub-seeds.
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

  private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Deterministic sub-seed for a named pipeline component.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t component) {
    return CounterRng::mix(seed + 0x9e3779b97f4a7c15ull * (component + 1));
}

}  // namespace stochreach
