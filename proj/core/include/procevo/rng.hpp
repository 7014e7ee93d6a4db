#ifndef PROCEVO_RNG_HPP
#define PROCEVO_RNG_HPP

#include <cstddef>
#include <cstdint>
#include <iterator>

namespace procevo {

/// xorshift64* (Vigna, 2014) seeded through one splitmix64 step.
///
///   seed:  z = seed + 0x9E3779B97F4A7C15
///          z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///          z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///          state = z ^ (z >> 31)            (0 is replaced by 1)
///   next:  state ^= state >> 12; state ^= state << 25; state ^= state >> 27
///          return state * 0x2545F4914F6CDD1D
///
/// Everything derived from it uses integer arithmetic or exactly rounded
/// double operations, so sequences are identical on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) noexcept;

    std::uint64_t next() noexcept;

    /// Uniform in [0, bound) by rejection sampling; bound must be positive.
    std::uint64_t below(std::uint64_t bound) noexcept;

    /// Uniform double in [0, 1) from the top 53 bits.
    double unit() noexcept;

    /// True with probability p.
    bool chance(double p) noexcept { return unit() < p; }

    template <typename Container>
    const auto& pick(const Container& items) noexcept {
        return items[static_cast<std::size_t>(below(std::size(items)))];
    }

private:
    std::uint64_t state_;
};

} // namespace procevo

#endif
