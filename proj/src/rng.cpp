#include "coshare/rng.hpp"

#include "coshare/error.hpp"

namespace coshare {

std::uint64_t SeededRandomSource::below(std::uint64_t bound) {
    if (bound == 0) throw ValidationError("random draw from an empty range");
    // Unbiased rejection sampling: discard the low partial block.
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        std::uint64_t raw = engine_();
        if (raw >= threshold) return raw % bound;
    }
}

} // namespace coshare
