#pragma once

#include <cstdint>
#include <random>

#include "coshare/field.hpp"

namespace coshare {

// Every random draw in the library flows through this interface, so a
// run is reproducible under a fixed seed and tests can script exact
// coefficient sequences.
class RandomSource {
public:
    virtual ~RandomSource() = default;

    // Uniform draw from [0, bound). bound must be nonzero.
    virtual std::uint64_t below(std::uint64_t bound) = 0;

    FieldElement element(PrimeModulus m) { return {below(m.value()), m}; }
    FieldElement nonzero_element(PrimeModulus m) {
        return {1 + below(m.value() - 1), m};
    }
};

// mt19937_64-backed source. The engine and the rejection sampling below
// are fully pinned by the C++ standard, so equal seeds give identical
// streams on every platform.
class SeededRandomSource final : public RandomSource {
public:
    explicit SeededRandomSource(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t below(std::uint64_t bound) override;

private:
    std::mt19937_64 engine_;
};

} // namespace coshare
