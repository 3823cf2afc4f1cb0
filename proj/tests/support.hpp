#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "coshare/rng.hpp"

namespace coshare::testing {

// Feeds a fixed sequence of values, so a test can dictate the exact
// coefficients a construction draws. Values must already be below the
// requested bound.
class ScriptedRandomSource final : public RandomSource {
public:
    explicit ScriptedRandomSource(std::vector<std::uint64_t> values)
        : values_(std::move(values)) {}

    std::uint64_t below(std::uint64_t bound) override {
        if (next_ >= values_.size())
            throw std::logic_error("scripted random source ran out of values");
        const std::uint64_t v = values_[next_++];
        if (v >= bound) throw std::logic_error("scripted value exceeds requested bound");
        return v;
    }

    std::size_t consumed() const noexcept { return next_; }

private:
    std::vector<std::uint64_t> values_;
    std::size_t next_ = 0;
};

} // namespace coshare::testing
