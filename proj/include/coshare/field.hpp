#pragma once

#include <cstdint>

#include "coshare/error.hpp"

namespace coshare {

// Deterministic primality test, exact over the whole uint64 range
// (Miller-Rabin with the 12-witness set that has no 64-bit
// pseudoprime). Never probabilistic: a composite modulus would silently
// destroy secrecy.
bool is_prime(std::uint64_t n);

// Smallest prime >= n. Throws ValidationError when no such prime fits
// in 64 bits.
std::uint64_t next_prime(std::uint64_t n);

// The shared prime p that defines Z_p. Verified prime at construction.
class PrimeModulus {
public:
    explicit PrimeModulus(std::uint64_t p);

    std::uint64_t value() const noexcept { return p_; }

    friend bool operator==(PrimeModulus a, PrimeModulus b) noexcept { return a.p_ == b.p_; }
    friend bool operator!=(PrimeModulus a, PrimeModulus b) noexcept { return a.p_ != b.p_; }

private:
    std::uint64_t p_;
};

// A residue in Z_p, always canonical: 0 <= value < p. Construction is
// strict (a value >= p is rejected, never wrapped); use reduce() when a
// raw integer is meant to be folded into the field. Mixing elements of
// different moduli throws ValidationError.
//
// All operations are pure; intermediate products go through 128-bit
// arithmetic so any modulus up to 2^63 (and beyond) is exact.
class FieldElement {
public:
    FieldElement(std::uint64_t value, PrimeModulus modulus);

    static FieldElement reduce(std::uint64_t raw, PrimeModulus modulus);
    static FieldElement zero(PrimeModulus modulus) { return {0, modulus}; }
    static FieldElement one(PrimeModulus modulus);

    std::uint64_t value() const noexcept { return value_; }
    PrimeModulus modulus() const noexcept { return modulus_; }
    bool is_zero() const noexcept { return value_ == 0; }

    friend FieldElement operator+(FieldElement a, FieldElement b);
    friend FieldElement operator-(FieldElement a, FieldElement b);
    friend FieldElement operator*(FieldElement a, FieldElement b);
    friend FieldElement operator/(FieldElement a, FieldElement b);
    FieldElement operator-() const noexcept; // additive inverse, (p - v) mod p

    // Elements of different fields are simply unequal.
    friend bool operator==(FieldElement a, FieldElement b) noexcept {
        return a.modulus_ == b.modulus_ && a.value_ == b.value_;
    }
    friend bool operator!=(FieldElement a, FieldElement b) noexcept { return !(a == b); }

private:
    std::uint64_t value_;
    PrimeModulus modulus_;
};

// Multiplicative inverse by extended Euclid; exact, throws on zero.
FieldElement inv(FieldElement a);

// a^e by square-and-multiply.
FieldElement pow(FieldElement a, std::uint64_t e);

} // namespace coshare
