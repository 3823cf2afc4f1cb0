#include "coshare/field.hpp"

#include <string>

namespace coshare {

namespace {

using u128 = unsigned __int128;
using i128 = __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t base = a % m;
    std::uint64_t acc = 1 % m;
    while (e > 0) {
        if (e & 1) acc = mul_mod(acc, base, m);
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    return acc;
}

constexpr std::uint64_t kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

// Largest 64-bit prime; next_prime beyond it would wrap.
constexpr std::uint64_t kMaxPrime64 = 18446744073709551557ULL;

} // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : kWitnesses) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (std::uint64_t a : kWitnesses) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::uint64_t next_prime(std::uint64_t n) {
    if (n <= 2) return 2;
    if (n > kMaxPrime64)
        throw ValidationError("next_prime: no prime >= " + std::to_string(n) + " fits in 64 bits");
    std::uint64_t candidate = n | 1; // first odd >= n
    while (!is_prime(candidate)) candidate += 2;
    return candidate;
}

PrimeModulus::PrimeModulus(std::uint64_t p) : p_(p) {
    if (!is_prime(p))
        throw ValidationError("modulus " + std::to_string(p) + " is not prime");
}

FieldElement::FieldElement(std::uint64_t value, PrimeModulus modulus)
    : value_(value), modulus_(modulus) {
    if (value >= modulus.value())
        throw ValidationError("field value " + std::to_string(value) + " is not below modulus " +
                              std::to_string(modulus.value()));
}

FieldElement FieldElement::reduce(std::uint64_t raw, PrimeModulus modulus) {
    return {raw % modulus.value(), modulus};
}

FieldElement FieldElement::one(PrimeModulus modulus) {
    return {1 % modulus.value(), modulus};
}

namespace {

void require_same_modulus(FieldElement a, FieldElement b) {
    if (a.modulus() != b.modulus())
        throw ValidationError("mixing field elements of modulus " +
                              std::to_string(a.modulus().value()) + " and " +
                              std::to_string(b.modulus().value()));
}

} // namespace

FieldElement operator+(FieldElement a, FieldElement b) {
    require_same_modulus(a, b);
    const std::uint64_t p = a.modulus().value();
    u128 sum = static_cast<u128>(a.value()) + b.value();
    if (sum >= p) sum -= p;
    return {static_cast<std::uint64_t>(sum), a.modulus()};
}

FieldElement operator-(FieldElement a, FieldElement b) {
    require_same_modulus(a, b);
    const std::uint64_t p = a.modulus().value();
    std::uint64_t r = a.value() >= b.value() ? a.value() - b.value() : a.value() + (p - b.value());
    return {r, a.modulus()};
}

FieldElement operator*(FieldElement a, FieldElement b) {
    require_same_modulus(a, b);
    return {mul_mod(a.value(), b.value(), a.modulus().value()), a.modulus()};
}

FieldElement operator/(FieldElement a, FieldElement b) {
    return a * inv(b);
}

FieldElement FieldElement::operator-() const noexcept {
    std::uint64_t r = value_ == 0 ? 0 : modulus_.value() - value_;
    return FieldElement{r, modulus_};
}

FieldElement inv(FieldElement a) {
    if (a.is_zero()) throw ValidationError("zero has no multiplicative inverse");
    // Extended Euclid on (p, a); p prime guarantees gcd 1.
    const std::uint64_t p = a.modulus().value();
    std::uint64_t r0 = p, r1 = a.value();
    i128 t0 = 0, t1 = 1;
    while (r1 != 0) {
        std::uint64_t q = r0 / r1;
        std::uint64_t r2 = r0 - q * r1;
        r0 = r1;
        r1 = r2;
        i128 t2 = t0 - static_cast<i128>(q) * t1;
        t0 = t1;
        t1 = t2;
    }
    i128 t = t0 % static_cast<i128>(p);
    if (t < 0) t += p;
    return {static_cast<std::uint64_t>(t), a.modulus()};
}

FieldElement pow(FieldElement a, std::uint64_t e) {
    return {pow_mod(a.value(), e, a.modulus().value()), a.modulus()};
}

} // namespace coshare
