#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "coshare/field.hpp"

namespace coshare {

// An (x, y) sample with both coordinates in the same Z_p.
class Point {
public:
    Point(FieldElement x, FieldElement y);

    FieldElement x() const noexcept { return x_; }
    FieldElement y() const noexcept { return y_; }
    PrimeModulus modulus() const noexcept { return x_.modulus(); }

    friend bool operator==(const Point& a, const Point& b) noexcept {
        return a.x_ == b.x_ && a.y_ == b.y_;
    }
    friend bool operator!=(const Point& a, const Point& b) noexcept { return !(a == b); }

private:
    FieldElement x_;
    FieldElement y_;
};

// Coefficient vector over Z_p, constant term first: coefficient(0) is
// the value at x = 0. The slot count is fixed at construction and never
// trimmed, so a zero leading coefficient stays observable to callers
// that enforce degree policy.
class Polynomial {
public:
    Polynomial(PrimeModulus modulus, std::vector<std::uint64_t> coefficients);
    explicit Polynomial(std::vector<FieldElement> coefficients);

    PrimeModulus modulus() const noexcept { return modulus_; }
    std::size_t slot_count() const noexcept { return coeffs_.size(); }
    std::size_t degree() const noexcept { return coeffs_.size() - 1; }

    FieldElement coefficient(std::size_t i) const;
    FieldElement constant_term() const { return coefficient(0); }
    FieldElement top_coefficient() const { return coefficient(coeffs_.size() - 1); }
    const std::vector<std::uint64_t>& coefficient_values() const noexcept { return coeffs_; }

    // Horner evaluation, reduced mod p.
    FieldElement eval(FieldElement x) const;

    // Slot-wise identity: same modulus, same slot count, same values.
    friend bool operator==(const Polynomial& a, const Polynomial& b) noexcept {
        return a.modulus_ == b.modulus_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) noexcept {
        return !(a == b);
    }

private:
    PrimeModulus modulus_;
    std::vector<std::uint64_t> coeffs_;
};

// Mathematical identity: equal as functions on Z_p, i.e. equal
// coefficients once trailing zero slots are ignored.
bool same_function(const Polynomial& a, const Polynomial& b);

// The unique polynomial of degree <= points.size()-1 through the given
// points, in Lagrange form. Returned with exactly points.size()
// coefficient slots; the top slot may be zero (degree policy belongs to
// the caller). Throws on an empty list, duplicate x values, or a
// modulus mismatch.
Polynomial interpolate(std::span<const Point> points, PrimeModulus modulus);

// The constant term of the interpolant through the points, computed by
// the explicit product form
//   f(0) = (-1)^(t-1) * sum_j y_j * prod_{l != j} x_l / (x_j - x_l)
// with t = points.size(). Requires all x distinct and nonzero (the
// secret position x = 0 may not appear as a sample). Agrees with
// interpolate(...).eval(0) by construction; debug builds assert it.
FieldElement reconstruct_secret(std::span<const Point> points, PrimeModulus modulus);

} // namespace coshare
