#include "coshare/poly.hpp"

#include <algorithm>
#include <cassert>
#include <string>

#include "coshare/error.hpp"

namespace coshare {

Point::Point(FieldElement x, FieldElement y) : x_(x), y_(y) {
    if (x.modulus() != y.modulus())
        throw ValidationError("point coordinates live in different fields");
}

Polynomial::Polynomial(PrimeModulus modulus, std::vector<std::uint64_t> coefficients)
    : modulus_(modulus), coeffs_(std::move(coefficients)) {
    if (coeffs_.empty()) throw ValidationError("polynomial needs at least one coefficient");
    for (std::uint64_t c : coeffs_) {
        if (c >= modulus_.value())
            throw ValidationError("coefficient " + std::to_string(c) + " is not below modulus " +
                                  std::to_string(modulus_.value()));
    }
}

Polynomial::Polynomial(std::vector<FieldElement> coefficients)
    : modulus_(coefficients.empty()
                   ? throw ValidationError("polynomial needs at least one coefficient")
                   : coefficients.front().modulus()) {
    coeffs_.reserve(coefficients.size());
    for (FieldElement c : coefficients) {
        if (c.modulus() != modulus_)
            throw ValidationError("polynomial coefficients live in different fields");
        coeffs_.push_back(c.value());
    }
}

FieldElement Polynomial::coefficient(std::size_t i) const {
    if (i >= coeffs_.size())
        throw ValidationError("coefficient index " + std::to_string(i) + " out of range");
    return {coeffs_[i], modulus_};
}

FieldElement Polynomial::eval(FieldElement x) const {
    if (x.modulus() != modulus_)
        throw ValidationError("evaluating polynomial at a point from a different field");
    FieldElement acc = FieldElement::zero(modulus_);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * x + FieldElement{*it, modulus_};
    }
    return acc;
}

bool same_function(const Polynomial& a, const Polynomial& b) {
    if (a.modulus() != b.modulus()) return false;
    const auto& ca = a.coefficient_values();
    const auto& cb = b.coefficient_values();
    const std::size_t n = std::max(ca.size(), cb.size());
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t va = i < ca.size() ? ca[i] : 0;
        const std::uint64_t vb = i < cb.size() ? cb[i] : 0;
        if (va != vb) return false;
    }
    return true;
}

namespace {

void check_sample_set(std::span<const Point> points, PrimeModulus modulus) {
    if (points.empty()) throw ValidationError("interpolation needs at least one point");
    for (const Point& pt : points) {
        if (pt.modulus() != modulus)
            throw ValidationError("sample point from a different field");
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            if (points[i].x() == points[j].x())
                throw ValidationError("duplicate sample x = " +
                                      std::to_string(points[i].x().value()));
        }
    }
}

} // namespace

Polynomial interpolate(std::span<const Point> points, PrimeModulus modulus) {
    check_sample_set(points, modulus);
    const std::size_t t = points.size();
    const FieldElement zero = FieldElement::zero(modulus);

    std::vector<FieldElement> result(t, zero);
    std::vector<FieldElement> basis;
    basis.reserve(t);

    for (std::size_t j = 0; j < t; ++j) {
        // basis <- prod_{l != j} (x - x_l), denominator <- prod_{l != j} (x_j - x_l)
        basis.assign(1, FieldElement::one(modulus));
        FieldElement denominator = FieldElement::one(modulus);
        for (std::size_t l = 0; l < t; ++l) {
            if (l == j) continue;
            const FieldElement xl = points[l].x();
            basis.push_back(zero);
            for (std::size_t k = basis.size() - 1; k > 0; --k) {
                basis[k] = basis[k - 1] - basis[k] * xl;
            }
            basis[0] = -(basis[0] * xl);
            denominator = denominator * (points[j].x() - xl);
        }
        const FieldElement scale = points[j].y() / denominator;
        for (std::size_t k = 0; k < basis.size(); ++k) {
            result[k] = result[k] + basis[k] * scale;
        }
    }
    return Polynomial{std::move(result)};
}

FieldElement reconstruct_secret(std::span<const Point> points, PrimeModulus modulus) {
    check_sample_set(points, modulus);
    for (const Point& pt : points) {
        if (pt.x().is_zero())
            throw ValidationError("a sample at x = 0 would be the secret itself");
    }
    const std::size_t t = points.size();

    FieldElement sum = FieldElement::zero(modulus);
    for (std::size_t j = 0; j < t; ++j) {
        FieldElement numerator = FieldElement::one(modulus);
        FieldElement denominator = FieldElement::one(modulus);
        for (std::size_t l = 0; l < t; ++l) {
            if (l == j) continue;
            numerator = numerator * points[l].x();
            denominator = denominator * (points[j].x() - points[l].x());
        }
        sum = sum + points[j].y() * numerator / denominator;
    }
    const bool negate = (t - 1) % 2 == 1; // the (-1)^(t-1) factor
    FieldElement secret = negate ? -sum : sum;
#ifndef NDEBUG
    assert(secret == interpolate(points, modulus).eval(FieldElement::zero(modulus)));
#endif
    return secret;
}

} // namespace coshare
