#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "coshare/poly.hpp"
#include "coshare/rng.hpp"

namespace coshare {

// Parameters of one (t, n) threshold scheme over Z_p: any t of the n
// shares recover the secret, any t-1 reveal nothing. Requires
// 1 <= t <= n <= p-1 so that n distinct nonzero share positions exist.
class SchemeParams {
public:
    SchemeParams(std::uint32_t t, std::uint32_t n, FieldElement secret,
                 std::string label = "");

    std::uint32_t t() const noexcept { return t_; }
    std::uint32_t n() const noexcept { return n_; }
    FieldElement secret() const noexcept { return secret_; }
    PrimeModulus modulus() const noexcept { return secret_.modulus(); }
    const std::string& label() const noexcept { return label_; }

    SchemeParams with_label(std::string label) const {
        return {t_, n_, secret_, std::move(label)};
    }

private:
    std::uint32_t t_;
    std::uint32_t n_;
    FieldElement secret_;
    std::string label_;
};

// One participant's share: a point (x, f(x)) with x != 0, tagged with
// the scheme it belongs to.
class Share {
public:
    Share(FieldElement x, FieldElement y, std::string scheme_id = "");

    FieldElement x() const noexcept { return x_; }
    FieldElement y() const noexcept { return y_; }
    const std::string& scheme_id() const noexcept { return scheme_id_; }
    Point point() const { return {x_, y_}; }

    friend bool operator==(const Share& a, const Share& b) noexcept {
        return a.x_ == b.x_ && a.y_ == b.y_ && a.scheme_id_ == b.scheme_id_;
    }

private:
    FieldElement x_;
    FieldElement y_;
    std::string scheme_id_;
};

inline constexpr std::uint32_t kResampleBudget = 64;

struct SampledPoly {
    Polynomial poly;
    std::uint32_t retries; // top-coefficient resamples that were needed
};

// Random polynomial of the given degree with a fixed constant term. For
// degree >= 1 the leading coefficient is resampled while zero (at most
// kResampleBudget times, then ConstructionError), so the degree is
// exact. A degree-0 polynomial is the constant term itself and is
// exempt.
SampledPoly sample_polynomial(FieldElement constant_term, std::uint32_t degree,
                              RandomSource& rng);

struct SplitResult {
    Polynomial poly;
    std::vector<Share> shares; // (i, f(i)) for i = 1..n
    std::uint32_t retries;
};

// Split params.secret() into n shares along a fresh random curve of
// degree exactly t-1.
SplitResult split(const SchemeParams& params, RandomSource& rng);

// Recover the secret from at least t shares with distinct x. Exactly
// the t shares with smallest x are interpolated; any extra share is
// cross-checked against the interpolant and a mismatch throws (an
// inconsistent share signals corruption). The secret field of params is
// not consulted.
FieldElement reconstruct(const SchemeParams& params, std::span<const Share> shares);
FieldElement reconstruct(std::uint32_t t, PrimeModulus modulus, std::span<const Share> shares);

// Brute-force secrecy check, usable at desk scale only (the full
// p^t coefficient space is enumerated; p^t <= 10^7 is enforced).
// Returns, for each candidate secret s in 0..p-1, how many polynomials
// of degree <= t-1 are consistent with the partial shares plus (0, s).
// Perfect secrecy holds exactly when the counts are all equal.
// Requires partial.size() <= t - 1.
std::vector<std::uint64_t> secrecy_oracle(const SchemeParams& params,
                                          std::span<const Share> partial);

} // namespace coshare
