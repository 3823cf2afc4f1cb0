#include "coshare/scheme.hpp"

#include <algorithm>
#include <string>

#include "coshare/error.hpp"

namespace coshare {

namespace {

using u128 = unsigned __int128;

} // namespace

SchemeParams::SchemeParams(std::uint32_t t, std::uint32_t n, FieldElement secret,
                           std::string label)
    : t_(t), n_(n), secret_(secret), label_(std::move(label)) {
    if (t < 1) throw ValidationError("threshold t must be at least 1");
    if (n < t)
        throw ValidationError("participant count n = " + std::to_string(n) +
                              " is below threshold t = " + std::to_string(t));
    if (static_cast<std::uint64_t>(n) > secret.modulus().value() - 1)
        throw ValidationError("n = " + std::to_string(n) +
                              " distinct nonzero share positions do not exist below modulus " +
                              std::to_string(secret.modulus().value()));
}

Share::Share(FieldElement x, FieldElement y, std::string scheme_id)
    : x_(x), y_(y), scheme_id_(std::move(scheme_id)) {
    if (x.modulus() != y.modulus())
        throw ValidationError("share coordinates live in different fields");
    if (x.is_zero()) throw ValidationError("share position x = 0 is reserved for the secret");
}

SampledPoly sample_polynomial(FieldElement constant_term, std::uint32_t degree,
                              RandomSource& rng) {
    const PrimeModulus m = constant_term.modulus();
    std::vector<FieldElement> coeffs;
    coeffs.reserve(degree + 1);
    coeffs.push_back(constant_term);
    for (std::uint32_t i = 1; i <= degree; ++i) coeffs.push_back(rng.element(m));

    std::uint32_t retries = 0;
    while (degree >= 1 && coeffs.back().is_zero()) {
        if (retries == kResampleBudget)
            throw ConstructionError("leading coefficient stayed zero after " +
                                    std::to_string(kResampleBudget) + " resamples");
        coeffs.back() = rng.element(m);
        ++retries;
    }
    return {Polynomial{std::move(coeffs)}, retries};
}

SplitResult split(const SchemeParams& params, RandomSource& rng) {
    SampledPoly sampled = sample_polynomial(params.secret(), params.t() - 1, rng);
    const PrimeModulus m = params.modulus();

    std::vector<Share> shares;
    shares.reserve(params.n());
    for (std::uint32_t i = 1; i <= params.n(); ++i) {
        const FieldElement x{i, m};
        shares.emplace_back(x, sampled.poly.eval(x), params.label());
    }
    return {std::move(sampled.poly), std::move(shares), sampled.retries};
}

FieldElement reconstruct(std::uint32_t t, PrimeModulus modulus,
                         std::span<const Share> shares) {
    if (t < 1) throw ValidationError("threshold t must be at least 1");
    if (shares.size() < t)
        throw ValidationError("insufficient shares: got " + std::to_string(shares.size()) +
                              ", need t = " + std::to_string(t));
    for (const Share& s : shares) {
        if (s.x().modulus() != modulus)
            throw ValidationError("share from a different field");
    }

    std::vector<Share> sorted(shares.begin(), shares.end());
    std::sort(sorted.begin(), sorted.end(),
              [](const Share& a, const Share& b) { return a.x().value() < b.x().value(); });
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (sorted[i].x() == sorted[i - 1].x())
            throw ValidationError("duplicate share position x = " +
                                  std::to_string(sorted[i].x().value()));
    }

    std::vector<Point> used;
    used.reserve(t);
    for (std::uint32_t i = 0; i < t; ++i) used.push_back(sorted[i].point());

    const FieldElement secret = reconstruct_secret(used, modulus);
    if (sorted.size() > t) {
        const Polynomial curve = interpolate(used, modulus);
        for (std::size_t i = t; i < sorted.size(); ++i) {
            if (curve.eval(sorted[i].x()) != sorted[i].y())
                throw ValidationError("share (x = " + std::to_string(sorted[i].x().value()) +
                                      ") is inconsistent with the curve through the others");
        }
    }
    return secret;
}

FieldElement reconstruct(const SchemeParams& params, std::span<const Share> shares) {
    return reconstruct(params.t(), params.modulus(), shares);
}

std::vector<std::uint64_t> secrecy_oracle(const SchemeParams& params,
                                          std::span<const Share> partial) {
    const std::uint64_t p = params.modulus().value();
    const std::uint32_t t = params.t();
    if (partial.size() > static_cast<std::size_t>(t) - 1)
        throw ValidationError("secrecy oracle takes at most t - 1 shares, got " +
                              std::to_string(partial.size()));

    constexpr u128 kEnumerationBound = 10'000'000;
    u128 total = 1;
    for (std::uint32_t i = 0; i < t; ++i) {
        total *= p;
        if (total > kEnumerationBound)
            throw ValidationError("enumeration bound exceeded: p^t must stay within 10^7");
    }

    std::vector<std::uint64_t> xs, ys;
    for (const Share& s : partial) {
        if (s.x().modulus() != params.modulus())
            throw ValidationError("share from a different field");
        xs.push_back(s.x().value());
        ys.push_back(s.y().value());
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = i + 1; j < xs.size(); ++j) {
            if (xs[i] == xs[j])
                throw ValidationError("duplicate share position x = " + std::to_string(xs[i]));
        }
    }

    // Walk every coefficient vector in Z_p^t and bucket the consistent
    // ones by their constant term.
    std::vector<std::uint64_t> counts(p, 0);
    std::vector<std::uint64_t> coeffs(t, 0);
    for (;;) {
        bool consistent = true;
        for (std::size_t i = 0; i < xs.size() && consistent; ++i) {
            std::uint64_t acc = 0;
            for (std::size_t k = coeffs.size(); k-- > 0;) {
                acc = static_cast<std::uint64_t>((static_cast<u128>(acc) * xs[i] + coeffs[k]) % p);
            }
            consistent = acc == ys[i];
        }
        if (consistent) ++counts[coeffs[0]];

        std::size_t pos = 0;
        while (pos < coeffs.size() && ++coeffs[pos] == p) {
            coeffs[pos] = 0;
            ++pos;
        }
        if (pos == coeffs.size()) break;
    }
    return counts;
}

} // namespace coshare
