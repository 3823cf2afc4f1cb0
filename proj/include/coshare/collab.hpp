#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "coshare/scheme.hpp"

namespace coshare {

// A family of threshold schemes built over one shared prime field with
// u common crossover points, so each common participant keeps a single
// share that works in every scheme.
//
// Validity (checked by validate_plan):
//   - at least two schemes, listed in nondecreasing threshold order;
//   - u <= t_1, and u < t_j strictly for every follow-up scheme (with
//     u = t_j the crossover points alone would force f_j(0), so an
//     arbitrary secret could not be encoded);
//   - u = t_first = t_last with differing secrets is impossible and is
//     rejected with EqualThresholdError;
//   - crossover positions are distinct, nonzero and within every
//     scheme's share range (empty crossover_x means the default 1..u).
struct CollaborationPlan {
    std::vector<SchemeParams> schemes;
    std::uint32_t u = 0;
    std::vector<std::uint64_t> crossover_x; // empty = default 1..u
    PrimeModulus modulus;
};

// Advisory finding from validate_plan; never fatal.
struct Warning {
    std::string code;
    std::string message;
};

// The u points of the first curve that every later curve is forced
// through.
struct CrossoverSet {
    std::vector<Point> points;
    std::string source_scheme;
};

// One participant's row in the share ledger. Common participants carry
// every scheme id; everyone else exactly one.
struct LedgerEntry {
    std::string participant;
    FieldElement x;
    FieldElement y;
    std::vector<std::string> schemes;

    friend bool operator==(const LedgerEntry& a, const LedgerEntry& b) noexcept {
        return a.participant == b.participant && a.x == b.x && a.y == b.y &&
               a.schemes == b.schemes;
    }
};

struct CollaborationResult {
    std::vector<Polynomial> polynomials; // one per scheme, plan order
    std::vector<LedgerEntry> ledger;
    std::vector<std::uint32_t> retry_counts; // resamples per scheme
};

// Smallest prime p with p > every secret and p >= n + 1 for every
// scheme size, so all secrets are field members and enough share
// positions exist. Throws when both lists are empty.
PrimeModulus choose_modulus(std::span<const std::uint64_t> secrets,
                            std::span<const std::uint64_t> ns);

// Effective scheme ids: explicit labels kept, empty ones filled in as
// "scheme-<position>".
std::vector<std::string> scheme_labels(const CollaborationPlan& plan);

// Effective crossover positions (the default 1..u when none are given).
std::vector<std::uint64_t> effective_crossover_xs(const CollaborationPlan& plan);

// Checks every plan invariant; throws on hard violations and returns
// advisory warnings. u = t_1 is legal but flagged: the u common
// participants could then reconstruct the first secret on their own.
std::vector<Warning> validate_plan(const CollaborationPlan& plan);

// Evaluates the curve at the chosen crossover positions. This is all a
// later dealer ever learns about it.
CrossoverSet pick_crossover(const Polynomial& poly, std::span<const std::uint64_t> xs,
                            std::string source_scheme);

struct FirstCurve {
    Polynomial poly;
    CrossoverSet crossover;
    std::uint32_t retries;
};

// First dealer: fresh random curve of degree exactly t-1 through
// (0, secret), plus its crossover points. crossover_x must lie within
// 1..n.
FirstCurve construct_first(const SchemeParams& params,
                           std::span<const std::uint64_t> crossover_x, RandomSource& rng);

struct FollowupCurve {
    Polynomial poly;
    std::uint32_t retries;
};

// Follow-up dealer: interpolates (0, secret), the u crossover points,
// and t-u-1 filler points with random y at the smallest free positive
// positions. Filler y values are resampled (within the budget) whenever
// the leading coefficient lands on zero or the curve collides with a
// prior polynomial; with t = u+1 there is no filler freedom, so either
// event is fatal and means the crossover points themselves must be
// re-chosen.
FollowupCurve construct_followup(const SchemeParams& params, const CrossoverSet& crossover,
                                 std::span<const Polynomial> prior_polys, RandomSource& rng);

// Same construction with pinned filler y values: a single attempt, no
// resampling. filler_ys.size() must be exactly t - u - 1.
Polynomial construct_followup_pinned(const SchemeParams& params, const CrossoverSet& crossover,
                                     std::span<const std::uint64_t> filler_ys,
                                     std::span<const Polynomial> prior_polys = {});

// Share assignment. Common participants get the u crossover shares (one
// each, tagged with every scheme id); scheme j's remaining participants
// get shares at the n_j - u smallest positive positions outside the
// crossover set. Elimination is by position, never by y value, so a
// coincidental value collision cannot drop a share.
std::vector<LedgerEntry> distribute(const CollaborationPlan& plan,
                                    std::span<const Polynomial> polynomials,
                                    const CrossoverSet& crossover);

// The whole protocol: validate, build the first curve, force every
// follow-up curve through its crossover points, distribute shares.
CollaborationResult build_collaboration(const CollaborationPlan& plan, RandomSource& rng);

// Probability that a follow-up dealer's filler draw reproduces a given
// prior curve: 1 / p^(t-u-1), kept exact. With t = u+1 the exponent is
// zero and the probability is 1 (no filler freedom).
struct ConflictProbability {
    std::uint64_t prime;
    std::uint32_t exponent;

    std::uint64_t numerator() const noexcept { return 1; }
    unsigned __int128 denominator() const; // prime^exponent; throws if it overflows 128 bits
    std::string str() const;               // "1/343", or "1" when exponent is 0
    double approx() const;

    friend bool operator==(const ConflictProbability& a,
                           const ConflictProbability& b) noexcept {
        return a.prime == b.prime && a.exponent == b.exponent;
    }
};

ConflictProbability conflict_probability(PrimeModulus modulus, std::uint32_t t,
                                         std::uint32_t u);

// Dealer-to-dealer conflict warning primitive: do two point subsets
// coincide exactly (as sets)? Lets one dealer warn another about a
// possible identical curve without learning the full point set.
bool same_point_set(std::span<const Point> a, std::span<const Point> b);

} // namespace coshare
