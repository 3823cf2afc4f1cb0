#include "coshare/collab.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "coshare/error.hpp"

namespace coshare {

namespace {

using u128 = unsigned __int128;

std::string dec(u128 v) {
    if (v == 0) return "0";
    std::string out;
    while (v > 0) {
        out.insert(out.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    return out;
}

void check_crossover_set(const CrossoverSet& crossover, PrimeModulus modulus) {
    std::set<std::uint64_t> seen;
    for (const Point& pt : crossover.points) {
        if (pt.modulus() != modulus)
            throw ValidationError("crossover point from a different field");
        if (pt.x().is_zero())
            throw ValidationError("crossover position x = 0 is reserved for the secret");
        if (!seen.insert(pt.x().value()).second)
            throw ValidationError("duplicate crossover position x = " +
                                  std::to_string(pt.x().value()));
    }
}

// The k smallest positive positions not claimed by the crossover set.
std::vector<std::uint64_t> free_positions(std::size_t k,
                                          std::span<const std::uint64_t> crossover_x,
                                          std::uint64_t p) {
    std::set<std::uint64_t> taken(crossover_x.begin(), crossover_x.end());
    std::vector<std::uint64_t> out;
    std::uint64_t x = 1;
    while (out.size() < k) {
        if (x >= p)
            throw ValidationError("not enough distinct share positions below the modulus");
        if (!taken.contains(x)) out.push_back(x);
        ++x;
    }
    return out;
}

struct FollowupFrame {
    std::vector<Point> fixed;             // (0, secret) plus the crossover points
    std::vector<std::uint64_t> filler_xs; // t - u - 1 free positions
};

FollowupFrame followup_frame(const SchemeParams& params, const CrossoverSet& crossover) {
    const PrimeModulus m = params.modulus();
    check_crossover_set(crossover, m);
    const std::size_t u = crossover.points.size();
    if (u >= params.t())
        throw ValidationError(
            "crossover count u = " + std::to_string(u) + " must stay below threshold t = " +
            std::to_string(params.t()) +
            ": the crossover points alone would determine the curve and its secret");

    FollowupFrame frame;
    frame.fixed.reserve(u + 1);
    frame.fixed.emplace_back(FieldElement::zero(m), params.secret());
    for (const Point& pt : crossover.points) frame.fixed.push_back(pt);

    std::vector<std::uint64_t> crossover_xs;
    crossover_xs.reserve(u);
    for (const Point& pt : crossover.points) crossover_xs.push_back(pt.x().value());
    frame.filler_xs = free_positions(params.t() - u - 1, crossover_xs, m.value());
    return frame;
}

// One interpolation attempt; returns the curve if it is acceptable.
Polynomial followup_candidate(const FollowupFrame& frame,
                              std::span<const std::uint64_t> filler_ys,
                              PrimeModulus modulus) {
    std::vector<Point> points = frame.fixed;
    for (std::size_t i = 0; i < frame.filler_xs.size(); ++i) {
        points.emplace_back(FieldElement{frame.filler_xs[i], modulus},
                            FieldElement{filler_ys[i], modulus});
    }
    return interpolate(points, modulus);
}

bool collides_with_prior(const Polynomial& candidate,
                         std::span<const Polynomial> prior_polys) {
    return std::any_of(prior_polys.begin(), prior_polys.end(),
                       [&](const Polynomial& prior) { return same_function(candidate, prior); });
}

} // namespace

PrimeModulus choose_modulus(std::span<const std::uint64_t> secrets,
                            std::span<const std::uint64_t> ns) {
    if (secrets.empty() && ns.empty())
        throw ValidationError("modulus choice needs at least one secret or scheme size");
    std::uint64_t required = 2;
    const auto raise_to = [&required](std::uint64_t v) {
        if (v == UINT64_MAX)
            throw ValidationError("value " + std::to_string(v) + " leaves no room for a modulus");
        required = std::max(required, v + 1);
    };
    for (std::uint64_t s : secrets) raise_to(s);
    for (std::uint64_t n : ns) raise_to(n);
    return PrimeModulus{next_prime(required)};
}

std::vector<std::string> scheme_labels(const CollaborationPlan& plan) {
    std::vector<std::string> labels;
    labels.reserve(plan.schemes.size());
    for (std::size_t j = 0; j < plan.schemes.size(); ++j) {
        const std::string& given = plan.schemes[j].label();
        labels.push_back(given.empty() ? "scheme-" + std::to_string(j + 1) : given);
    }
    return labels;
}

std::vector<std::uint64_t> effective_crossover_xs(const CollaborationPlan& plan) {
    if (!plan.crossover_x.empty()) return plan.crossover_x;
    std::vector<std::uint64_t> xs;
    xs.reserve(plan.u);
    for (std::uint32_t x = 1; x <= plan.u; ++x) xs.push_back(x);
    return xs;
}

std::vector<Warning> validate_plan(const CollaborationPlan& plan) {
    if (plan.schemes.size() < 2)
        throw ValidationError("a collaboration needs at least two schemes");

    const std::uint64_t p = plan.modulus.value();
    std::uint64_t min_n = UINT64_MAX;
    for (const SchemeParams& s : plan.schemes) {
        if (s.modulus() != plan.modulus)
            throw ValidationError("scheme modulus " + std::to_string(s.modulus().value()) +
                                  " differs from the agreed modulus " + std::to_string(p));
        // SchemeParams already guarantees secret < p and n <= p - 1;
        // re-checked here because validation is this function's contract.
        if (s.secret().value() >= p || static_cast<std::uint64_t>(s.n()) + 1 > p)
            throw ValidationError("modulus bound violated");
        min_n = std::min(min_n, static_cast<std::uint64_t>(s.n()));
    }

    for (std::size_t j = 1; j < plan.schemes.size(); ++j) {
        if (plan.schemes[j].t() < plan.schemes[j - 1].t())
            throw ValidationError("schemes must be listed in nondecreasing threshold order");
    }

    const std::vector<std::string> labels = scheme_labels(plan);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        for (std::size_t j = i + 1; j < labels.size(); ++j) {
            if (labels[i] == labels[j])
                throw ValidationError("duplicate scheme label \"" + labels[i] + "\"");
        }
    }

    const std::uint32_t t_first = plan.schemes.front().t();
    const std::uint32_t t_last = plan.schemes.back().t();
    if (plan.u > t_first)
        throw ValidationError("crossover count u = " + std::to_string(plan.u) +
                              " exceeds the smallest threshold t = " + std::to_string(t_first));

    if (plan.u == t_first && plan.u == t_last) {
        const FieldElement first_secret = plan.schemes.front().secret();
        const bool secrets_differ =
            std::any_of(plan.schemes.begin(), plan.schemes.end(),
                        [&](const SchemeParams& s) { return s.secret() != first_secret; });
        if (secrets_differ)
            throw EqualThresholdError(
                "u = t for every scheme while the secrets differ: the u crossover points "
                "would pin every curve, so the schemes cannot collaborate");
    }
    for (std::size_t j = 1; j < plan.schemes.size(); ++j) {
        if (plan.u >= plan.schemes[j].t())
            throw ValidationError("crossover count u = " + std::to_string(plan.u) +
                                  " must stay below follow-up threshold t = " +
                                  std::to_string(plan.schemes[j].t()));
    }

    const std::vector<std::uint64_t> xs = effective_crossover_xs(plan);
    if (xs.size() != plan.u)
        throw ValidationError("expected " + std::to_string(plan.u) +
                              " crossover positions, got " + std::to_string(xs.size()));
    std::set<std::uint64_t> seen;
    for (std::uint64_t x : xs) {
        if (x == 0) throw ValidationError("crossover position x = 0 is reserved for the secret");
        if (x > min_n)
            throw ValidationError("crossover position x = " + std::to_string(x) +
                                  " is outside the smallest scheme size n = " +
                                  std::to_string(min_n));
        if (!seen.insert(x).second)
            throw ValidationError("duplicate crossover position x = " + std::to_string(x));
    }

    std::vector<Warning> warnings;
    if (plan.u == t_first && plan.u > 0) {
        warnings.push_back(
            {"u-equals-first-threshold",
             "u = t for the first scheme: its u common participants can reconstruct the "
             "first secret without any local participant; safer to keep u < t"});
    }
    return warnings;
}

CrossoverSet pick_crossover(const Polynomial& poly, std::span<const std::uint64_t> xs,
                            std::string source_scheme) {
    const PrimeModulus m = poly.modulus();
    CrossoverSet out{{}, std::move(source_scheme)};
    out.points.reserve(xs.size());
    for (std::uint64_t x : xs) {
        const FieldElement fx{x, m};
        if (fx.is_zero())
            throw ValidationError("crossover position x = 0 is reserved for the secret");
        out.points.emplace_back(fx, poly.eval(fx));
    }
    check_crossover_set(out, m);
    return out;
}

FirstCurve construct_first(const SchemeParams& params,
                           std::span<const std::uint64_t> crossover_x, RandomSource& rng) {
    for (std::uint64_t x : crossover_x) {
        if (x < 1 || x > params.n())
            throw ValidationError("crossover position x = " + std::to_string(x) +
                                  " is outside the share range 1.." + std::to_string(params.n()));
    }
    SampledPoly sampled = sample_polynomial(params.secret(), params.t() - 1, rng);
    CrossoverSet crossover = pick_crossover(sampled.poly, crossover_x, params.label());
    return {std::move(sampled.poly), std::move(crossover), sampled.retries};
}

FollowupCurve construct_followup(const SchemeParams& params, const CrossoverSet& crossover,
                                 std::span<const Polynomial> prior_polys, RandomSource& rng) {
    const PrimeModulus m = params.modulus();
    const FollowupFrame frame = followup_frame(params, crossover);
    const bool has_filler = !frame.filler_xs.empty();

    std::vector<std::uint64_t> filler_ys(frame.filler_xs.size(), 0);
    for (std::uint32_t attempt = 0;; ++attempt) {
        for (std::uint64_t& y : filler_ys) y = rng.element(m).value();
        Polynomial candidate = followup_candidate(frame, filler_ys, m);

        if (params.t() >= 2 && candidate.top_coefficient().is_zero()) {
            if (!has_filler)
                throw ConstructionError(
                    "leading coefficient is forced to zero with no filler freedom; "
                    "the crossover points must be re-chosen");
            if (attempt == kResampleBudget)
                throw ConstructionError("leading coefficient stayed zero after " +
                                        std::to_string(kResampleBudget) + " resamples");
            continue;
        }
        if (collides_with_prior(candidate, prior_polys)) {
            if (!has_filler)
                throw ConstructionError(
                    "curve is forced identical to an existing curve with no filler freedom; "
                    "the crossover points must be re-chosen");
            if (attempt == kResampleBudget)
                throw ConstructionError("curve stayed identical to an existing curve after " +
                                        std::to_string(kResampleBudget) + " resamples");
            continue;
        }
        return {std::move(candidate), attempt};
    }
}

Polynomial construct_followup_pinned(const SchemeParams& params, const CrossoverSet& crossover,
                                     std::span<const std::uint64_t> filler_ys,
                                     std::span<const Polynomial> prior_polys) {
    const PrimeModulus m = params.modulus();
    const FollowupFrame frame = followup_frame(params, crossover);
    if (filler_ys.size() != frame.filler_xs.size())
        throw ValidationError("expected " + std::to_string(frame.filler_xs.size()) +
                              " filler values, got " + std::to_string(filler_ys.size()));
    for (std::uint64_t y : filler_ys) {
        if (y >= m.value())
            throw ValidationError("filler value " + std::to_string(y) +
                                  " is not below modulus " + std::to_string(m.value()));
    }
    Polynomial candidate = followup_candidate(frame, filler_ys, m);
    if (params.t() >= 2 && candidate.top_coefficient().is_zero())
        throw ConstructionError("pinned filler values force a zero leading coefficient");
    if (collides_with_prior(candidate, prior_polys))
        throw ConstructionError("pinned filler values reproduce an existing curve");
    return candidate;
}

std::vector<LedgerEntry> distribute(const CollaborationPlan& plan,
                                    std::span<const Polynomial> polynomials,
                                    const CrossoverSet& crossover) {
    if (polynomials.size() != plan.schemes.size())
        throw ValidationError("expected one polynomial per scheme");
    check_crossover_set(crossover, plan.modulus);

    const std::vector<std::uint64_t> planned_xs = effective_crossover_xs(plan);
    std::set<std::uint64_t> planned(planned_xs.begin(), planned_xs.end());
    std::set<std::uint64_t> actual;
    for (const Point& pt : crossover.points) actual.insert(pt.x().value());
    if (planned != actual)
        throw ValidationError("crossover positions do not match the plan");

    // The defining property: every curve passes through every crossover
    // point. Refused, not repaired, when violated.
    for (const Polynomial& poly : polynomials) {
        if (poly.modulus() != plan.modulus)
            throw ValidationError("polynomial from a different field");
        for (const Point& pt : crossover.points) {
            if (poly.eval(pt.x()) != pt.y())
                throw ValidationError("crossover agreement violated at x = " +
                                      std::to_string(pt.x().value()));
        }
    }

    const std::vector<std::string> labels = scheme_labels(plan);
    std::vector<LedgerEntry> ledger;

    std::vector<Point> common = crossover.points;
    std::sort(common.begin(), common.end(),
              [](const Point& a, const Point& b) { return a.x().value() < b.x().value(); });
    for (const Point& pt : common) {
        ledger.push_back({"common:" + std::to_string(pt.x().value()), pt.x(), pt.y(), labels});
    }

    for (std::size_t j = 0; j < plan.schemes.size(); ++j) {
        const SchemeParams& scheme = plan.schemes[j];
        if (plan.u > scheme.n())
            throw ValidationError("crossover count u = " + std::to_string(plan.u) +
                                  " exceeds scheme size n = " + std::to_string(scheme.n()));
        const std::vector<std::uint64_t> xs =
            free_positions(scheme.n() - plan.u, planned_xs, plan.modulus.value());
        for (std::uint64_t x : xs) {
            const FieldElement fx{x, plan.modulus};
            ledger.push_back({labels[j] + ":" + std::to_string(x), fx,
                              polynomials[j].eval(fx),
                              {labels[j]}});
        }
    }
    return ledger;
}

CollaborationResult build_collaboration(const CollaborationPlan& plan, RandomSource& rng) {
    validate_plan(plan);
    const std::vector<std::uint64_t> xs = effective_crossover_xs(plan);
    const std::vector<std::string> labels = scheme_labels(plan);

    FirstCurve first = construct_first(plan.schemes.front().with_label(labels.front()), xs, rng);

    CollaborationResult result{{first.poly}, {}, {first.retries}};
    for (std::size_t j = 1; j < plan.schemes.size(); ++j) {
        FollowupCurve next = construct_followup(plan.schemes[j].with_label(labels[j]),
                                                first.crossover, result.polynomials, rng);
        result.polynomials.push_back(std::move(next.poly));
        result.retry_counts.push_back(next.retries);
    }
    result.ledger = distribute(plan, result.polynomials, first.crossover);
    return result;
}

unsigned __int128 ConflictProbability::denominator() const {
    u128 acc = 1;
    for (std::uint32_t i = 0; i < exponent; ++i) {
        const u128 next = acc * prime;
        if (next / prime != acc)
            throw ValidationError("conflict probability denominator overflows 128 bits");
        acc = next;
    }
    return acc;
}

std::string ConflictProbability::str() const {
    if (exponent == 0) return "1";
    return "1/" + dec(denominator());
}

double ConflictProbability::approx() const {
    double acc = 1.0;
    for (std::uint32_t i = 0; i < exponent; ++i) acc /= static_cast<double>(prime);
    return acc;
}

ConflictProbability conflict_probability(PrimeModulus modulus, std::uint32_t t,
                                         std::uint32_t u) {
    if (t <= u)
        throw ValidationError("conflict probability needs t > u, got t = " + std::to_string(t) +
                              ", u = " + std::to_string(u));
    return {modulus.value(), t - u - 1};
}

bool same_point_set(std::span<const Point> a, std::span<const Point> b) {
    if (a.size() != b.size()) return false;
    auto key = [](const Point& pt) {
        return std::pair<std::uint64_t, std::uint64_t>{pt.x().value(), pt.y().value()};
    };
    std::vector<std::pair<std::uint64_t, std::uint64_t>> ka, kb;
    ka.reserve(a.size());
    kb.reserve(b.size());
    for (const Point& pt : a) ka.push_back(key(pt));
    for (const Point& pt : b) kb.push_back(key(pt));
    std::sort(ka.begin(), ka.end());
    std::sort(kb.begin(), kb.end());
    if (ka != kb) return false;
    if (a.empty()) return true;
    return a.front().modulus() == b.front().modulus();
}

} // namespace coshare
