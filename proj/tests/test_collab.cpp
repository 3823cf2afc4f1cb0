#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <vector>

#include "coshare/collab.hpp"
#include "coshare/error.hpp"
#include "support.hpp"

using namespace coshare;
using coshare::testing::ScriptedRandomSource;

namespace {

const PrimeModulus kM7{7};

Point pt(std::uint64_t x, std::uint64_t y, PrimeModulus m = kM7) {
    return {FieldElement{x, m}, FieldElement{y, m}};
}

// The worked (3,5) + (4,6) collaboration used throughout: secrets 1 and
// 3, u = 2, first curve 1 + 3x + 2x^2 mod 7.
CollaborationPlan reference_plan() {
    return {{SchemeParams{3, 5, FieldElement{1, kM7}, "scheme-1"},
             SchemeParams{4, 6, FieldElement{3, kM7}, "scheme-2"}},
            2,
            {},
            kM7};
}

CrossoverSet reference_crossover() {
    return {{pt(1, 6), pt(2, 1)}, "scheme-1"};
}

} // namespace

TEST_CASE("modulus choice") {
    const std::vector<std::uint64_t> secrets{1, 3};
    const std::vector<std::uint64_t> ns{5, 6};
    CHECK(choose_modulus(secrets, ns).value() == 7);

    const std::vector<std::uint64_t> s0{0};
    const std::vector<std::uint64_t> n1{1};
    CHECK(choose_modulus(s0, n1).value() == 2);

    // Smallest prime admitting secret 8: scan primes upward.
    std::uint64_t expected = 9;
    while (!is_prime(expected)) ++expected;
    CHECK(expected == 11);
    const std::vector<std::uint64_t> s8{8};
    const std::vector<std::uint64_t> n5{5};
    CHECK(choose_modulus(s8, n5).value() == expected);

    CHECK_THROWS_AS(choose_modulus({}, {}), ValidationError);

    // The modulus always clears every secret strictly.
    const std::vector<std::uint64_t> s7{7};
    CHECK(choose_modulus(s7, {}).value() == 11);
}

TEST_CASE("plan validation accepts the reference plan") {
    const auto warnings = validate_plan(reference_plan());
    CHECK(warnings.empty());
}

TEST_CASE("equal thresholds with equal crossover count and differing secrets are impossible") {
    CollaborationPlan plan{{SchemeParams{3, 5, FieldElement{1, kM7}},
                            SchemeParams{3, 5, FieldElement{3, kM7}}},
                           3,
                           {},
                           kM7};
    CHECK_THROWS_AS(validate_plan(plan), EqualThresholdError);
}

TEST_CASE("u equal to the first threshold is allowed but flagged") {
    CollaborationPlan plan{{SchemeParams{3, 5, FieldElement{1, kM7}},
                            SchemeParams{4, 6, FieldElement{3, kM7}}},
                           3,
                           {},
                           kM7};
    const auto warnings = validate_plan(plan);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].code == "u-equals-first-threshold");
}

TEST_CASE("u reaching a follow-up threshold is rejected") {
    CollaborationPlan plan{{SchemeParams{4, 6, FieldElement{1, kM7}},
                            SchemeParams{4, 6, FieldElement{1, kM7}, "other"}},
                           4,
                           {},
                           kM7};
    // Secrets equal, so the distinct equal-threshold error does not
    // apply; the hard u < t rule for follow-up schemes still does.
    bool generic_rejection = false;
    try {
        validate_plan(plan);
    } catch (const EqualThresholdError&) {
    } catch (const ValidationError&) {
        generic_rejection = true;
    }
    CHECK(generic_rejection);
}

TEST_CASE("plan validation catches structural problems") {
    const SchemeParams a{3, 5, FieldElement{1, kM7}};
    const SchemeParams b{4, 6, FieldElement{3, kM7}, "b"};

    SUBCASE("single scheme") {
        CollaborationPlan plan{{a}, 1, {}, kM7};
        CHECK_THROWS_AS(validate_plan(plan), ValidationError);
    }
    SUBCASE("thresholds out of order") {
        CollaborationPlan plan{{b, a.with_label("a")}, 2, {}, kM7};
        CHECK_THROWS_AS(validate_plan(plan), ValidationError);
    }
    SUBCASE("u beyond the first threshold") {
        CollaborationPlan plan{{a, b}, 4, {}, kM7};
        CHECK_THROWS_AS(validate_plan(plan), ValidationError);
    }
    SUBCASE("crossover position out of range") {
        CollaborationPlan plan{{a, b}, 2, {1, 6}, kM7}; // 6 > min(n) = 5
        CHECK_THROWS_AS(validate_plan(plan), ValidationError);
    }
    SUBCASE("crossover position zero") {
        CollaborationPlan plan{{a, b}, 2, {0, 1}, kM7};
        CHECK_THROWS_AS(validate_plan(plan), ValidationError);
    }
    SUBCASE("crossover count mismatch") {
        CollaborationPlan plan{{a, b}, 2, {1, 2, 3}, kM7};
        CHECK_THROWS_AS(validate_plan(plan), ValidationError);
    }
    SUBCASE("modulus mismatch") {
        const PrimeModulus m11{11};
        CollaborationPlan plan{{a, SchemeParams{4, 6, FieldElement{3, m11}, "b"}}, 2, {}, kM7};
        CHECK_THROWS_AS(validate_plan(plan), ValidationError);
    }
    SUBCASE("duplicate labels") {
        CollaborationPlan plan{{a.with_label("x"), b.with_label("x")}, 2, {}, kM7};
        CHECK_THROWS_AS(validate_plan(plan), ValidationError);
    }
}

TEST_CASE("first curve with scripted coefficients yields the known crossover points") {
    const SchemeParams params{3, 5, FieldElement{1, kM7}, "scheme-1"};
    ScriptedRandomSource rng{{3, 2}};
    const std::vector<std::uint64_t> xs{1, 2};
    const FirstCurve first = construct_first(params, xs, rng);

    CHECK(first.poly == Polynomial{kM7, {1, 3, 2}});
    REQUIRE(first.crossover.points.size() == 2);
    CHECK(first.crossover.points[0] == pt(1, 6));
    CHECK(first.crossover.points[1] == pt(2, 1));
    CHECK(first.crossover.source_scheme == "scheme-1");
}

TEST_CASE("first curve with no crossover degenerates to a standalone scheme") {
    const SchemeParams params{3, 5, FieldElement{1, kM7}};
    SeededRandomSource rng{5};
    const FirstCurve first = construct_first(params, {}, rng);
    CHECK(first.crossover.points.empty());
}

TEST_CASE("seeded first curve matches re-evaluation of its polynomial") {
    const SchemeParams params{4, 6, FieldElement{2, PrimeModulus{11}}};
    SeededRandomSource rng{77};
    const std::vector<std::uint64_t> xs{2, 4, 5};
    const FirstCurve first = construct_first(params, xs, rng);
    for (const Point& p : first.crossover.points) {
        CHECK(first.poly.eval(p.x()) == p.y());
    }
}

TEST_CASE("crossover positions outside the share range are rejected") {
    const SchemeParams params{3, 5, FieldElement{1, kM7}};
    SeededRandomSource rng{1};
    const std::vector<std::uint64_t> bad{1, 6};
    CHECK_THROWS_AS(construct_first(params, bad, rng), ValidationError);
    const std::vector<std::uint64_t> zero{0};
    CHECK_THROWS_AS(construct_first(params, zero, rng), ValidationError);
}

TEST_CASE("follow-up curve through the reference crossover") {
    const SchemeParams params{4, 6, FieldElement{3, kM7}, "scheme-2"};

    SUBCASE("filler 3 gives the known quartic") {
        ScriptedRandomSource rng{{3}};
        const FollowupCurve curve = construct_followup(params, reference_crossover(), {}, rng);
        CHECK(curve.poly == Polynomial{kM7, {3, 5, 6, 6}});
        CHECK(curve.retries == 0);
    }
    SUBCASE("filler 2 forces a zero leading coefficient and is resampled") {
        ScriptedRandomSource rng{{2, 3}};
        const FollowupCurve curve = construct_followup(params, reference_crossover(), {}, rng);
        CHECK(curve.poly == Polynomial{kM7, {3, 5, 6, 6}});
        CHECK(curve.retries == 1);
        CHECK(rng.consumed() == 2);
    }
    SUBCASE("a draw colliding with a prior curve is resampled") {
        const std::vector<Polynomial> priors{Polynomial{kM7, {3, 5, 6, 6}}};
        ScriptedRandomSource rng{{3, 5}};
        const FollowupCurve curve = construct_followup(params, reference_crossover(), priors, rng);
        CHECK(curve.poly == Polynomial{kM7, {3, 1, 5, 4}});
        CHECK(curve.retries == 1);
    }
    SUBCASE("pinned filler, single attempt") {
        const std::vector<std::uint64_t> filler{3};
        CHECK(construct_followup_pinned(params, reference_crossover(), filler) ==
              Polynomial{kM7, {3, 5, 6, 6}});
        const std::vector<std::uint64_t> zero_top{2};
        CHECK_THROWS_AS(construct_followup_pinned(params, reference_crossover(), zero_top),
                        ConstructionError);
    }
}

TEST_CASE("follow-up with t = u + 1 needs no filler") {
    const SchemeParams params{3, 5, FieldElement{3, kM7}, "scheme-2"};
    ScriptedRandomSource rng{{}}; // no draws expected
    const FollowupCurve curve = construct_followup(params, reference_crossover(), {}, rng);
    CHECK(curve.poly == Polynomial{kM7, {3, 0, 3}});
    CHECK(curve.retries == 0);
    CHECK(rng.consumed() == 0);
}

TEST_CASE("follow-up with t = u + 1 fails loudly when the forced curve is degenerate") {
    // Through (0,4), (1,6), (2,1) the unique parabola is 2x + 4: the
    // leading coefficient is forced to zero and there is nothing to
    // resample.
    const SchemeParams params{3, 5, FieldElement{4, kM7}};
    ScriptedRandomSource rng{{}};
    CHECK_THROWS_AS(construct_followup(params, reference_crossover(), {}, rng),
                    ConstructionError);
}

TEST_CASE("follow-up with t = u + 1 fails loudly on a forced conflict") {
    const SchemeParams params{3, 5, FieldElement{3, kM7}};
    const std::vector<Polynomial> priors{Polynomial{kM7, {3, 0, 3}}};
    ScriptedRandomSource rng{{}};
    CHECK_THROWS_AS(construct_followup(params, reference_crossover(), priors, rng),
                    ConstructionError);
}

TEST_CASE("follow-up rejects u >= t") {
    const SchemeParams params{2, 5, FieldElement{3, kM7}};
    SeededRandomSource rng{1};
    CHECK_THROWS_AS(construct_followup(params, reference_crossover(), {}, rng),
                    ValidationError);
}

TEST_CASE("distribution of the reference collaboration") {
    const CollaborationPlan plan = reference_plan();
    const std::vector<Polynomial> polys{Polynomial{kM7, {1, 3, 2}},
                                        Polynomial{kM7, {3, 5, 6, 6}}};
    const auto ledger = distribute(plan, polys, reference_crossover());

    REQUIRE(ledger.size() == 2 + 3 + 4);

    CHECK(ledger[0] == LedgerEntry{"common:1", FieldElement{1, kM7}, FieldElement{6, kM7},
                                   {"scheme-1", "scheme-2"}});
    CHECK(ledger[1] == LedgerEntry{"common:2", FieldElement{2, kM7}, FieldElement{1, kM7},
                                   {"scheme-1", "scheme-2"}});

    const std::vector<std::pair<std::uint64_t, std::uint64_t>> s1{{3, 0}, {4, 3}, {5, 3}};
    for (std::size_t i = 0; i < s1.size(); ++i) {
        CHECK(ledger[2 + i] == LedgerEntry{"scheme-1:" + std::to_string(s1[i].first),
                                           FieldElement{s1[i].first, kM7},
                                           FieldElement{s1[i].second, kM7},
                                           {"scheme-1"}});
    }
    const std::vector<std::pair<std::uint64_t, std::uint64_t>> s2{
        {3, 3}, {4, 6}, {5, 4}, {6, 5}};
    for (std::size_t i = 0; i < s2.size(); ++i) {
        CHECK(ledger[5 + i] == LedgerEntry{"scheme-2:" + std::to_string(s2[i].first),
                                           FieldElement{s2[i].first, kM7},
                                           FieldElement{s2[i].second, kM7},
                                           {"scheme-2"}});
    }
}

TEST_CASE("distribution skips crossover positions, not matching values") {
    // Non-common positions are the smallest free ones even when some
    // curve value coincides with a crossover y.
    const SchemeParams a{3, 5, FieldElement{1, kM7}, "a"};
    const SchemeParams b{4, 6, FieldElement{3, kM7}, "b"};
    CollaborationPlan plan{{a, b}, 2, {2, 4}, kM7};

    const Polynomial f1{kM7, {1, 3, 2}};
    const CrossoverSet crossover = pick_crossover(f1, plan.crossover_x, "a");
    SeededRandomSource rng{11};
    const FollowupCurve f2 = construct_followup(b, crossover, {}, rng);
    const std::vector<Polynomial> polys{f1, f2.poly};
    const auto ledger = distribute(plan, polys, crossover);

    std::vector<std::uint64_t> scheme_a_xs;
    for (const auto& entry : ledger) {
        if (entry.schemes == std::vector<std::string>{"a"})
            scheme_a_xs.push_back(entry.x.value());
    }
    CHECK(scheme_a_xs == std::vector<std::uint64_t>{1, 3, 5});
}

TEST_CASE("distribution refuses curves that miss a crossover point") {
    const CollaborationPlan plan = reference_plan();
    // 1 + x + x^2 + x^3 takes value 4 at x = 1, not the required 6.
    const std::vector<Polynomial> polys{Polynomial{kM7, {1, 3, 2}},
                                        Polynomial{kM7, {1, 1, 1, 1}}};
    CHECK_THROWS_AS(distribute(plan, polys, reference_crossover()), ValidationError);
}

TEST_CASE("building the reference collaboration with scripted randomness") {
    ScriptedRandomSource rng{{3, 2, 3}};
    const CollaborationResult result = build_collaboration(reference_plan(), rng);

    REQUIRE(result.polynomials.size() == 2);
    CHECK(result.polynomials[0] == Polynomial{kM7, {1, 3, 2}});
    CHECK(result.polynomials[1] == Polynomial{kM7, {3, 5, 6, 6}});
    CHECK(result.retry_counts == std::vector<std::uint32_t>{0, 0});
    CHECK(result.ledger.size() == 9);
}

TEST_CASE("three schemes agree on every crossover point") {
    CollaborationPlan plan{{SchemeParams{3, 5, FieldElement{1, kM7}},
                            SchemeParams{3, 5, FieldElement{3, kM7}, "scheme-2b"},
                            SchemeParams{4, 6, FieldElement{5, kM7}, "scheme-3"}},
                           2,
                           {},
                           kM7};
    SeededRandomSource rng{2024};
    const CollaborationResult result = build_collaboration(plan, rng);

    REQUIRE(result.polynomials.size() == 3);
    for (std::uint64_t x : {1ULL, 2ULL}) {
        const FieldElement fx{x, kM7};
        const FieldElement y0 = result.polynomials[0].eval(fx);
        CHECK(result.polynomials[1].eval(fx) == y0);
        CHECK(result.polynomials[2].eval(fx) == y0);
    }
    for (std::size_t j = 0; j < 3; ++j) {
        CHECK(result.polynomials[j].constant_term() == plan.schemes[j].secret());
        CHECK_FALSE(result.polynomials[j].top_coefficient().is_zero());
    }
    // No two curves are the same function.
    CHECK_FALSE(same_function(result.polynomials[0], result.polynomials[1]));
    CHECK_FALSE(same_function(result.polynomials[0], result.polynomials[2]));
    CHECK_FALSE(same_function(result.polynomials[1], result.polynomials[2]));
}

TEST_CASE("u = 0 builds independent schemes with disjoint ledgers") {
    CollaborationPlan plan{{SchemeParams{2, 3, FieldElement{1, kM7}},
                            SchemeParams{3, 4, FieldElement{2, kM7}}},
                           0,
                           {},
                           kM7};
    SeededRandomSource rng{9};
    const CollaborationResult result = build_collaboration(plan, rng);
    CHECK(result.ledger.size() == 3 + 4);
    for (const auto& entry : result.ledger) {
        CHECK(entry.schemes.size() == 1);
        CHECK(entry.participant.find("common") == std::string::npos);
    }
}

TEST_CASE("builds are reproducible seed for seed") {
    CollaborationPlan plan{{SchemeParams{3, 6, FieldElement{4, PrimeModulus{11}}},
                            SchemeParams{4, 7, FieldElement{9, PrimeModulus{11}}, "two"}},
                           2,
                           {},
                           PrimeModulus{11}};
    SeededRandomSource rng_a{31337}, rng_b{31337};
    const CollaborationResult a = build_collaboration(plan, rng_a);
    const CollaborationResult b = build_collaboration(plan, rng_b);
    CHECK(a.polynomials == b.polynomials);
    CHECK(a.retry_counts == b.retry_counts);
    REQUIRE(a.ledger.size() == b.ledger.size());
    for (std::size_t i = 0; i < a.ledger.size(); ++i) CHECK(a.ledger[i] == b.ledger[i]);
}

TEST_CASE("one ledger share per participant reconstructs every scheme it belongs to") {
    ScriptedRandomSource rng{{3, 2, 3}};
    const CollaborationPlan plan = reference_plan();
    const CollaborationResult result = build_collaboration(plan, rng);
    const std::vector<std::string> labels = scheme_labels(plan);

    for (std::size_t j = 0; j < plan.schemes.size(); ++j) {
        const std::string& label = labels[j];
        std::vector<Share> members;
        for (const auto& entry : result.ledger) {
            if (std::find(entry.schemes.begin(), entry.schemes.end(), label) !=
                entry.schemes.end()) {
                members.emplace_back(entry.x, entry.y);
            }
        }
        REQUIRE(members.size() == plan.schemes[j].n());

        // Every t-subset, mixing common and non-common holders freely.
        const std::uint32_t t = plan.schemes[j].t();
        std::vector<std::size_t> pick(t);
        const auto walk = [&](auto&& self, std::size_t idx, std::size_t start) -> void {
            if (idx == t) {
                std::vector<Share> chosen;
                for (std::size_t i : pick) chosen.push_back(members[i]);
                CHECK(reconstruct(plan.schemes[j], chosen) == plan.schemes[j].secret());
                return;
            }
            for (std::size_t v = start; v < members.size(); ++v) {
                pick[idx] = v;
                self(self, idx + 1, v + 1);
            }
        };
        walk(walk, 0, 0);
    }
}

TEST_CASE("the crossover shares alone keep both reference secrets hidden") {
    ScriptedRandomSource rng{{3, 2, 3}};
    const CollaborationResult result = build_collaboration(reference_plan(), rng);

    std::vector<Share> common;
    for (const auto& entry : result.ledger) {
        if (entry.schemes.size() == 2) common.emplace_back(entry.x, entry.y);
    }
    REQUIRE(common.size() == 2);

    for (const SchemeParams& params : reference_plan().schemes) {
        const auto counts = secrecy_oracle(params, common);
        for (std::uint64_t c : counts) CHECK(c == counts.front());
        CHECK(counts.front() > 0);
    }
}

TEST_CASE("conflict probability") {
    const ConflictProbability a = conflict_probability(kM7, 4, 2);
    CHECK(a.str() == "1/7");
    CHECK(a.denominator() == 7);

    const ConflictProbability b = conflict_probability(kM7, 3, 2);
    CHECK(b.exponent == 0);
    CHECK(b.str() == "1");
    CHECK(b.denominator() == 1);

    const ConflictProbability c = conflict_probability(PrimeModulus{101}, 6, 2);
    CHECK(c.str() == "1/1030301");
    CHECK(c.approx() == doctest::Approx(1.0 / 1030301.0));

    CHECK_THROWS_AS(conflict_probability(kM7, 2, 2), ValidationError);
    CHECK_THROWS_AS(conflict_probability(kM7, 2, 3), ValidationError);
}

TEST_CASE("point subset identity check") {
    const std::vector<Point> a{pt(1, 6), pt(2, 1)};
    const std::vector<Point> same_reordered{pt(2, 1), pt(1, 6)};
    const std::vector<Point> different{pt(1, 6), pt(2, 2)};
    const std::vector<Point> shorter{pt(1, 6)};

    CHECK(same_point_set(a, same_reordered));
    CHECK_FALSE(same_point_set(a, different));
    CHECK_FALSE(same_point_set(a, shorter));
    CHECK(same_point_set(std::vector<Point>{}, std::vector<Point>{}));
}

TEST_CASE("scheme labels default by position") {
    CollaborationPlan plan = reference_plan();
    plan.schemes = {SchemeParams{3, 5, FieldElement{1, kM7}},
                    SchemeParams{4, 6, FieldElement{3, kM7}, "named"}};
    CHECK(scheme_labels(plan) == std::vector<std::string>{"scheme-1", "named"});
}
