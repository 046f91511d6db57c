#include "oracle.hpp"

#include "ultraharmonic/corpus.hpp"
#include "ultraharmonic/error.hpp"
#include "ultraharmonic/harmonic.hpp"
#include "ultraharmonic/syndetic.hpp"

#include <doctest.h>

using namespace ultraharmonic;

namespace {

using V = std::vector<Nat>;

Truth ps(const char* text) { return classify_psyndetic(parse(text)).value; }

// Longest run of consecutive elements with all gaps <= b, by direct scan.
std::size_t brute_run(const std::vector<Nat>& xs, Nat b)
{
    std::size_t best = xs.empty() ? 0 : 1, run = 1;
    for (std::size_t i = 1; i < xs.size(); ++i) {
        run = xs[i] - xs[i - 1] <= b ? run + 1 : 1;
        best = std::max(best, run);
    }
    return best;
}

}  // namespace

TEST_SUITE("syndetic") {

TEST_CASE("gap profile examples")
{
    auto ap = gap_profile(SetExpr::ap(2, 3), 20);
    CHECK(ap.gaps == V{3, 3, 3, 3, 3, 3});
    CHECK(ap.max_gap == 3);
    CHECK(ap.profile.at(3) == 7);
    CHECK(ap.longest_run(2) == 1);
    CHECK(ap.longest_run(100) == 7);

    auto p = gap_profile(SetExpr::primes(), 100);
    CHECK(p.max_gap == 8);
    auto it = std::find(p.gaps.begin(), p.gaps.end(), 8);
    CHECK(oracle::members(SetExpr::primes(), 100)[static_cast<std::size_t>(it - p.gaps.begin())] == 89);

    auto pw = gap_profile(SetExpr::powers(2), 1024);
    CHECK(pw.gaps == V{2, 4, 8, 16, 32, 64, 128, 256, 512});
    CHECK(pw.profile.at(2) == 2);
    CHECK(pw.longest_run(512) == 10);

    CHECK_THROWS_AS(gap_profile(SetExpr::finite({5}), 100), InsufficientDataError);
    CHECK_THROWS_AS(gap_profile(SetExpr::powers(10), 50), InsufficientDataError);
}

TEST_CASE("property: gap profile matches a direct scan")
{
    Corpus corpus(23);
    int checked = 0;
    for (int i = 0; i < 300; ++i) {
        SetExpr e = corpus.expression(2);
        auto xs = oracle::members(e, 3000);
        if (xs.size() < 2) continue;
        ++checked;
        CAPTURE(print(e));
        auto g = gap_profile(e, 3000);
        REQUIRE(g.elements == xs.size());
        CHECK(g.max_gap == *std::max_element(g.gaps.begin(), g.gaps.end()));
        std::size_t prev = 0;
        for (auto [b, run] : g.profile) {
            CHECK(run == brute_run(xs, b));
            CHECK(run >= prev);
            prev = run;
        }
        CHECK(g.profile.at(g.max_gap) == xs.size());
        for (Nat b : {1, 2, 5, 17}) CHECK(g.longest_run(b) == brute_run(xs, b));
    }
    CHECK(checked > 150);
}

TEST_CASE("classify_psyndetic examples")
{
    auto ap = classify_psyndetic(SetExpr::ap(4, 7));
    CHECK(ap.value == Truth::Yes);
    CHECK(ap.bound == 7);
    auto p = classify_psyndetic(SetExpr::primes());
    CHECK(p.value == Truth::No);
    REQUIRE(p.certificate);
    CHECK(validate_certificate(*p.certificate));
    CHECK(ps("primes | ap(1,10)") == Truth::Yes);
    CHECK(ps("pow(2)") == Truth::No);
    CHECK(ps("kth(3)") == Truth::No);
    CHECK(ps("finite{1,2,3,4}") == Truth::No);
    CHECK(ps("primes | pow(3) | finite{8}") == Truth::No);
    CHECK(ps("primes + 7") == Truth::No);
    CHECK(ps("ap(3,5) - 2") == Truth::Yes);
    CHECK(ps("sumset(pow(2), ap(1,4))") == Truth::Yes);
    CHECK(ps("ap(1,3) \\ finite{4,7}") == Truth::Yes);
    CHECK(ps("pow(2) & ap(1,3)") == Truth::No);
    CHECK(ps("primes & ap(1,4)") == Truth::No);

    auto open = classify_psyndetic(parse("sumset(primes, pow(2))"));
    CHECK(open.value == Truth::Unknown);
    REQUIRE(open.profile);
    CHECK(open.profile->elements > 100);
}

TEST_CASE("prime gap certificates")
{
    auto c3 = prime_gap_certificate(3);
    CHECK(c3.start == 26);
    CHECK(c3.divisors == V{2, 3, 4});
    auto c5 = prime_gap_certificate(5);
    CHECK(c5.start == 722);
    CHECK(c5.divisors == V{2, 3, 4, 5, 6});
    auto c10 = prime_gap_certificate(10);
    CHECK(c10.start == 39916802);
    for (Nat i = 0; i < 10; ++i) CHECK_FALSE(oracle::trial_prime(39916802 + i));
    for (Nat b = 1; b <= kMaxCertificateBound; ++b) {
        auto c = prime_gap_certificate(b);
        CHECK(validate_certificate(c));
        for (Nat i = 0; i < b; ++i) {
            mpz_class pos = c.start + i;
            CHECK(mpz_divisible_ui_p(pos.get_mpz_t(), c.divisors[i]));
        }
    }
    auto bad = c5;
    bad.divisors[2] = 7;
    CHECK_FALSE(validate_certificate(bad));
    bad = c5;
    bad.length = 4;
    CHECK_FALSE(validate_certificate(bad));
    CHECK_THROWS_AS(prime_gap_certificate(0), DomainError);
    CHECK_THROWS_AS(prime_gap_certificate(21), ConfigError);
}

TEST_CASE("property: piecewise syndetic implies harmonic, and upward closure")
{
    Corpus corpus(29);
    int yes = 0;
    for (int i = 0; i < 400; ++i) {
        SetExpr e = corpus.expression(2);
        auto v = classify_psyndetic(e, {false, 1000, 3});
        if (v.value != Truth::Yes) continue;
        ++yes;
        CAPTURE(print(e));
        CHECK(classify(e).value == Truth::Yes);
        // supersets built around e
        SetExpr other = corpus.expression(1);
        CHECK(classify_psyndetic(SetExpr::union_of({other, e})).value == Truth::Yes);
        CHECK(classify_psyndetic(SetExpr::sumset(e, SetExpr::finite({corpus.uniform(1, 50)}))).value == Truth::Yes);
    }
    CHECK(yes > 30);

    // supersets of progressions found through contains
    for (Nat d = 1; d <= 12; ++d)
        for (Nat m = 1; m <= 4; ++m) {
            SetExpr small = SetExpr::ap(d, d * m);
            SetExpr big = SetExpr::intersection_of({SetExpr::ap(1, 1), SetExpr::ap(d, d)});
            REQUIRE(prove_contains(big, small));
            CHECK(classify_psyndetic(small).value == Truth::Yes);
            CHECK(classify_psyndetic(big).value == Truth::Yes);
        }
}

TEST_CASE("No verdicts have windows that outgrow any bound")
{
    // sampled at desk scale: the longest run with gaps <= 6 stays short
    for (const char* text : {"pow(2)", "kth(2)", "primes + 7"}) {
        CAPTURE(text);
        REQUIRE(ps(text) == Truth::No);
    }
    auto sq = gap_profile(SetExpr::kth_powers(2), 1'000'000);
    CHECK(sq.longest_run(6) == 3);  // 1, 4, 9
}

}  // TEST_SUITE
