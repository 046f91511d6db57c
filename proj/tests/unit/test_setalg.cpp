#include "oracle.hpp"

#include "ultraharmonic/corpus.hpp"
#include "ultraharmonic/error.hpp"
#include "ultraharmonic/setexpr.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace ultraharmonic;

namespace {

using V = std::vector<Nat>;

std::filesystem::path temp_file(const std::string& name, const std::string& content)
{
    auto p = std::filesystem::temp_directory_path() / ("uh-test-" + name);
    std::ofstream(p, std::ios::binary) << content;
    return p;
}

}  // namespace

TEST_SUITE("setalg") {

TEST_CASE("member")
{
    CHECK(member(SetExpr::ap(3, 4), 11));
    CHECK_FALSE(member(SetExpr::ap(3, 4), 12));
    CHECK(member(SetExpr::primes(), 97));
    CHECK(oracle::trial_prime(97));
    CHECK(member(SetExpr::left_shifted(SetExpr::finite({1, 4, 9}), 4), 5));
    CHECK_FALSE(member(SetExpr::naturals(), 0));
    CHECK(member(SetExpr::powers(3), 81));
    CHECK_FALSE(member(SetExpr::powers(3), 1));
    CHECK(member(SetExpr::kth_powers(3), 1));
    CHECK(member(SetExpr::kth_powers(3), 27));
}

TEST_CASE("primality agrees with trial division")
{
    for (Nat n = 0; n < 20000; ++n) REQUIRE(member(SetExpr::primes(), n) == oracle::trial_prime(n));
    // strong pseudoprimes to small bases
    for (Nat n : {2047ULL, 3215031751ULL, 4759123141ULL, 1122004669633ULL, 3825123056546413051ULL})
        CHECK_FALSE(primes::is_prime(n));
    CHECK(primes::is_prime(18446744073709551557ULL));
    CHECK(primes::is_prime(4294967291ULL));
}

TEST_CASE("enumerate")
{
    CHECK(enumerate(SetExpr::ap(2, 3), 12) == V{2, 5, 8, 11});
    CHECK(enumerate(SetExpr::intersection_of({SetExpr::ap(1, 2), SetExpr::ap(1, 3)}), 20) == V{1, 7, 13, 19});
    CHECK(enumerate(SetExpr::sumset(SetExpr::finite({1, 2}), SetExpr::finite({10, 20})), 100) == V{11, 12, 21, 22});
    CHECK(enumerate(SetExpr::powers(2), 1) == V{});
    CHECK(take(SetExpr::primes(), 5, 1000) == V{2, 3, 5, 7, 11});
    CHECK(take(SetExpr::primes(), 5, 6) == V{2, 3, 5});
}

TEST_CASE("sieve enumeration matches the oracle")
{
    auto want = oracle::members(SetExpr::primes(), 300000);
    CHECK(enumerate(SetExpr::primes(), 300000) == want);
    primes::SegmentedSieve s(1000, 300000);
    V got;
    while (auto p = s.next()) got.push_back(*p);
    V tail(std::lower_bound(want.begin(), want.end(), 1000), want.end());
    CHECK(got == tail);
}

TEST_CASE("prime table: build, next_prime, cache file")
{
    auto t = primes::PrimeTable::build(10000);
    auto want = oracle::members(SetExpr::primes(), 10000);
    V got;
    for (auto p = t.next_prime(1); p; p = t.next_prime(*p + 1)) got.push_back(*p);
    CHECK(got == want);
    for (Nat n = 0; n <= 10000; ++n) REQUIRE(t.is_prime(n) == oracle::trial_prime(n));

    auto dir = std::filesystem::temp_directory_path() / "uh-test-cache";
    std::filesystem::remove_all(dir);
    auto built = primes::load_or_build(dir, 5000);
    CHECK(std::filesystem::exists(dir / primes::cache_file_name(5000)));
    CHECK(primes::PrimeTable::load(dir / primes::cache_file_name(5000), 5000).has_value());
    // keyed by limit: a table for another limit is rejected
    CHECK_FALSE(primes::PrimeTable::load(dir / primes::cache_file_name(5000), 6000).has_value());
    auto again = primes::load_or_build(dir, 5000);
    CHECK(again.next_prime(4990) == built.next_prime(4990));
    std::filesystem::remove_all(dir);
}

TEST_CASE("shift and left shift")
{
    CHECK(enumerate(shift(SetExpr::naturals(), 5), 10) == enumerate(SetExpr::ap(6, 1), 10));
    CHECK(simplify(shift(SetExpr::naturals(), 5)) == SetExpr::ap(6, 1));
    CHECK(simplify(shift(SetExpr::finite({2, 7}), 3)) == SetExpr::finite({5, 10}));
    // primes <= 20 plus 10, 27 = 17 + 10 included
    CHECK(enumerate(shift(SetExpr::primes(), 10), 30) == V{12, 13, 15, 17, 21, 23, 27, 29});
    CHECK(enumerate(shift(SetExpr::primes(), 10), 30) == oracle::members(shift(SetExpr::primes(), 10), 30));
    CHECK(simplify(left_shift(SetExpr::ap(5, 3), 2)) == SetExpr::ap(3, 3));
    CHECK(simplify(left_shift(SetExpr::finite({1, 4, 9}), 4)) == SetExpr::finite({5}));
    CHECK(enumerate(left_shift(SetExpr::primes(), 1), 10) == V{1, 2, 4, 6, 10});
    // AP whose first terms fall off the left edge
    CHECK(simplify(left_shift(SetExpr::ap(2, 3), 7)) == SetExpr::ap(1, 3));
}

TEST_CASE("simplify")
{
    CHECK(simplify(SetExpr::intersection_of({SetExpr::ap(1, 2), SetExpr::ap(2, 3)})) == SetExpr::ap(5, 6));
    CHECK(simplify(SetExpr::intersection_of({SetExpr::ap(1, 2), SetExpr::ap(2, 2)})).is_empty_finite());
    CHECK(simplify(SetExpr::shifted(SetExpr::ap(2, 3), 4)) == SetExpr::ap(6, 3));
    auto nested = SetExpr::union_of({SetExpr::union_of({SetExpr::ap(1, 4), SetExpr::empty()}), SetExpr::powers(2)});
    CHECK(simplify(nested).kind() == SetExpr::Kind::Union);
    CHECK(simplify(nested).children().size() == 2);
    CHECK(simplify(SetExpr::intersection_of({SetExpr::primes(), SetExpr::ap(4, 6)})) == SetExpr::empty());
    CHECK(simplify(SetExpr::intersection_of({SetExpr::primes(), SetExpr::ap(2, 6)})) == SetExpr::finite({2}));
    // numerical semigroup: 3a + 5b over a, b >= 1
    auto s = simplify(SetExpr::sumset(SetExpr::ap(3, 3), SetExpr::ap(5, 5)));
    CHECK(enumerate(s, 200) == oracle::members(SetExpr::sumset(SetExpr::ap(3, 3), SetExpr::ap(5, 5)), 200));
    // irreducible nodes come back unchanged
    auto irr = SetExpr::intersection_of({SetExpr::primes(), SetExpr::ap(1, 4)});
    CHECK(simplify(irr) == irr);
}

TEST_CASE("contains")
{
    auto yes = contains(SetExpr::ap(1, 2), SetExpr::ap(3, 6), 100);
    CHECK(yes.verdict == Truth::Yes);
    CHECK(yes.derivation.has_value());
    auto no = contains(SetExpr::ap(2, 4), SetExpr::ap(4, 6), 100);
    CHECK(no.verdict == Truth::No);
    CHECK(no.witness == Nat{4});
    auto p = contains(SetExpr::primes(), SetExpr::ap(3, 2), 100);
    CHECK(p.verdict == Truth::No);
    CHECK(p.witness == Nat{9});
    CHECK(contains(SetExpr::primes(), SetExpr::finite({2, 3, 5}), 100).verdict == Truth::Yes);
    CHECK(contains(SetExpr::union_of({SetExpr::powers(2), SetExpr::ap(1, 3)}), SetExpr::ap(4, 6), 100).verdict ==
          Truth::Yes);
    // b beyond the horizon only: Unknown, never No
    CHECK(contains(SetExpr::finite({1}), SetExpr::finite({1, 500}), 100).verdict == Truth::Unknown);
}

TEST_CASE("parse")
{
    CHECK(parse("ap(3,4) | primes") == SetExpr::union_of({SetExpr::ap(3, 4), SetExpr::primes()}));
    CHECK(parse("(ap(1,2) & ap(2,3)) - 1") ==
          SetExpr::left_shifted(SetExpr::intersection_of({SetExpr::ap(1, 2), SetExpr::ap(2, 3)}), 1));
    CHECK(parse("pow(2) \\ finite{4,16}") == SetExpr::difference(SetExpr::powers(2), SetExpr::finite({4, 16})));
    CHECK(parse("N") == SetExpr::naturals());
    CHECK(parse(" sumset( primes , kth(2) )+3 ") ==
          SetExpr::shifted(SetExpr::sumset(SetExpr::primes(), SetExpr::kth_powers(2)), 3));
    // & binds tighter than |
    CHECK(parse("N | primes & pow(2)") ==
          SetExpr::union_of({SetExpr::naturals(), SetExpr::intersection_of({SetExpr::primes(), SetExpr::powers(2)})}));
}

TEST_CASE("parse errors")
{
    CHECK_THROWS_AS(parse("finite{}"), SyntaxError);
    CHECK_THROWS_AS(parse("ap(1,"), SyntaxError);
    CHECK_THROWS_AS(parse("foo"), SyntaxError);
    CHECK_THROWS_AS(parse("N |"), SyntaxError);
    CHECK_THROWS_AS(parse("N )"), SyntaxError);
    CHECK_THROWS_AS(parse("ap(0,1)"), DomainError);
    CHECK_THROWS_AS(parse("finite{-3}"), DomainError);
    CHECK_THROWS_AS(parse("pow(1)"), DomainError);
    CHECK_THROWS_AS(parse("kth(1)"), DomainError);
    CHECK_THROWS_AS(parse("ap(99999999999999999999,1)"), DomainError);
    try {
        parse("ap(3,4) | bogus");
        FAIL("expected a syntax error");
    } catch (const SyntaxError& e) {
        CHECK(e.position == 10);
    }
}

TEST_CASE("constructors reject bad input")
{
    CHECK_THROWS_AS(SetExpr::finite({0, 1}), DomainError);
    CHECK_THROWS_AS(SetExpr::ap(0, 1), DomainError);
    CHECK_THROWS_AS(SetExpr::ap(1, 0), DomainError);
    CHECK_THROWS_AS(SetExpr::powers(1), DomainError);
    CHECK_THROWS_AS(SetExpr::kth_powers(1), DomainError);
    CHECK(SetExpr::finite({5, 1, 5, 3}).values() == V{1, 3, 5});
}

TEST_CASE("set files")
{
    auto good = temp_file("good", "2\r\n3\r\n10\n");
    auto e = SetExpr::from_file(good.string());
    CHECK(enumerate(e, 100) == V{2, 3, 10});
    CHECK(parse("file(\"" + good.string() + "\")") == e);
    CHECK_THROWS_AS(SetExpr::from_file(temp_file("unsorted", "3\n2\n").string()), InputError);
    CHECK_THROWS_AS(SetExpr::from_file(temp_file("dup", "3\n3\n").string()), InputError);
    CHECK_THROWS_AS(SetExpr::from_file(temp_file("zero", "0\n1\n").string()), InputError);
    CHECK_THROWS_AS(SetExpr::from_file(temp_file("junk", "1\nx\n").string()), InputError);
    CHECK_THROWS_AS(SetExpr::from_file("/nonexistent/set.txt"), InputError);
}

TEST_CASE("property: enumerate equals the brute-force oracle and member")
{
    Corpus c(1);
    constexpr Nat h = 600;
    for (int t = 0; t < 1200; ++t) {
        SetExpr e = c.expression(3);
        auto want = oracle::members(e, h);
        INFO(print(e));
        REQUIRE(enumerate(e, h) == want);
        for (Nat n = 1; n <= h; ++n) REQUIRE(member(e, n) == std::binary_search(want.begin(), want.end(), n));
    }
}

TEST_CASE("property: simplify preserves semantics")
{
    Corpus c(2);
    for (int t = 0; t < 300; ++t) {
        SetExpr e = c.expression(3);
        INFO(print(e));
        Nat h = t < 30 ? 100000 : 3000;
        REQUIRE(enumerate(e, h) == enumerate(simplify(e), h));
    }
}

TEST_CASE("property: left shift then shift recovers the tail")
{
    Corpus c(3);
    for (int t = 0; t < 300; ++t) {
        SetExpr e = c.expression(2);
        Nat x = c.uniform(1, 40);
        SetExpr back = shift(left_shift(e, x), x);
        INFO(print(e), " x=", x);
        for (Nat n = x + 1; n <= 400; ++n) REQUIRE(member(back, n) == member(e, n));
    }
}

TEST_CASE("property: contains is sound")
{
    Corpus c(4);
    constexpr Nat h = 2000;
    int yes = 0, no = 0;
    for (int t = 0; t < 600; ++t) {
        SetExpr a = c.expression(2);
        SetExpr b = t % 2 ? c.expression(2) : SetExpr::intersection_of({a, c.primitive()});
        auto r = contains(a, b, h);
        INFO(print(a), " ⊇ ", print(b));
        if (r.verdict == Truth::Yes) {
            ++yes;
            auto ab = oracle::bits(a, h);
            for (Nat n : oracle::members(b, h)) REQUIRE(ab[n]);
        } else if (r.verdict == Truth::No) {
            ++no;
            REQUIRE(r.witness.has_value());
            REQUIRE(*r.witness <= h);
            REQUIRE(oracle::bits(b, h)[*r.witness]);
            REQUIRE_FALSE(oracle::bits(a, h)[*r.witness]);
        }
    }
    CHECK(yes > 50);
    CHECK(no > 50);
}

TEST_CASE("property: parse(print(e)) round-trips")
{
    Corpus c(5);
    for (int t = 0; t < 500; ++t) {
        SetExpr e = c.expression(4);
        INFO(print(e));
        SetExpr back = parse(print(e));
        REQUIRE(simplify(back) == simplify(e));
        REQUIRE(print(back) == print(e));
    }
    CHECK(print(parse(print(SetExpr::empty()))) == print(SetExpr::empty()));
    CHECK(simplify(parse(print(SetExpr::empty()))).is_empty_finite());
}

TEST_CASE("provable disjointness is sound")
{
    Corpus c(6);
    for (int t = 0; t < 400; ++t) {
        SetExpr a = c.expression(2);
        SetExpr b = c.expression(2);
        if (!provably_disjoint(a, b)) continue;
        auto ab = oracle::bits(a, 1000);
        for (Nat n : oracle::members(b, 1000)) REQUIRE_FALSE(ab[n]);
    }
    CHECK(provably_disjoint(SetExpr::ap(1, 2), SetExpr::ap(2, 2)));
}

}  // TEST_SUITE
