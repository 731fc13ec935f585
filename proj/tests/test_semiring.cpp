#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "wamin/semiring.hpp"

using namespace wamin;

namespace {

template <Semiring S>
void check_axioms(const std::vector<typename S::Value>& pool, std::size_t triples) {
    std::mt19937_64 rng(42);
    auto pick = [&]() { return pool[rng() % pool.size()]; };
    for (std::size_t i = 0; i < triples; ++i) {
        auto a = pick(), b = pick(), c = pick();
        CHECK(S::eq(S::add(a, b), S::add(b, a)));
        CHECK(S::eq(S::add(S::add(a, b), c), S::add(a, S::add(b, c))));
        CHECK(S::eq(S::add(a, S::zero()), a));
        CHECK(S::eq(S::mul(S::mul(a, b), c), S::mul(a, S::mul(b, c))));
        CHECK(S::eq(S::mul(a, S::one()), a));
        CHECK(S::eq(S::mul(S::one(), a), a));
        CHECK(S::eq(S::mul(a, S::add(b, c)), S::add(S::mul(a, b), S::mul(a, c))));
        CHECK(S::eq(S::mul(S::add(a, b), c), S::add(S::mul(a, c), S::mul(b, c))));
        CHECK(S::eq(S::mul(S::zero(), a), S::zero()));
        CHECK(S::eq(S::mul(a, S::zero()), S::zero()));
    }
}

template <Semiring S>
void check_hash_consistency(const std::vector<typename S::Value>& pool) {
    for (const auto& x : pool)
        for (const auto& y : pool)
            if (S::eq(x, y)) CHECK(S::hash(x) == S::hash(y));
}

std::vector<Integers::Value> integer_pool() {
    std::vector<Integers::Value> pool = {0, 1, -1, 2, -3, 7, 1000000007};
    Integers::Value big = 1;
    for (int i = 0; i < 5; ++i) {
        big *= 1000000000;
        pool.push_back(big);
        pool.push_back(-big + 3);
    }
    std::mt19937_64 rng(7);
    for (int i = 0; i < 40; ++i)
        pool.push_back(Integers::Value(static_cast<long long>(rng() % 2001) - 1000));
    return pool;
}

std::vector<MinPlus::Value> minplus_pool() {
    std::vector<MinPlus::Value> pool = {MinPlus::infinity, 0, 1, -1, 3, 5, 7, -100, 100};
    std::mt19937_64 rng(7);
    for (int i = 0; i < 40; ++i)
        pool.push_back(static_cast<long long>(rng() % 201) - 100);
    return pool;
}

}  // namespace

TEST_CASE("semiring axioms hold on sampled triples") {
    check_axioms<Boolean>({false, true}, 1000);
    check_axioms<Integers>(integer_pool(), 1000);
    check_axioms<MinPlus>(minplus_pool(), 1000);
}

TEST_CASE("hash agrees with equality") {
    check_hash_consistency<Boolean>({false, true});
    check_hash_consistency<Integers>(integer_pool());
    check_hash_consistency<MinPlus>(minplus_pool());
    CHECK(Integers::hash(Integers::Value("123456789012345678901234567890")) ==
          Integers::hash(Integers::Value("123456789012345678901234567890")));
}

TEST_CASE("addition examples") {
    CHECK(Integers::eq(Integers::add(-1, 2), 1));
    CHECK(Integers::eq(Integers::add(Integers::zero(), 5), 5));
    CHECK(Boolean::eq(Boolean::add(Boolean::zero(), true), true));
    CHECK(MinPlus::eq(MinPlus::add(MinPlus::zero(), 4), 4));
    CHECK(MinPlus::eq(MinPlus::add(3, 5), 3));
}

TEST_CASE("is_zero") {
    CHECK(is_zero<Integers>(0));
    CHECK_FALSE(is_zero<Integers>(-1));
    CHECK(is_zero<MinPlus>(MinPlus::infinity));
    CHECK_FALSE(is_zero<MinPlus>(0));
    CHECK(is_zero<Boolean>(false));
}

TEST_CASE("cancellation capability flags") {
    CHECK(Integers::additively_cancellative);
    CHECK_FALSE(Boolean::additively_cancellative);
    CHECK_FALSE(MinPlus::additively_cancellative);
}

TEST_CASE("integers: no cancellation counterexample on samples") {
    auto pool = integer_pool();
    std::mt19937_64 rng(3);
    for (int i = 0; i < 1000; ++i) {
        auto a = pool[rng() % pool.size()];
        auto b = pool[rng() % pool.size()];
        auto c = pool[rng() % pool.size()];
        if (Integers::eq(Integers::add(a, b), Integers::add(a, c))) CHECK(Integers::eq(b, c));
        CHECK(Integers::eq(Integers::add(a, b), Integers::add(a, b)));  // b == c case
    }
}

TEST_CASE("boolean: cancellation refuted by the exhaustive table") {
    bool found = false;
    for (bool a : {false, true})
        for (bool b : {false, true})
            for (bool c : {false, true})
                if (Boolean::eq(Boolean::add(a, b), Boolean::add(a, c)) && !Boolean::eq(b, c))
                    found = true;
    CHECK(found);
    // the stored counterexample: 1+1 = 1+0 but 1 != 0
    CHECK(Boolean::eq(Boolean::add(true, true), Boolean::add(true, false)));
    CHECK_FALSE(Boolean::eq(true, false));
}

TEST_CASE("min-plus: cancellation refuted over small triples") {
    bool found = false;
    for (long long a = 0; a <= 10 && !found; ++a)
        for (long long b = 0; b <= 10 && !found; ++b)
            for (long long c = 0; c <= 10 && !found; ++c)
                if (MinPlus::eq(MinPlus::add(a, b), MinPlus::add(a, c)) && !MinPlus::eq(b, c))
                    found = true;
    CHECK(found);
    // the stored counterexample: min(3,5) = min(3,7) but 5 != 7
    CHECK(MinPlus::eq(MinPlus::add(3, 5), MinPlus::add(3, 7)));
    CHECK_FALSE(MinPlus::eq(5, 7));
}
