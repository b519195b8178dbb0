#include <random>

#include <gtest/gtest.h>

#include "gaussprod/arith.hpp"
#include "oracle.hpp"

using namespace gaussprod;
using BigInt = boost::multiprecision::cpp_int;

TEST(Mulmod, SmallCases)
{
    EXPECT_EQ(mulmod(0, 5, 7), 0u);
    EXPECT_EQ(mulmod(3, 4, 7), 5u);
}

TEST(Mulmod, NearMaxOperandsMatchBigInt)
{
    std::mt19937_64 rng(1);
    const u64 moduli[] = {0xFFFFFFFFFFFFFFC5ull, 0xFFFFFFFFFFFFFFFFull, (u64{1} << 63) + 1, 0x100000001ull};
    for (u64 m : moduli) {
        for (int i = 0; i < 2000; ++i) {
            const u64 a = (i == 0) ? m - 1 : rng() % m;
            const u64 b = (i == 0) ? m - 1 : rng() % m;
            const BigInt ref = BigInt(a) * BigInt(b) % BigInt(m);
            ASSERT_EQ(BigInt(mulmod(a, b, m)), ref) << a << "*" << b << " mod " << m;
        }
    }
    const u64 m = 0xFFFFFFFFFFFFFFC5ull;
    EXPECT_EQ(BigInt(mulmod(0x7FFFFFFFFFFFFFFFull, m - 2, m)), BigInt(0x7FFFFFFFFFFFFFFFull) * (m - 2) % m);
}

TEST(Powmod, Examples)
{
    EXPECT_EQ(powmod(123, 0, 1000), 1u);
    EXPECT_EQ(powmod(0, 0, 2), 1u);
    EXPECT_EQ(powmod(2, 3, 7), 1u);
    EXPECT_EQ(powmod(5, 3, 7), 6u);
}

TEST(Powmod, ExponentsAddProperty)
{
    std::mt19937_64 rng(2);
    for (int i = 0; i < 5000; ++i) {
        const u64 m = 2 + rng() % (i < 2500 ? 1000000 : ~u64{0} - 2);
        const u64 a = rng() % m;
        const u64 e1 = rng() >> (rng() % 64), e2 = rng() >> (rng() % 64);
        if (e1 > ~e2) continue;
        ASSERT_EQ(powmod(a, e1 + e2, m), mulmod(powmod(a, e1, m), powmod(a, e2, m), m));
    }
}

TEST(Reduce, SignedValues)
{
    EXPECT_EQ(reduce(-12, 43), 31u);
    EXPECT_EQ(reduce(-43, 43), 0u);
    EXPECT_EQ(reduce(std::numeric_limits<i64>::min(), 7), static_cast<u64>(((std::numeric_limits<i64>::min() % 7) + 7) % 7));
}

TEST(IsPrime, MatchesTrialDivisionAndKnownHardCases)
{
    for (u64 n = 0; n < 20000; ++n) ASSERT_EQ(is_prime(n), oracle::is_prime(n)) << n;
    // strong pseudoprimes to several small bases
    EXPECT_FALSE(is_prime(3215031751ull));
    EXPECT_FALSE(is_prime(3825123056546413051ull));
    EXPECT_FALSE(is_prime(341550071728321ull));
    EXPECT_TRUE(is_prime(0xFFFFFFFFFFFFFFC5ull));
    EXPECT_FALSE(is_prime(0xFFFFFFFFFFFFFFFFull));
    EXPECT_TRUE(is_prime(1000000007ull));
    EXPECT_FALSE(is_prime(1000000007ull * 998244353ull));
}

TEST(Prime, RejectsComposites)
{
    EXPECT_THROW(Prime::of(15), precondition_error);
    EXPECT_THROW(Prime::odd(2), precondition_error);
    EXPECT_EQ(Prime::of(2).value(), 2u);
}

TEST(Legendre, Examples)
{
    for (u64 p : {3, 5, 7, 11, 13, 10007}) EXPECT_EQ(legendre(1, p), Symbol::plus_one);
    EXPECT_EQ(legendre(2, 7u), Symbol::plus_one);
    EXPECT_EQ(legendre(7, 7u), Symbol::zero);
    EXPECT_EQ(legendre(5, 7u), Symbol::minus_one);
    EXPECT_EQ(legendre(-12, 43u), Symbol::plus_one);
}

TEST(Legendre, ErrorsOnNonPrime)
{
    EXPECT_THROW(legendre(2, 9u), precondition_error);
    EXPECT_THROW(legendre(2, 2u), precondition_error);
}

TEST(Jacobi, Examples)
{
    for (long a : {0L, 1L, 5L, -3L, 1000L}) EXPECT_EQ(jacobi(a, 1), Symbol::plus_one);
    EXPECT_EQ(jacobi(5, 3), Symbol::minus_one);
    EXPECT_EQ(jacobi(2, 15), Symbol::plus_one);
    EXPECT_EQ(jacobi(3, 15), Symbol::zero);
    EXPECT_THROW(jacobi(3, 8), precondition_error);
}

TEST(Jacobi, MultiplicativeInModulus)
{
    std::mt19937_64 rng(3);
    const u64 odd_primes[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31};
    for (int i = 0; i < 2000; ++i) {
        const u64 p = odd_primes[rng() % 10], r = odd_primes[rng() % 10];
        const i64 a = static_cast<i64>(rng() % 100000) - 50000;
        ASSERT_EQ(jacobi(a, p * r), jacobi(a, p) * jacobi(a, r));
    }
}

// legendre (Euler) and jacobi (reciprocity) agree for every odd p < 10^4, a < p.
TEST(Symbols, LegendreEqualsJacobiBelow10k)
{
    for (u64 p : sieve_primes(10000)) {
        if (p == 2) continue;
        const Prime pp = Prime::of(p);
        for (u64 a = 0; a < p; ++a) ASSERT_EQ(legendre(a, pp), jacobi(a, p)) << a << "/" << p;
    }
}

TEST(Symbols, EulerCriterionValues)
{
    for (u64 p : sieve_primes(3000)) {
        if (p == 2) continue;
        for (u64 a = 1; a < p; ++a) {
            const u64 e = powmod(a, (p - 1) / 2, p);
            ASSERT_TRUE(e == 1 || e == p - 1);
        }
    }
}

TEST(QuadraticCharacter, MatchesSquareEnumeration)
{
    for (u64 p : {3u, 7u, 23u, 43u, 101u, 1009u}) {
        const QuadraticCharacter chi(Prime::of(p));
        for (u64 j = 0; j < p; ++j) ASSERT_EQ(chi(j), oracle::legendre(static_cast<long long>(j), p));
    }
}

TEST(QuadraticCharacter, AgreesWithEulerBelow10k)
{
    for (u64 p : sieve_primes(10000)) {
        if (p == 2) continue;
        const Prime pp = Prime::of(p);
        const QuadraticCharacter chi(pp);
        for (u64 a = 0; a < p; ++a) ASSERT_EQ(chi.symbol(a), legendre(a, pp));
    }
}

TEST(Factorize, Examples)
{
    EXPECT_EQ(factorize(1), std::vector<PrimePower>{});
    EXPECT_EQ(factorize(360), (std::vector<PrimePower>{{2, 3}, {3, 2}, {5, 1}}));
    const u64 big = 1000000007ull * 998244353ull;
    EXPECT_EQ(factorize(big), (std::vector<PrimePower>{{998244353ull, 1}, {1000000007ull, 1}}));
    u64 product = 1;
    for (auto [p, e] : factorize(0xFFFFFFFFFFFFFFC4ull))
        for (int i = 0; i < e; ++i) product *= p;
    EXPECT_EQ(product, 0xFFFFFFFFFFFFFFC4ull);
}

TEST(MultiplicativeOrder, Examples)
{
    EXPECT_EQ(multiplicative_order(1, 11u), 1u);
    EXPECT_EQ(multiplicative_order(2, 7u), 3u);
    EXPECT_EQ(multiplicative_order(3, 7u), 6u);
    EXPECT_THROW(multiplicative_order(14, 7u), precondition_error);
}

TEST(MultiplicativeOrder, MatchesIterationAndDividesGroupOrder)
{
    for (u64 p : {3u, 7u, 31u, 43u, 97u, 433u, 1009u}) {
        for (u64 a = 1; a < p; ++a) {
            const u64 d = multiplicative_order(a, p);
            ASSERT_EQ(d, oracle::order(a, p));
            ASSERT_EQ((p - 1) % d, 0u);
        }
    }
    const u64 big = 0xFFFFFFFFFFFFFFC5ull;
    const u64 d = multiplicative_order(3, big);
    EXPECT_EQ((big - 1) % d, 0u);
    EXPECT_EQ(powmod(3, d, big), 1u);
}

// p ≡ 3 mod 4: residues are exactly the elements of odd order.
TEST(MultiplicativeOrder, ResiduesHaveOddOrderWhenPIs3Mod4)
{
    for (u64 p : primes_matching(10000, {{4, 3}})) {
        const Prime pp = Prime::of(p);
        const u64 step = p > 2000 ? 7 : 1;
        for (u64 a = 1; a < p; a += step)
            ASSERT_EQ(legendre(a, pp) == Symbol::plus_one, multiplicative_order(a, pp) % 2 == 1) << a << " " << p;
    }
}

TEST(SqrtMod, RootsSquareBack)
{
    for (u64 p : {3u, 5u, 13u, 17u, 41u, 97u, 257u, 65537u, 1000000007u}) {
        const Prime pp = Prime::of(p);
        for (u64 a = 1; a < std::min<u64>(p, 500); ++a) {
            if (legendre(a, pp) != Symbol::plus_one) continue;
            const u64 r = sqrt_mod(a, pp);
            ASSERT_EQ(mulmod(r, r, p), a);
        }
    }
}

TEST(PrimesMatching, Examples)
{
    EXPECT_EQ(primes_matching(50, {{4, 3}, {3, 1}}), (std::vector<u64>{7, 19, 31, 43}));
    EXPECT_TRUE(primes_matching(10, {{4, 0}}).empty());
    EXPECT_EQ(primes_matching(30, std::span<const CongruenceConstraint>{}),
              (std::vector<u64>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29}));
    EXPECT_TRUE(primes_matching(1000, {{4, 1}, {8, 3}}).empty());
    EXPECT_THROW(CongruenceConstraint(1, 0), precondition_error);
    EXPECT_THROW(CongruenceConstraint(4, 4), precondition_error);
}

TEST(PrimesMatching, MillerRabinRangeAgreesWithSieve)
{
    const std::vector<CongruenceConstraint> cs = {{4, 3}, {7, 1}};
    const auto sieved = primes_matching(200000, cs);
    const auto tested = primes_matching(200000, cs, 1000);
    EXPECT_EQ(sieved, tested);
    const auto none = primes_matching(200000, std::span<const CongruenceConstraint>{}, 100);
    EXPECT_EQ(none, sieve_primes(200000));
}
