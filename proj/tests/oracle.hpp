#pragma once

// Brute-force reference computations for the unit tests. Nothing here calls
// into the library's algorithms; everything is direct enumeration.

#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using u64 = std::uint64_t;
using BigInt = boost::multiprecision::cpp_int;

inline bool is_prime(u64 n)
{
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::set<u64> squares(u64 p)
{
    std::set<u64> s;
    for (u64 x = 1; x < p; ++x) s.insert(x * x % p);
    return s;
}

/// (a/p) by testing membership in the set of nonzero squares.
inline int legendre(long long a, u64 p)
{
    const u64 r = static_cast<u64>(((a % static_cast<long long>(p)) + static_cast<long long>(p)) %
                                   static_cast<long long>(p));
    if (r == 0) return 0;
    return squares(p).count(r) ? 1 : -1;
}

inline u64 order(u64 a, u64 p)
{
    u64 x = a % p, d = 1;
    while (x != 1) {
        x = x * (a % p) % p;
        ++d;
    }
    return d;
}

inline std::vector<std::pair<u64, u64>> blocks(u64 p, u64 q, bool generalized)
{
    std::vector<std::pair<u64, u64>> b;
    for (u64 k = 1; k <= q; ++k) {
        if (!generalized) {
            b.push_back({(k - 1) * (p - 1) / q + 1, k * (p - 1) / q});
        } else {
            const u64 lo = (k - 1) * p / q + 1;
            const u64 hi = k < q ? k * p / q : p - 1;
            b.push_back({lo, hi});
        }
    }
    return b;
}

/// Block products computed independently per block with big integers.
inline std::vector<u64> block_products(u64 p, u64 q, bool generalized)
{
    std::vector<u64> out;
    for (auto [lo, hi] : blocks(p, q, generalized)) {
        BigInt prod = 1;
        for (u64 j = lo; j <= hi; ++j) prod = (prod * j) % p;
        out.push_back(static_cast<u64>(prod));
    }
    return out;
}

inline u64 factorial_mod(u64 n, u64 p)
{
    u64 f = 1;
    for (u64 j = 1; j <= n; ++j) f = f * j % p;
    return f;
}

/// h(-p) from Dirichlet's sum with symbols by square enumeration.
inline long long dirichlet(u64 p)
{
    const auto sq = squares(p);
    long long s = 0;
    for (u64 a = 1; a <= (p - 1) / 2; ++a) s += sq.count(a) ? 1 : -1;
    return s / (2 - (sq.count(2 % p) ? 1 : -1));
}

/// All (a, b), b > 0, with a^2 + q b^2 = 4 p^h, a ≡ 2 mod q, p ∤ a; exhaustive in b.
inline std::vector<std::pair<BigInt, BigInt>> representations(u64 p, u64 q, unsigned h)
{
    using boost::multiprecision::pow;
    using boost::multiprecision::sqrt;
    const BigInt N = 4 * pow(BigInt(p), h);
    std::vector<std::pair<BigInt, BigInt>> out;
    for (BigInt b = 1; q * b * b <= N; ++b) {
        const BigInt r = N - q * b * b;
        const BigInt a = sqrt(r);
        if (a * a != r || a == 0) continue;
        for (BigInt s : {a, BigInt(-a)}) {
            BigInt m = s % q;
            if (m < 0) m += q;
            if (m == 2 && s % p != 0) out.push_back({s, b});
        }
    }
    return out;
}

} // namespace oracle
