#pragma once

// Modular arithmetic over unsigned 64-bit moduli, quadratic-residue symbols,
// multiplicative orders and prime enumeration under congruence constraints.

#include <algorithm>
#include <bit>
#include <concepts>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gaussprod/error.hpp"

namespace gaussprod {

using u64 = std::uint64_t;
using i64 = std::int64_t;
__extension__ using u128 = unsigned __int128;
__extension__ using i128 = __int128;

// ---------------------------------------------------------------------------
// Basic modular operations
// ---------------------------------------------------------------------------

/// (a * b) mod m for a, b < m. Exact for every 64-bit modulus.
constexpr u64 mulmod(u64 a, u64 b, u64 m) noexcept
{
    if (m <= 0xFFFFFFFFull) return (a * b) % m;
    return static_cast<u64>((static_cast<u128>(a) * b) % m);
}

constexpr u64 addmod(u64 a, u64 b, u64 m) noexcept
{
    return a >= m - b ? a - (m - b) : a + b;
}

constexpr u64 submod(u64 a, u64 b, u64 m) noexcept
{
    return a >= b ? a - b : a + (m - b);
}

/// a^e mod m by left-to-right square-and-multiply; powmod(a, 0, m) == 1.
constexpr u64 powmod(u64 a, u64 e, u64 m) noexcept
{
    u64 result = 1 % m;
    a %= m;
    while (e != 0) {
        if (e & 1) result = mulmod(result, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return result;
}

/// Non-negative representative of a mod m for any integral a.
template <std::integral T>
constexpr u64 reduce(T a, u64 m) noexcept
{
    if constexpr (std::is_signed_v<T>) {
        if (a < 0) {
            // -(a+1) avoids overflow on the most negative value.
            const u64 neg = static_cast<u64>(-(a + 1)) % m;
            return m - 1 - neg;
        }
    }
    return static_cast<u64>(a) % m;
}

constexpr u64 isqrt(u64 n) noexcept
{
    if (n == 0) return 0;
    u64 x = static_cast<u64>(1) << ((std::bit_width(n) + 1) / 2);
    while (true) {
        const u64 y = (x + n / x) / 2;
        if (y >= x) return x;
        x = y;
    }
}

constexpr u64 isqrt(u128 n) noexcept
{
    if (n >> 64 == 0) return isqrt(static_cast<u64>(n));
    int bits = 128 - std::countl_zero(static_cast<u64>(n >> 64));
    u128 x = static_cast<u128>(1) << ((bits + 1) / 2);
    while (true) {
        const u128 y = (x + n / x) / 2;
        if (y >= x) return static_cast<u64>(x);
        x = y;
    }
}

// ---------------------------------------------------------------------------
// Primality
// ---------------------------------------------------------------------------

namespace detail {

constexpr bool miller_rabin_round(u64 n, u64 d, int s, u64 base) noexcept
{
    base %= n;
    if (base == 0) return true;
    u64 x = powmod(base, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int r = 1; r < s; ++r) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

} // namespace detail

/// Deterministic for all 64-bit n (Sinclair's seven-base witness set).
constexpr bool is_prime(u64 n) noexcept
{
    if (n < 2) return false;
    constexpr u64 small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (u64 p : small) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    if (n < 41 * 41) return true;
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    constexpr u64 bases[] = {2, 325, 9375, 28178, 450775, 9780504, 1795265022};
    for (u64 a : bases)
        if (!detail::miller_rabin_round(n, d, s, a)) return false;
    return true;
}

/// A value known to be prime. Construction through `of` checks primality, so
/// hot loops taking a Prime never re-test it.
class Prime {
public:
    static Prime of(u64 n)
    {
        detail::require(is_prime(n), std::to_string(n) + " is not prime");
        return Prime(n);
    }
    static Prime odd(u64 n)
    {
        detail::require(n != 2, "expected an odd prime, got 2");
        return of(n);
    }

    constexpr u64 value() const noexcept { return value_; }
    constexpr operator u64() const noexcept { return value_; }

private:
    constexpr explicit Prime(u64 n) noexcept : value_(n) {}
    u64 value_;
};

// ---------------------------------------------------------------------------
// Quadratic symbols
// ---------------------------------------------------------------------------

enum class Symbol : int { minus_one = -1, zero = 0, plus_one = 1 };

constexpr int to_int(Symbol s) noexcept { return static_cast<int>(s); }

constexpr Symbol symbol_from_int(int v) noexcept
{
    return v > 0 ? Symbol::plus_one : (v < 0 ? Symbol::minus_one : Symbol::zero);
}

constexpr Symbol operator*(Symbol a, Symbol b) noexcept
{
    return symbol_from_int(to_int(a) * to_int(b));
}

/// (-1)^e as a Symbol.
constexpr Symbol sign_power(u64 e) noexcept
{
    return (e & 1) ? Symbol::minus_one : Symbol::plus_one;
}

inline std::string to_string(Symbol s)
{
    switch (s) {
    case Symbol::plus_one: return "+1";
    case Symbol::minus_one: return "-1";
    case Symbol::zero: return "0";
    }
    return "?";
}

/// Legendre symbol (a/p) by Euler's criterion a^((p-1)/2) mod p.
template <std::integral T>
Symbol legendre(T a, Prime p)
{
    detail::require(p != 2, "legendre: modulus must be an odd prime");
    const u64 r = reduce(a, p);
    if (r == 0) return Symbol::zero;
    const u64 e = powmod(r, (p - 1) / 2, p);
    if (e == 1) return Symbol::plus_one;
    detail::ensure(e == p - 1, "Euler's criterion produced neither 1 nor -1");
    return Symbol::minus_one;
}

template <std::integral T>
Symbol legendre(T a, u64 p)
{
    return legendre(a, Prime::odd(p));
}

/// Jacobi symbol (a/n) for odd n >= 1 via reciprocity with 2-extraction.
template <std::integral T>
Symbol jacobi(T a_in, u64 n)
{
    detail::require(n % 2 == 1, "jacobi: n must be odd and positive");
    u64 a = reduce(a_in, n);
    int t = 1;
    while (a != 0) {
        const int twos = std::countr_zero(a);
        a >>= twos;
        if ((twos & 1) && (n % 8 == 3 || n % 8 == 5)) t = -t;
        if (a % 4 == 3 && n % 4 == 3) t = -t;
        std::swap(a, n);
        a %= n;
    }
    return n == 1 ? symbol_from_int(t) : Symbol::zero;
}

/// Table of (j/p) for all j in [0, p), built by squaring 1..(p-1)/2.
/// Independent of Euler's criterion. Memory is one byte per residue.
class QuadraticCharacter {
public:
    static constexpr u64 max_modulus = u64{1} << 32;

    explicit QuadraticCharacter(Prime p) : p_(p)
    {
        detail::require(p != 2, "QuadraticCharacter: modulus must be odd");
        detail::require(p < max_modulus, "QuadraticCharacter: modulus too large for a table");
        table_.assign(p, -1);
        table_[0] = 0;
        // x^2 = (x-1)^2 + 2x - 1
        u64 sq = 0;
        for (u64 x = 1; x <= (p - 1) / 2; ++x) {
            sq = addmod(sq, (2 * x - 1) % p, p);
            table_[sq] = 1;
        }
    }

    Prime modulus() const noexcept { return p_; }

    /// (j/p) as -1, 0 or +1; j must already be reduced below p.
    int operator()(u64 j) const noexcept { return table_[j]; }
    Symbol symbol(u64 j) const noexcept { return symbol_from_int(table_[j % p_]); }

    std::span<const std::int8_t> values() const noexcept { return table_; }

private:
    Prime p_;
    std::vector<std::int8_t> table_;
};

// ---------------------------------------------------------------------------
// Factoring and multiplicative order
// ---------------------------------------------------------------------------

struct PrimePower {
    u64 prime;
    int exponent;
    bool operator==(const PrimePower&) const = default;
};

namespace detail {

inline u64 pollard_brent(u64 n)
{
    if (n % 2 == 0) return 2;
    for (u64 c = 1;; ++c) {
        u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
        const u64 m = 128;
        u64 r = 1;
        auto f = [&](u64 v) { return addmod(mulmod(v, v, n), c, n); };
        do {
            x = y;
            for (u64 i = 0; i < r; ++i) y = f(y);
            u64 k = 0;
            do {
                ys = y;
                for (u64 i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

inline void factor_into(u64 n, std::vector<u64>& out)
{
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    const u64 d = pollard_brent(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

} // namespace detail

/// Prime factorization, ascending. Trial division to 10^6, then Pollard-Brent.
inline std::vector<PrimePower> factorize(u64 n)
{
    detail::require(n >= 1, "factorize: n must be positive");
    std::vector<u64> primes;
    constexpr u64 trial_limit = 1'000'000;
    for (u64 d = 2; d <= trial_limit && d * d <= n; d += (d == 2 ? 1 : 2)) {
        while (n % d == 0) {
            primes.push_back(d);
            n /= d;
        }
    }
    if (n > 1) detail::factor_into(n, primes);
    std::sort(primes.begin(), primes.end());

    std::vector<PrimePower> result;
    for (u64 p : primes) {
        if (!result.empty() && result.back().prime == p)
            ++result.back().exponent;
        else
            result.push_back({p, 1});
    }
    return result;
}

/// Least d >= 1 with a^d == 1 mod p.
template <std::integral T>
u64 multiplicative_order(T a_in, Prime p)
{
    const u64 a = reduce(a_in, p);
    detail::require(a != 0, "multiplicative_order: p divides a");
    u64 order = p - 1;
    for (const auto& [f, e] : factorize(p - 1)) {
        for (int i = 0; i < e && powmod(a, order / f, p) == 1; ++i) order /= f;
    }
    return order;
}

template <std::integral T>
u64 multiplicative_order(T a, u64 p)
{
    return multiplicative_order(a, Prime::of(p));
}

/// Square root of a quadratic residue mod an odd prime (Tonelli-Shanks).
inline u64 sqrt_mod(u64 a, Prime p)
{
    a %= p;
    if (a == 0) return 0;
    detail::require(legendre(a, p) == Symbol::plus_one, "sqrt_mod: not a quadratic residue");
    if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
    u64 q = p - 1;
    int s = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++s;
    }
    u64 z = 2;
    while (legendre(z, p) != Symbol::minus_one) ++z;
    u64 c = powmod(z, q, p);
    u64 r = powmod(a, (q + 1) / 2, p);
    u64 t = powmod(a, q, p);
    int m = s;
    while (t != 1) {
        int i = 0;
        u64 tt = t;
        while (tt != 1) {
            tt = mulmod(tt, tt, p);
            ++i;
        }
        u64 b = c;
        for (int j = 0; j < m - i - 1; ++j) b = mulmod(b, b, p);
        r = mulmod(r, b, p);
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        m = i;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Prime enumeration
// ---------------------------------------------------------------------------

/// n ≡ residue (mod modulus).
struct CongruenceConstraint {
    u64 modulus;
    u64 residue;

    CongruenceConstraint(u64 m, u64 r) : modulus(m), residue(r)
    {
        detail::require(m >= 2, "CongruenceConstraint: modulus must be >= 2");
        detail::require(r < m, "CongruenceConstraint: residue out of range");
    }

    constexpr bool matches(u64 n) const noexcept { return n % modulus == residue; }
};

/// All primes below `limit`, ascending.
inline std::vector<u64> sieve_primes(u64 limit)
{
    std::vector<u64> primes;
    if (limit <= 2) return primes;
    primes.push_back(2);
    // index i stands for 2i+1
    const u64 half = limit / 2;
    std::vector<bool> composite(half, false);
    for (u64 i = 1; i < half; ++i) {
        if (composite[i]) continue;
        const u64 p = 2 * i + 1;
        primes.push_back(p);
        for (u64 j = (p * p) / 2; j < half; j += p) composite[j] = true;
    }
    return primes;
}

namespace detail {

// Combine constraints into one progression; nullopt if contradictory.
// Returns modulus 0 when the combined modulus does not fit in 62 bits.
inline std::optional<std::pair<u64, u64>> combine(std::span<const CongruenceConstraint> cs)
{
    u64 m = 1, r = 0;
    for (const auto& c : cs) {
        if (m == 0) continue;
        const u64 g = std::gcd(m, c.modulus);
        const u64 diff = submod(c.residue % g, r % g, g);
        if (diff != 0) return std::nullopt;
        const u128 lcm = static_cast<u128>(m / g) * c.modulus;
        if (lcm >> 62) {
            m = 0;
            continue;
        }
        // step through r, r+m, ... until matching c (at most c.modulus/g steps)
        u64 x = r;
        while (x % c.modulus != c.residue) x += m;
        m = static_cast<u64>(lcm);
        r = x % m;
    }
    if (m == 0) {
        // Pairwise compatibility still has to be checked.
        for (std::size_t i = 0; i < cs.size(); ++i)
            for (std::size_t j = i + 1; j < cs.size(); ++j) {
                const u64 g = std::gcd(cs[i].modulus, cs[j].modulus);
                if (cs[i].residue % g != cs[j].residue % g) return std::nullopt;
            }
    }
    return std::pair{m, r};
}

} // namespace detail

inline constexpr u64 default_sieve_threshold = u64{1} << 20;

/// Ascending primes p < limit satisfying every constraint. Primes below the
/// sieve threshold come from a sieve; above it candidates in the combined
/// progression are tested by deterministic Miller-Rabin.
inline std::vector<u64> primes_matching(u64 limit, std::span<const CongruenceConstraint> constraints,
                                        u64 sieve_threshold = default_sieve_threshold)
{
    detail::require(limit >= 2, "primes_matching: limit must be >= 2");
    std::vector<u64> out;
    const auto combined = detail::combine(constraints);
    if (!combined) return out;

    auto ok = [&](u64 n) {
        return std::all_of(constraints.begin(), constraints.end(),
                           [n](const CongruenceConstraint& c) { return c.matches(n); });
    };

    const u64 sieve_end = std::min(limit, sieve_threshold);
    for (u64 p : sieve_primes(sieve_end))
        if (ok(p)) out.push_back(p);
    if (sieve_end >= limit) return out;

    const auto [m, r] = *combined;
    if (m >= 2) {
        u64 n = sieve_end + submod(r, sieve_end % m, m);
        for (; n < limit; n += m) {
            if (is_prime(n)) out.push_back(n);
            if (limit - n <= m) break;
        }
    } else {
        for (u64 n = sieve_end | 1; n < limit; n += 2) {
            if (ok(n) && is_prime(n)) out.push_back(n);
            if (limit - n <= 2) break;
        }
    }
    return out;
}

inline std::vector<u64> primes_matching(u64 limit, std::initializer_list<CongruenceConstraint> constraints,
                                        u64 sieve_threshold = default_sieve_threshold)
{
    return primes_matching(limit, std::span<const CongruenceConstraint>(constraints.begin(), constraints.size()),
                           sieve_threshold);
}

} // namespace gaussprod
