#pragma once

// Class numbers h(-p) of Q(sqrt(-p)), p ≡ 3 mod 4, by three routes:
//   - Dirichlet's character sum over 1..(p-1)/2,
//   - the weighted sum with floor(aq/p) weights for an auxiliary prime q,
//   - counting reduced binary quadratic forms of discriminant -p.
// The forms count needs no character theory and is the reference value.
//
// Also: the square subgroup of (Z/qZ)* with its beta quantity, and the
// norm-form representation 4 p^h(-q) = a^2 + q b^2 with a ≡ 2 mod q.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "gaussprod/arith.hpp"
#include "gaussprod/error.hpp"
#include "gaussprod/verdict.hpp"

namespace gaussprod {

using BigInt = boost::multiprecision::cpp_int;

enum class ClassNumberMethod { dirichlet, lemma1, forms };

struct ClassNumberResult {
    Prime p;
    u64 h;
    ClassNumberMethod method;
    u64 auxiliary_q = 0; // lemma1 only

    std::string method_name() const
    {
        switch (method) {
        case ClassNumberMethod::dirichlet: return "dirichlet";
        case ClassNumberMethod::lemma1: return "lemma1(q=" + std::to_string(auxiliary_q) + ")";
        case ClassNumberMethod::forms: return "forms";
        }
        return "?";
    }
};

namespace detail {

inline Prime class_number_prime(u64 p, bool allow_three)
{
    const Prime pp = Prime::odd(p);
    require(p % 4 == 3, "class number: need p ≡ 3 mod 4, got p=" + std::to_string(p));
    require(allow_three || p > 3, "class number: need p > 3");
    return pp;
}

} // namespace detail

inline ClassNumberResult class_number_dirichlet(const QuadraticCharacter& chi)
{
    const Prime p = detail::class_number_prime(chi.modulus(), false);
    i64 sum = 0;
    for (u64 a = 1; a <= (p - 1) / 2; ++a) sum += chi(a);
    const i64 denom = 2 - chi(2 % p);
    detail::ensure(sum % denom == 0, "Dirichlet sum not divisible by 2-(2/p) at p=" + std::to_string(p.value()));
    detail::ensure(sum > 0, "Dirichlet sum not positive at p=" + std::to_string(p.value()));
    return {p, static_cast<u64>(sum / denom), ClassNumberMethod::dirichlet};
}

inline ClassNumberResult class_number_dirichlet(u64 p)
{
    return class_number_dirichlet(QuadraticCharacter(detail::class_number_prime(p, false)));
}

/// Weighted sum Σ (a/p)(q-1-2 floor(aq/p)) over a = 1..(p-1)/2, divided by
/// q - (q/p). q = 2 reduces to Dirichlet's form.
inline ClassNumberResult class_number_lemma1(const QuadraticCharacter& chi, u64 q)
{
    const Prime p = detail::class_number_prime(chi.modulus(), false);
    const Prime qq = Prime::of(q);
    detail::require(qq != p, "lemma1: q must differ from p");
    i64 sum = 0;
    const i64 qi = static_cast<i64>(q);
    for (u64 a = 1; a <= (p - 1) / 2; ++a) {
        const i64 fl = static_cast<i64>(static_cast<u128>(a) * q / p);
        sum += chi(a) * (qi - 1 - 2 * fl);
    }
    const i64 denom = qi - chi(q % p);
    detail::ensure(sum % denom == 0, "lemma1 sum not divisible by q-(q/p) at p=" + std::to_string(p.value()) +
                                         ", q=" + std::to_string(q));
    detail::ensure(sum > 0, "lemma1 sum not positive");
    return {p, static_cast<u64>(sum / denom), ClassNumberMethod::lemma1, q};
}

inline ClassNumberResult class_number_lemma1(u64 p, u64 q)
{
    return class_number_lemma1(QuadraticCharacter(detail::class_number_prime(p, false)), q);
}

/// Number of reduced primitive forms (A, B, C), B^2 - 4AC = -p, with
/// |B| <= A <= C and B >= 0 whenever |B| = A or A = C.
inline ClassNumberResult class_number_forms(u64 p)
{
    const Prime pp = detail::class_number_prime(p, true);
    u64 count = 0;
    for (u64 A = 1; 3 * A * A <= p; ++A) {
        // B odd because -p ≡ 1 mod 4
        for (i64 B = -static_cast<i64>(A) + 1; B <= static_cast<i64>(A); ++B) {
            if ((B & 1) == 0) continue;
            const u64 num = static_cast<u64>(B * B) + p;
            if (num % (4 * A) != 0) continue;
            const u64 C = num / (4 * A);
            if (C < A) continue;
            if (C == A && B < 0) continue;
            if (std::gcd(std::gcd(A, static_cast<u64>(B < 0 ? -B : B)), C) != 1) continue;
            ++count;
        }
    }
    return {pp, count, ClassNumberMethod::forms};
}

// ---------------------------------------------------------------------------

struct SquareSubgroupData {
    Prime q;
    std::vector<u64> squares;            // H, ascending
    std::vector<u64> negated_in_squares; // i in [1, q-1] with -i in H, ascending
    u64 beta_numerator;                  // sum of negated_in_squares; beta = this / q

    bool beta_is_integer() const noexcept { return beta_numerator % q == 0; }
    u64 beta() const
    {
        detail::require(beta_is_integer(), "beta = " + std::to_string(beta_numerator) + "/" +
                                               std::to_string(q.value()) + " is not an integer");
        return beta_numerator / q;
    }
    std::string beta_string() const
    {
        if (beta_is_integer()) return std::to_string(beta_numerator / q);
        const u64 g = std::gcd(beta_numerator, q.value());
        return std::to_string(beta_numerator / g) + "/" + std::to_string(q / g);
    }
};

inline SquareSubgroupData square_subgroup(u64 q)
{
    const Prime qq = Prime::odd(q);
    detail::require(q % 4 == 3, "square_subgroup: need q ≡ 3 mod 4 (otherwise -1 is a square)");
    std::vector<bool> is_sq(q, false);
    for (u64 x = 1; x < q; ++x) is_sq[mulmod(x, x, q)] = true;
    SquareSubgroupData d{qq, {}, {}, 0};
    for (u64 i = 1; i < q; ++i) {
        if (is_sq[i]) d.squares.push_back(i);
        if (is_sq[q - i]) {
            d.negated_in_squares.push_back(i);
            d.beta_numerator += i;
        }
    }
    return d;
}

/// beta = (h(-q)+1)/2 + (q-3)/4 with h(-q) from the forms count. For q > 3.
inline Verdict beta_identity_check(u64 q)
{
    const auto sub = square_subgroup(q);
    detail::require(q > 3, "beta identity is only stated for q > 3 (beta = 2/3 at q = 3)");
    const u64 h = class_number_forms(q).h;
    const u64 predicted = (h + 1) / 2 + (q - 3) / 4;
    std::string detail = "h(-q)=" + std::to_string(h) + " sum=" + std::to_string(sub.beta_numerator);
    return make_verdict(TheoremId::beta, q, std::nullopt, "beta=" + std::to_string(predicted),
                        "beta=" + sub.beta_string(), std::move(detail));
}

// ---------------------------------------------------------------------------

struct Representation {
    Prime q;
    Prime p;
    u64 class_number_q; // h(-q), the exponent of p
    BigInt a;           // a ≡ 2 mod q
    BigInt b;           // b > 0
    /// Distinct (a, b) solutions with a ≡ 2 mod q, p ∤ a, b > 0. One for
    /// q > 3; three unit associates for q = 3, of which the least b is kept.
    std::size_t solutions = 1;
};

namespace detail {

inline BigInt mod_inverse(const BigInt& x, const BigInt& m)
{
    BigInt old_r = x % m, r = m, old_s = 1, s = 0;
    if (old_r < 0) old_r += m;
    while (r != 0) {
        const BigInt quot = old_r / r;
        BigInt t = old_r - quot * r;
        old_r = r;
        r = t;
        t = old_s - quot * s;
        old_s = s;
        s = t;
    }
    ensure(old_r == 1, "mod_inverse: not invertible");
    old_s %= m;
    if (old_s < 0) old_s += m;
    return old_s;
}

// Solve x^2 + q y^2 = 4N from a root x0^2 ≡ -q (mod 4N), x0 in [0, 2N).
inline bool cornacchia_4n(const BigInt& N, u64 q, const BigInt& x0, BigInt& x, BigInt& y)
{
    const BigInt four_n = 4 * N;
    BigInt a = 2 * N, b = x0;
    const BigInt bound = boost::multiprecision::sqrt(four_n);
    while (b > bound) {
        BigInt r = a % b;
        a = b;
        b = r;
    }
    const BigInt rest = four_n - b * b;
    if (rest < 0 || rest % q != 0) return false;
    const BigInt c2 = rest / q;
    const BigInt c = boost::multiprecision::sqrt(c2);
    if (c * c != c2) return false;
    x = b;
    y = c;
    return true;
}

// Solve x^2 + q y^2 = N from a root x0^2 ≡ -q (mod N), x0 in [0, N).
inline bool cornacchia(const BigInt& N, u64 q, const BigInt& x0, BigInt& x, BigInt& y)
{
    BigInt a = N, b = x0;
    const BigInt bound = boost::multiprecision::sqrt(N);
    while (b > bound) {
        BigInt r = a % b;
        a = b;
        b = r;
    }
    const BigInt rest = N - b * b;
    if (rest < 0 || rest % q != 0) return false;
    const BigInt c2 = rest / q;
    const BigInt c = boost::multiprecision::sqrt(c2);
    if (c * c != c2) return false;
    x = b;
    y = c;
    return true;
}

} // namespace detail

/// 4 p^h(-q) = a^2 + q b^2 with a ≡ 2 mod q and p ∤ a (the primitive
/// solution). Square root of -q mod p is Hensel-lifted to p^h and fed to
/// Cornacchia's algorithm for modulus 4p^h.
inline Representation hahn_lee_representation(u64 p_in, u64 q_in)
{
    const Prime p = Prime::odd(p_in);
    const Prime q = Prime::odd(q_in);
    detail::require(q % 4 == 3, "representation: need q ≡ 3 mod 4");
    detail::require(p != q, "representation: need p ≠ q");
    detail::require(p % q == 1, "representation: need p ≡ 1 mod q");

    const u64 h = class_number_forms(q).h;
    detail::require(h * std::bit_width(p.value()) <= 4096, "representation: p^h too large");
    const BigInt N = boost::multiprecision::pow(BigInt(p.value()), static_cast<unsigned>(h));

    // root of x^2 ≡ -q mod p, lifted one power of p at a time
    BigInt r = sqrt_mod(p - q % p, p);
    BigInt pk = p.value();
    for (u64 k = 1; k < h; ++k) {
        pk *= p.value();
        BigInt f = (r * r + q.value()) % pk;
        BigInt step = (f * detail::mod_inverse(2 * r, pk)) % pk;
        r = (r - step) % pk;
        if (r < 0) r += pk;
    }
    detail::ensure((r * r + q.value()) % N == 0, "Hensel lift failed");

    struct Sol {
        BigInt a, b;
    };
    std::vector<Sol> sols;
    auto consider = [&](BigInt a, BigInt b) {
        if (b < 0) {
            a = -a;
            b = -b;
        }
        if (b == 0) return;
        for (int sign = 0; sign < 2; ++sign, a = -a) {
            BigInt am = a % q.value();
            if (am < 0) am += q.value();
            if (am != 2) continue;
            if (a % p.value() == 0) continue;
            const bool seen = std::any_of(sols.begin(), sols.end(),
                                          [&](const Sol& s) { return s.a == a && s.b == b; });
            if (!seen) sols.push_back({a, b});
        }
    };

    for (const BigInt& root : {r, BigInt(N - r)}) {
        BigInt x, y;
        // (a + b sqrt(-q))/2 with a, b both even is an element of Z[sqrt(-q)]
        if (detail::cornacchia(N, q, root, x, y)) consider(2 * x, 2 * y);
        const BigInt x0 = (root % 2 == 1) ? root : root + N; // odd, < 2N
        if (detail::cornacchia_4n(N, q, x0, x, y)) {
            consider(x, y);
            if (q == 3) {
                // associates under multiplication by the cube roots of unity
                BigInt u = x, v = y;
                for (int i = 0; i < 2; ++i) {
                    BigInt nu = (-u - 3 * v) / 2;
                    BigInt nv = (u - v) / 2;
                    u = nu;
                    v = nv;
                    consider(u, v);
                }
            }
        }
    }

    for (const auto& s : sols)
        detail::ensure(s.a * s.a + q.value() * s.b * s.b == 4 * N, "representation does not satisfy its equation");
    detail::require(!sols.empty(), "representation: no solution of 4p^h = a^2 + qb^2 found (p=" +
                                       std::to_string(p.value()) + ", q=" + std::to_string(q.value()) + ")");
    std::sort(sols.begin(), sols.end(), [](const Sol& x, const Sol& y) { return x.b < y.b; });
    if (q != 3 && sols.size() > 1)
        throw internal_error("representation: ambiguous, " + std::to_string(sols.size()) +
                             " solutions with a ≡ 2 mod q (p=" + std::to_string(p.value()) +
                             ", q=" + std::to_string(q.value()) + ")");
    return {q, p, h, sols.front().a, sols.front().b, sols.size()};
}

} // namespace gaussprod
