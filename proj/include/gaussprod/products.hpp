#pragma once

// Partial products of consecutive blocks of 1..p-1 modulo p.
//
// Plain convention (n | p-1): block k is (k-1)(p-1)/n + 1 .. k(p-1)/n.
// Generalized convention (q odd prime, q < p): block k is
// floor((k-1)p/q) + 1 .. floor(kp/q) for k < q, and the last block runs to
// p-1. The two agree when p ≡ 1 mod q. Block lengths are always derived from
// the bounds; they are not assumed uniform.

#include <cstdint>
#include <string>
#include <vector>

#include "gaussprod/arith.hpp"
#include "gaussprod/error.hpp"

namespace gaussprod {

enum class BlockConvention { plain, generalized };

inline const char* to_string(BlockConvention c)
{
    return c == BlockConvention::plain ? "plain" : "generalized";
}

/// Inclusive integer range [first, last].
struct BlockRange {
    u64 first;
    u64 last;

    constexpr u64 size() const noexcept { return last + 1 - first; }
    bool operator==(const BlockRange&) const = default;
};

/// A validated pair of distinct odd primes with p > q.
class PrimePair {
public:
    static PrimePair of(u64 p, u64 q)
    {
        const Prime pp = Prime::odd(p);
        const Prime qq = Prime::odd(q);
        detail::require(p != q, "p and q must differ");
        return PrimePair(pp, qq);
    }

    Prime p() const noexcept { return p_; }
    Prime q() const noexcept { return q_; }
    u64 p_mod_4() const noexcept { return p_ % 4; }
    u64 p_mod_q() const noexcept { return p_ % q_; }

private:
    PrimePair(Prime p, Prime q) : p_(p), q_(q) {}
    Prime p_;
    Prime q_;
};

/// Integer ranges of the n blocks, index 0 holding block k = 1.
inline std::vector<BlockRange> block_ranges(Prime p, u64 n, BlockConvention convention)
{
    std::vector<BlockRange> blocks;
    blocks.reserve(n);
    if (convention == BlockConvention::plain) {
        detail::require(n >= 2, "block count must be >= 2");
        detail::require((p - 1) % n == 0, "plain blocks need n | p-1 (p=" + std::to_string(p.value()) +
                                              ", n=" + std::to_string(n) + ")");
        const u64 len = (p - 1) / n;
        for (u64 k = 1; k <= n; ++k) blocks.push_back({(k - 1) * len + 1, k * len});
    } else {
        detail::require(is_prime(n) && n != 2, "generalized blocks need an odd prime q");
        detail::require(n < p, "generalized blocks need q < p");
        auto floor_kp = [&](u64 k) { return static_cast<u64>(static_cast<u128>(k) * p / n); };
        for (u64 k = 1; k < n; ++k) blocks.push_back({floor_kp(k - 1) + 1, floor_kp(k)});
        blocks.push_back({floor_kp(n - 1) + 1, p - 1});
    }
    return blocks;
}

/// All block products mod p, computed in a single sweep over 1..p-1.
struct PartialProductTable {
    Prime p;
    u64 divisor;
    BlockConvention convention;
    std::vector<BlockRange> blocks;
    std::vector<u64> values;
    /// (blocks[k].last)! mod p, i.e. the running factorial at each block end.
    std::vector<u64> boundary_factorials;

    /// 1-based access, matching the usual block numbering.
    u64 value(u64 k) const { return values.at(k - 1); }
    const BlockRange& block(u64 k) const { return blocks.at(k - 1); }
    u64 factorial_through(u64 k) const { return boundary_factorials.at(k - 1); }
};

namespace detail {

inline PartialProductTable sweep(Prime p, u64 n, BlockConvention convention)
{
    PartialProductTable t{p, n, convention, block_ranges(p, n, convention), {}, {}};
    t.values.reserve(n);
    t.boundary_factorials.reserve(n);
    u64 running = 1;
    for (const auto& b : t.blocks) {
        u64 prod = 1;
        for (u64 j = b.first; j <= b.last; ++j) prod = mulmod(prod, j, p);
        running = mulmod(running, prod, p);
        t.values.push_back(prod);
        t.boundary_factorials.push_back(running);
    }
    return t;
}

} // namespace detail

/// Π_k^(n) mod p for k = 1..n; requires n | p-1.
inline PartialProductTable partial_products(Prime p, u64 n)
{
    detail::require(p != 2, "partial_products: p must be odd");
    return detail::sweep(p, n, BlockConvention::plain);
}

inline PartialProductTable partial_products(u64 p, u64 n) { return partial_products(Prime::odd(p), n); }

/// The floor-bounded products Π'_k^(q) mod p for k = 1..q.
inline PartialProductTable generalized_partial_products(const PrimePair& pq)
{
    return detail::sweep(pq.p(), pq.q(), BlockConvention::generalized);
}

inline PartialProductTable generalized_partial_products(u64 p, u64 q)
{
    return generalized_partial_products(PrimePair::of(p, q));
}

inline PartialProductTable products_for(const PrimePair& pq, BlockConvention convention)
{
    return convention == BlockConvention::plain ? partial_products(pq.p(), pq.q())
                                                : generalized_partial_products(pq);
}

/// Residue / nonresidue counts per block.
struct BlockCounts {
    Prime p;
    u64 q;
    BlockConvention convention;
    std::vector<BlockRange> blocks;
    std::vector<u64> residues;    // a_k
    std::vector<u64> nonresidues; // b_k

    u64 a(u64 k) const { return residues.at(k - 1); }
    u64 b(u64 k) const { return nonresidues.at(k - 1); }
};

inline BlockCounts block_counts(const QuadraticCharacter& chi, u64 q, BlockConvention convention)
{
    const Prime p = chi.modulus();
    BlockCounts c{p, q, convention, block_ranges(p, q, convention), {}, {}};
    for (const auto& b : c.blocks) {
        u64 res = 0, non = 0;
        for (u64 j = b.first; j <= b.last; ++j) (chi(j) > 0 ? res : non) += 1;
        c.residues.push_back(res);
        c.nonresidues.push_back(non);
    }
    return c;
}

inline BlockCounts block_counts(u64 p, u64 q, BlockConvention convention)
{
    const Prime pp = Prime::odd(p);
    if (convention == BlockConvention::generalized) PrimePair::of(p, q);
    return block_counts(QuadraticCharacter(pp), q, convention);
}

/// Block indices k in 1..(q-1)/2 with (q+1)/2 - k odd.
inline std::vector<u64> selected_blocks(u64 q)
{
    std::vector<u64> ks;
    for (u64 k = 1; k <= (q - 1) / 2; ++k)
        if (((q + 1) / 2 - k) % 2 == 1) ks.push_back(k);
    return ks;
}

/// Product of the selected blocks' values mod p.
inline u64 theorem1_product(const PartialProductTable& t)
{
    u64 prod = 1;
    for (u64 k : selected_blocks(t.divisor)) prod = mulmod(prod, t.value(k), t.p);
    return prod;
}

inline u64 theorem1_product(u64 p, u64 q, BlockConvention convention)
{
    return theorem1_product(products_for(PrimePair::of(p, q), convention));
}

} // namespace gaussprod
