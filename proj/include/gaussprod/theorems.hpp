#pragma once

// Verifiers: each one computes a claim's predicted value and the directly
// computed value along separate routes and records both in a Verdict.
//
// Route separation:
//   symbols of products        legendre() (Euler's criterion)
//   block counts a_k, b_k      QuadraticCharacter (squaring table)
//   h(-p) in predictions       class_number_forms, except Mordell which
//                              uses the Dirichlet sum
//   Hahn-Lee left-hand side    classnum (representation solver)
//   Hahn-Lee right-hand side   products (factorials) + square_subgroup

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gaussprod/arith.hpp"
#include "gaussprod/classnum.hpp"
#include "gaussprod/error.hpp"
#include "gaussprod/products.hpp"
#include "gaussprod/verdict.hpp"

namespace gaussprod {

// ---------------------------------------------------------------------------
// Regimes
// ---------------------------------------------------------------------------

/// Hypotheses of one theorem. Zero means "no constraint".
struct RegimeFilter {
    u64 p_mod_4 = 0;
    u64 p_mod_q = 0;
    u64 q_mod_4 = 0;
    u64 q_min = 3;
    bool needs_q = true;

    /// Reason the pair is outside the regime, or nullopt if it applies.
    std::optional<std::string> reject(u64 p, std::optional<u64> q) const
    {
        if (p_mod_4 && p % 4 != p_mod_4) return "p mod 4 = " + std::to_string(p % 4);
        if (!needs_q) return p > 3 ? std::nullopt : std::optional<std::string>("p = 3");
        if (!q) return "q required";
        if (*q >= p) return "q >= p"; // p ≡ r mod q is vacuous below q
        if (*q < q_min) return "q < " + std::to_string(q_min);
        if (q_mod_4 && *q % 4 != q_mod_4) return "q mod 4 = " + std::to_string(*q % 4);
        if (p_mod_q && p % *q != p_mod_q) return "p mod q = " + std::to_string(p % *q);
        return std::nullopt;
    }
};

inline RegimeFilter regime_of(TheoremId id)
{
    switch (id) {
    case TheoremId::mordell: return {.p_mod_4 = 3, .needs_q = false};
    case TheoremId::t1:
    case TheoremId::corollary:
    case TheoremId::eq2_parity:
    case TheoremId::symmetry: return {.p_mod_4 = 3, .p_mod_q = 1};
    case TheoremId::eq_a: return {.p_mod_q = 1, .q_mod_4 = 3, .q_min = 5};
    case TheoremId::t2: return {.p_mod_4 = 3, .p_mod_q = 1, .q_mod_4 = 3};
    case TheoremId::t3: return {.p_mod_4 = 3, .p_mod_q = 2};
    case TheoremId::t4: return {.p_mod_4 = 3, .p_mod_q = 3, .q_min = 5};
    case TheoremId::beta: return {.q_mod_4 = 3, .q_min = 5};
    }
    return {};
}

// ---------------------------------------------------------------------------
// Contexts: per-prime and per-pair caches, so several verifiers on the same
// pair share one sweep. Not thread-safe; each scan worker owns its own.
// ---------------------------------------------------------------------------

class PrimeContext {
public:
    explicit PrimeContext(Prime p) : p_(p) {}
    explicit PrimeContext(u64 p) : p_(Prime::odd(p)) {}

    Prime p() const noexcept { return p_; }

    const QuadraticCharacter& character() const
    {
        if (!chi_) chi_.emplace(p_);
        return *chi_;
    }

    /// h(-p) by counting reduced forms.
    u64 class_number() const
    {
        if (!h_forms_) h_forms_ = class_number_forms(p_).h;
        return *h_forms_;
    }

    /// h(-p) by Dirichlet's sum.
    u64 dirichlet_class_number() const
    {
        if (!h_dirichlet_) h_dirichlet_ = class_number_dirichlet(character()).h;
        return *h_dirichlet_;
    }

private:
    Prime p_;
    mutable std::optional<QuadraticCharacter> chi_;
    mutable std::optional<u64> h_forms_;
    mutable std::optional<u64> h_dirichlet_;
};

class PairContext {
public:
    PairContext(const PrimeContext& prime, u64 q) : prime_(prime), pair_(PrimePair::of(prime.p(), q)) {}

    const PrimeContext& prime() const noexcept { return prime_; }
    Prime p() const noexcept { return pair_.p(); }
    Prime q() const noexcept { return pair_.q(); }
    const PrimePair& pair() const noexcept { return pair_; }

    const PartialProductTable& products(BlockConvention c)
    {
        auto& slot = c == BlockConvention::plain ? plain_ : generalized_;
        if (!slot) slot = products_for(pair_, c);
        return *slot;
    }

    const BlockCounts& counts(BlockConvention c)
    {
        auto& slot = c == BlockConvention::plain ? plain_counts_ : generalized_counts_;
        if (!slot) slot = block_counts(prime_.character(), q(), c);
        return *slot;
    }

    /// Representation or the solver's error message.
    const Representation* representation(std::string& error)
    {
        if (!rep_ && rep_error_.empty()) {
            try {
                rep_ = hahn_lee_representation(p(), q());
            } catch (const std::exception& e) {
                rep_error_ = e.what();
            }
        }
        error = rep_error_;
        return rep_ ? &*rep_ : nullptr;
    }

private:
    const PrimeContext& prime_;
    PrimePair pair_;
    std::optional<PartialProductTable> plain_, generalized_;
    std::optional<BlockCounts> plain_counts_, generalized_counts_;
    std::optional<Representation> rep_;
    std::string rep_error_;
};

namespace detail {

inline std::string join(const std::vector<u64>& xs, const char* sep = ",")
{
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += sep;
        s += std::to_string(xs[i]);
    }
    return s;
}

inline std::string i128_to_string(i128 v)
{
    if (v == 0) return "0";
    const bool neg = v < 0;
    u128 u = neg ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v);
    std::string s;
    while (u) {
        s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    return neg ? "-" + s : s;
}

inline std::optional<Verdict> skip_if_outside(TheoremId id, u64 p, std::optional<u64> q)
{
    if (auto why = regime_of(id).reject(p, q)) return make_skip(id, p, q, *why);
    return std::nullopt;
}

inline std::string symbol_of_residue(u64 v, u64 p)
{
    if (v == 1) return "+1";
    if (v == p - 1) return "-1";
    return "residue " + std::to_string(v);
}

// weight (q+1)/2 - k of block k
inline i128 weight(u64 q, u64 k) { return static_cast<i128>((q + 1) / 2) - static_cast<i128>(k); }

} // namespace detail

// ---------------------------------------------------------------------------
// Verifiers
// ---------------------------------------------------------------------------

/// ((p-1)/2)! ≡ (-1)^a mod p with a ≡ (1 + h(-p))/2 mod 2.
inline Verdict verify_mordell(const PrimeContext& ctx)
{
    const Prime p = ctx.p();
    if (auto s = detail::skip_if_outside(TheoremId::mordell, p, std::nullopt)) return *s;
    const u64 half_factorial = partial_products(p, 2).value(1);
    const u64 h = ctx.dirichlet_class_number();
    const Symbol predicted = sign_power((1 + h) / 2);
    return make_verdict(TheoremId::mordell, p, std::nullopt, to_string(predicted),
                        detail::symbol_of_residue(half_factorial, p),
                        "h(-p)=" + std::to_string(h) + " ((p-1)/2)! mod p=" + std::to_string(half_factorial));
}

inline Verdict verify_mordell(u64 p) { return verify_mordell(PrimeContext(p)); }

/// The selected product of plain blocks is a quadratic residue.
inline Verdict verify_theorem1(PairContext& ctx)
{
    const u64 p = ctx.p(), q = ctx.q();
    if (auto s = detail::skip_if_outside(TheoremId::t1, p, q)) return *s;
    const u64 prod = theorem1_product(ctx.products(BlockConvention::plain));
    return make_verdict(TheoremId::t1, p, q, "+1", to_string(legendre(prod, ctx.p())),
                        "blocks=" + detail::join(selected_blocks(q)) + " product=" + std::to_string(prod));
}

/// Even number of nonresidues among the selected blocks; at q = 7 the two
/// selected blocks share their symbol.
inline Verdict verify_corollary(PairContext& ctx)
{
    const u64 p = ctx.p(), q = ctx.q();
    if (auto s = detail::skip_if_outside(TheoremId::corollary, p, q)) return *s;
    const auto& t = ctx.products(BlockConvention::plain);
    std::vector<u64> nonres;
    for (u64 k : selected_blocks(q))
        if (legendre(t.value(k), ctx.p()) == Symbol::minus_one) nonres.push_back(k);
    std::string predicted = "nonresidues=even";
    std::string computed = nonres.size() % 2 == 0 ? "nonresidues=even" : "nonresidues=odd";
    if (q == 7) {
        predicted += " pi1_pi3=same";
        computed += legendre(t.value(1), ctx.p()) == legendre(t.value(3), ctx.p()) ? " pi1_pi3=same"
                                                                                    : " pi1_pi3=differ";
    }
    return make_verdict(TheoremId::corollary, p, q, std::move(predicted), std::move(computed),
                        "nonresidue blocks=[" + detail::join(nonres) + "]");
}

/// Both sides of the Hahn-Lee symbol identity:
/// (a/p) = ((-1)^beta prod_{-i in H} (i(p-1)/q)! / p).
inline Verdict verify_eq_a(PairContext& ctx)
{
    const u64 p = ctx.p(), q = ctx.q();
    if (auto s = detail::skip_if_outside(TheoremId::eq_a, p, q)) return *s;
    const std::string sub = "subregime=p" + std::to_string(p % 4) + "mod4";

    const auto data = square_subgroup(q);
    const auto& t = ctx.products(BlockConvention::plain);
    u64 rhs = data.beta() % 2 == 0 ? 1 : p - 1;
    for (u64 i : data.negated_in_squares) rhs = mulmod(rhs, t.factorial_through(i), p);
    const Symbol predicted = legendre(rhs, ctx.p());

    std::string error;
    const Representation* rep = ctx.representation(error);
    if (!rep)
        return make_verdict(TheoremId::eq_a, p, q, to_string(predicted), "solver-error", sub + " " + error);
    const u64 a_mod_p = static_cast<u64>(((rep->a % p) + p) % p);
    const Symbol computed = legendre(a_mod_p, ctx.p());
    std::ostringstream d;
    d << sub << " a=" << rep->a << " b=" << rep->b << " h(-q)=" << rep->class_number_q << " beta=" << data.beta()
      << " rhs=" << rhs;
    return make_verdict(TheoremId::eq_a, p, q, to_string(predicted), to_string(computed), d.str());
}

/// Part (2): (a/p) = (-1)^((q+1)/4); plus the proof's chain step that the
/// selected product and prod_{i<=(q-1)/2} (i(p-1)/q)! have equal symbols.
inline Verdict verify_theorem2(PairContext& ctx)
{
    const u64 p = ctx.p(), q = ctx.q();
    if (auto s = detail::skip_if_outside(TheoremId::t2, p, q)) return *s;
    const auto& t = ctx.products(BlockConvention::plain);
    const Symbol selected = legendre(theorem1_product(t), ctx.p());
    u64 fact_prod = 1;
    for (u64 i = 1; i <= (q - 1) / 2; ++i) fact_prod = mulmod(fact_prod, t.factorial_through(i), p);
    const Symbol chain = legendre(fact_prod, ctx.p());
    const std::string note = q == 3 ? " note=q=3 outside beta-identity range" : "";

    std::string predicted = "part2=" + to_string(sign_power((q + 1) / 4)) + " chain=" + to_string(selected);
    std::string error;
    const Representation* rep = ctx.representation(error);
    if (!rep)
        return make_verdict(TheoremId::t2, p, q, std::move(predicted), "solver-error", error + note);
    const u64 a_mod_p = static_cast<u64>(((rep->a % p) + p) % p);
    std::string computed = "part2=" + to_string(legendre(a_mod_p, ctx.p())) + " chain=" + to_string(chain);
    std::ostringstream d;
    d << "a=" << rep->a << " b=" << rep->b << " solutions=" << rep->solutions << note;
    return make_verdict(TheoremId::t2, p, q, std::move(predicted), std::move(computed), d.str());
}

/// Symbol of the selected generalized product for p ≡ 2 mod q, by q mod 16;
/// plus the block-size layout and the weighted nonresidue identity.
inline Verdict verify_theorem3(PairContext& ctx)
{
    const u64 p = ctx.p(), q = ctx.q();
    if (auto s = detail::skip_if_outside(TheoremId::t3, p, q)) return *s;
    const u64 h = ctx.prime().class_number();
    const u64 e = (h + 1) / 2;
    Symbol predicted_symbol = Symbol::zero;
    switch (q % 16) {
    case 1:
    case 15: predicted_symbol = Symbol::plus_one; break;
    case 7:
    case 9: predicted_symbol = Symbol::minus_one; break;
    case 3:
    case 13: predicted_symbol = sign_power(e); break;
    case 5:
    case 11: predicted_symbol = sign_power(1 + e); break;
    }

    const auto& t = ctx.products(BlockConvention::generalized);
    const u64 b = theorem1_product(t);
    const Symbol symbol = legendre(b, ctx.p());

    const u64 m = (p - 2) / q;
    bool sizes_ok = true;
    for (u64 k = 1; k <= q; ++k) sizes_ok &= t.block(k).size() == m + (k == (q + 1) / 2 ? 1 : 0);

    const auto& c = ctx.counts(BlockConvention::generalized);
    i128 weighted = 0;
    for (u64 k = 1; k <= (q - 1) / 2; ++k) weighted += static_cast<i128>(c.b(k)) * detail::weight(q, k);
    const i128 qs = to_int(legendre(q, ctx.p()));
    const i128 Q = q, P = p, H = h;
    const i128 lhs16q = (Q * Q - 1) * (P - 2) - 4 * Q * (Q - qs) * H;
    const bool identity = lhs16q == 16 * Q * weighted;

    std::ostringstream d;
    d << "h(-p)=" << h << " q mod 16=" << q % 16 << " b=" << b << " weighted_b=" << detail::i128_to_string(weighted)
      << " lhs*16q=" << detail::i128_to_string(lhs16q);
    return make_verdict(TheoremId::t3, p, q, "symbol=" + to_string(predicted_symbol) + " sizes=ok identity=hold",
                        "symbol=" + to_string(symbol) + (sizes_ok ? " sizes=ok" : " sizes=bad") +
                            (identity ? " identity=hold" : " identity=fail"),
                        d.str());
}

/// Symbol of the selected generalized product for p ≡ 3 mod q, q > 3, by
/// q mod 12; plus the enlarged-block index k* = (q + 2 + ((q/3)-1)/2)/3, the
/// block layout, the weighted identity and its stated parity.
inline Verdict verify_theorem4(PairContext& ctx)
{
    const u64 p = ctx.p(), q = ctx.q();
    if (auto s = detail::skip_if_outside(TheoremId::t4, p, q)) return *s;
    const u64 h = ctx.prime().class_number();
    const int q3 = to_int(legendre(q, Prime::of(3)));
    const Symbol predicted_symbol =
        (q % 12 == 1 || q % 12 == 11) ? Symbol::plus_one : sign_power((h + 1) / 2);

    const auto& t = ctx.products(BlockConvention::generalized);
    const u64 b = theorem1_product(t);
    const Symbol symbol = legendre(b, ctx.p());

    // k* numerator: q + 2 + ((q/3) - 1)/2, with ((q/3)-1)/2 in {0, -1}
    const u64 kstar_num = q + 2 - (q3 == 1 ? 0 : 1);
    const bool kstar_integral = kstar_num % 3 == 0;
    const u64 kstar = kstar_num / 3;
    const std::string predicted_kstar =
        kstar_integral ? std::to_string(kstar) : "nonint:" + std::to_string(kstar_num) + "/3";

    const u64 m = (p - 3) / q;
    std::vector<u64> enlarged_lower;
    bool sizes_ok = kstar_integral && kstar >= 1 && kstar <= (q - 1) / 2;
    for (u64 k = 1; k <= q; ++k) {
        const u64 size = t.block(k).size();
        if (k <= (q - 1) / 2 && size == m + 1) enlarged_lower.push_back(k);
        const bool big = kstar_integral && (k == kstar || k == q + 1 - kstar);
        sizes_ok &= size == m + (big ? 1 : 0);
    }
    const std::string computed_kstar =
        enlarged_lower.size() == 1 ? std::to_string(enlarged_lower.front()) : "[" + detail::join(enlarged_lower) + "]";

    const auto& c = ctx.counts(BlockConvention::generalized);
    i128 weighted = 0;
    for (u64 k = 1; k <= (q - 1) / 2; ++k) weighted += static_cast<i128>(c.b(k)) * detail::weight(q, k);
    const i128 qs = to_int(legendre(q, ctx.p()));
    const i128 Q = q, P = p, H = h, Q3 = q3;
    const i128 lhs48q = 3 * (Q * Q - 1) * (P - 3) + 4 * Q * (Q - Q3) - 12 * Q * (Q - qs) * H;
    const bool identity = lhs48q == 48 * Q * weighted;
    // (q - (q/3))(1 - 3h)/12 is an integer: q - (q/3) ≡ 0 mod 6 and 1 - 3h is even
    const i128 parity_num = (Q - Q3) * (1 - 3 * H);
    const bool parity_integral = parity_num % 12 == 0;
    const i128 stated = parity_num / 12;
    const std::string predicted_parity = parity_integral ? std::to_string(static_cast<int>(((stated % 2) + 2) % 2))
                                                         : "nonint";
    const std::string computed_parity = std::to_string(static_cast<int>(((weighted % 2) + 2) % 2));

    std::ostringstream d;
    d << "h(-p)=" << h << " q mod 12=" << q % 12 << " (q/3)=" << q3 << " b=" << b
      << " weighted_b=" << detail::i128_to_string(weighted) << " lhs*48q=" << detail::i128_to_string(lhs48q);
    return make_verdict(TheoremId::t4, p, q,
                        "symbol=" + to_string(predicted_symbol) + " kstar=" + predicted_kstar +
                            " sizes=ok identity=hold lhs_parity=" + predicted_parity,
                        "symbol=" + to_string(symbol) + " kstar=" + computed_kstar +
                            (sizes_ok ? " sizes=ok" : " sizes=bad") + (identity ? " identity=hold" : " identity=fail") +
                            " lhs_parity=" + computed_parity,
                        d.str());
}

/// The two displayed block-count identities for p ≡ 1 mod q, and the parity
/// conclusion Σ_{selected} b_k ≡ 0 mod 2:
///   (q - (q/p)) h / 2 = Σ (a_k - b_k)((q+1)/2 - k)
///   ((q^2-1)/8)((p-1)/(2q)) - (q - (q/p)) h / 4 = Σ b_k ((q+1)/2 - k)
inline Verdict verify_eq2_parity(PairContext& ctx)
{
    const u64 p = ctx.p(), q = ctx.q();
    if (auto s = detail::skip_if_outside(TheoremId::eq2_parity, p, q)) return *s;
    const u64 h = ctx.prime().class_number();
    const auto& c = ctx.counts(BlockConvention::plain);
    i128 diff_sum = 0, b_sum = 0;
    for (u64 k = 1; k <= (q - 1) / 2; ++k) {
        diff_sum += (static_cast<i128>(c.a(k)) - static_cast<i128>(c.b(k))) * detail::weight(q, k);
        b_sum += static_cast<i128>(c.b(k)) * detail::weight(q, k);
    }
    u64 selected_b = 0;
    for (u64 k : selected_blocks(q)) selected_b += c.b(k);

    const i128 qs = to_int(legendre(q, ctx.p()));
    const i128 Q = q, P = p, H = h;
    const bool eq1 = (Q - qs) * H == 2 * diff_sum;
    const i128 lhs16q = (Q * Q - 1) * (P - 1) - 4 * Q * (Q - qs) * H;
    const bool eq2 = lhs16q == 16 * Q * b_sum;

    std::ostringstream d;
    d << "h(-p)=" << h << " (q/p)=" << detail::i128_to_string(qs) << " sum(a-b)w=" << detail::i128_to_string(diff_sum)
      << " sum(b)w=" << detail::i128_to_string(b_sum) << " lhs*16q=" << detail::i128_to_string(lhs16q)
      << " selected_b=" << selected_b;
    return make_verdict(TheoremId::eq2_parity, p, q, "eq1=hold eq2=hold parity=0",
                        std::string(eq1 ? "eq1=hold" : "eq1=fail") + (eq2 ? " eq2=hold" : " eq2=fail") +
                            " parity=" + std::to_string(selected_b % 2),
                        d.str());
}

/// Π_k ≡ Π_{q+1-k} for all k, the central block (q+1)/2 is a nonresidue, and
/// the product of all blocks is a nonresidue.
inline Verdict verify_symmetry(PairContext& ctx)
{
    const u64 p = ctx.p(), q = ctx.q();
    if (auto s = detail::skip_if_outside(TheoremId::symmetry, p, q)) return *s;
    const auto& t = ctx.products(BlockConvention::plain);
    std::vector<u64> broken;
    for (u64 k = 1; k <= q; ++k)
        if (t.value(k) != t.value(q + 1 - k)) broken.push_back(k);
    u64 all = 1;
    for (u64 v : t.values) all = mulmod(all, v, p);
    const Symbol central = legendre(t.value((q + 1) / 2), ctx.p());
    const Symbol wilson = legendre(all, ctx.p());
    return make_verdict(TheoremId::symmetry, p, q, "mirror=ok central=-1 wilson=-1",
                        std::string(broken.empty() ? "mirror=ok" : "mirror=bad") + " central=" + to_string(central) +
                            " wilson=" + to_string(wilson),
                        "mismatched k=[" + detail::join(broken) + "] central value=" +
                            std::to_string(t.value((q + 1) / 2)) + " full product=" + std::to_string(all));
}

/// Dispatch for pair-based theorems.
inline Verdict verify(TheoremId id, PairContext& ctx)
{
    switch (id) {
    case TheoremId::t1: return verify_theorem1(ctx);
    case TheoremId::corollary: return verify_corollary(ctx);
    case TheoremId::eq_a: return verify_eq_a(ctx);
    case TheoremId::t2: return verify_theorem2(ctx);
    case TheoremId::t3: return verify_theorem3(ctx);
    case TheoremId::t4: return verify_theorem4(ctx);
    case TheoremId::eq2_parity: return verify_eq2_parity(ctx);
    case TheoremId::symmetry: return verify_symmetry(ctx);
    case TheoremId::mordell: return verify_mordell(ctx.prime());
    case TheoremId::beta: return beta_identity_check(ctx.q());
    }
    throw internal_error("unknown theorem id");
}

/// Convenience entry point building fresh contexts.
inline Verdict verify(TheoremId id, u64 p, u64 q)
{
    if (id == TheoremId::mordell) return verify_mordell(p);
    if (auto s = detail::skip_if_outside(id, p, q)) return *s;
    PrimeContext prime(p);
    PairContext pair(prime, q);
    return verify(id, pair);
}

inline Verdict verify_theorem1(u64 p, u64 q) { return verify(TheoremId::t1, p, q); }
inline Verdict verify_corollary(u64 p, u64 q) { return verify(TheoremId::corollary, p, q); }
inline Verdict verify_eq_a(u64 p, u64 q) { return verify(TheoremId::eq_a, p, q); }
inline Verdict verify_theorem2(u64 p, u64 q) { return verify(TheoremId::t2, p, q); }
inline Verdict verify_theorem3(u64 p, u64 q) { return verify(TheoremId::t3, p, q); }
inline Verdict verify_theorem4(u64 p, u64 q) { return verify(TheoremId::t4, p, q); }
inline Verdict verify_eq2_parity(u64 p, u64 q) { return verify(TheoremId::eq2_parity, p, q); }
inline Verdict verify_symmetry(u64 p, u64 q) { return verify(TheoremId::symmetry, p, q); }

} // namespace gaussprod
