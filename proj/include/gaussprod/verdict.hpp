#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>

#include "gaussprod/error.hpp"

namespace gaussprod {

/// Declaration order is the sort order used in reports.
enum class TheoremId { mordell, t1, corollary, eq_a, t2, t3, t4, eq2_parity, symmetry, beta };

inline constexpr std::array<TheoremId, 9> scan_theorems = {
    TheoremId::mordell, TheoremId::t1, TheoremId::corollary, TheoremId::eq_a,      TheoremId::t2,
    TheoremId::t3,      TheoremId::t4, TheoremId::eq2_parity, TheoremId::symmetry,
};

inline std::string_view to_string(TheoremId id)
{
    switch (id) {
    case TheoremId::mordell: return "mordell";
    case TheoremId::t1: return "t1";
    case TheoremId::corollary: return "corollary";
    case TheoremId::eq_a: return "eq_a";
    case TheoremId::t2: return "t2";
    case TheoremId::t3: return "t3";
    case TheoremId::t4: return "t4";
    case TheoremId::eq2_parity: return "eq2_parity";
    case TheoremId::symmetry: return "symmetry";
    case TheoremId::beta: return "beta";
    }
    return "?";
}

inline std::optional<TheoremId> theorem_from_string(std::string_view s)
{
    for (auto id : scan_theorems)
        if (to_string(id) == s) return id;
    if (s == "beta") return TheoremId::beta;
    return std::nullopt;
}

enum class Outcome { pass, fail, skip };

inline std::string_view to_string(Outcome o)
{
    switch (o) {
    case Outcome::pass: return "pass";
    case Outcome::fail: return "fail";
    case Outcome::skip: return "skip";
    }
    return "?";
}

/// One check's record. `predicted` and `computed` are canonical strings
/// ("+1", "-1", "0"/"1" for parities, or space-separated key=value lists for
/// compound checks), so that pass ⟺ predicted == computed holds literally.
struct Verdict {
    TheoremId theorem;
    std::uint64_t p;
    std::optional<std::uint64_t> q;
    std::string predicted;
    std::string computed;
    Outcome outcome;
    std::string detail;

    bool passed() const noexcept { return outcome == Outcome::pass; }
    bool failed() const noexcept { return outcome == Outcome::fail; }
    bool skipped() const noexcept { return outcome == Outcome::skip; }

    auto sort_key() const { return std::tuple(p, q.value_or(0), static_cast<int>(theorem)); }
};

inline bool by_pair_then_theorem(const Verdict& a, const Verdict& b) { return a.sort_key() < b.sort_key(); }

inline Verdict make_verdict(TheoremId id, std::uint64_t p, std::optional<std::uint64_t> q, std::string predicted,
                            std::string computed, std::string detail)
{
    const Outcome o = predicted == computed ? Outcome::pass : Outcome::fail;
    return {id, p, q, std::move(predicted), std::move(computed), o, std::move(detail)};
}

inline Verdict make_skip(TheoremId id, std::uint64_t p, std::optional<std::uint64_t> q, std::string why)
{
    return {id, p, q, "", "", Outcome::skip, std::move(why)};
}

} // namespace gaussprod
