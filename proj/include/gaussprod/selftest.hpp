#pragma once

// Embedded fixed-example suite behind `gaussprod selftest`. Every expected
// value here was cross-checked against a brute-force computation before
// being frozen.

#include <chrono>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "gaussprod/arith.hpp"
#include "gaussprod/classnum.hpp"
#include "gaussprod/products.hpp"
#include "gaussprod/scan.hpp"
#include "gaussprod/theorems.hpp"

namespace gaussprod {

/// Replaceable entry points, for checking that the suite notices faults.
struct SelfTestHooks {
    std::function<Symbol(i64, u64)> legendre = [](i64 a, u64 p) { return gaussprod::legendre(a, p); };
};

struct SelfTestResult {
    bool ok = true;
    std::map<std::string, std::pair<int, int>> per_module; // module -> (passed, total)
    std::string first_failure;
    double elapsed_ms = 0;
};

namespace detail {

struct Fixture {
    std::string module;
    std::string name;
    std::string expected;
    std::function<std::string()> actual;
};

template <class Range>
std::string list_string(const Range& r)
{
    std::string s = "[";
    bool first = true;
    for (const auto& x : r) {
        if (!first) s += ", ";
        first = false;
        s += std::to_string(x);
    }
    return s + "]";
}

inline std::string verdict_string(const Verdict& v)
{
    return std::string(to_string(v.outcome)) + " " + v.computed;
}

inline std::vector<Fixture> fixtures(const SelfTestHooks& hooks)
{
    using BigInt = boost::multiprecision::cpp_int;
    std::vector<Fixture> f;
    auto add = [&](std::string module, std::string name, std::string expected, std::function<std::string()> fn) {
        f.push_back({std::move(module), std::move(name), std::move(expected), std::move(fn)});
    };
    auto num = [](auto v) { return std::to_string(v); };
    auto sym = [&](i64 a, u64 p) { return to_string(hooks.legendre(a, p)); };

    // arith
    add("arith", "mulmod(0,5,7)", "0", [=] { return num(mulmod(0, 5, 7)); });
    add("arith", "mulmod(3,4,7)", "5", [=] { return num(mulmod(3, 4, 7)); });
    add("arith", "mulmod near 2^64", "", [=] {
        const u64 m = 0xFFFFFFFFFFFFFFC5ull; // largest 64-bit prime
        const u64 a = 0x7FFFFFFFFFFFFFFFull, b = m - 2;
        const BigInt ref = (BigInt(a) * BigInt(b)) % BigInt(m);
        const u64 got = mulmod(a, b, m);
        return BigInt(got) == ref ? std::string() : "mismatch " + num(got);
    });
    add("arith", "powmod(9,0,13)", "1", [=] { return num(powmod(9, 0, 13)); });
    add("arith", "powmod(2,3,7)", "1", [=] { return num(powmod(2, 3, 7)); });
    add("arith", "powmod(5,3,7)", "6", [=] { return num(powmod(5, 3, 7)); });
    for (u64 p : {3, 5, 7, 11, 10007})
        add("arith", "legendre(1," + num(p) + ")", "+1", [=] { return sym(1, p); });
    add("arith", "legendre(2,7)", "+1", [=] { return sym(2, 7); });
    add("arith", "legendre(7,7)", "0", [=] { return sym(7, 7); });
    add("arith", "legendre(5,7)", "-1", [=] { return sym(5, 7); });
    add("arith", "legendre(-12,43)", "+1", [=] { return sym(-12, 43); });
    add("arith", "jacobi(12,1)", "+1", [] { return to_string(jacobi(12, 1)); });
    add("arith", "jacobi(5,3)", "-1", [] { return to_string(jacobi(5, 3)); });
    add("arith", "jacobi(2,15)", "+1", [] { return to_string(jacobi(2, 15)); });
    add("arith", "order(1,11)", "1", [=] { return num(multiplicative_order(1, 11)); });
    add("arith", "order(2,7)", "3", [=] { return num(multiplicative_order(2, 7)); });
    add("arith", "order(3,7)", "6", [=] { return num(multiplicative_order(3, 7)); });
    add("arith", "primes(50; 3 mod 4, 1 mod 3)", "[7, 19, 31, 43]",
        [] { return list_string(primes_matching(50, {{4, 3}, {3, 1}})); });
    add("arith", "primes(10; 0 mod 4)", "[]", [] { return list_string(primes_matching(10, {{4, 0}})); });
    add("arith", "primes(30)", "[2, 3, 5, 7, 11, 13, 17, 19, 23, 29]",
        [] { return list_string(primes_matching(30, std::span<const CongruenceConstraint>{})); });

    // products
    add("products", "partial_products(7,2)", "[6, 1]", [] { return list_string(partial_products(7, 2).values); });
    add("products", "partial_products(7,6)", "[1, 2, 3, 4, 5, 6]",
        [] { return list_string(partial_products(7, 6).values); });
    add("products", "partial_products(7,3)", "[2, 5, 2]", [] { return list_string(partial_products(7, 3).values); });
    add("products", "generalized(11,3)", "[6, 4, 5]",
        [] { return list_string(generalized_partial_products(11, 3).values); });
    add("products", "generalized(7,3) = plain(7,3)", "[2, 5, 2]",
        [] { return list_string(generalized_partial_products(7, 3).values); });
    add("products", "generalized(23,5) block 2", "9", [=] { return num(generalized_partial_products(23, 5).value(2)); });
    add("products", "counts(7,3) block 1", "2,0", [=] {
        auto c = block_counts(7, 3, BlockConvention::plain);
        return num(c.a(1)) + "," + num(c.b(1));
    });
    add("products", "counts(11,5) block 1", "1,1", [=] {
        auto c = block_counts(11, 5, BlockConvention::plain);
        return num(c.a(1)) + "," + num(c.b(1));
    });
    add("products", "counts(31,5) totals", "15,15", [=] {
        auto c = block_counts(31, 5, BlockConvention::plain);
        u64 a = 0, b = 0;
        for (u64 k = 1; k <= 5; ++k) a += c.a(k), b += c.b(k);
        return num(a) + "," + num(b);
    });
    add("products", "theorem1_product(7,3)", "2", [=] { return num(theorem1_product(7, 3, BlockConvention::plain)); });
    add("products", "theorem1_product(11,5)", "1", [=] { return num(theorem1_product(11, 5, BlockConvention::plain)); });
    add("products", "theorem1_product(11,3,gen)", "6",
        [=] { return num(theorem1_product(11, 3, BlockConvention::generalized)); });

    // classnum
    for (auto [p, h] : {std::pair<u64, u64>{7, 1}, {23, 3}, {31, 3}})
        add("classnum", "dirichlet(" + num(p) + ")", num(h), [=] { return num(class_number_dirichlet(p).h); });
    for (auto [p, q, h] : {std::tuple<u64, u64, u64>{23, 3, 3}, {7, 5, 1}, {31, 7, 3}})
        add("classnum", "lemma1(" + num(p) + "," + num(q) + ")", num(h),
            [=] { return num(class_number_lemma1(p, q).h); });
    for (auto [p, h] : {std::pair<u64, u64>{7, 1}, {23, 3}, {11, 1}})
        add("classnum", "forms(" + num(p) + ")", num(h), [=] { return num(class_number_forms(p).h); });
    add("classnum", "square_subgroup(7)", "[1, 2, 4] [3, 5, 6] 2", [] {
        auto d = square_subgroup(7);
        return list_string(d.squares) + " " + list_string(d.negated_in_squares) + " " + d.beta_string();
    });
    add("classnum", "square_subgroup(11)", "[1, 3, 4, 5, 9] 3", [] {
        auto d = square_subgroup(11);
        return list_string(d.squares) + " " + d.beta_string();
    });
    add("classnum", "square_subgroup(3)", "[1] [2] 2/3", [] {
        auto d = square_subgroup(3);
        return list_string(d.squares) + " " + list_string(d.negated_in_squares) + " " + d.beta_string();
    });
    for (auto [q, beta] : {std::pair<u64, u64>{7, 2}, {11, 3}, {23, 7}})
        add("classnum", "beta_identity(" + num(q) + ")", "pass beta=" + num(beta),
            [=] { return verdict_string(beta_identity_check(q)); });
    for (auto [p, q, ab] : {std::tuple<u64, u64, const char*>{7, 3, "a=5 b=1"}, {19, 3, "a=8 b=2"},
                            {43, 7, "a=-12 b=2"}})
        add("classnum", "representation(" + num(p) + "," + num(q) + ")", ab, [=] {
            auto r = hahn_lee_representation(p, q);
            std::ostringstream os;
            os << "a=" << r.a << " b=" << r.b;
            return os.str();
        });

    // theorems
    add("theorems", "mordell(7)", "pass -1", [] { return verdict_string(verify_mordell(7)); });
    add("theorems", "mordell(11)", "pass -1", [] { return verdict_string(verify_mordell(11)); });
    add("theorems", "mordell(23)", "pass +1", [] { return verdict_string(verify_mordell(23)); });
    for (auto [p, q] : {std::pair<u64, u64>{7, 3}, {31, 5}, {11, 5}})
        add("theorems", "t1(" + num(p) + "," + num(q) + ")", "pass +1",
            [=] { return verdict_string(verify_theorem1(p, q)); });
    add("theorems", "t1(31,5) product", "20", [=] { return num(theorem1_product(31, 5, BlockConvention::plain)); });
    add("theorems", "corollary(7,3)", "pass nonresidues=even", [] { return verdict_string(verify_corollary(7, 3)); });
    add("theorems", "corollary(43,7)", "pass nonresidues=even pi1_pi3=same",
        [] { return verdict_string(verify_corollary(43, 7)); });
    add("theorems", "eq_a(43,7)", "pass +1", [] { return verdict_string(verify_eq_a(43, 7)); });
    add("theorems", "eq_a(29,7)", "pass", [] { return std::string(to_string(verify_eq_a(29, 7).outcome)); });
    add("theorems", "eq_a(7,3)", "skip", [] { return std::string(to_string(verify_eq_a(7, 3).outcome)); });
    add("theorems", "t2(7,3)", "pass part2=-1 chain=+1", [] { return verdict_string(verify_theorem2(7, 3)); });
    add("theorems", "t2(19,3)", "pass part2=-1 chain=+1", [] { return verdict_string(verify_theorem2(19, 3)); });
    add("theorems", "t2(43,7)", "pass part2=+1 chain=+1", [] { return verdict_string(verify_theorem2(43, 7)); });
    add("theorems", "t3(11,3)", "pass symbol=-1 sizes=ok identity=hold",
        [] { return verdict_string(verify_theorem3(11, 3)); });
    add("theorems", "t3(23,7)", "pass symbol=-1 sizes=ok identity=hold",
        [] { return verdict_string(verify_theorem3(23, 7)); });
    add("theorems", "t3(7,5)", "pass symbol=+1 sizes=ok identity=hold",
        [] { return verdict_string(verify_theorem3(7, 5)); });
    add("theorems", "t4(23,5)", "pass symbol=+1 kstar=2 sizes=ok identity=hold lhs_parity=0",
        [] { return verdict_string(verify_theorem4(23, 5)); });
    add("theorems", "t4(31,7)", "pass symbol=+1 kstar=3 sizes=ok identity=hold lhs_parity=0",
        [] { return verdict_string(verify_theorem4(31, 7)); });
    add("theorems", "t4(47,11)", "pass symbol=+1 kstar=4 sizes=ok identity=hold lhs_parity=0",
        [] { return verdict_string(verify_theorem4(47, 11)); });
    for (auto [p, q] : {std::pair<u64, u64>{7, 3}, {31, 3}, {43, 7}})
        add("theorems", "eq2_parity(" + num(p) + "," + num(q) + ")", "pass eq1=hold eq2=hold parity=0",
            [=] { return verdict_string(verify_eq2_parity(p, q)); });
    for (auto [p, q] : {std::pair<u64, u64>{7, 3}, {11, 5}})
        add("theorems", "symmetry(" + num(p) + "," + num(q) + ")", "pass mirror=ok central=-1 wilson=-1",
            [=] { return verdict_string(verify_symmetry(p, q)); });

    // scan
    add("scan", "scan p<100 q=3 t1", "applicable=6 passed=6", [] {
        ScanConfig c;
        c.p_max = 100;
        c.q_set = {3};
        c.theorems = {TheoremId::t1};
        const auto t = run_scan(c).totals.at(TheoremId::t1);
        return "applicable=" + std::to_string(t.applicable) + " passed=" + std::to_string(t.passed);
    });
    add("scan", "scan p<10 q=7 t1", "applicable=0", [] {
        ScanConfig c;
        c.p_max = 10;
        c.q_set = {7};
        c.theorems = {TheoremId::t1};
        return "applicable=" + std::to_string(run_scan(c).totals.at(TheoremId::t1).applicable);
    });
    return f;
}

} // namespace detail

/// Runs every fixture, printing per-module counts and the first failure.
inline SelfTestResult run_selftest(std::ostream& os, const SelfTestHooks& hooks = {})
{
    const auto start = std::chrono::steady_clock::now();
    SelfTestResult result;
    std::vector<std::string> order;
    for (const auto& fx : detail::fixtures(hooks)) {
        if (!result.per_module.count(fx.module)) order.push_back(fx.module);
        auto& [passed, total] = result.per_module[fx.module];
        ++total;
        std::string got;
        try {
            got = fx.actual();
        } catch (const std::exception& e) {
            got = std::string("exception: ") + e.what();
        }
        if (got == fx.expected) {
            ++passed;
        } else if (result.ok) {
            result.ok = false;
            result.first_failure = fx.module + "/" + fx.name;
            os << "FAIL " << result.first_failure << "\n  expected: " << fx.expected << "\n  got:      " << got
               << '\n';
        }
    }
    result.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    for (const auto& m : order) {
        const auto& [passed, total] = result.per_module[m];
        os << m << ": " << passed << "/" << total << " fixtures passed\n";
    }
    os << (result.ok ? "selftest passed" : "selftest FAILED") << " in " << static_cast<u64>(result.elapsed_ms)
       << " ms\n";
    return result;
}

} // namespace gaussprod
