#pragma once

// Range scans over (p, q) pairs with deterministic aggregation, and report
// emission as JSON, CSV or a human-readable summary.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <iomanip>
#include <iterator>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "gaussprod/arith.hpp"
#include "gaussprod/theorems.hpp"
#include "gaussprod/verdict.hpp"

namespace gaussprod {

enum class ReportFormat { json, csv, human };

struct ScanConfig {
    u64 p_max = 1000;                  // scan primes 3 <= p < p_max
    std::vector<u64> q_set;            // explicit list; empty means all odd primes <= q_max
    u64 q_max = 97;
    std::vector<TheoremId> theorems{scan_theorems.begin(), scan_theorems.end()};
    unsigned workers = 1;
    ReportFormat format = ReportFormat::json;
    bool timing = false;               // embed runtime_ms in JSON (breaks byte-identity)

    void validate() const
    {
        detail::require(p_max >= 7, "p_max must be >= 7");
        detail::require(!q_set.empty() || q_max >= 3, "q_max must be >= 3");
        detail::require(workers >= 1, "workers must be >= 1");
        detail::require(!theorems.empty(), "no theorems selected");
        for (auto id : theorems)
            detail::require(id != TheoremId::beta, "beta is indexed by q alone and is not a scan theorem");
        for (u64 q : q_set)
            detail::require(q != 2 && is_prime(q), "q set entries must be odd primes, got " + std::to_string(q));
    }

    std::vector<u64> resolved_q_set() const
    {
        std::vector<u64> qs = q_set;
        if (qs.empty())
            for (u64 q : sieve_primes(q_max + 1))
                if (q != 2) qs.push_back(q);
        std::sort(qs.begin(), qs.end());
        qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
        return qs;
    }
};

struct Totals {
    u64 applicable = 0;
    u64 passed = 0;
    u64 failed = 0;
    u64 skipped = 0;

    Totals& operator+=(const Totals& o)
    {
        applicable += o.applicable;
        passed += o.passed;
        failed += o.failed;
        skipped += o.skipped;
        return *this;
    }
    void record(const Verdict& v)
    {
        if (v.skipped()) {
            ++skipped;
            return;
        }
        ++applicable;
        (v.passed() ? passed : failed) += 1;
    }
};

struct ScanReport {
    ScanConfig config;
    std::map<TheoremId, Totals> totals;
    /// eq_a split by p mod 4 (key 1 or 3).
    std::map<u64, Totals> eq_a_by_p_mod_4;
    /// Every applicable verdict, sorted by (p, q, theorem).
    std::vector<Verdict> verdicts;
    double runtime_ms = 0;

    u64 failed() const
    {
        u64 n = 0;
        for (const auto& [id, t] : totals) n += t.failed;
        return n;
    }
    std::vector<Verdict> failures() const
    {
        std::vector<Verdict> out;
        std::copy_if(verdicts.begin(), verdicts.end(), std::back_inserter(out),
                     [](const Verdict& v) { return v.failed(); });
        return out;
    }
};

namespace detail {

struct WorkerResult {
    std::map<TheoremId, Totals> totals;
    std::map<u64, Totals> eq_a_by_p_mod_4;
    std::vector<Verdict> verdicts;
    std::exception_ptr error;
};

inline void scan_primes(std::span<const u64> primes, const std::vector<u64>& qs,
                        const std::vector<TheoremId>& theorems, WorkerResult& out)
{
    const bool want_mordell = std::find(theorems.begin(), theorems.end(), TheoremId::mordell) != theorems.end();
    std::vector<TheoremId> pair_theorems;
    for (auto id : theorems)
        if (id != TheoremId::mordell && id != TheoremId::beta) pair_theorems.push_back(id);

    auto keep = [&](Verdict v) {
        out.totals[v.theorem].record(v);
        if (v.theorem == TheoremId::eq_a && !v.skipped()) out.eq_a_by_p_mod_4[v.p % 4].record(v);
        if (!v.skipped()) out.verdicts.push_back(std::move(v));
    };

    for (u64 p : primes) {
        PrimeContext prime(p);
        if (want_mordell) keep(verify_mordell(prime));
        for (u64 q : qs) {
            if (q == p) {
                for (auto id : pair_theorems) keep(make_skip(id, p, q, "q = p"));
                continue;
            }
            std::optional<PairContext> pair;
            for (auto id : pair_theorems) {
                if (auto why = regime_of(id).reject(p, q)) {
                    keep(make_skip(id, p, q, *why));
                    continue;
                }
                if (!pair) pair.emplace(prime, q);
                keep(verify(id, *pair));
            }
        }
    }
}

} // namespace detail

/// Runs every selected verifier over odd primes p < p_max and the q set.
/// Output is independent of the worker count.
inline ScanReport run_scan(const ScanConfig& config)
{
    config.validate();
    const auto start = std::chrono::steady_clock::now();
    const auto qs = config.resolved_q_set();
    std::vector<u64> primes = sieve_primes(config.p_max);
    primes.erase(primes.begin()); // drop 2

    const unsigned workers = std::max(1u, std::min<unsigned>(config.workers, static_cast<unsigned>(primes.size())));
    std::vector<detail::WorkerResult> results(workers);
    // Contiguous ranges, balanced by Σp since per-pair cost is O(p).
    std::vector<std::size_t> cuts{0};
    {
        long double total = 0;
        for (u64 p : primes) total += p;
        long double acc = 0;
        for (std::size_t i = 0; i < primes.size() && cuts.size() < workers; ++i) {
            acc += primes[i];
            if (acc >= total * cuts.size() / workers) cuts.push_back(i + 1);
        }
        while (cuts.size() < workers) cuts.push_back(primes.size());
        cuts.push_back(primes.size());
    }

    auto run = [&](unsigned w) {
        try {
            std::span<const u64> range(primes.data() + cuts[w], cuts[w + 1] - cuts[w]);
            detail::scan_primes(range, qs, config.theorems, results[w]);
        } catch (...) {
            results[w].error = std::current_exception();
        }
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> threads;
        for (unsigned w = 0; w < workers; ++w) threads.emplace_back(run, w);
        for (auto& t : threads) t.join();
    }

    ScanReport report;
    report.config = config;
    for (auto id : config.theorems) report.totals[id];
    for (auto& r : results) {
        if (r.error) std::rethrow_exception(r.error);
        for (const auto& [id, t] : r.totals) report.totals[id] += t;
        for (const auto& [k, t] : r.eq_a_by_p_mod_4) report.eq_a_by_p_mod_4[k] += t;
        std::move(r.verdicts.begin(), r.verdicts.end(), std::back_inserter(report.verdicts));
    }
    std::stable_sort(report.verdicts.begin(), report.verdicts.end(), by_pair_then_theorem);
    report.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return report;
}

// ---------------------------------------------------------------------------
// Emission
// ---------------------------------------------------------------------------

inline const char* to_string(ReportFormat f)
{
    switch (f) {
    case ReportFormat::json: return "json";
    case ReportFormat::csv: return "csv";
    case ReportFormat::human: return "human";
    }
    return "?";
}

inline nlohmann::ordered_json verdict_json(const Verdict& v)
{
    nlohmann::ordered_json j;
    j["theorem_id"] = std::string(to_string(v.theorem));
    j["p"] = v.p;
    j["q"] = v.q ? nlohmann::ordered_json(*v.q) : nlohmann::ordered_json(nullptr);
    j["predicted"] = v.predicted;
    j["computed"] = v.computed;
    j["detail"] = v.detail;
    return j;
}

inline nlohmann::ordered_json totals_json(const Totals& t)
{
    return {{"applicable", t.applicable}, {"passed", t.passed}, {"failed", t.failed}, {"skipped", t.skipped}};
}

/// {config, totals, failures, runtime_ms}. The worker count is not echoed and
/// runtime_ms is null unless timing was requested, so equal scans produce
/// equal bytes.
inline nlohmann::ordered_json report_json(const ScanReport& r)
{
    nlohmann::ordered_json j;
    auto& c = j["config"];
    c["p_max"] = r.config.p_max;
    c["q_set"] = r.config.resolved_q_set();
    auto& th = c["theorems"] = nlohmann::ordered_json::array();
    for (auto id : r.config.theorems) th.push_back(std::string(to_string(id)));

    auto& totals = j["totals"];
    for (const auto& [id, t] : r.totals) totals[std::string(to_string(id))] = totals_json(t);
    if (!r.eq_a_by_p_mod_4.empty()) {
        auto& sub = j["eq_a_subregimes"];
        for (const auto& [k, t] : r.eq_a_by_p_mod_4) sub["p" + std::to_string(k) + "mod4"] = totals_json(t);
    }
    auto& fails = j["failures"] = nlohmann::ordered_json::array();
    for (const auto& v : r.verdicts)
        if (v.failed()) fails.push_back(verdict_json(v));
    j["runtime_ms"] = r.config.timing ? nlohmann::ordered_json(static_cast<u64>(r.runtime_ms))
                                      : nlohmann::ordered_json(nullptr);
    return j;
}

namespace detail {

inline std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

} // namespace detail

inline void write_csv(std::ostream& os, const ScanReport& r)
{
    os << "theorem_id,p,q,predicted,computed,pass,detail\n";
    for (const auto& v : r.verdicts) {
        os << to_string(v.theorem) << ',' << v.p << ',' << (v.q ? std::to_string(*v.q) : "") << ','
           << detail::csv_field(v.predicted) << ',' << detail::csv_field(v.computed) << ','
           << (v.passed() ? "true" : "false") << ',' << detail::csv_field(v.detail) << '\n';
    }
}

/// One-line summaries for the small-q cases, in the form
/// "q=3: Π_1 is a quadratic residue for all 6 scanned p".
inline std::vector<std::string> small_q_summaries(const ScanReport& r)
{
    struct Tally {
        u64 t1_pass = 0, t1_fail = 0, pair_same = 0, pair_total = 0;
    };
    std::map<u64, Tally> by_q;
    for (const auto& v : r.verdicts) {
        if (!v.q) continue;
        const u64 q = *v.q;
        if (q != 3 && q != 5 && q != 7 && q != 11) continue;
        if (v.theorem == TheoremId::t1) (v.passed() ? by_q[q].t1_pass : by_q[q].t1_fail) += 1;
        if (v.theorem == TheoremId::corollary && q == 7) {
            ++by_q[q].pair_total;
            if (v.computed.find("pi1_pi3=same") != std::string::npos) ++by_q[q].pair_same;
        }
    }
    const std::map<u64, std::string> product_name = {
        {3, "Π_1"}, {5, "Π_2"}, {7, "Π_1·Π_3"}, {11, "Π_1·Π_3·Π_5"}};
    std::vector<std::string> lines;
    for (const auto& [q, t] : by_q) {
        if (t.t1_pass + t.t1_fail == 0) continue;
        std::string s = "q=" + std::to_string(q) + ": " + product_name.at(q);
        if (t.t1_fail == 0)
            s += " is a quadratic residue for all " + std::to_string(t.t1_pass) + " scanned p";
        else
            s += " failed to be a quadratic residue for " + std::to_string(t.t1_fail) + " of " +
                 std::to_string(t.t1_pass + t.t1_fail) + " scanned p";
        if (q == 7 && t.pair_total)
            s += "; Π_1 and Π_3 share their symbol in " + std::to_string(t.pair_same) + " of " +
                 std::to_string(t.pair_total);
        lines.push_back(std::move(s));
    }
    return lines;
}

inline void write_human(std::ostream& os, const ScanReport& r)
{
    os << "scan p < " << r.config.p_max << ", " << r.config.resolved_q_set().size() << " values of q\n";
    os << "theorem      applicable   passed   failed  skipped\n";
    for (const auto& [id, t] : r.totals) {
        std::string name(to_string(id));
        name.resize(12, ' ');
        os << name << ' ' << std::setw(10) << t.applicable << ' ' << std::setw(8) << t.passed << ' '
           << std::setw(8) << t.failed << ' ' << std::setw(8) << t.skipped << '\n';
    }
    for (const auto& [k, t] : r.eq_a_by_p_mod_4)
        os << "  eq_a with p ≡ " << k << " mod 4: " << t.passed << "/" << t.applicable << " passed\n";
    for (const auto& line : small_q_summaries(r)) os << line << '\n';
    for (const auto& v : r.verdicts) {
        if (!v.failed()) continue;
        os << "FAIL " << to_string(v.theorem) << " p=" << v.p << (v.q ? " q=" + std::to_string(*v.q) : "")
           << "\n  predicted: " << v.predicted << "\n  computed:  " << v.computed << "\n  detail:    " << v.detail
           << '\n';
    }
    if (r.config.timing) os << "runtime " << static_cast<u64>(r.runtime_ms) << " ms\n";
}

inline void write_report(std::ostream& os, const ScanReport& r)
{
    switch (r.config.format) {
    case ReportFormat::json: os << report_json(r).dump(2) << '\n'; break;
    case ReportFormat::csv: write_csv(os, r); break;
    case ReportFormat::human: write_human(os, r); break;
    }
}

/// Default worker count: $GAUSSPROD_WORKERS if set and positive, else 1.
inline unsigned default_workers()
{
    if (const char* env = std::getenv("GAUSSPROD_WORKERS")) {
        try {
            const long v = std::stol(env);
            if (v >= 1) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
    }
    return 1;
}

} // namespace gaussprod
