// gaussprod: scans, single computations and the embedded self-test.
//
// Exit status: 0 all checks passed, 1 theorem failure(s), 2 usage error,
// 3 internal assertion.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gaussprod/gaussprod.hpp"

namespace {

using namespace gaussprod;

constexpr int exit_failures = 1;
constexpr int exit_usage = 2;
constexpr int exit_internal = 3;

std::vector<TheoremId> parse_theorems(const std::vector<std::string>& names)
{
    std::vector<TheoremId> ids;
    for (const auto& n : names) {
        if (n == "all") return {scan_theorems.begin(), scan_theorems.end()};
        auto id = theorem_from_string(n);
        if (!id || *id == TheoremId::beta) throw precondition_error("unknown theorem id '" + n + "'");
        if (std::find(ids.begin(), ids.end(), *id) == ids.end()) ids.push_back(*id);
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

ReportFormat parse_format(const std::string& s)
{
    if (s == "json") return ReportFormat::json;
    if (s == "csv") return ReportFormat::csv;
    if (s == "human") return ReportFormat::human;
    throw precondition_error("unknown format '" + s + "'");
}

struct ComputeArgs {
    u64 p = 0;
    u64 q = 0;
    std::string what;
    std::string format = "human";
    bool generalized = false;
};

template <class Range>
std::string bracket(const Range& r)
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

int run_compute(const ComputeArgs& a)
{
    const bool json = a.format == "json";
    if (!json && a.format != "human") throw precondition_error("compute supports --format human|json");
    nlohmann::ordered_json j;
    std::ostringstream out;
    auto need_q = [&] {
        if (a.q == 0) throw precondition_error("--q is required for --what " + a.what);
    };
    auto need_p = [&] {
        if (a.p == 0) throw precondition_error("--p is required for --what " + a.what);
    };

    if (a.what == "products" || a.what == "gproducts") {
        need_p();
        need_q();
        const auto t = a.what == "products" ? partial_products(a.p, a.q) : generalized_partial_products(a.p, a.q);
        out << bracket(t.values);
        j["values"] = t.values;
    } else if (a.what == "counts") {
        need_p();
        need_q();
        const bool gen = a.generalized || (a.p - 1) % a.q != 0;
        const auto c = block_counts(a.p, a.q, gen ? BlockConvention::generalized : BlockConvention::plain);
        out << "convention=" << to_string(c.convention) << " a=" << bracket(c.residues)
            << " b=" << bracket(c.nonresidues);
        j["convention"] = to_string(c.convention);
        j["a"] = c.residues;
        j["b"] = c.nonresidues;
    } else if (a.what == "classnumber") {
        need_p();
        const u64 q = a.q ? a.q : (a.p == 3 ? 5 : 3);
        const auto d = class_number_dirichlet(a.p);
        const auto l = class_number_lemma1(a.p, q);
        const auto f = class_number_forms(a.p);
        out << "dirichlet=" << d.h << " " << l.method_name() << "=" << l.h << " forms=" << f.h;
        j["dirichlet"] = d.h;
        j["lemma1"] = {{"q", q}, {"h", l.h}};
        j["forms"] = f.h;
    } else if (a.what == "representation") {
        need_p();
        need_q();
        const auto r = hahn_lee_representation(a.p, a.q);
        out << "a=" << r.a << " b=" << r.b;
        j["a"] = r.a.str();
        j["b"] = r.b.str();
        j["h_q"] = r.class_number_q;
        j["solutions"] = r.solutions;
    } else if (a.what == "beta") {
        need_q();
        const auto d = square_subgroup(a.q);
        out << "H=" << bracket(d.squares) << " negH=" << bracket(d.negated_in_squares) << " beta=" << d.beta_string();
        j["H"] = d.squares;
        j["negH"] = d.negated_in_squares;
        j["beta"] = d.beta_string();
        if (a.q > 3) {
            const auto v = beta_identity_check(a.q);
            out << " identity=" << to_string(v.outcome);
            j["identity"] = std::string(to_string(v.outcome));
        }
    } else {
        throw precondition_error("unknown --what '" + a.what + "'");
    }
    if (json)
        std::cout << j.dump(2) << '\n';
    else
        std::cout << out.str() << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Gauss-factorial partial products, class numbers and exhaustive verification"};
    app.require_subcommand(1);

    ScanConfig scan;
    std::vector<std::string> theorem_names{"all"};
    std::string format = "json";
    std::string output;
    scan.workers = default_workers();
    auto* scan_cmd = app.add_subcommand("scan", "Verify theorems over ranges of (p, q)");
    scan_cmd->add_option("--p-max", scan.p_max, "Scan primes p < P_MAX")->default_val(1000);
    scan_cmd->add_option("--q", scan.q_set, "Explicit q values (repeatable or comma separated)")->delimiter(',');
    scan_cmd->add_option("--q-max", scan.q_max, "Use all odd primes q <= Q_MAX when --q is absent")->default_val(97);
    scan_cmd->add_option("--theorems", theorem_names, "Theorem ids or 'all'")->delimiter(',');
    scan_cmd->add_option("--workers", scan.workers, "Worker threads (default $GAUSSPROD_WORKERS or 1)");
    scan_cmd->add_option("--format", format, "json, csv or human")->default_val("json");
    scan_cmd->add_option("--output", output, "Output path (default stdout)");
    scan_cmd->add_flag("--timing", scan.timing, "Include runtime_ms in the report");

    ComputeArgs compute;
    auto* compute_cmd = app.add_subcommand("compute", "Print one quantity for given p, q");
    compute_cmd->add_option("--p", compute.p, "Prime p");
    compute_cmd->add_option("--q", compute.q, "Prime q");
    compute_cmd->add_option("--what", compute.what, "products, gproducts, counts, classnumber, representation, beta")
        ->required();
    compute_cmd->add_option("--format", compute.format, "human or json")->default_val("human");
    compute_cmd->add_flag("--generalized", compute.generalized, "Use floor-bounded blocks for counts");

    auto* selftest_cmd = app.add_subcommand("selftest", "Run the embedded fixture suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (*scan_cmd) {
            scan.theorems = parse_theorems(theorem_names);
            scan.format = parse_format(format);
            scan.validate();
            const ScanReport report = run_scan(scan);
            if (output.empty()) {
                write_report(std::cout, report);
            } else {
                std::ofstream f(output, std::ios::binary);
                if (!f) throw precondition_error("cannot open " + output);
                write_report(f, report);
            }
            if (!scan.timing) std::cerr << "runtime " << static_cast<u64>(report.runtime_ms) << " ms\n";
            return report.failed() == 0 ? 0 : exit_failures;
        }
        if (*compute_cmd) return run_compute(compute);
        if (*selftest_cmd) return run_selftest(std::cout).ok ? 0 : exit_failures;
    } catch (const precondition_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const internal_error& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return exit_internal;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return exit_internal;
    }
    return exit_usage;
}
