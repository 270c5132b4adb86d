// One line per acceptance criterion; exit status 1 if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "oracle.hpp"
#include "rhopi/encoder.hpp"
#include "rhopi/harness.hpp"

using namespace rhopi;
using harness::Outcome;

namespace {

struct Result {
    bool ok;
    std::string detail;
};

Result from_report(const harness::Report& r) {
    std::string detail = std::to_string(r.count(Outcome::Pass)) + " pass, " + std::to_string(r.count(Outcome::Fail)) +
                         " fail, " + std::to_string(r.count(Outcome::Unknown)) + " unknown";
    for (const auto& c : r.checks)
        if (c.verdict != Outcome::Pass) {
            detail += "; first: " + c.label + " [" + c.evidence + "]";
            break;
        }
    return {r.passed() && r.count(Outcome::Unknown) == 0, detail};
}

int failures = 0;

void criterion(int n, const char* title, double limit_s, const std::function<Result()>& run) {
    auto t0 = std::chrono::steady_clock::now();
    Result r = run();
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = secs < limit_s;
    bool ok = r.ok && in_time;
    if (!ok) ++failures;
    std::printf("criterion %2d %s  %s (%.2fs, limit %.0fs) %s%s\n", n, ok ? "PASS" : "FAIL", title, secs, limit_s,
                r.detail.c_str(), in_time ? "" : " [over time limit]");
    std::fflush(stdout);
}

}  // namespace

int main() {
    const auto corpus = harness::make_corpus({1, 50, 10});

    criterion(1, "counterexample 1", 30, [] { return from_report(harness::repro_cex1()); });
    criterion(2, "counterexample 2", 30, [] { return from_report(harness::repro_cex2()); });
    criterion(3, "separation witness", 1, [] { return from_report(harness::repro_separation_witness()); });
    criterion(4, "name server", 1, [] { return from_report(harness::check_name_server(5)); });
    criterion(5, "quote depth stratification", 5, [] { return from_report(harness::check_quote_depth(1, 1000)); });
    criterion(6, "parameter uniqueness", 10, [] { return from_report(harness::check_param_distinctness(1, 200)); });
    criterion(7, "substitution invariance", 10, [] { return from_report(harness::check_substitution(1, 200)); });
    criterion(8, "criteria suite seed 1", 120, [&] {
        auto r = harness::check_criteria(corpus);
        auto res = from_report(r);
        std::size_t unknown = r.count(Outcome::Unknown);
        res.ok = r.count(Outcome::Fail) == 0 && unknown * 5 < r.checks.size();
        return res;
    });
    criterion(9, "oracle agreement", 120, [] {
        auto terms = oracle::enumerate_procs(8);
        auto a = oracle::compare_with_struct_eq(terms);
        std::string detail = std::to_string(a.terms) + " terms, " + std::to_string(a.pairs) + " pairs, " +
                             std::to_string(a.oracle_classes) + " classes, " + std::to_string(a.disagreements) +
                             " disagreements";
        if (a.disagreements) detail += "; first: " + a.first_disagreement;
        return Result{a.disagreements == 0 && a.pairs >= 10000, detail};
    });
    criterion(10, "divergence contrast", 30, [&] { return from_report(harness::check_divergence_contrast(corpus)); });
    criterion(11, "reduction under renaming", 10,
              [] { return from_report(harness::check_reduction_renaming(1, 300)); });

    std::printf("%s\n", failures ? "acceptance: FAIL" : "acceptance: PASS");
    return failures ? 1 : 0;
}
