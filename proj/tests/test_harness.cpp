#include <algorithm>

#include "doctest.h"
#include "json.hpp"
#include "oracle.hpp"
#include "rhopi/harness.hpp"
#include "rhopi/syntax.hpp"

using namespace rhopi;
using harness::Outcome;

namespace {

std::size_t constructors(const pi::Proc& p) {
    switch (p.kind()) {
    case pi::PiKind::Nil:
    case pi::PiKind::Output: return 1;
    case pi::PiKind::Input:
    case pi::PiKind::New:
    case pi::PiKind::Repl: return 1 + constructors(p.body());
    case pi::PiKind::Par: {
        std::size_t n = p.children().size() - 1;
        for (const auto& c : p.children()) n += constructors(c);
        return n;
    }
    }
    return 1;
}

bool guarded(const pi::Proc& p) {
    switch (p.kind()) {
    case pi::PiKind::Repl: return p.body().kind() == pi::PiKind::Input && guarded(p.body().body());
    case pi::PiKind::Input:
    case pi::PiKind::New: return guarded(p.body());
    case pi::PiKind::Par:
        return std::all_of(p.children().begin(), p.children().end(), [](const pi::Proc& c) { return guarded(c); });
    default: return true;
    }
}

const harness::Check* find(const harness::Report& r, const std::string& suffix) {
    for (const auto& c : r.checks)
        if (c.label.size() >= suffix.size() && c.label.compare(c.label.size() - suffix.size(), suffix.size(), suffix) == 0)
            return &c;
    return nullptr;
}

}  // namespace

TEST_CASE("separation witness passes its three checks") {
    auto r = harness::repro_separation_witness();
    CHECK(r.passed());
    CHECK(r.count(Outcome::Pass) == 3);
}

TEST_CASE("name server serves successive left increments") {
    auto r = harness::check_name_server();
    for (const auto& c : r.checks) CHECK_MESSAGE(c.verdict == Outcome::Pass, c.label << ": " << c.evidence);
}

TEST_CASE("second counterexample reproduces") {
    auto r = harness::repro_cex2();
    for (const auto& c : r.checks) CHECK_MESSAGE(c.verdict == Outcome::Pass, c.label << ": " << c.evidence);
}

TEST_CASE("corpus generation is deterministic and stays in the fragment") {
    auto a = harness::make_corpus({7, 40, 10});
    auto b = harness::make_corpus({7, 40, 10});
    auto c = harness::make_corpus({8, 40, 10});
    REQUIRE(a.terms.size() == 40);
    CHECK(a.terms == b.terms);
    CHECK(a.terms != c.terms);
    for (const auto& p : a.terms) {
        CHECK(constructors(p) <= 10);
        CHECK(guarded(p));
    }
}

TEST_CASE("criteria on hand-picked terms") {
    harness::Corpus corpus;
    corpus.terms = {syntax::parse_pi("x!a | x?(y).y!b"), syntax::parse_pi("!x?(y).0 | x!a"), syntax::parse_pi("0")};
    auto r = harness::check_criteria(corpus);
    CHECK(r.count(Outcome::Fail) == 0);
    const auto* comp = find(r, "term 0 operational completeness");
    REQUIRE(comp);
    CHECK(comp->verdict == Outcome::Pass);
    CHECK(comp->evidence.find("1 source steps") != std::string::npos);
    const auto* div = find(r, "term 1 divergence reflection");
    REQUIRE(div);
    CHECK(div->verdict == Outcome::Pass);
    for (const auto& c : r.checks)
        if (c.label.rfind("term 2 ", 0) == 0) CHECK(c.verdict == Outcome::Pass);
}

TEST_CASE("report serializes to JSON") {
    harness::Report r;
    r.name = "demo";
    r.expect("ok", true);
    r.add("bad", Outcome::Fail);
    auto j = nlohmann::json::parse(r.to_json());
    CHECK(j["name"] == "demo");
    CHECK(j["passed"] == false);
    CHECK(j["checks"].size() == 2);
    CHECK(j["checks"][1]["verdict"] == "fail");
    CHECK(!j["checks"][1]["evidence"].get<std::string>().empty());
}

TEST_CASE("property checks") {
    CHECK(harness::check_quote_depth(3, 200).passed());
    CHECK(harness::check_param_distinctness(3, 50).passed());
    CHECK(harness::check_substitution(3, 50).passed());
    CHECK(harness::check_reduction_renaming(3, 50).passed());
}

TEST_CASE("equivalent variants are equivalent") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        auto p = harness::random_rho(rng, 10);
        auto q = harness::equivalent_variant(rng, p);
        CHECK_MESSAGE(rho::struct_eq(p, q), syntax::print(p) << " vs " << syntax::print(q));
    }
}

TEST_CASE("rewrite oracle") {
    using rho::Name;
    using rho::Proc;
    const Name z;
    SUBCASE("unit law and n-drop are found") {
        auto a = oracle::compare_with_struct_eq(
            {Proc::lift(z, Proc::nil()), Proc::lift(Name::quote(Proc::drop(z)), Proc::par(Proc::nil(), Proc::nil()))});
        CHECK(a.oracle_classes == 1);
        CHECK(a.disagreements == 0);
    }
    SUBCASE("distinct terms stay apart") {
        auto a = oracle::compare_with_struct_eq({Proc::lift(z, Proc::nil()), Proc::input(z, z, Proc::nil())});
        CHECK(a.oracle_classes == 2);
        CHECK(a.disagreements == 0);
    }
    SUBCASE("small enumeration agrees") {
        auto terms = oracle::enumerate_procs(6);
        CHECK(terms.size() > 100);
        auto a = oracle::compare_with_struct_eq(terms);
        CHECK(a.disagreements == 0);
    }
}

TEST_CASE("printer and parser round trip on random terms") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 1000; ++i) {
        auto p = harness::random_rho(rng, 12);
        auto c = rho::canon_proc(p);
        REQUIRE_MESSAGE(rho::canon_proc(syntax::parse_rho(syntax::print(p))) == c, syntax::print(p));
        REQUIRE(rho::canon_proc(syntax::parse_rho(syntax::print(c))) == c);
    }
    for (int i = 0; i < 1000; ++i) {
        auto p = harness::random_pi(rng, 12);
        auto c = pi::pi_canon(p);
        REQUIRE_MESSAGE(pi::pi_canon(syntax::parse_pi(syntax::print(p))) == c, syntax::print(p));
        REQUIRE(pi::pi_canon(syntax::parse_pi(syntax::print(c))) == c);
    }
}
