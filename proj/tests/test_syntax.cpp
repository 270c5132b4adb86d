#include "doctest.h"

#include "rhopi/rho_reduce.hpp"
#include "rhopi/syntax.hpp"

using namespace rhopi;
using namespace rhopi::syntax;

TEST_CASE("rho parsing") {
    auto p = parse_rho("@0?(y).*y | @0!(0)");
    REQUIRE(p.kind() == rho::ProcKind::Par);
    CHECK(p.children()[0].kind() == rho::ProcKind::Input);
    CHECK(p.children()[1].kind() == rho::ProcKind::Lift);
    CHECK(rho::name_eq(parse_rho_name("@(*(@0))"), parse_rho_name("@0")));
    CHECK(rho::name_eq(parse_rho_name("@*@0"), rho::Name()));
    CHECK_THROWS_AS(parse_rho("*@("), ParseError);
    CHECK_THROWS_AS(parse_rho("#0"), ParseError);
    CHECK_THROWS_AS(parse_rho("x!(0)"), ParseError);
    try {
        parse_rho("@0!(0) |\n  *@(");
        FAIL("expected error");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
}

TEST_CASE("rho parenthesized subjects and definitions") {
    auto p = parse_rho("def x1 = @(@0!(0))\n// comment\n@0?(y).*y | @0!((x1)!(0))");
    auto s = rho::step(p);
    REQUIRE(s.size() == 1);
    CHECK(rho::struct_eq(s[0], parse_rho("def x1 = @(@0!(0))\nx1!(0)")));
    CHECK(rho::struct_eq(parse_rho("(@0!(0) | 0)"), parse_rho("@0!(0)")));
}

TEST_CASE("rho round trip") {
    for (const char* src : {"@0?(y).( *y | @(y!(0))!(0) )", "@0?(a).@0?(b).*a | *@0",
                            "@(@0?(y).*y)!(@0?(z).z!(*z))"}) {
        auto p = parse_rho(src);
        auto c = rho::canon_proc(p);
        CHECK(rho::struct_eq(parse_rho(print(c)), c));
        CHECK(rho::struct_eq(parse_rho(print(p)), p));
    }
}

TEST_CASE("pi parsing and round trip") {
    auto p = parse_pi("new x . !x?(y).0");
    CHECK(p.kind() == pi::PiKind::New);
    CHECK(p.body().kind() == pi::PiKind::Repl);
    auto q = parse_pi("new x . a!x | b!x");
    CHECK(q.kind() == pi::PiKind::Par);
    CHECK_THROWS_AS(parse_pi("new . 0"), ParseError);
    CHECK_THROWS_AS(parse_pi("x!new"), ParseError);
    for (const char* src : {"x?(y).y!w | x!z", "new z . (u!z | y0!z)", "!x?(y).new w . (y!w | w?(q).0)"}) {
        auto t = pi::pi_canon(parse_pi(src));
        CHECK(pi::pi_canon(parse_pi(print(t))) == t);
    }
    CHECK(pi::pi_struct_eq(parse_pi("def p = x!y\np | p"), parse_pi("x!y | x!y")));
}

TEST_CASE("encode output with aliases") {
    auto src = parse_pi("new z . u!z");
    auto phi = enc::RenamingPolicy::for_term(src);
    auto ps = enc::default_legacy_params(src, phi);
    auto t = enc::encode_mr(src, ps, phi);
    auto a = aliases_for(phi);
    a.emplace(rho::canon_name(ps.n), "n");
    a.emplace(rho::canon_name(ps.p), "p");
    CHECK(print(t, a) == "p?(z).( u!(*z) ) | p!(*n)");
}
