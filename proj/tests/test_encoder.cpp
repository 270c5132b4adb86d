#include "doctest.h"

#include "rhopi/encoder.hpp"
#include "rhopi/rho_reduce.hpp"

using namespace rhopi;
using namespace rhopi::enc;
using rho::Proc;

namespace {
Name at0() { return Name(); }
}  // namespace

TEST_CASE("renaming policy") {
    auto p = PiProc::par(PiProc::out("u", "w"), PiProc::out("w", "u"));
    auto phi = RenamingPolicy::for_term(p);
    CHECK(phi.at("u") == at0());
    CHECK(phi.at("w") == rho::lincr(at0()));
    auto again = RenamingPolicy::for_term(p);
    CHECK(again.entries() == phi.entries());
    RenamingPolicy ten;
    for (int i = 0; i < 10; ++i) ten.add("a" + std::to_string(i));
    for (std::size_t i = 0; i < 10; ++i)
        for (std::size_t j = i + 1; j < 10; ++j)
            CHECK_FALSE(rho::name_eq(ten.entries()[i].second, ten.entries()[j].second));
}

TEST_CASE("derivability") {
    Name n = rho::lincr(rho::rincr(at0()));
    Name v = rho::rincr(rho::rincr(at0()));
    const Name nv[] = {n, v};
    CHECK(derivable(nv, rho::lincr(n)));
    CHECK(derivable(nv, rho::ncomp(n, n)));
    CHECK(derivable(at0(), rho::rincr(rho::lincr(at0()))));
    CHECK_FALSE(derivable(n, v));
}

TEST_CASE("translation clauses") {
    auto phi = RenamingPolicy::for_term(PiProc::par(PiProc::out("x", "z"), PiProc::out("a", "a")));
    Name n = rho::lincr_n(at0(), 7);
    Name v = rho::rincr(rho::lincr_n(at0(), 7));
    CHECK(translate_ns(PiProc::nil(), n, v, phi) == Proc::nil());
    CHECK(rho::struct_eq(translate_ns(PiProc::out("x", "z"), n, v, phi),
                         rho::emit(phi.at("x"), phi.at("z"))));
    auto nu = translate_ns(PiProc::nu("x", PiProc::out("x", "a")), n, v, phi);
    CHECK(rho::struct_eq(nu, Proc::par(rho::emit(v, n),
                                       Proc::input(n, phi.at("x"), rho::emit(phi.at("x"), phi.at("a"))))));
    auto s1 = PiProc::out("x", "z");
    auto s2 = PiProc::out("a", "a");
    CHECK(translate_ns(PiProc::par(s1, s2), n, v, phi) ==
          Proc::par(translate_ns(s1, rho::lincr(n), v, phi), translate_ns(s2, rho::rincr(n), v, phi)));
    CHECK_THROWS_AS(translate_ns(PiProc::repl(PiProc::out("x", "z")), n, v, phi), UnguardedReplication);
}

TEST_CASE("name server reaches its ready state in two steps and serves left increments") {
    auto e = encode_ns(PiProc::nil());
    auto lts = rho::explore(e.term);
    CHECK(lts.complete());
    CHECK(lts.states.size() == 3);
}

TEST_CASE("encoded communication exposes the received name") {
    auto p = PiProc::par(PiProc::out("x", "a"), PiProc::in("x", "y", PiProc::out("y", "b")));
    auto e = encode_ns(p);
    rho::NameSet fn = rho::make_name_set({e.policy.at("x"), e.policy.at("a"), e.policy.at("b")});
    CHECK(rho::weak_barb(e.term, fn, {BarbDir::Out, e.policy.at("a")}) == Tri::Yes);
}

TEST_CASE("legacy parameters") {
    auto p = PiProc::nu("z", PiProc::out("u", "z"));
    auto phi = RenamingPolicy::for_term(p);
    auto ps = default_legacy_params(p, phi);
    auto t = encode_mr(p, ps, phi);
    CHECK(rho::struct_eq(t, Proc::par(Proc::input(ps.p, phi.at("z"), rho::emit(phi.at("u"), phi.at("z"))),
                                      rho::emit(ps.p, ps.n))));
    auto single = PiProc::out("u", "u");
    auto phi1 = RenamingPolicy::for_term(single);
    auto ps1 = default_legacy_params(single, phi1);
    CHECK(ps1.n == rho::lincr(phi1.at("u")));
    CHECK(ps1.p == rho::rincr(phi1.at("u")));
    auto bang = encode_mr(PiProc::repl(PiProc::nil()), default_legacy_params(PiProc::nil(), phi1), phi1);
    CHECK(rho::explore(bang, Bounds{2000, 40}).truncated);
}
