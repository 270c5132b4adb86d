#include "doctest.h"

#include "rhopi/rho_reduce.hpp"
#include "rhopi/rho_term.hpp"

using namespace rhopi;
using namespace rhopi::rho;

namespace {
Name at0() { return Name::quote(Proc::nil()); }
Name q(Proc p) { return Name::quote(std::move(p)); }
}  // namespace

TEST_CASE("n-drop collapses quoted drops") {
    CHECK(canon_name(q(Proc::drop(at0()))) == canon_name(at0()));
    CHECK(name_eq(q(Proc::drop(q(Proc::drop(at0())))), at0()));
    CHECK_FALSE(name_eq(at0(), lincr(at0())));
}

TEST_CASE("parallel composition is a commutative monoid") {
    Proc a = Proc::drop(at0());
    Proc b = Proc::lift(at0(), Proc::nil());
    CHECK(struct_eq(Proc::par(a, b), Proc::par(b, a)));
    CHECK(struct_eq(Proc::par(a, Proc::nil()), a));
    CHECK(struct_eq(Proc::par(Proc::par(a, b), a), Proc::par(a, Proc::par(b, a))));
}

TEST_CASE("alpha equivalence of inputs") {
    Name y1 = lincr(at0());
    Name y2 = rincr(at0());
    Proc p = Proc::input(at0(), y1, Proc::drop(y1));
    Proc r = Proc::input(at0(), y2, Proc::drop(y2));
    CHECK(struct_eq(p, r));
    Proc s = Proc::input(at0(), y1, Proc::drop(y2));
    CHECK_FALSE(struct_eq(p, s));
    CHECK(free_names(p) == make_name_set({at0()}));
}

TEST_CASE("communication substitutes the lifted process") {
    Name x1 = lincr(at0());
    Name y = rincr(at0());
    Proc p = Proc::par(Proc::input(at0(), y, Proc::drop(y)),
                       Proc::lift(at0(), Proc::lift(x1, Proc::nil())));
    auto s = step(p);
    REQUIRE(s.size() == 1);
    CHECK(struct_eq(s[0], Proc::lift(x1, Proc::nil())));
}

TEST_CASE("omega diverges and is truncated") {
    Name x = at0();
    Name y = lincr(at0());
    // D(x) | x!(D(x)) loops with a single state
    Proc d = copier(x);
    Proc omega = Proc::par(d, Proc::lift(x, d));
    auto lts = explore(omega, Bounds{1000, 50});
    CHECK(lts.states.size() == 1);
    CHECK(lts.edges[0].size() == 1);
    (void)y;
}

TEST_CASE("fresh names avoid the given set") {
    NameSet avoid = make_name_set({at0(), lincr(at0())});
    Name f = gen_fresh(avoid);
    CHECK_FALSE(contains(avoid, canon_name(f)));
    CHECK(quote_depth(at0()) == 1);
    CHECK(quote_depth(lincr(at0())) == 2);
}

TEST_CASE("namespace membership") {
    Name r = at0();
    CHECK(ns_member(r, NamespaceScheme::LeftIncrement, lincr(lincr(r))));
    CHECK(ns_member(r, NamespaceScheme::RightIncrement, rincr(r)));
    CHECK_FALSE(ns_member(r, NamespaceScheme::LeftIncrement, rincr(r)));
    CHECK(ns_member_any(std::span<const Name>(&r, 1), ncomp(lincr(r), rincr(r))));
}

TEST_CASE("barbs are restricted") {
    Proc p = Proc::lift(at0(), Proc::nil());
    CHECK(barbs(p, make_name_set({at0()})).size() == 1);
    CHECK(barbs(p, make_name_set({lincr(at0())})).empty());
}
