#include "doctest.h"

#include "rhopi/pi_term.hpp"

using namespace rhopi;
using namespace rhopi::pi;

namespace {
Proc O(const char* x, const char* y) { return Proc::out(x, y); }
}  // namespace

TEST_CASE("restriction laws") {
    CHECK(pi_canon(Proc::nu("x", Proc::nil())) == Proc::nil());
    Proc p = Proc::par(O("x", "y"), O("y", "a"));
    CHECK(pi_struct_eq(Proc::nu("x", Proc::nu("y", p)), Proc::nu("y", Proc::nu("x", p))));
    CHECK(pi_struct_eq(Proc::par(Proc::nu("z", O("u", "z")), O("v", "a")),
                       Proc::nu("z", Proc::par(O("u", "z"), O("v", "a")))));
    CHECK_FALSE(pi_struct_eq(Proc::nu("z", O("u", "z")), O("u", "z")));
    // an unused restriction disappears
    CHECK(pi_struct_eq(Proc::nu("q", Proc::nu("z", O("u", "z"))), Proc::nu("z", O("u", "z"))));
}

TEST_CASE("alpha equivalence") {
    CHECK(pi_struct_eq(Proc::in("x", "y", O("y", "y")), Proc::in("x", "w", O("w", "w"))));
    CHECK_FALSE(pi_struct_eq(Proc::in("x", "y", O("y", "a")), Proc::in("x", "w", O("y", "a"))));
    CHECK(free_atoms(Proc::in("x", "y", O("y", "a"))) == AtomSet{"a", "x"});
}

TEST_CASE("substitution") {
    CHECK(pi_subst(O("y", "w"), "z", "y") == pi_canon(O("z", "w")));
    CHECK(pi_subst(Proc::nu("z", O("x", "z")), "w", "z") == pi_canon(Proc::nu("z", O("x", "z"))));
    CHECK(pi_subst(Proc::in("x", "y", O("y", "y")), "z", "x") ==
          pi_canon(Proc::in("z", "y", O("y", "y"))));
    // capture is avoided
    CHECK(pi_subst(Proc::in("x", "y", O("y", "a")), "y", "a") ==
          pi_canon(Proc::in("x", "w", O("w", "y"))));
}

TEST_CASE("reduction") {
    auto s = pi_step(Proc::par(Proc::in("x", "y", O("y", "w")), O("x", "z")));
    REQUIRE(s.size() == 1);
    CHECK(s[0] == pi_canon(O("z", "w")));

    Proc bang = Proc::repl(Proc::in("x", "y", Proc::nil()));
    s = pi_step(Proc::par(bang, O("x", "a")));
    REQUIRE(s.size() == 1);
    CHECK(s[0] == pi_canon(bang));

    s = pi_step(Proc::par(Proc::nu("z", O("u", "z")), Proc::in("u", "y", O("y", "a"))));
    REQUIRE(s.size() == 1);
    CHECK(s[0] == pi_canon(Proc::nu("z", O("z", "a"))));
}

TEST_CASE("replication redexes across copies and across replications") {
    Proc a = Proc::repl(Proc::in("x", "y", O("y", "b")));
    Proc b = Proc::repl(O("x", "c"));
    auto s = pi_step(Proc::par(a, b));
    REQUIRE(s.size() == 1);
    CHECK(pi_barbs(s[0], {"c"}) == BarbSet{{BarbDir::Out, "c"}});

    Proc body = Proc::par(Proc::in("x", "y", O("y", "b")), O("x", "c"));
    Proc r = Proc::repl(body);
    CHECK(pi_step(r) == pi_step(Proc::par(body, r)));
}

TEST_CASE("barbs") {
    auto b = pi_barbs(Proc::par(O("x", "y"), Proc::in("z", "w", Proc::nil())), {"x", "z"});
    CHECK(b == BarbSet{{BarbDir::In, "z"}, {BarbDir::Out, "x"}});
    CHECK(pi_barbs(Proc::nu("x", O("x", "y")), {"x"}).empty());
    CHECK(pi_barbs(Proc::repl(O("x", "y")), {"x"}) == BarbSet{{BarbDir::Out, "x"}});
}
