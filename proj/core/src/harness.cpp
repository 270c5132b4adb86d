#include "rhopi/harness.hpp"

#include <algorithm>
#include <chrono>
#include <optional>
#include <sstream>

#include "rhopi/rho_reduce.hpp"
#include "json.hpp"
#include "rhopi/syntax.hpp"

namespace rhopi::harness {

using rho::Name;
using RProc = rho::Proc;
using PProc = pi::Proc;

const char* to_string(Outcome o) {
    switch (o) {
    case Outcome::Pass: return "pass";
    case Outcome::Fail: return "fail";
    case Outcome::Unknown: return "unknown";
    }
    return "unknown";
}

void Report::add(std::string label, Outcome verdict, std::string evidence) {
    if (verdict == Outcome::Fail && evidence.empty()) evidence = "check failed";
    checks.push_back({std::move(label), verdict, std::move(evidence)});
}

void Report::expect(std::string label, bool ok, std::string evidence) {
    add(std::move(label), ok ? Outcome::Pass : Outcome::Fail, std::move(evidence));
}

bool Report::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.verdict == Outcome::Pass; });
}

std::size_t Report::count(Outcome o) const {
    return static_cast<std::size_t>(
        std::count_if(checks.begin(), checks.end(), [&](const Check& c) { return c.verdict == o; }));
}

std::string Report::to_json() const {
    nlohmann::json j;
    j["name"] = name;
    j["passed"] = passed();
    j["bounds"] = {{"max_states", bounds_used.max_states}, {"max_depth", bounds_used.max_depth}};
    j["counts"] = {{"pass", count(Outcome::Pass)}, {"fail", count(Outcome::Fail)},
                   {"unknown", count(Outcome::Unknown)}};
    nlohmann::json cs = nlohmann::json::array();
    for (const auto& c : checks)
        cs.push_back({{"label", c.label}, {"verdict", to_string(c.verdict)}, {"evidence", c.evidence}});
    j["checks"] = std::move(cs);
    return j.dump(2);
}

// ---------------------------------------------------------------------------
// Generators

namespace {

const char* const kAtoms[] = {"a", "b", "c", "d", "e", "f"};

std::size_t pick(std::mt19937_64& rng, std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

std::string atom(std::mt19937_64& rng) { return kAtoms[pick(rng, 6)]; }
// Subjects come from half the pool so that inputs and outputs meet often.
std::string subject(std::mt19937_64& rng) { return kAtoms[pick(rng, 3)]; }

PProc gen_pi(std::mt19937_64& rng, std::size_t budget) {
    if (budget <= 1) return pick(rng, 4) == 0 ? PProc::nil() : PProc::out(subject(rng), atom(rng));
    if (budget == 2 && pick(rng, 2) == 0) return PProc::in(subject(rng), atom(rng), gen_pi(rng, 1));
    // weights: nil, out, in, new, repl, par; leaves are rare while budget remains
    static const std::size_t small[] = {1, 3, 3, 2, 1, 5};
    static const std::size_t large[] = {0, 1, 3, 2, 1, 5};
    const std::size_t* w = budget >= 3 ? large : small;
    std::discrete_distribution<std::size_t> d(w, w + 6);
    switch (d(rng)) {
    case 0: return PProc::nil();
    case 1: return PProc::out(subject(rng), atom(rng));
    case 2: return PProc::in(subject(rng), atom(rng), gen_pi(rng, budget - 1));
    case 3: return PProc::nu(atom(rng), gen_pi(rng, budget - 1));
    case 4:
        if (budget < 3) return PProc::out(subject(rng), atom(rng));
        return PProc::repl(PProc::in(subject(rng), atom(rng), gen_pi(rng, budget - 2)));
    default: {
        if (budget < 3) return PProc::out(subject(rng), atom(rng));
        std::size_t left = 1 + pick(rng, budget - 2);
        return PProc::par(gen_pi(rng, left), gen_pi(rng, budget - 1 - left));
    }
    }
}

RProc gen_rho(std::mt19937_64& rng, std::size_t budget, std::vector<Name>& env);

Name gen_name(std::mt19937_64& rng, std::size_t budget, std::vector<Name>& env) {
    if (!env.empty() && pick(rng, 3) == 0) return env[pick(rng, env.size())];
    if (budget <= 1) return Name();
    return Name::quote(gen_rho(rng, budget - 1, env));
}

RProc gen_rho(std::mt19937_64& rng, std::size_t budget, std::vector<Name>& env) {
    if (budget <= 1) return RProc::nil();
    switch (pick(rng, 5)) {
    case 0: return RProc::nil();
    case 1: return RProc::drop(gen_name(rng, budget - 1, env));
    case 2: {
        std::size_t k = 1 + pick(rng, budget - 1);
        Name x = gen_name(rng, k, env);
        return RProc::lift(x, gen_rho(rng, budget - k, env));
    }
    case 3: {
        std::size_t k = 1 + pick(rng, budget - 1);
        Name x = gen_name(rng, k, env);
        Name y = gen_name(rng, std::max<std::size_t>(1, budget / 3), env);
        env.push_back(y);
        RProc body = gen_rho(rng, budget - k, env);
        env.pop_back();
        return RProc::input(x, y, body);
    }
    default: {
        std::size_t k = 1 + pick(rng, budget - 1);
        return RProc::par(gen_rho(rng, k, env), gen_rho(rng, budget - k, env));
    }
    }
}

/// Replaces level markers of a canonical term by concrete fresh binders.
struct Concretizer {
    std::mt19937_64& rng;
    std::vector<Name> avoid;

    // Deeper than every name in the term, hence not equivalent to any of them.
    Name fresh() {
        Name y = rho::gen_fresh(avoid);
        if (pick(rng, 2)) y = rho::rincr(y);
        avoid.push_back(y);
        return y;
    }

    static std::vector<Name> closed(const rho::NameSet& names) {
        std::vector<Name> out;
        for (const auto& x : names)
            if (!x.is_bound()) out.push_back(x);
        return out;
    }

    RProc proc(const RProc& p, std::vector<Name>& levels) {
        switch (p.kind()) {
        case rho::ProcKind::Nil: return pick(rng, 4) == 0 ? RProc::par(RProc::nil(), RProc::nil()) : p;
        case rho::ProcKind::Drop: return RProc::drop(name(p.name(), levels));
        case rho::ProcKind::Lift: return RProc::lift(name(p.name(), levels), proc(p.body(), levels));
        case rho::ProcKind::Input: {
            Name subject = name(p.name(), levels);
            Name y = fresh();
            levels.push_back(y);
            RProc body = proc(p.body(), levels);
            levels.pop_back();
            // the binder itself may be written in n-drop form
            Name binder = pick(rng, 4) == 0 ? Name::quote(RProc::drop(y)) : y;
            return RProc::input(subject, binder, body);
        }
        case rho::ProcKind::Par: {
            std::vector<RProc> cs;
            for (const auto& c : p.children()) cs.push_back(proc(c, levels));
            std::shuffle(cs.begin(), cs.end(), rng);
            if (pick(rng, 4) == 0) cs.push_back(RProc::nil());
            // random binary bracketing
            while (cs.size() > 2 && pick(rng, 2)) {
                std::size_t i = pick(rng, cs.size() - 1);
                cs[i] = RProc::par(cs[i], cs[i + 1]);
                cs.erase(cs.begin() + static_cast<std::ptrdiff_t>(i) + 1);
            }
            return RProc::par(std::move(cs));
        }
        }
        return p;
    }

    Name name(const Name& x, std::vector<Name>& levels) {
        Name out;
        if (x.kind() == rho::NameKind::Bound) {
            out = levels.at(x.index());
        } else {
            std::vector<Name> inner;  // quotes are closed
            out = Name::quote(proc(x.body(), inner));
        }
        if (pick(rng, 5) == 0) out = Name::quote(RProc::drop(out));
        return out;
    }
};

}  // namespace

PProc random_pi(std::mt19937_64& rng, std::size_t size_limit) {
    const std::size_t limit = std::max<std::size_t>(1, size_limit);
    std::size_t budget = limit / 2 + 1 + pick(rng, limit - limit / 2);
    // a top-level composition of a few components, so that prefixes meet
    std::size_t parts = std::min<std::size_t>(1 + pick(rng, 4), (budget + 1) / 2);
    if (parts <= 1) return gen_pi(rng, budget);
    budget -= parts - 1;  // the composition nodes
    std::vector<PProc> cs;
    for (std::size_t i = 0; i < parts; ++i) {
        std::size_t share = i + 1 == parts ? budget : 1 + pick(rng, budget - (parts - i - 1));
        budget -= share;
        cs.push_back(gen_pi(rng, share));
    }
    PProc out = cs.back();
    for (std::size_t i = cs.size() - 1; i-- > 0;) out = PProc::par(cs[i], out);
    return out;
}

Corpus make_corpus(const CorpusOptions& options) {
    Corpus c;
    c.seed = options.seed;
    c.size_limit = options.size_limit;
    std::mt19937_64 rng(options.seed);
    while (c.terms.size() < options.count) c.terms.push_back(random_pi(rng, options.size_limit));
    return c;
}

RProc random_rho(std::mt19937_64& rng, std::size_t size) {
    std::vector<Name> env;
    return gen_rho(rng, size, env);
}

Name random_rho_name(std::mt19937_64& rng, std::size_t size) {
    std::vector<Name> env;
    return gen_name(rng, std::max<std::size_t>(size, 1), env);
}

RProc equivalent_variant(std::mt19937_64& rng, const RProc& p) {
    RProc c = rho::canon_proc(p);
    Concretizer z{rng, Concretizer::closed(rho::all_names(c))};
    std::vector<Name> levels;
    return z.proc(c, levels);
}

Name equivalent_variant(std::mt19937_64& rng, const Name& x) {
    Name c = rho::canon_name(x);
    Concretizer z{rng, {c}};
    std::vector<Name> levels;
    return z.name(c, levels);
}

// ---------------------------------------------------------------------------
// Separation witness and name server

Report repro_separation_witness(const Bounds& bounds) {
    Report r;
    r.name = "separation";
    r.bounds_used = bounds;
    const Name a;
    const Name x1 = rho::lincr(a);
    const Name x2 = rho::rincr(a);
    const RProc payload = RProc::par(RProc::drop(x1), RProc::drop(x2));
    const Name u = Name::quote(payload);
    const Name taken[] = {a, x1, x2, u};
    const Name n = rho::gen_fresh(taken);
    const RProc p = RProc::par(RProc::lift(a, payload), RProc::input(a, n, RProc::lift(n, RProc::nil())));
    const rho::NameSet only_u = rho::make_name_set({u});

    auto bs = rho::barbs(p, only_u);
    r.expect("P has no barb on u", bs.empty(), syntax::print(p));
    auto fn = rho::free_names(p);
    bool u_free = std::any_of(fn.begin(), fn.end(), [&](const Name& y) { return rho::name_eq(y, u); });
    r.expect("u is not free in P", !u_free);
    auto succ = rho::step(p);
    const RProc target = RProc::lift(u, RProc::nil());
    auto after = rho::barbs(target, only_u);
    r.expect("P reduces in one step to u!(0), which shows out u",
             succ.size() == 1 && rho::struct_eq(succ[0], target) && after.size() == 1 &&
                 after[0].dir == BarbDir::Out && rho::name_eq(after[0].name, u),
             succ.empty() ? "no reduct" : syntax::print(succ[0]));
    return r;
}

namespace {

/// Follows the unique reduction path until the term is stuck. Returns false if
/// any state has more than one reduct.
bool run_deterministic(RProc& state, std::size_t max_steps, std::size_t& taken) {
    taken = 0;
    for (; taken <= max_steps; ++taken) {
        auto succ = rho::step(state);
        if (succ.empty()) return true;
        if (succ.size() != 1) return false;
        state = succ[0];
    }
    return false;
}

}  // namespace

Report check_name_server(std::size_t requests) {
    Report r;
    r.name = "name-server";
    enc::EncodingParams ps = enc::choose_params(enc::RenamingPolicy());
    RProc state = rho::canon_proc(enc::name_server(ps));

    // The ready state, written out: v?(r).(D(x) | r!(*s) | z!(⌜*s⌝!(0))) | x!(Serve)
    const Name avoid[] = {ps.n, ps.v, ps.x, ps.z, ps.s, rho::lincr(ps.s)};
    const Name a = rho::rincr(rho::gen_fresh(avoid));
    const Name ret = rho::rincr(a);
    auto serve = RProc::input(
        ps.z, a,
        RProc::input(ps.v, ret,
                     RProc::par({rho::copier(ps.x), RProc::lift(ret, RProc::drop(a)),
                                 RProc::lift(ps.z, RProc::lift(a, RProc::nil()))})));
    auto ready = RProc::par(
        RProc::input(ps.v, ret,
                     RProc::par({rho::copier(ps.x), RProc::lift(ret, RProc::drop(ps.s)),
                                 RProc::lift(ps.z, RProc::lift(Name::quote(RProc::drop(ps.s)), RProc::nil()))})),
        RProc::lift(ps.x, serve));

    bool det = true;
    for (int i = 0; i < 2; ++i) {
        auto succ = rho::step(state);
        det = det && succ.size() == 1;
        if (succ.empty()) break;
        state = succ[0];
    }
    r.expect("two deterministic steps reach the ready state", det && rho::struct_eq(state, ready),
             syntax::print(state));
    r.expect("the ready state is stuck", rho::step(state).empty());

    std::vector<Name> taken(std::begin(avoid), std::end(avoid));
    Name expected = ps.s;
    std::vector<Name> names;
    for (std::size_t i = 0; i < requests; ++i) {
        Name reply = rho::gen_fresh(taken);
        taken.push_back(reply);
        state = RProc::par(state, rho::emit(ps.v, reply));
        std::size_t steps = 0;
        bool ok = run_deterministic(state, 16, steps);
        std::optional<Name> served;
        std::vector<RProc> rest;
        for (const auto& c : rho::components(state)) {
            if (!served && c.kind() == rho::ProcKind::Lift && rho::name_eq(c.name(), reply)) {
                served = rho::canon_name(Name::quote(c.body()));
                continue;
            }
            rest.push_back(c);
        }
        state = rho::canon_proc(RProc::par(std::move(rest)));
        const std::string label = "request " + std::to_string(i + 1) + " is served lincr^" + std::to_string(i) + "(s)";
        if (!ok || !served) {
            r.add(label, Outcome::Fail, "no deterministic reply after " + std::to_string(steps) + " steps");
        } else {
            r.expect(label, rho::name_eq(*served, expected), syntax::print(*served));
        }
        expected = rho::lincr(expected);
        if (served) names.push_back(*served);
    }
    bool distinct = true;
    for (std::size_t i = 0; i < names.size(); ++i)
        for (std::size_t j = i + 1; j < names.size(); ++j) distinct = distinct && !rho::name_eq(names[i], names[j]);
    r.expect("served names are pairwise distinct", distinct && names.size() == requests,
             std::to_string(names.size()) + " names served");
    return r;
}

// ---------------------------------------------------------------------------
// Counterexamples for the legacy encoding

namespace {

std::string fresh_atom(std::string base, const pi::AtomSet& used) {
    while (used.count(base)) base += "'";
    return base;
}

struct Context {
    std::string u, x, o, n1, n2, w, z, q;
    PProc hole_free;  // u?(n1).u?(n2).(n1!o | n2?(w).x!o)

    explicit Context(const PProc& avoid) {
        pi::AtomSet used;
        for (const auto& a : pi::atoms_in_order(avoid)) used.insert(a);
        auto take = [&](const char* base) {
            std::string a = fresh_atom(base, used);
            used.insert(a);
            return a;
        };
        u = take("u");
        x = take("x");
        o = take("o");
        n1 = take("n1");
        n2 = take("n2");
        w = take("w");
        z = take("z");
        q = take("q");
        hole_free = PProc::in(u, n1, PProc::in(u, n2, PProc::par(PProc::out(n1, o), PProc::in(n2, w, PProc::out(x, o)))));
    }
    PProc fill(const PProc& p) const { return PProc::par(p, hole_free); }
};

/// Objects of the top-level outputs on `chan`.
std::vector<Name> outputs_on(const RProc& state, const Name& chan) {
    std::vector<Name> out;
    for (const auto& c : rho::components(state))
        if (c.kind() == rho::ProcKind::Lift && rho::name_eq(c.name(), chan))
            out.push_back(rho::canon_name(Name::quote(c.body())));
    return out;
}

struct OutputRun {
    std::vector<Name> all;        // every object seen on the channel, over all explored states
    std::vector<Name> two_round;  // the objects of the first state with two outputs
    std::size_t states = 0;
};

/// Explores until some state carries two outputs on `chan`.
OutputRun two_rounds(const RProc& t, const Name& chan, const Bounds& bounds) {
    const Name c = rho::canon_name(chan);
    auto lts = explore_with<RProc, rho::ProcHash>(
        rho::canon_proc(t), [](const RProc& s) { return rho::step(s); }, bounds,
        [&](const RProc& s) { return outputs_on(s, c).size() >= 2; });
    OutputRun r;
    r.states = lts.states.size();
    for (const auto& s : lts.states)
        for (auto& y : outputs_on(s, c)) r.all.push_back(std::move(y));
    if (lts.stopped) r.two_round = outputs_on(lts.states.back(), c);
    return r;
}

bool all_equivalent_to(const std::vector<Name>& xs, const Name& y) {
    return std::all_of(xs.begin(), xs.end(), [&](const Name& x) { return rho::name_eq(x, y); });
}

std::string show_names(const std::vector<Name>& xs, const syntax::Aliases& aliases) {
    std::string out;
    for (std::size_t i = 0; i < xs.size() && i < 6; ++i) out += (i ? ", " : "") + syntax::print(xs[i], aliases);
    if (xs.size() > 6) out += ", ...";
    return out;
}

/// Union of barbs over every explored state.
std::set<std::string> reachable_barbs(const RProc& t, const rho::NameSet& restrict, const Bounds& bounds,
                                      const syntax::Aliases& aliases, std::size_t& states) {
    auto lts = rho::explore(t, bounds);
    states = lts.states.size();
    std::set<std::string> out;
    for (const auto& s : lts.states)
        for (const auto& b : rho::barbs(s, restrict))
            out.insert(std::string(b.dir == BarbDir::Out ? "out " : "in ") + syntax::print(b.name, aliases));
    return out;
}

std::string join_set(const std::set<std::string>& xs) {
    std::string out = "{";
    for (const auto& x : xs) out += (out.size() > 1 ? ", " : "") + x;
    return out + "}";
}

}  // namespace

Report repro_cex1(const PProc& q, const Bounds& bounds) {
    Report r;
    r.name = "cex1";
    r.bounds_used = bounds;
    const Context c(q);
    const PProc p1 = PProc::repl(PProc::par(PProc::nu(c.z, PProc::out(c.u, c.z)), q));
    const PProc p2 = PProc::nu(c.z, PProc::repl(PProc::par(PProc::out(c.u, c.z), q)));
    const PProc c1 = c.fill(p1), c2 = c.fill(p2);
    const pi::AtomSet observe{c.u, c.x, c.o};
    const pi::Barb out_x{BarbDir::Out, c.x};

    // (i) source side
    {
        auto lts = pi::pi_explore(c1, bounds);
        bool seen = std::any_of(lts.states.begin(), lts.states.end(),
                                [&](const PProc& s) { return pi::pi_has_barb(s, out_x); });
        std::string ev = std::to_string(lts.states.size()) + " states";
        if (!lts.complete()) r.add("C[P1'] never exhibits out x", Outcome::Unknown, "truncated after " + ev);
        else r.expect("C[P1'] never exhibits out x", !seen, ev);
    }
    {
        auto lts = explore_with<PProc, pi::ProcHash>(
            pi::pi_canon(c2), [](const PProc& s) { return pi::pi_step(s); }, bounds,
            [&](const PProc& s) { return pi::pi_has_barb(s, out_x); });
        if (!lts.stopped) {
            r.add("C[P2'] reaches out x", lts.truncated ? Outcome::Unknown : Outcome::Fail, "barb not reached");
        } else {
            auto d = lts.depth.back();
            r.expect("C[P2'] reaches out x within 3 steps", d <= 3, "depth " + std::to_string(d));
        }
    }

    // (ii) legacy translation
    enc::RenamingPolicy policy = enc::RenamingPolicy::for_term(c1);
    policy.register_names(c2);
    enc::LegacyParams ps = enc::default_legacy_params(c1, policy);
    syntax::Aliases aliases = syntax::aliases_for(policy);
    aliases[rho::canon_name(ps.n)] = "n";
    aliases[rho::canon_name(ps.p)] = "p";
    const Name& n = ps.n;
    const Name& pn = ps.p;
    const Name a = rho::ncomp(n, pn), b = rho::rincr(n), cc = rho::rincr(pn), d = rho::lincr(n),
               e = rho::lincr(pn), f = rho::rincr(d), g = rho::rincr(e), h = rho::ncomp(d, e), i = rho::lincr(d),
               j = rho::lincr(e);
    const Name phi_u = policy.at(c.u), phi_z = policy.at(c.z), phi_x = policy.at(c.x);

    enc::RenamingPolicy pol1 = policy, pol2 = policy;
    RProc t1 = enc::encode_mr(p1, ps, pol1);
    RProc t2 = enc::encode_mr(p2, ps, pol2);

    if (q.kind() == pi::PiKind::Nil) {
        using rho::copier;
        using rho::emit;
        RProc want1 = RProc::par(
            {RProc::lift(a, RProc::input(b, n, RProc::input(cc, pn, RProc::par({RProc::input(e, phi_z, emit(phi_u, phi_z)),
                                                                                    emit(e, d), copier(a),
                                                                                    RProc::lift(b, emit(n, n)),
                                                                                    RProc::lift(cc, emit(pn, pn))})))),
             copier(a), emit(b, d), emit(cc, e)});
        RProc want2 = RProc::par(
            RProc::input(pn, phi_z,
                         RProc::par({RProc::lift(h, RProc::input(f, d, RProc::input(g, e, RProc::par({emit(phi_u, phi_z),
                                                                                                       copier(h),
                                                                                                       RProc::lift(f, emit(d, d)),
                                                                                                       RProc::lift(g, emit(e, e))})))),
                                     copier(h), emit(f, i), emit(g, j)})),
            emit(pn, n));
        r.expect("translation of P1' matches the tabulated names", rho::struct_eq(t1, want1),
                 syntax::print(t1, aliases));
        r.expect("translation of P2' matches the tabulated names", rho::struct_eq(t2, want2),
                 syntax::print(t2, aliases));
    }

    aliases[rho::canon_name(d)] = "d";
    {
        auto run = two_rounds(t1, phi_u, bounds);
        std::string ev = "objects " + show_names(run.all, aliases) + " over " + std::to_string(run.states) + " states";
        if (run.two_round.size() < 2) r.add("P1' repeatedly outputs d on u", Outcome::Unknown, "two rounds not reached; " + ev);
        else r.expect("P1' repeatedly outputs d on u", all_equivalent_to(run.all, d), ev);
    }
    {
        auto run = two_rounds(t2, phi_u, bounds);
        std::string ev = "objects " + show_names(run.all, aliases) + " over " + std::to_string(run.states) + " states";
        if (run.two_round.size() < 2) r.add("P2' repeatedly outputs n on u", Outcome::Unknown, "two rounds not reached; " + ev);
        else r.expect("P2' repeatedly outputs n on u", all_equivalent_to(run.all, n), ev);
    }

    // (iii) the encodings of C[P1'] and C[P2'] show the same barbs
    {
        enc::RenamingPolicy k1 = policy, k2 = policy;
        RProc e1 = enc::encode_mr(c1, ps, k1);
        RProc e2 = enc::encode_mr(c2, ps, k2);
        rho::NameSet rs = rho::make_name_set({policy.at(c.u), phi_x, policy.at(c.o)});
        std::size_t s1 = 0, s2 = 0;
        auto b1 = reachable_barbs(e1, rs, bounds, aliases, s1);
        auto b2 = reachable_barbs(e2, rs, bounds, aliases, s2);
        const std::string want = "out " + syntax::print(phi_x, aliases);
        std::string ev = join_set(b1) + " vs " + join_set(b2) + " (" + std::to_string(s1) + " and " +
                         std::to_string(s2) + " states)";
        r.expect("both encodings reach out x", b1.count(want) && b2.count(want), ev);
        r.expect("no restricted barb separates the encodings", b1 == b2, ev);
    }
    return r;
}

Report repro_cex2(const Bounds& bounds) {
    Report r;
    r.name = "cex2";
    r.bounds_used = bounds;
    const Context c(PProc::nil());
    const PProc inner1 = PProc::nu(c.z, PProc::out(c.u, c.z));
    const PProc inner2 = PProc::nu(c.q, inner1);
    const PProc p1 = PProc::repl(inner1), p2 = PProc::repl(inner2);
    const PProc c1 = c.fill(p1), c2 = c.fill(p2);

    r.expect("P1 and P2 are structurally congruent", pi::pi_struct_eq(p1, p2),
             syntax::print(pi::pi_canon(p1)) + " vs " + syntax::print(pi::pi_canon(p2)));
    {
        auto v = equiv::barbed_bisim(c1, c2, pi::AtomSet{c.u, c.x, c.o}, equiv::Mode::Weak, bounds);
        r.add("C[P1] and C[P2] are weakly bisimilar",
              v.result == equiv::Verdict::Bisimilar ? Outcome::Pass
              : v.result == equiv::Verdict::Unknown ? Outcome::Unknown
                                                    : Outcome::Fail,
              std::string(equiv::to_string(v.result)) + ", " + std::to_string(v.left_states) + " states");
    }

    enc::RenamingPolicy policy = enc::RenamingPolicy::for_term(c1);
    policy.register_names(c2);
    enc::LegacyParams ps = enc::default_legacy_params(c2, policy);
    enc::validate(ps, [&] { enc::RenamingPolicy k = policy; k.register_names(c1); return k.image(); }());
    syntax::Aliases aliases = syntax::aliases_for(policy);
    const Name d = rho::lincr(ps.n);
    aliases[rho::canon_name(ps.n)] = "n";
    aliases[rho::canon_name(ps.p)] = "p";
    aliases[rho::canon_name(d)] = "d";
    const Name phi_u = policy.at(c.u), phi_x = policy.at(c.x);

    {
        enc::RenamingPolicy k = policy;
        RProc t = enc::translate_mr(inner1, ps.n, ps.p, k);
        std::size_t steps = 0;
        bool det = run_deterministic(t, 8, steps);
        r.expect("the inner translation of P1 reduces to u!(*n)", det && rho::struct_eq(t, rho::emit(phi_u, ps.n)),
                 syntax::print(t, aliases));
    }
    {
        enc::RenamingPolicy k = policy;
        RProc t = enc::translate_mr(inner2, ps.n, ps.p, k);
        std::size_t steps = 0;
        bool det = run_deterministic(t, 8, steps);
        r.expect("the inner translation of P2 reduces to u!(*d)", det && rho::struct_eq(t, rho::emit(phi_u, d)),
                 syntax::print(t, aliases));
    }

    enc::RenamingPolicy k1 = policy, k2 = policy;
    RProc t1 = enc::encode_mr(p1, ps, k1);
    RProc t2 = enc::encode_mr(p2, ps, k2);
    {
        auto run = two_rounds(t1, phi_u, bounds);
        std::string ev = show_names(run.two_round, aliases);
        if (run.two_round.size() < 2) {
            r.add("P1 outputs distinct names across rounds", Outcome::Unknown, "two rounds not reached");
        } else {
            bool distinct = true;
            for (std::size_t x = 0; x < run.two_round.size(); ++x)
                for (std::size_t y = x + 1; y < run.two_round.size(); ++y)
                    distinct = distinct && !rho::name_eq(run.two_round[x], run.two_round[y]);
            r.expect("P1 outputs distinct names across rounds", distinct, ev);
        }
    }
    {
        auto run = two_rounds(t2, phi_u, bounds);
        std::string ev = "objects " + show_names(run.all, aliases);
        if (run.two_round.size() < 2) r.add("P2 repeatedly outputs d on u", Outcome::Unknown, "two rounds not reached");
        else r.expect("P2 repeatedly outputs d on u", all_equivalent_to(run.all, d), ev);
    }
    {
        enc::RenamingPolicy k = policy;
        RProc e1 = enc::encode_mr(c1, ps, k);
        k = policy;
        RProc e2 = enc::encode_mr(c2, ps, k);
        rho::NameSet rs = rho::make_name_set({phi_x});
        const rho::Barb bx{BarbDir::Out, rho::canon_name(phi_x)};
        Tri w2 = rho::weak_barb(e2, rs, bx, bounds);
        Tri w1 = rho::weak_barb(e1, rs, bx, bounds);
        r.expect("the encoding of C[P2] reaches out x", w2 == Tri::Yes, to_string(w2));
        r.expect("the encoding of C[P1] does not reach out x within bounds", w1 != Tri::Yes, to_string(w1));
    }
    return r;
}

// ---------------------------------------------------------------------------
// Criteria over a corpus

namespace {

Outcome from_verdict(equiv::Verdict v) {
    switch (v) {
    case equiv::Verdict::Bisimilar: return Outcome::Pass;
    case equiv::Verdict::NotBisimilar: return Outcome::Fail;
    case equiv::Verdict::Unknown: return Outcome::Unknown;
    }
    return Outcome::Unknown;
}

rho::NameSet image_of(const pi::AtomSet& atoms, const enc::RenamingPolicy& policy) {
    std::vector<Name> out;
    for (const auto& a : atoms) out.push_back(policy.at(a));
    return rho::make_name_set(std::move(out));
}

std::string unused_atom(const PProc& p, std::string base) {
    auto atoms = pi::atoms_in_order(p);
    pi::AtomSet used(atoms.begin(), atoms.end());
    return fresh_atom(std::move(base), used);
}

Check check_independence(const PProc& p, const enc::Encoding& e1, const rho::NameSet& obs, const Bounds& bounds) {
    const Name old[] = {e1.params.n, e1.params.v, e1.params.x, e1.params.z, e1.params.s};
    enc::EncodingParams ps = enc::choose_params(e1.policy, old);
    ps.v = e1.params.v;
    ps.x = e1.params.x;
    ps.z = e1.params.z;
    try {
        enc::validate(ps, e1.policy.image());
    } catch (const enc::InvalidParams&) {
        ps = enc::choose_params(e1.policy, old);
    }
    enc::Encoding e2 = enc::encode_ns(p, e1.policy, ps);
    auto v = equiv::barbed_bisim(e1.term, e2.term, obs, equiv::Mode::Weak, bounds);
    return {"parameter independence", from_verdict(v.result),
            std::string(equiv::to_string(v.result)) + " (" + std::to_string(v.left_states) + " states)"};
}

bool substitution_commutes(const PProc& p, const std::string& w, const std::string& u, std::string& evidence) {
    enc::RenamingPolicy policy = enc::RenamingPolicy::for_term(p);
    policy.add(u);
    enc::EncodingParams ps = enc::choose_params(policy);
    enc::RenamingPolicy k1 = policy, k2 = policy;
    RProc lhs = enc::translate_ns(pi::rename_free(p, w, u), ps.n, ps.v, k1);
    RProc rhs = rho::subst_syn(enc::translate_ns(p, ps.n, ps.v, k2), policy.at(u), policy.at(w));
    if (rho::struct_eq(lhs, rhs)) return true;
    evidence = syntax::print(p) + " with " + u + " for " + w;
    return false;
}

Check check_subst(const PProc& p) {
    auto fn = pi::free_atoms(p);
    if (fn.empty()) return {"substitution", Outcome::Pass, "no free names"};
    std::string ev;
    bool ok = substitution_commutes(p, *fn.begin(), unused_atom(p, "u"), ev);
    return {"substitution", ok ? Outcome::Pass : Outcome::Fail, ev};
}

/// Reduction correspondence, checked on one joint weak partition of the
/// encodings of every reachable source state.
std::pair<Check, Check> check_operational(const PProc& p, const enc::Encoding& e, const rho::NameSet& obs, const Bounds& bounds) {
    Check comp{"operational completeness", Outcome::Unknown, {}};
    Check sound{"operational soundness", Outcome::Unknown, {}};
    auto src = pi::pi_explore(p, bounds);
    if (!src.complete()) {
        comp.evidence = sound.evidence = "source exploration truncated";
        return {comp, sound};
    }
    std::vector<rho::RhoLts> graphs;
    std::size_t total = 0;
    graphs.push_back(rho::explore(e.term, bounds));
    total += graphs.back().states.size();
    for (const auto& s : src.states) {
        if (total > bounds.max_states) break;
        graphs.push_back(rho::explore(enc::encode_ns(s, e.policy).term, bounds));
        total += graphs.back().states.size();
    }
    if (graphs.size() != src.states.size() + 1) {
        comp.evidence = sound.evidence = "state budget exhausted";
        return {comp, sound};
    }
    auto part = equiv::joint_partition(graphs, obs, equiv::Mode::Weak);
    if (!part.complete) {
        comp.evidence = sound.evidence = "an encoding exploration was truncated";
        return {comp, sound};
    }
    auto root_block = [&](std::size_t k) { return part.blocks[k + 1][graphs[k + 1].root]; };
    comp.verdict = Outcome::Pass;
    for (std::size_t k = 0; k < src.states.size() && comp.verdict == Outcome::Pass; ++k) {
        const auto& blocks = part.blocks[k + 1];
        for (auto t : src.edges[k]) {
            bool matched = std::find(blocks.begin(), blocks.end(), root_block(t)) != blocks.end();
            if (!matched) {
                comp.verdict = Outcome::Fail;
                comp.evidence = "step " + syntax::print(src.states[k]) + " -> " + syntax::print(src.states[t]) +
                                " has no weakly bisimilar encoded counterpart";
                break;
            }
        }
    }
    if (comp.verdict == Outcome::Pass) comp.evidence = std::to_string(src.edge_count()) + " source steps";
    sound.verdict = Outcome::Pass;
    for (std::size_t t = 0; t < graphs[0].states.size(); ++t) {
        bool found = false;
        for (std::size_t k = 0; k < src.states.size() && !found; ++k) found = part.blocks[0][t] == root_block(k);
        if (!found) {
            sound.verdict = Outcome::Fail;
            sound.evidence = "encoded state " + syntax::print(graphs[0].states[t], syntax::aliases_for(e)) +
                             " matches no encoded source reduct";
            break;
        }
    }
    if (sound.verdict == Outcome::Pass) sound.evidence = std::to_string(graphs[0].states.size()) + " encoded states";
    return {comp, sound};
}

Check check_observation(const PProc& p, const enc::Encoding& e, const rho::NameSet& obs, const Bounds& bounds) {
    const auto fn = pi::free_atoms(p);
    const auto source_barbs = pi::pi_barbs(pi::pi_canon(p), fn);
    Check c{"observation", Outcome::Pass, std::to_string(source_barbs.size()) + " source barbs"};
    for (const auto& a : fn) {
        for (BarbDir dir : {BarbDir::Out, BarbDir::In}) {
            bool src = std::find(source_barbs.begin(), source_barbs.end(), pi::Barb{dir, a}) != source_barbs.end();
            Tri tgt = equiv::restricted_weak_obs(p, e, obs, rho::Barb{dir, e.policy.at(a)}, bounds);
            const std::string what = std::string(dir == BarbDir::Out ? "out " : "in ") + a;
            if (tgt == Tri::Unknown) {
                if (c.verdict == Outcome::Pass) c = {c.label, Outcome::Unknown, what + ": target unknown"};
            } else if (src != (tgt == Tri::Yes)) {
                return {c.label, Outcome::Fail, what + ": source " + (src ? "yes" : "no") + ", target " + to_string(tgt)};
            }
        }
    }
    return c;
}

Check check_divergence(const PProc& p, const enc::Encoding& e, const Bounds& bounds) {
    Check c{"divergence reflection", Outcome::Unknown, {}};
    auto src = equiv::divergence_probe(p, bounds);
    if (src.result == equiv::Divergence::Diverges) return {c.label, Outcome::Pass, "source diverges"};
    auto tgt = equiv::divergence_probe(e.term, bounds);
    std::string ev = std::string("source ") + equiv::to_string(src.result) + ", target " +
                     equiv::to_string(tgt.result) + " (" + tgt.evidence + ")";
    if (tgt.result == equiv::Divergence::Terminates) return {c.label, Outcome::Pass, ev};
    if (src.result == equiv::Divergence::Terminates && tgt.result == equiv::Divergence::Diverges)
        return {c.label, Outcome::Fail, ev};
    return {c.label, Outcome::Unknown, ev};
}

}  // namespace

Report check_criteria(const Corpus& corpus, const Bounds& bounds) {
    Report r;
    r.name = "criteria";
    r.bounds_used = bounds;
    for (std::size_t k = 0; k < corpus.terms.size(); ++k) {
        const PProc& p = corpus.terms[k];
        const std::string tag = "term " + std::to_string(k) + " ";
        const std::string shown = syntax::print(p);
        enc::Encoding e = enc::encode_ns(p);
        const rho::NameSet obs = image_of(pi::free_atoms(p), e.policy);
        auto add = [&](Check c) {
            r.add(tag + c.label, c.verdict, shown + (c.evidence.empty() ? "" : ": " + c.evidence));
        };
        add(check_independence(p, e, obs, bounds));
        add(check_subst(p));
        auto [comp, sound] = check_operational(p, e, obs, bounds);
        add(comp);
        add(sound);
        add(check_observation(p, e, obs, bounds));
        add(check_divergence(p, e, bounds));
    }
    return r;
}

// ---------------------------------------------------------------------------
// Property checks

Report check_quote_depth(std::uint64_t seed, std::size_t pairs) {
    Report r;
    r.name = "quote-depth";
    std::mt19937_64 rng(seed);
    std::size_t equivalent = 0, violations = 0, bad_variants = 0;
    std::string first;
    for (std::size_t i = 0; i < pairs; ++i) {
        Name x = random_rho_name(rng, 4 + pick(rng, 10));
        Name y;
        if (i % 2 == 0) {
            y = equivalent_variant(rng, x);
            if (!rho::name_eq(x, y)) ++bad_variants;
        } else {
            y = random_rho_name(rng, 4 + pick(rng, 10));
        }
        if (!rho::name_eq(x, y)) continue;
        ++equivalent;
        if (rho::quote_depth(x) != rho::quote_depth(y)) {
            ++violations;
            if (first.empty()) first = syntax::print(x) + " vs " + syntax::print(y);
        }
    }
    r.expect("rewritten names stay equivalent", bad_variants == 0, std::to_string(bad_variants) + " broken variants");
    r.expect("equivalent names have equal quote depth", violations == 0 && equivalent > 0,
             std::to_string(equivalent) + " equivalent pairs of " + std::to_string(pairs) + ", " +
                 std::to_string(violations) + " violations" + (first.empty() ? "" : "; " + first));
    return r;
}

Report check_param_distinctness(std::uint64_t seed, std::size_t terms) {
    Report r;
    r.name = "param-distinctness";
    std::mt19937_64 rng(seed);
    std::size_t clashes = 0, underived = 0, materialized = 0;
    std::string first;
    for (std::size_t i = 0; i < terms; ++i) {
        PProc p = gen_pi(rng, 6 + pick(rng, 10));
        enc::RenamingPolicy policy = enc::RenamingPolicy::for_term(p);
        enc::EncodingParams ps = enc::choose_params(policy);
        enc::TranslationLog log;
        enc::translate_ns(p, ps.n, ps.v, policy, &log);
        materialized += log.materialized.size();
        for (std::size_t a = 0; a < log.materialized.size(); ++a)
            for (std::size_t b = a + 1; b < log.materialized.size(); ++b)
                if (rho::name_eq(log.materialized[a], log.materialized[b])) {
                    ++clashes;
                    if (first.empty()) first = syntax::print(p);
                }
        for (const auto& m : log.passed)
            if (!enc::derivable(ps.n, m)) ++underived;
    }
    r.expect("materialized parameters are pairwise distinct", clashes == 0,
             std::to_string(materialized) + " materialized, " + std::to_string(clashes) + " clashes" +
                 (first.empty() ? "" : "; " + first));
    r.expect("every passed parameter derives from n", underived == 0, std::to_string(underived) + " underived");
    return r;
}

namespace {

PProc random_open_pi(std::mt19937_64& rng) {
    for (;;) {
        PProc p = gen_pi(rng, 6 + pick(rng, 10));
        if (!pi::free_atoms(p).empty()) return p;
    }
}

std::string random_free_atom(std::mt19937_64& rng, const PProc& p) {
    auto fn = pi::free_atoms(p);
    auto it = fn.begin();
    std::advance(it, static_cast<std::ptrdiff_t>(pick(rng, fn.size())));
    return *it;
}

}  // namespace

Report check_substitution(std::uint64_t seed, std::size_t instances) {
    Report r;
    r.name = "substitution";
    std::mt19937_64 rng(seed);
    std::size_t failures = 0;
    std::string first;
    for (std::size_t i = 0; i < instances; ++i) {
        PProc p = random_open_pi(rng);
        std::string w = random_free_atom(rng, p);
        std::string ev;
        if (!substitution_commutes(p, w, unused_atom(p, "u"), ev)) {
            ++failures;
            if (first.empty()) first = ev;
        }
    }
    r.expect("translation commutes with renaming a free name", failures == 0,
             std::to_string(instances) + " instances, " + std::to_string(failures) + " failures" +
                 (first.empty() ? "" : "; " + first));
    return r;
}

Report check_reduction_renaming(std::uint64_t seed, std::size_t instances) {
    Report r;
    r.name = "reduction-renaming";
    std::mt19937_64 rng(seed);
    std::size_t steps = 0, violations = 0;
    std::string first;
    for (std::size_t i = 0; i < instances; ++i) {
        // half the instances carry a guaranteed redex
        PProc p = random_open_pi(rng);
        if (i % 2 == 0) {
            std::string c = subject(rng);
            p = PProc::par({p, PProc::out(c, atom(rng)), PProc::in(c, atom(rng), gen_pi(rng, 1 + pick(rng, 5)))});
        }
        std::string n = random_free_atom(rng, p);
        std::string x = unused_atom(p, "x");
        auto renamed = pi::pi_step(pi::pi_subst(p, x, n));
        for (const auto& q : pi::pi_step(p)) {
            ++steps;
            PProc want = pi::pi_subst(q, x, n);
            if (std::find(renamed.begin(), renamed.end(), want) == renamed.end()) {
                ++violations;
                if (first.empty()) first = syntax::print(p) + " -> " + syntax::print(q);
            }
        }
    }
    r.expect("renaming a free name to a fresh one preserves reductions", violations == 0,
             std::to_string(instances) + " instances, " + std::to_string(steps) + " steps, " +
                 std::to_string(violations) + " violations" + (first.empty() ? "" : "; " + first));
    return r;
}

Report check_divergence_contrast(const Corpus& corpus, const Bounds& bounds) {
    Report r;
    r.name = "divergence";
    r.bounds_used = bounds;
    {
        const PProc bang = PProc::repl(PProc::nil());
        enc::RenamingPolicy policy;
        enc::LegacyParams ps = enc::default_legacy_params(bang, policy);
        auto d = equiv::divergence_probe(enc::encode_mr(bang, ps, policy), bounds);
        r.expect("the legacy encoding of !0 diverges", d.result == equiv::Divergence::Diverges,
                 std::string(equiv::to_string(d.result)) + " (" + d.evidence + ")");
    }
    std::size_t terminating = 0;
    for (std::size_t k = 0; k < corpus.terms.size(); ++k) {
        const PProc& p = corpus.terms[k];
        if (equiv::divergence_probe(p, bounds).result != equiv::Divergence::Terminates) continue;
        ++terminating;
        auto d = equiv::divergence_probe(enc::encode_ns(p).term, bounds);
        if (d.result == equiv::Divergence::Terminates) continue;
        r.add("term " + std::to_string(k) + " encoding terminates",
              d.result == equiv::Divergence::Diverges ? Outcome::Fail : Outcome::Unknown,
              syntax::print(p) + ": " + equiv::to_string(d.result) + " (" + d.evidence + ")");
    }
    r.add("encodings of terminating corpus terms terminate", Outcome::Pass,
          std::to_string(terminating) + " terminating terms checked");
    return r;
}

}  // namespace rhopi::harness
