#include "rhopi/encoder.hpp"

#include <algorithm>

namespace rhopi::enc {

using rho::Proc;
using rho::canon_name;
using rho::copier;
using rho::emit;
using rho::lincr;
using rho::ncomp;
using rho::rincr;

RenamingPolicy::RenamingPolicy(Name seed) : seed_(canon_name(seed)) {}

void RenamingPolicy::register_names(const PiProc& p) {
    auto see = [&](const pi::PiName& x) { (*this)(x); };
    switch (p.kind()) {
    case pi::PiKind::Nil: break;
    case pi::PiKind::Output: see(p.name()); see(p.second()); break;
    case pi::PiKind::Input: see(p.name()); see(p.second()); register_names(p.body()); break;
    case pi::PiKind::New: see(p.name()); register_names(p.body()); break;
    case pi::PiKind::Repl: register_names(p.body()); break;
    case pi::PiKind::Par:
        for (const auto& c : p.children()) register_names(c);
        break;
    }
}

RenamingPolicy RenamingPolicy::for_term(const PiProc& p, Name seed) {
    RenamingPolicy policy(std::move(seed));
    policy.register_names(p);
    return policy;
}

const Name& RenamingPolicy::add(const std::string& atom) {
    for (const auto& [a, n] : entries_)
        if (a == atom) return n;
    Name next = entries_.empty() ? seed_ : lincr(entries_.back().second);
    entries_.emplace_back(atom, next);
    return entries_.back().second;
}

const Name& RenamingPolicy::operator()(const pi::PiName& x) {
    if (x.bound) return add(std::string(1, pi::kReservedPrefix) + "m" + std::to_string(x.index));
    return add(x.atom);
}

const Name& RenamingPolicy::at(const std::string& atom) const {
    for (const auto& [a, n] : entries_)
        if (a == atom) return n;
    throw std::out_of_range("atom not in renaming policy: " + atom);
}

rho::NameSet RenamingPolicy::image() const {
    std::vector<Name> names;
    for (const auto& e : entries_) names.push_back(e.second);
    return rho::make_name_set(std::move(names));
}

bool derivable(std::span<const Name> from, const Name& to) { return rho::ns_member_any(from, to); }
bool derivable(const Name& from, const Name& to) { return rho::ns_member_any({&from, 1}, to); }

bool in_left_namespace(const Name& root, const Name& x) {
    return rho::ns_member(root, rho::NamespaceScheme::LeftIncrement, x);
}

void validate(const EncodingParams& ps, const rho::NameSet& image) {
    const std::vector<std::pair<const char*, Name>> all{
        {"n", ps.n}, {"v", ps.v}, {"x", ps.x}, {"z", ps.z}, {"s", ps.s}};
    for (std::size_t i = 0; i < all.size(); ++i) {
        for (std::size_t j = i + 1; j < all.size(); ++j)
            if (rho::name_eq(all[i].second, all[j].second))
                throw InvalidParams(std::string("parameters ") + all[i].first + " and " +
                                    all[j].first + " coincide");
        if (rho::contains(image, canon_name(all[i].second)))
            throw InvalidParams(std::string("parameter ") + all[i].first + " is a source name");
    }
    for (std::size_t i = 0; i < 4; ++i)
        if (in_left_namespace(ps.s, all[i].second))
            throw InvalidParams(std::string("parameter ") + all[i].first + " lies in the namespace of s");
    for (const Name* w : {&ps.v, &ps.x, &ps.z, &ps.s})
        if (derivable(ps.n, *w)) throw InvalidParams("a server name is derivable from n");
    for (const auto& y : image)
        if (derivable(ps.n, y) || derivable(ps.s, y))
            throw InvalidParams("a source name is derivable from n or s");
}

void validate(const LegacyParams& ps, const rho::NameSet& image) {
    if (rho::name_eq(ps.n, ps.p)) throw InvalidParams("legacy parameters coincide");
    if (rho::contains(image, canon_name(ps.n)) || rho::contains(image, canon_name(ps.p)))
        throw InvalidParams("legacy parameter is a source name");
    if (derivable(ps.n, ps.p) || derivable(ps.p, ps.n))
        throw InvalidParams("legacy parameters derive from one another");
    const Name roots[] = {ps.n, ps.p};
    for (const auto& y : image)
        if (derivable(roots, y)) throw InvalidParams("a source name is derivable from the parameters");
}

EncodingParams choose_params(const RenamingPolicy& policy, std::span<const Name> extra_avoid) {
    const rho::NameSet image = policy.image();
    std::vector<Name> avoid(image.begin(), image.end());
    avoid.insert(avoid.end(), extra_avoid.begin(), extra_avoid.end());
    auto pick = [&](auto&& ok) {
        Name c = rho::gen_fresh(avoid);
        while (!ok(c)) c = rincr(c);
        avoid.push_back(c);
        return c;
    };
    auto unused = [&](const Name& c) {
        return std::none_of(avoid.begin(), avoid.end(), [&](const Name& a) { return rho::name_eq(a, c); });
    };
    EncodingParams ps;
    ps.s = pick([&](const Name& c) {
        return unused(c) &&
               std::none_of(extra_avoid.begin(), extra_avoid.end(),
                            [&](const Name& y) { return derivable(c, y) || derivable(y, c); }) &&
               std::none_of(image.begin(), image.end(),
                                         [&](const Name& y) { return derivable(c, y); });
    });
    ps.n = pick([&](const Name& c) {
        return unused(c) && !in_left_namespace(ps.s, c) && !derivable(c, ps.s) &&
               std::none_of(extra_avoid.begin(), extra_avoid.end(),
                            [&](const Name& y) { return derivable(c, y) || derivable(y, c); }) &&
               std::none_of(image.begin(), image.end(), [&](const Name& y) { return derivable(c, y); });
    });
    auto server_name = [&](const Name& c) {
        return unused(c) && !in_left_namespace(ps.s, c) && !derivable(ps.n, c);
    };
    ps.v = pick(server_name);
    ps.x = pick(server_name);
    ps.z = pick(server_name);
    validate(ps, image);
    return ps;
}

RhoProc name_server(const EncodingParams& ps) {
    const Name taken[] = {ps.n, ps.v, ps.x, ps.z, ps.s};
    Name a = rho::gen_fresh(taken);
    const Name taken2[] = {ps.n, ps.v, ps.x, ps.z, ps.s, a};
    Name r = rho::gen_fresh(taken2);
    Proc serve = Proc::input(
        ps.z, a,
        Proc::input(ps.v, r,
                    Proc::par({copier(ps.x), emit(r, a), Proc::lift(ps.z, Proc::lift(a, Proc::nil()))})));
    return Proc::par({copier(ps.x), Proc::lift(ps.x, serve), emit(ps.z, ps.s)});
}

RhoProc translate_ns(const PiProc& p, const Name& n, const Name& v, RenamingPolicy& phi,
                     TranslationLog* log) {
    if (log) log->passed.push_back(n);
    switch (p.kind()) {
    case pi::PiKind::Nil: return Proc::nil();
    case pi::PiKind::Par: {
        auto cs = p.children();
        // n-ary composition is read as right-nested binary composition
        Proc head = translate_ns(cs[0], lincr(n), v, phi, log);
        std::vector<PiProc> rest(cs.begin() + 1, cs.end());
        Proc tail = translate_ns(PiProc::par(std::move(rest)), rincr(n), v, phi, log);
        return Proc::par(head, tail);
    }
    case pi::PiKind::Input:
        return Proc::input(phi(p.name()), phi(p.second()), translate_ns(p.body(), n, v, phi, log));
    case pi::PiKind::Output: return emit(phi(p.name()), phi(p.second()));
    case pi::PiKind::New: {
        if (log) log->materialized.push_back(n);
        Name binder = phi(p.name());
        return Proc::par(emit(v, n), Proc::input(n, binder, translate_ns(p.body(), ncomp(n, n), v, phi, log)));
    }
    case pi::PiKind::Repl: {
        const PiProc& g = p.body();
        if (g.kind() != pi::PiKind::Input)
            throw UnguardedReplication("replication must be input-guarded");
        if (log) log->materialized.push_back(n);
        Name subj = phi(g.name());
        Name bind = phi(g.second());
        Proc inner = translate_ns(g.body(), ncomp(n, n), v, phi, log);
        return Proc::par(copier(n), Proc::lift(n, Proc::input(subj, bind, Proc::par(copier(n), inner))));
    }
    }
    return Proc::nil();
}

Encoding encode_ns(const PiProc& p, RenamingPolicy policy, const EncodingParams& params) {
    policy.register_names(p);
    validate(params, policy.image());
    Encoding e{Proc::nil(), Proc::nil(), name_server(params), params, policy};
    e.translation = translate_ns(p, params.n, params.v, e.policy);
    e.term = Proc::par(e.translation, e.server);
    return e;
}

Encoding encode_ns(const PiProc& p, RenamingPolicy policy) {
    policy.register_names(p);
    EncodingParams params = choose_params(policy);
    return encode_ns(p, std::move(policy), params);
}

Encoding encode_ns(const PiProc& p) { return encode_ns(p, RenamingPolicy::for_term(p)); }

RhoProc translate_mr(const PiProc& p, const Name& n, const Name& pn, RenamingPolicy& phi) {
    switch (p.kind()) {
    case pi::PiKind::Nil: return Proc::nil();
    case pi::PiKind::Par: {
        auto cs = p.children();
        Proc head = translate_mr(cs[0], lincr(n), lincr(pn), phi);
        std::vector<PiProc> rest(cs.begin() + 1, cs.end());
        Proc tail = translate_mr(PiProc::par(std::move(rest)), rincr(n), rincr(pn), phi);
        return Proc::par(head, tail);
    }
    case pi::PiKind::Input:
        return Proc::input(phi(p.name()), phi(p.second()), translate_mr(p.body(), n, pn, phi));
    case pi::PiKind::Output: return emit(phi(p.name()), phi(p.second()));
    case pi::PiKind::New: {
        Name binder = phi(p.name());
        return Proc::par(Proc::input(pn, binder, translate_mr(p.body(), lincr(n), lincr(pn), phi)),
                         emit(pn, n));
    }
    case pi::PiKind::Repl: {
        // n and p are rebound by the two inputs; the quoted names stay static.
        Name np = ncomp(n, pn);
        Name nr = rincr(n);
        Name pr = rincr(pn);
        Proc body = Proc::par({translate_mr(p.body(), n, pn, phi), copier(np),
                               Proc::lift(nr, emit(n, n)), Proc::lift(pr, emit(pn, pn))});
        Proc ctx = Proc::lift(np, Proc::input(nr, n, Proc::input(pr, pn, body)));
        return Proc::par({ctx, copier(np), emit(nr, lincr(n)), emit(pr, lincr(pn))});
    }
    }
    return Proc::nil();
}

RhoProc encode_mr(const PiProc& p, const LegacyParams& params, RenamingPolicy& policy) {
    policy.register_names(p);
    validate(params, policy.image());
    return translate_mr(p, params.n, params.p, policy);
}

namespace {

LegacyParams product_params(const std::vector<Name>& names) {
    std::vector<Proc> outs, ins;
    for (const auto& x : names) {
        outs.push_back(Proc::lift(x, Proc::nil()));
        ins.push_back(Proc::input(x, Name(), Proc::nil()));
    }
    return {canon_name(Name::quote(Proc::par(std::move(outs)))),
            canon_name(Name::quote(Proc::par(std::move(ins))))};
}

}  // namespace

LegacyParams default_legacy_params(const PiProc& p, const RenamingPolicy& policy) {
    RenamingPolicy phi = policy;
    phi.register_names(p);
    const rho::NameSet image = phi.image();

    std::vector<Name> free;
    for (const auto& a : pi::free_atoms(p)) free.push_back(phi.at(a));
    if (!free.empty()) {
        LegacyParams ps = product_params(free);
        try {
            validate(ps, image);
            return ps;
        } catch (const InvalidParams&) {
        }
    }
    LegacyParams degenerate{lincr(Name()), rincr(Name())};
    try {
        validate(degenerate, image);
        return degenerate;
    } catch (const InvalidParams&) {
    }
    // The products over every source name, bound ones included.
    LegacyParams ps = product_params(std::vector<Name>(image.begin(), image.end()));
    validate(ps, image);
    return ps;
}

}  // namespace rhopi::enc
