#include "rhopi/pi_term.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace rhopi::pi {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::size_t name_hash(const PiName& n) {
    return n.bound ? mix(0x51ed27, n.index) : std::hash<std::string>{}(n.atom);
}

const Proc& nil_singleton() {
    static const Proc p = Proc::par(std::vector<Proc>{});
    return p;
}

}  // namespace

Proc Proc::make(PiKind kind, std::vector<PiName> names, std::vector<Proc> procs) {
    auto n = std::make_shared<PiNode>();
    n->kind = kind;
    std::size_t h = static_cast<std::size_t>(kind) * 0x100000001b3ULL + 17;
    std::uint32_t size = 1;
    for (const auto& x : names) {
        h = mix(h, name_hash(x));
        size += 1;
    }
    for (const auto& p : procs) {
        h = mix(h, p.hash());
        size += p.size();
    }
    n->names = std::move(names);
    n->procs = std::move(procs);
    n->hash = h;
    n->size = size;
    return Proc(std::move(n));
}

Proc::Proc() : Proc(nil_singleton()) {}

Proc Proc::nil() {
    static const Proc p = make(PiKind::Nil, {}, {});
    return p;
}
Proc Proc::output(PiName s, PiName o) { return make(PiKind::Output, {std::move(s), std::move(o)}, {}); }
Proc Proc::input(PiName s, PiName b, Proc body) {
    return make(PiKind::Input, {std::move(s), std::move(b)}, {std::move(body)});
}
Proc Proc::restrict(PiName b, Proc body) { return make(PiKind::New, {std::move(b)}, {std::move(body)}); }
Proc Proc::repl(Proc body) { return make(PiKind::Repl, {}, {std::move(body)}); }
Proc Proc::par(std::vector<Proc> children) {
    if (children.empty()) return nil();
    if (children.size() == 1) return std::move(children[0]);
    return make(PiKind::Par, {}, std::move(children));
}
Proc Proc::par(Proc a, Proc b) { return par(std::vector<Proc>{std::move(a), std::move(b)}); }

Proc Proc::out(const std::string& x, const std::string& y) {
    return output(PiName::make_atom(x), PiName::make_atom(y));
}
Proc Proc::in(const std::string& x, const std::string& y, Proc body) {
    return input(PiName::make_atom(x), PiName::make_atom(y), std::move(body));
}
Proc Proc::nu(const std::string& x, Proc body) { return restrict(PiName::make_atom(x), std::move(body)); }

PiKind Proc::kind() const { return node_->kind; }
const PiName& Proc::name() const { return node_->names.at(0); }
const PiName& Proc::second() const { return node_->names.at(1); }
const Proc& Proc::body() const { return node_->procs.at(0); }
std::span<const Proc> Proc::children() const {
    if (node_->kind != PiKind::Par) return {};
    return node_->procs;
}
std::size_t Proc::hash() const { return node_->hash; }
std::uint32_t Proc::size() const { return node_->size; }

bool operator==(const Proc& a, const Proc& b) {
    if (a.node_ == b.node_) return true;
    if (a.node_->hash != b.node_->hash || a.node_->size != b.node_->size) return false;
    return (a <=> b) == 0;
}

std::strong_ordering operator<=>(const Proc& a, const Proc& b) {
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    const PiNode& x = *a.node_;
    const PiNode& y = *b.node_;
    if (auto c = x.kind <=> y.kind; c != 0) return c;
    if (auto c = std::lexicographical_compare_three_way(x.names.begin(), x.names.end(),
                                                        y.names.begin(), y.names.end());
        c != 0)
        return c;
    return std::lexicographical_compare_three_way(x.procs.begin(), x.procs.end(), y.procs.begin(),
                                                  y.procs.end());
}

namespace {

bool is_reserved(const PiName& n) {
    return !n.bound && !n.atom.empty() && n.atom[0] == kReservedPrefix;
}

std::uint32_t max_reserved(const Proc& p) {
    std::uint32_t m = 0;
    auto see = [&](const PiName& n) {
        if (is_reserved(n)) m = std::max<std::uint32_t>(m, std::stoul(n.atom.substr(1)) + 1);
    };
    std::function<void(const Proc&)> go = [&](const Proc& q) {
        switch (q.kind()) {
        case PiKind::Nil: break;
        case PiKind::Output: see(q.name()); see(q.second()); break;
        case PiKind::Input: see(q.name()); see(q.second()); go(q.body()); break;
        case PiKind::New: see(q.name()); go(q.body()); break;
        case PiKind::Repl: go(q.body()); break;
        case PiKind::Par: for (const auto& c : q.children()) go(c); break;
        }
    };
    go(p);
    return m;
}

struct Fresh {
    std::uint32_t next;
    PiName operator()() { return PiName::make_atom(std::string(1, kReservedPrefix) + std::to_string(next++)); }
};

/// Shadow-aware renaming of free occurrences of `from` to `to`. `to` must not be capturable.
Proc rename(const Proc& p, const PiName& from, const PiName& to) {
    auto r = [&](const PiName& n) { return n == from ? to : n; };
    switch (p.kind()) {
    case PiKind::Nil: return p;
    case PiKind::Output: return Proc::output(r(p.name()), r(p.second()));
    case PiKind::Input:
        if (p.second() == from) return Proc::input(r(p.name()), p.second(), p.body());
        return Proc::input(r(p.name()), p.second(), rename(p.body(), from, to));
    case PiKind::New:
        if (p.name() == from) return p;
        return Proc::restrict(p.name(), rename(p.body(), from, to));
    case PiKind::Repl: return Proc::repl(rename(p.body(), from, to));
    case PiKind::Par: {
        std::vector<Proc> cs;
        for (const auto& c : p.children()) cs.push_back(rename(c, from, to));
        return Proc::par(std::move(cs));
    }
    }
    return p;
}

// Pass 0: every binder gets a distinct reserved atom.
Proc uniquify(const Proc& p, std::vector<std::pair<PiName, PiName>>& env, Fresh& fresh) {
    auto res = [&](const PiName& n) {
        for (auto it = env.rbegin(); it != env.rend(); ++it)
            if (it->first == n) return it->second;
        return n;
    };
    switch (p.kind()) {
    case PiKind::Nil: return p;
    case PiKind::Output: return Proc::output(res(p.name()), res(p.second()));
    case PiKind::Input: {
        PiName s = res(p.name());
        PiName b = fresh();
        env.emplace_back(p.second(), b);
        Proc body = uniquify(p.body(), env, fresh);
        env.pop_back();
        return Proc::input(s, b, body);
    }
    case PiKind::New: {
        PiName b = fresh();
        env.emplace_back(p.name(), b);
        Proc body = uniquify(p.body(), env, fresh);
        env.pop_back();
        return Proc::restrict(b, body);
    }
    case PiKind::Repl: return Proc::repl(uniquify(p.body(), env, fresh));
    case PiKind::Par: {
        std::vector<Proc> cs;
        for (const auto& c : p.children()) cs.push_back(uniquify(c, env, fresh));
        return Proc::par(std::move(cs));
    }
    }
    return p;
}

bool occurs_free(const Proc& p, const PiName& x) {
    switch (p.kind()) {
    case PiKind::Nil: return false;
    case PiKind::Output: return p.name() == x || p.second() == x;
    case PiKind::Input:
        if (p.name() == x) return true;
        return p.second() != x && occurs_free(p.body(), x);
    case PiKind::New: return p.name() != x && occurs_free(p.body(), x);
    case PiKind::Repl: return occurs_free(p.body(), x);
    case PiKind::Par:
        return std::any_of(p.children().begin(), p.children().end(),
                           [&](const Proc& c) { return occurs_free(c, x); });
    }
    return false;
}

void flatten_into(const Proc& p, std::vector<Proc>& out) {
    if (p.kind() == PiKind::Par) {
        for (const auto& c : p.children()) flatten_into(c, out);
    } else if (p.kind() != PiKind::Nil) {
        out.push_back(p);
    }
}

Proc push(const PiName& x, const Proc& q);

// Pass 1: restrictions pushed inward, unused ones erased, Par flattened.
Proc extrude(const Proc& p) {
    switch (p.kind()) {
    case PiKind::Nil:
    case PiKind::Output: return p;
    case PiKind::Input: return Proc::input(p.name(), p.second(), extrude(p.body()));
    case PiKind::Repl: return Proc::repl(extrude(p.body()));
    case PiKind::Par: {
        std::vector<Proc> cs;
        for (const auto& c : p.children()) flatten_into(extrude(c), cs);
        return Proc::par(std::move(cs));
    }
    case PiKind::New: return push(p.name(), extrude(p.body()));
    }
    return p;
}

Proc push(const PiName& x, const Proc& q) {
    if (!occurs_free(q, x)) return q;
    switch (q.kind()) {
    case PiKind::Par: {
        std::vector<Proc> using_x, rest;
        for (const auto& c : q.children()) (occurs_free(c, x) ? using_x : rest).push_back(c);
        if (using_x.size() == 1) {
            flatten_into(push(x, using_x[0]), rest);
        } else {
            rest.push_back(Proc::restrict(x, Proc::par(std::move(using_x))));
        }
        return Proc::par(std::move(rest));
    }
    case PiKind::New: return Proc::restrict(q.name(), push(x, q.body()));
    default: return Proc::restrict(x, q);
    }
}

class Alpha {
public:
    Proc run(const Proc& p) {
        switch (p.kind()) {
        case PiKind::Nil: return p;
        case PiKind::Output: return Proc::output(res(p.name()), res(p.second()));
        case PiKind::Input: {
            PiName s = res(p.name());
            auto level = static_cast<std::uint32_t>(env_.size());
            env_.push_back(p.second());
            Proc body = run(p.body());
            env_.pop_back();
            return Proc::input(s, PiName::marker(level), body);
        }
        case PiKind::Repl: return Proc::repl(run(p.body()));
        case PiKind::Par: return par(p);
        case PiKind::New: return chain(p);
        }
        return p;
    }

private:
    std::vector<PiName> env_;

    PiName res(const PiName& n) const {
        for (std::size_t i = env_.size(); i-- > 0;)
            if (env_[i] == n) return PiName::marker(static_cast<std::uint32_t>(i));
        return n;
    }

    Proc par(const Proc& p) {
        std::vector<Proc> cs;
        for (const auto& c : p.children()) flatten_into(run(c), cs);
        std::sort(cs.begin(), cs.end());
        absorb(cs);
        return Proc::par(std::move(cs));
    }

    // P | !P ≡ !P: drop sibling copies of a replicated body.
    static void absorb(std::vector<Proc>& cs) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t r = 0; r < cs.size() && !changed; ++r) {
                if (cs[r].kind() != PiKind::Repl) continue;
                std::vector<Proc> body;
                flatten_into(cs[r].body(), body);
                if (body.empty()) continue;
                std::vector<Proc> others;
                for (std::size_t k = 0; k < cs.size(); ++k)
                    if (k != r) others.push_back(cs[k]);
                if (!std::includes(others.begin(), others.end(), body.begin(), body.end())) continue;
                std::vector<Proc> left;
                std::set_difference(others.begin(), others.end(), body.begin(), body.end(),
                                    std::back_inserter(left));
                left.push_back(cs[r]);
                std::sort(left.begin(), left.end());
                cs = std::move(left);
                changed = true;
            }
        }
    }

    // A maximal run of restrictions: choose the binder order giving the least term.
    Proc chain(const Proc& p) {
        std::vector<PiName> binders;
        const Proc* cur = &p;
        while (cur->kind() == PiKind::New) {
            binders.push_back(cur->name());
            cur = &cur->body();
        }
        const Proc inner = *cur;
        std::vector<std::size_t> perm(binders.size());
        std::iota(perm.begin(), perm.end(), 0);
        const bool search = binders.size() <= 6;
        std::optional<Proc> best;
        do {
            auto base = static_cast<std::uint32_t>(env_.size());
            for (auto i : perm) env_.push_back(binders[i]);
            Proc body = run(inner);
            env_.resize(base);
            for (std::size_t k = binders.size(); k-- > 0;)
                body = Proc::restrict(PiName::marker(base + static_cast<std::uint32_t>(k)), body);
            if (!best || body < *best) best = body;
        } while (search && std::next_permutation(perm.begin(), perm.end()));
        return *best;
    }
};

}  // namespace

Proc pi_canon(const Proc& p) {
    Fresh fresh{max_reserved(p)};
    std::vector<std::pair<PiName, PiName>> env;
    Proc u = uniquify(p, env, fresh);
    Proc e = extrude(u);
    return Alpha{}.run(e);
}

bool pi_struct_eq(const Proc& p, const Proc& q) { return pi_canon(p) == pi_canon(q); }

AtomSet free_atoms(const Proc& p) {
    AtomSet out;
    std::vector<PiName> bound;
    std::function<void(const Proc&)> go = [&](const Proc& q) {
        auto see = [&](const PiName& n) {
            if (n.bound) return;
            if (std::find(bound.begin(), bound.end(), n) == bound.end()) out.insert(n.atom);
        };
        switch (q.kind()) {
        case PiKind::Nil: break;
        case PiKind::Output: see(q.name()); see(q.second()); break;
        case PiKind::Input:
            see(q.name());
            bound.push_back(q.second());
            go(q.body());
            bound.pop_back();
            break;
        case PiKind::New:
            bound.push_back(q.name());
            go(q.body());
            bound.pop_back();
            break;
        case PiKind::Repl: go(q.body()); break;
        case PiKind::Par: for (const auto& c : q.children()) go(c); break;
        }
    };
    go(p);
    return out;
}

std::vector<std::string> atoms_in_order(const Proc& p) {
    std::vector<std::string> out;
    auto see = [&](const PiName& n) {
        if (!n.bound && std::find(out.begin(), out.end(), n.atom) == out.end()) out.push_back(n.atom);
    };
    std::function<void(const Proc&)> go = [&](const Proc& q) {
        switch (q.kind()) {
        case PiKind::Nil: break;
        case PiKind::Output: see(q.name()); see(q.second()); break;
        case PiKind::Input: see(q.name()); see(q.second()); go(q.body()); break;
        case PiKind::New: see(q.name()); go(q.body()); break;
        case PiKind::Repl: go(q.body()); break;
        case PiKind::Par: for (const auto& c : q.children()) go(c); break;
        }
    };
    go(p);
    return out;
}

Proc rename_free(const Proc& p, const std::string& from, const std::string& to) {
    return rename(p, PiName::make_atom(from), PiName::make_atom(to));
}

Proc pi_subst(const Proc& p, const std::string& replacement, const std::string& target) {
    if (!replacement.empty() && replacement[0] == kReservedPrefix)
        throw std::invalid_argument("reserved atom in substitution");
    // Canonical binders are markers, so no atom can be captured.
    return pi_canon(rename(pi_canon(p), PiName::make_atom(target), PiName::make_atom(replacement)));
}

namespace {

/// Top-level components with restrictions opened to fresh atoms.
void open_into(const Proc& p, std::vector<Proc>& comps, std::vector<PiName>& opened, Fresh& fresh) {
    switch (p.kind()) {
    case PiKind::Nil: break;
    case PiKind::Par:
        for (const auto& c : p.children()) open_into(c, comps, opened, fresh);
        break;
    case PiKind::New: {
        PiName a = fresh();
        opened.push_back(a);
        open_into(rename(p.body(), p.name(), a), comps, opened, fresh);
        break;
    }
    default: comps.push_back(p);
    }
}

struct Slot {
    int repl = -1;  // -1: base component
    int copy = 0;
    std::size_t index = 0;
};

}  // namespace

std::vector<Proc> pi_step(const Proc& p) {
    Proc c = pi_canon(p);
    Fresh fresh{max_reserved(c)};
    std::vector<Proc> base;
    std::vector<PiName> opened;
    open_into(c, base, opened, fresh);

    // Two independent unfoldings per replication cover every redex up to ≡.
    struct Unfold {
        std::vector<Proc> comps;
        std::vector<PiName> opened;
    };
    std::vector<std::size_t> repls;
    std::vector<std::array<Unfold, 2>> copies;
    for (std::size_t i = 0; i < base.size(); ++i) {
        if (base[i].kind() != PiKind::Repl) continue;
        repls.push_back(i);
        std::array<Unfold, 2> u;
        for (auto& copy : u) open_into(base[i].body(), copy.comps, copy.opened, fresh);
        copies.push_back(std::move(u));
    }

    std::vector<Slot> slots;
    for (std::size_t i = 0; i < base.size(); ++i) slots.push_back({-1, 0, i});
    for (std::size_t r = 0; r < repls.size(); ++r)
        for (int k = 0; k < 2; ++k)
            for (std::size_t i = 0; i < copies[r][k].comps.size(); ++i)
                slots.push_back({static_cast<int>(r), k, i});

    auto at = [&](const Slot& s) -> const Proc& {
        return s.repl < 0 ? base[s.index] : copies[s.repl][s.copy].comps[s.index];
    };

    std::vector<Proc> out;
    for (const auto& si : slots) {
        const Proc& in = at(si);
        if (in.kind() != PiKind::Input) continue;
        for (const auto& so : slots) {
            const Proc& o = at(so);
            if (o.kind() != PiKind::Output || o.name() != in.name()) continue;
            // The second copy is only needed when pairing with the first copy of the same replication.
            if (si.copy == 1 && !(so.repl == si.repl && so.copy == 0)) continue;
            if (so.copy == 1 && !(si.repl == so.repl && si.copy == 0)) continue;

            std::vector<Proc> parts;
            std::vector<PiName> names = opened;
            auto take = [&](int repl, int copy) {
                const auto& u = copies[repl][copy];
                for (std::size_t i = 0; i < u.comps.size(); ++i) {
                    bool used = (si.repl == repl && si.copy == copy && si.index == i) ||
                                (so.repl == repl && so.copy == copy && so.index == i);
                    if (!used) parts.push_back(u.comps[i]);
                }
                names.insert(names.end(), u.opened.begin(), u.opened.end());
            };
            for (std::size_t i = 0; i < base.size(); ++i) {
                bool used = (si.repl < 0 && si.index == i) || (so.repl < 0 && so.index == i);
                if (!used) parts.push_back(base[i]);
            }
            if (si.repl >= 0) take(si.repl, si.copy);
            if (so.repl >= 0 && !(so.repl == si.repl && so.copy == si.copy)) take(so.repl, so.copy);
            parts.push_back(rename(in.body(), in.second(), o.second()));

            Proc r = Proc::par(std::move(parts));
            for (auto it = names.rbegin(); it != names.rend(); ++it) r = Proc::restrict(*it, r);
            out.push_back(pi_canon(r));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

template <class F>
void walk_unguarded(const Proc& p, F&& f) {
    switch (p.kind()) {
    case PiKind::Output:
    case PiKind::Input: f(p); break;
    case PiKind::New:
    case PiKind::Repl: walk_unguarded(p.body(), f); break;
    case PiKind::Par:
        for (const auto& c : p.children()) walk_unguarded(c, f);
        break;
    case PiKind::Nil: break;
    }
}

}  // namespace

BarbSet pi_barbs(const Proc& p, const AtomSet& restrict) {
    BarbSet out;
    // Subjects bound by a restriction are markers in canonical form and never match an atom.
    walk_unguarded(pi_canon(p), [&](const Proc& q) {
        if (q.name().bound || !restrict.count(q.name().atom)) return;
        out.push_back({q.kind() == PiKind::Output ? BarbDir::Out : BarbDir::In, q.name().atom});
    });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool pi_has_barb(const Proc& canonical, const Barb& b) {
    bool found = false;
    const PiKind want = b.dir == BarbDir::Out ? PiKind::Output : PiKind::Input;
    walk_unguarded(canonical, [&](const Proc& q) {
        if (q.kind() == want && !q.name().bound && q.name().atom == b.name) found = true;
    });
    return found;
}

PiLts pi_explore(const Proc& root, const Bounds& bounds) {
    return explore_with<Proc, ProcHash>(pi_canon(root), pi_step, bounds);
}

Tri pi_weak_barb(const Proc& root, const AtomSet& restrict, const Barb& barb, const Bounds& bounds) {
    if (!restrict.count(barb.name)) return Tri::No;
    auto lts = explore_with<Proc, ProcHash>(pi_canon(root), pi_step, bounds,
                                            [&](const Proc& s) { return pi_has_barb(s, barb); });
    if (lts.stopped) return Tri::Yes;
    return lts.truncated ? Tri::Unknown : Tri::No;
}

}  // namespace rhopi::pi
