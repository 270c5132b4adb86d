#include "rhopi/rho_term.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace rhopi::rho {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

}  // namespace

struct Builder {
    static Proc make(ProcKind kind, std::vector<Name> names, std::vector<Proc> procs) {
        auto n = std::make_shared<ProcNode>();
        n->kind = kind;
        std::size_t h = static_cast<std::size_t>(kind) * 0x51ed27a3ULL + 17;
        std::uint32_t size = 1;
        for (const auto& x : names) {
            h = mix(h, x.hash());
            size += x.size();
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

    static Name make_quote(Proc body, bool canonical) {
        auto n = std::make_shared<NameNode>();
        n->kind = NameKind::Quote;
        n->hash = mix(0xa11ce, body.hash());
        n->size = 1 + body.size();
        n->body = std::move(body);
        n->canonical = canonical;
        return Name(std::move(n));
    }

    static Name make_bound(std::uint32_t index) {
        auto n = std::make_shared<NameNode>();
        n->kind = NameKind::Bound;
        n->index = index;
        n->hash = mix(0xb0b, index);
        n->canonical = true;
        return Name(std::move(n));
    }

    static const std::shared_ptr<const ProcNode>& nil_node() {
        static const std::shared_ptr<const ProcNode> node = [] {
            auto n = std::make_shared<ProcNode>();
            n->hash = 17;
            return std::shared_ptr<const ProcNode>(n);
        }();
        return node;
    }

    static Proc nil() { return Proc(nil_node()); }
};

// ---------------------------------------------------------------------------
// Construction and access

Proc::Proc() : node_(Builder::nil_node()) {}
Proc Proc::nil() { return Builder::nil(); }
Proc Proc::drop(Name x) { return Builder::make(ProcKind::Drop, {std::move(x)}, {}); }
Proc Proc::lift(Name subject, Proc body) {
    return Builder::make(ProcKind::Lift, {std::move(subject)}, {std::move(body)});
}
Proc Proc::input(Name subject, Name binder, Proc body) {
    return Builder::make(ProcKind::Input, {std::move(subject), std::move(binder)}, {std::move(body)});
}
Proc Proc::par(std::vector<Proc> children) {
    if (children.empty()) return nil();
    if (children.size() == 1) return children.front();
    return Builder::make(ProcKind::Par, {}, std::move(children));
}
Proc Proc::par(Proc a, Proc b) { return par(std::vector<Proc>{std::move(a), std::move(b)}); }

ProcKind Proc::kind() const { return node_->kind; }
const Name& Proc::name() const {
    assert(!node_->names.empty());
    return node_->names[0];
}
const Name& Proc::binder() const {
    assert(node_->kind == ProcKind::Input);
    return node_->names[1];
}
const Proc& Proc::body() const {
    assert(node_->kind == ProcKind::Lift || node_->kind == ProcKind::Input);
    return node_->procs[0];
}
std::span<const Proc> Proc::children() const { return node_->procs; }
std::size_t Proc::hash() const { return node_->hash; }
std::uint32_t Proc::size() const { return node_->size; }

Name::Name() : Name(Builder::make_quote(Proc::nil(), true)) {}
Name Name::quote(Proc body) { return Builder::make_quote(std::move(body), false); }
Name Name::bound(std::uint32_t index) { return Builder::make_bound(index); }
NameKind Name::kind() const { return node_->kind; }
const Proc& Name::body() const {
    assert(node_->kind == NameKind::Quote);
    return node_->body;
}
std::uint32_t Name::index() const { return node_->index; }
bool Name::canonical() const { return node_->canonical; }
std::size_t Name::hash() const { return node_->hash; }
std::uint32_t Name::size() const { return node_->size; }

// ---------------------------------------------------------------------------
// Total order: tag first, then children lexicographically.

std::strong_ordering operator<=>(const Name& a, const Name& b) {
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    if (auto c = a.kind() <=> b.kind(); c != 0) return c;
    if (a.kind() == NameKind::Bound) return a.index() <=> b.index();
    return a.body() <=> b.body();
}

bool operator==(const Name& a, const Name& b) {
    if (a.node_ == b.node_) return true;
    if (a.hash() != b.hash()) return false;
    return (a <=> b) == 0;
}

std::strong_ordering operator<=>(const Proc& a, const Proc& b) {
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    if (auto c = a.kind() <=> b.kind(); c != 0) return c;
    const auto& an = a.node_->names;
    const auto& bn = b.node_->names;
    for (std::size_t i = 0; i < an.size(); ++i) {
        if (auto c = an[i] <=> bn[i]; c != 0) return c;
    }
    const auto& ap = a.node_->procs;
    const auto& bp = b.node_->procs;
    return std::lexicographical_compare_three_way(ap.begin(), ap.end(), bp.begin(), bp.end());
}

bool operator==(const Proc& a, const Proc& b) {
    if (a.node_ == b.node_) return true;
    if (a.hash() != b.hash()) return false;
    return (a <=> b) == 0;
}

// ---------------------------------------------------------------------------
// Canonicalization

namespace {

// Binders are replaced by markers indexed by nesting level (outermost = 0).
// Quote bodies are canonicalized in an empty environment: substitution and
// binding never reach inside a quote unless the whole name is equivalent.
class Canonicalizer {
public:
    Proc proc(const Proc& p) {
        switch (p.kind()) {
        case ProcKind::Nil:
            return p;
        case ProcKind::Drop:
            return Proc::drop(resolve(p.name()));
        case ProcKind::Lift:
            return Proc::lift(resolve(p.name()), proc(p.body()));
        case ProcKind::Input: {
            Name subject = resolve(p.name());
            auto level = static_cast<std::uint32_t>(env_.size());
            env_.push_back(canon_name(p.binder()));
            Proc body = proc(p.body());
            env_.pop_back();
            return Proc::input(std::move(subject), Name::bound(level), std::move(body));
        }
        case ProcKind::Par: {
            std::vector<Proc> out;
            out.reserve(p.children().size());
            flatten_into(p, out);
            std::sort(out.begin(), out.end());
            return Proc::par(std::move(out));
        }
        }
        return p;
    }

private:
    void flatten_into(const Proc& p, std::vector<Proc>& out) {
        for (const auto& child : p.children()) {
            Proc c = proc(child);
            if (c.kind() == ProcKind::Nil) continue;
            if (c.kind() == ProcKind::Par) {
                out.insert(out.end(), c.children().begin(), c.children().end());
            } else {
                out.push_back(std::move(c));
            }
        }
    }

    Name resolve(const Name& x) {
        Name c = canon_name(x);
        for (std::size_t i = env_.size(); i-- > 0;) {
            if (env_[i] == c) return Name::bound(static_cast<std::uint32_t>(i));
        }
        return c;
    }

    std::vector<Name> env_;
};

}  // namespace

Name canon_name(const Name& x) {
    if (x.canonical()) return x;
    Canonicalizer c;
    Proc body = c.proc(x.body());
    if (body.kind() == ProcKind::Drop) return body.name();  // n-drop
    return Builder::make_quote(std::move(body), true);
}

Proc canon_proc(const Proc& p) {
    Canonicalizer c;
    Proc out = c.proc(p);
    // Every rewrite (unit removal, n-drop, binder-to-marker) shrinks the term.
    assert(out.size() <= p.size());
    return out;
}

bool struct_eq(const Proc& p, const Proc& q) { return canon_proc(p) == canon_proc(q); }
bool name_eq(const Name& x, const Name& y) { return canon_name(x) == canon_name(y); }

NameSet make_name_set(std::vector<Name> names) {
    for (auto& n : names) n = canon_name(n);
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    return names;
}

bool contains(const NameSet& set, const Name& canonical_name) {
    return std::binary_search(set.begin(), set.end(), canonical_name);
}

// ---------------------------------------------------------------------------
// Names

namespace {

void collect_free(const Proc& p, std::vector<Name>& out) {
    switch (p.kind()) {
    case ProcKind::Nil:
        return;
    case ProcKind::Drop:
        if (!p.name().is_bound()) out.push_back(p.name());
        return;
    case ProcKind::Lift:
    case ProcKind::Input:
        if (!p.name().is_bound()) out.push_back(p.name());
        collect_free(p.body(), out);
        return;
    case ProcKind::Par:
        for (const auto& c : p.children()) collect_free(c, out);
        return;
    }
}

void collect_all(const Proc& p, std::vector<Name>& out) {
    switch (p.kind()) {
    case ProcKind::Nil:
        return;
    case ProcKind::Drop:
        out.push_back(p.name());
        return;
    case ProcKind::Lift:
        out.push_back(p.name());
        collect_all(p.body(), out);
        return;
    case ProcKind::Input:
        out.push_back(p.name());
        out.push_back(p.binder());
        collect_all(p.body(), out);
        return;
    case ProcKind::Par:
        for (const auto& c : p.children()) collect_all(c, out);
        return;
    }
}

}  // namespace

NameSet free_names(const Proc& p) {
    std::vector<Name> out;
    collect_free(canon_proc(p), out);
    return make_name_set(std::move(out));
}

NameSet all_names(const Proc& p) {
    std::vector<Name> out;
    collect_all(p, out);
    return make_name_set(std::move(out));
}

bool fresh_for(const Name& x, const Proc& p) {
    Name c = canon_name(x);
    for (const auto& n : all_names(p)) {
        if (n == c) return false;
    }
    return true;
}

Name gen_fresh(const NameSet& avoid) {
    std::vector<Proc> outputs;
    outputs.reserve(avoid.size());
    for (const auto& x : avoid) outputs.push_back(Proc::lift(x, Proc::nil()));
    Name candidate = canon_name(Name::quote(Proc::par(std::move(outputs))));
    while (contains(avoid, candidate)) candidate = lincr(candidate);
    return candidate;
}

Name gen_fresh(std::span<const Name> avoid) {
    return gen_fresh(make_name_set(std::vector<Name>(avoid.begin(), avoid.end())));
}

// ---------------------------------------------------------------------------
// Substitution

Proc subst_raw(const Proc& p, const Name& replacement, const Name& target,
               const Proc* drop_payload) {
    auto sub_name = [&](const Name& x) -> const Name& { return x == target ? replacement : x; };
    switch (p.kind()) {
    case ProcKind::Nil:
        return p;
    case ProcKind::Drop:
        if (p.name() == target) {
            return drop_payload ? *drop_payload : Proc::drop(replacement);
        }
        return p;
    case ProcKind::Lift:
        return Proc::lift(sub_name(p.name()),
                          subst_raw(p.body(), replacement, target, drop_payload));
    case ProcKind::Input:
        if (p.binder() == target) return Proc::input(sub_name(p.name()), p.binder(), p.body());
        return Proc::input(sub_name(p.name()), p.binder(),
                           subst_raw(p.body(), replacement, target, drop_payload));
    case ProcKind::Par: {
        std::vector<Proc> out;
        out.reserve(p.children().size());
        for (const auto& c : p.children()) {
            out.push_back(subst_raw(c, replacement, target, drop_payload));
        }
        return Proc::par(std::move(out));
    }
    }
    return p;
}

Proc subst_syn(const Proc& p, const Name& replacement, const Name& target) {
    // Binders in the canonical form are markers, so no capture is possible.
    Proc c = canon_proc(p);
    return canon_proc(subst_raw(c, canon_name(replacement), canon_name(target), nullptr));
}

Proc subst_sem(const Proc& p, const Name& payload, const Name& target) {
    if (payload.kind() != NameKind::Quote) {
        throw std::invalid_argument("semantic substitution requires a quoted payload");
    }
    Proc c = canon_proc(p);
    Proc body = canon_proc(payload.body());
    return canon_proc(subst_raw(c, canon_name(payload), canon_name(target), &body));
}

// ---------------------------------------------------------------------------
// Quote depth

std::uint32_t quote_depth(const Name& x) {
    Name c = canon_name(x);
    if (c.is_bound()) return 0;
    return 1 + quote_depth_proc(c.body());
}

std::uint32_t quote_depth_proc(const Proc& p) {
    std::uint32_t depth = 0;
    for (const auto& n : free_names(p)) depth = std::max(depth, quote_depth(n));
    return depth;
}

// ---------------------------------------------------------------------------
// Static quoting and namespaces

Name lincr(const Name& x) { return canon_name(Name::quote(Proc::lift(x, Proc::nil()))); }

Name rincr(const Name& x) {
    return canon_name(Name::quote(Proc::input(x, Name(), Proc::nil())));
}

Name ncomp(const Name& x, const Name& y) {
    return canon_name(Name::quote(
        Proc::par(Proc::lift(x, Proc::nil()), Proc::input(y, Name(), Proc::nil()))));
}

Name ncomp_power(const Name& x, unsigned k) {
    Name acc = canon_name(x);
    for (unsigned i = 1; i < k; ++i) acc = ncomp(acc, x);
    return acc;
}

Name lincr_n(const Name& x, unsigned k) {
    Name acc = canon_name(x);
    for (unsigned i = 0; i < k; ++i) acc = lincr(acc);
    return acc;
}

namespace {

const Name* peel_left(const Name& c) {
    if (c.is_bound()) return nullptr;
    const Proc& b = c.body();
    if (b.kind() == ProcKind::Lift && b.body().kind() == ProcKind::Nil) return &b.name();
    return nullptr;
}

const Name* peel_right(const Name& c) {
    if (c.is_bound()) return nullptr;
    const Proc& b = c.body();
    if (b.kind() == ProcKind::Input && b.body().kind() == ProcKind::Nil) return &b.name();
    return nullptr;
}

std::pair<const Name*, const Name*> peel_comp(const Name& c) {
    if (c.is_bound()) return {nullptr, nullptr};
    const Proc& b = c.body();
    if (b.kind() != ProcKind::Par || b.children().size() != 2) return {nullptr, nullptr};
    const Proc& l = b.children()[0];
    const Proc& r = b.children()[1];
    if (l.kind() != ProcKind::Lift || l.body().kind() != ProcKind::Nil) return {nullptr, nullptr};
    if (r.kind() != ProcKind::Input || r.body().kind() != ProcKind::Nil) return {nullptr, nullptr};
    return {&l.name(), &r.name()};
}

bool member(const NameSet& roots, NamespaceScheme scheme, const Name& c) {
    if (contains(roots, c)) return true;
    switch (scheme) {
    case NamespaceScheme::LeftIncrement:
        if (const Name* m = peel_left(c)) return member(roots, scheme, *m);
        return false;
    case NamespaceScheme::RightIncrement:
        if (const Name* m = peel_right(c)) return member(roots, scheme, *m);
        return false;
    case NamespaceScheme::Composition: {
        auto [a, b] = peel_comp(c);
        return a && member(roots, scheme, *a) && member(roots, scheme, *b);
    }
    }
    return false;
}

bool member_any(const NameSet& roots, const Name& c) {
    if (contains(roots, c)) return true;
    if (const Name* m = peel_left(c); m && member_any(roots, *m)) return true;
    if (const Name* m = peel_right(c); m && member_any(roots, *m)) return true;
    auto [a, b] = peel_comp(c);
    return a && member_any(roots, *a) && member_any(roots, *b);
}

}  // namespace

bool ns_member(const Name& root, NamespaceScheme scheme, const Name& x) {
    return member(make_name_set({root}), scheme, canon_name(x));
}

bool ns_member_any(std::span<const Name> roots, const Name& x) {
    return member_any(make_name_set(std::vector<Name>(roots.begin(), roots.end())),
                      canon_name(x));
}

Proc copier(const Name& x) {
    Name y = lincr(x);
    return Proc::input(x, y, Proc::par(Proc::drop(y), Proc::lift(x, Proc::drop(y))));
}

Proc emit(const Name& channel, const Name& y) { return Proc::lift(channel, Proc::drop(y)); }

}  // namespace rhopi::rho
