#include "oracle.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <unordered_map>

#include "rhopi/syntax.hpp"

namespace rhopi::oracle {

using rho::Name;
using rho::Proc;
using rho::ProcKind;

std::size_t term_size(const Name& x) {
    // raw names are always quotes; quoting itself is free
    return term_size(x.body());
}

std::size_t term_size(const Proc& p) {
    switch (p.kind()) {
    case ProcKind::Nil: return 1;
    case ProcKind::Drop: return 1 + term_size(p.name());
    case ProcKind::Lift: return 1 + term_size(p.name()) + term_size(p.body());
    case ProcKind::Input: return 1 + term_size(p.name()) + term_size(p.binder()) + term_size(p.body());
    case ProcKind::Par: {
        std::size_t n = 1;
        for (const auto& c : p.children()) n += term_size(c);
        return n;
    }
    }
    return 1;
}

namespace {

struct Tables {
    std::vector<std::vector<Proc>> procs;  // by exact size
    std::vector<std::vector<Name>> names;

    explicit Tables(std::size_t max) : procs(max + 1), names(max + 1) {
        for (std::size_t s = 1; s <= max; ++s) {
            auto& out = procs[s];
            if (s == 1) out.push_back(Proc::nil());
            for (const auto& x : names[s - 1]) out.push_back(Proc::drop(x));
            for (std::size_t a = 1; a + 1 < s; ++a)
                for (const auto& x : names[a])
                    for (const auto& p : procs[s - 1 - a]) out.push_back(Proc::lift(x, p));
            for (std::size_t a = 1; a + 2 < s; ++a)
                for (std::size_t b = 1; a + b + 1 < s; ++b)
                    for (const auto& x : names[a])
                        for (const auto& y : names[b])
                            for (const auto& p : procs[s - 1 - a - b]) out.push_back(Proc::input(x, y, p));
            for (std::size_t a = 1; a + 1 < s; ++a)
                for (const auto& p : procs[a])
                    for (const auto& q : procs[s - 1 - a]) out.push_back(Proc::par(p, q));
            for (const auto& p : out) names[s].push_back(Name::quote(p));
        }
    }
};

/// Name positions of a process, not descending into quotes.
void positions(const Proc& p, std::vector<Name>& out) {
    switch (p.kind()) {
    case ProcKind::Nil: return;
    case ProcKind::Drop: out.push_back(p.name()); return;
    case ProcKind::Lift:
        out.push_back(p.name());
        positions(p.body(), out);
        return;
    case ProcKind::Input:
        out.push_back(p.name());
        out.push_back(p.binder());
        positions(p.body(), out);
        return;
    case ProcKind::Par:
        for (const auto& c : p.children()) positions(c, out);
        return;
    }
}

/// Syntactic renaming of name positions equal to `from`.
Proc rename(const Proc& p, const Name& from, const Name& to) {
    auto n = [&](const Name& x) { return x == from ? to : x; };
    switch (p.kind()) {
    case ProcKind::Nil: return p;
    case ProcKind::Drop: return Proc::drop(n(p.name()));
    case ProcKind::Lift: return Proc::lift(n(p.name()), rename(p.body(), from, to));
    case ProcKind::Input: return Proc::input(n(p.name()), p.binder(), rename(p.body(), from, to));
    case ProcKind::Par: {
        std::vector<Proc> cs;
        for (const auto& c : p.children()) cs.push_back(rename(c, from, to));
        return Proc::par(std::move(cs));
    }
    }
    return p;
}

class Rewriter {
public:
    explicit Rewriter(std::vector<Name> pool) : pool_(std::move(pool)) {}

    void procs(const Proc& p, std::vector<Proc>& out) const {
        local(p, out);
        switch (p.kind()) {
        case ProcKind::Nil: break;
        case ProcKind::Drop: {
            std::vector<Name> ns;
            names(p.name(), ns);
            for (auto& x : ns) out.push_back(Proc::drop(x));
            break;
        }
        case ProcKind::Lift: {
            std::vector<Name> ns;
            names(p.name(), ns);
            for (auto& x : ns) out.push_back(Proc::lift(x, p.body()));
            std::vector<Proc> bs;
            procs(p.body(), bs);
            for (auto& b : bs) out.push_back(Proc::lift(p.name(), b));
            break;
        }
        case ProcKind::Input: {
            std::vector<Name> ns;
            names(p.name(), ns);
            for (auto& x : ns) out.push_back(Proc::input(x, p.binder(), p.body()));
            ns.clear();
            names(p.binder(), ns);
            for (auto& y : ns) out.push_back(Proc::input(p.name(), y, p.body()));
            std::vector<Proc> bs;
            procs(p.body(), bs);
            for (auto& b : bs) out.push_back(Proc::input(p.name(), p.binder(), b));
            break;
        }
        case ProcKind::Par: {
            auto cs = p.children();
            for (std::size_t i = 0; i < cs.size(); ++i) {
                std::vector<Proc> rs;
                procs(cs[i], rs);
                for (auto& r : rs) {
                    std::vector<Proc> copy(cs.begin(), cs.end());
                    copy[i] = r;
                    out.push_back(Proc::par(std::move(copy)));
                }
            }
            break;
        }
        }
    }

private:
    std::vector<Name> pool_;

    void names(const Name& x, std::vector<Name>& out) const {
        out.push_back(Name::quote(Proc::drop(x)));
        const Proc& body = x.body();
        if (body.kind() == ProcKind::Drop) out.push_back(body.name());
        std::vector<Proc> bs;
        procs(body, bs);
        for (auto& b : bs) out.push_back(Name::quote(b));
    }

    void local(const Proc& p, std::vector<Proc>& out) const {
        out.push_back(Proc::par(p, Proc::nil()));
        out.push_back(Proc::par(Proc::nil(), p));
        if (p.kind() == ProcKind::Par) {
            auto cs = p.children();
            const Proc& a = cs[0];
            const Proc& b = cs[1];
            if (b.kind() == ProcKind::Nil) out.push_back(a);
            if (a.kind() == ProcKind::Nil) out.push_back(b);
            out.push_back(Proc::par(b, a));
            if (a.kind() == ProcKind::Par) {
                auto l = a.children();
                out.push_back(Proc::par(l[0], Proc::par(l[1], b)));
            }
            if (b.kind() == ProcKind::Par) {
                auto r = b.children();
                out.push_back(Proc::par(Proc::par(a, r[0]), r[1]));
            }
        }
        if (p.kind() == ProcKind::Input) alpha(p, out);
    }

    /// Renames the binder only when every other name position is provably
    /// distinct from both the old and the new binder (different quote depth).
    void alpha(const Proc& p, std::vector<Proc>& out) const {
        const Name& y = p.binder();
        std::vector<Name> pos;
        positions(p.body(), pos);
        const auto dy = rho::quote_depth(y);
        std::vector<std::uint32_t> others;
        for (const auto& n : pos) {
            if (n == y) continue;
            auto d = rho::quote_depth(n);
            if (d == dy) return;
            others.push_back(d);
        }
        // an inner binder spelled like y would shadow it
        std::vector<Name> binders;
        collect_binders(p.body(), binders);
        if (std::find(binders.begin(), binders.end(), y) != binders.end()) return;
        for (const auto& z : pool_) {
            if (z == y) continue;
            auto dz = rho::quote_depth(z);
            if (std::find(others.begin(), others.end(), dz) != others.end()) continue;
            out.push_back(Proc::input(p.name(), z, rename(p.body(), y, z)));
        }
    }

    static void collect_binders(const Proc& p, std::vector<Name>& out) {
        switch (p.kind()) {
        case ProcKind::Lift: collect_binders(p.body(), out); break;
        case ProcKind::Input:
            out.push_back(p.binder());
            collect_binders(p.body(), out);
            break;
        case ProcKind::Par:
            for (const auto& c : p.children()) collect_binders(c, out);
            break;
        default: break;
        }
    }
};

struct UnionFind {
    std::vector<std::uint32_t> parent;
    std::uint32_t add() {
        parent.push_back(static_cast<std::uint32_t>(parent.size()));
        return parent.back();
    }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) { parent[find(a)] = find(b); }
};

}  // namespace

std::vector<Proc> enumerate_procs(std::size_t max_size) {
    Tables t(max_size);
    std::vector<Proc> out;
    for (const auto& level : t.procs) out.insert(out.end(), level.begin(), level.end());
    return out;
}

std::vector<Name> enumerate_names(std::size_t max_size) {
    Tables t(max_size);
    std::vector<Name> out;
    for (const auto& level : t.names) out.insert(out.end(), level.begin(), level.end());
    return out;
}

Agreement compare_with_struct_eq(const std::vector<Proc>& terms, const OracleOptions& options) {
    std::size_t max_size = 0;
    for (const auto& p : terms) max_size = std::max(max_size, term_size(p));
    Rewriter rw(enumerate_names(std::min<std::size_t>(max_size, 4)));

    UnionFind uf;
    std::unordered_map<Proc, std::uint32_t, rho::ProcHash> ids;
    struct Item {
        std::uint32_t id;
        std::size_t depth;
        std::size_t cap;
    };
    std::vector<Proc> by_id;
    std::vector<std::size_t> caps;
    std::deque<Item> queue;
    std::vector<std::uint32_t> roots;
    for (const auto& p : terms) {
        auto [it, fresh] = ids.emplace(p, static_cast<std::uint32_t>(by_id.size()));
        if (fresh) {
            uf.add();
            by_id.push_back(p);
            queue.push_back({it->second, 0, term_size(p) + options.size_slack});
        }
        roots.push_back(it->second);
    }
    std::vector<Proc> next;
    while (!queue.empty()) {
        Item cur = queue.front();
        queue.pop_front();
        if (cur.depth >= options.rewrite_depth) continue;
        next.clear();
        rw.procs(by_id[cur.id], next);
        for (const auto& q : next) {
            if (term_size(q) > cur.cap) continue;
            auto [it, fresh] = ids.emplace(q, static_cast<std::uint32_t>(by_id.size()));
            if (fresh) {
                uf.add();
                by_id.push_back(q);
                queue.push_back({it->second, cur.depth + 1, cur.cap});
            }
            uf.unite(cur.id, it->second);
        }
    }

    Agreement a;
    a.terms = terms.size();
    std::vector<Proc> canon;
    canon.reserve(terms.size());
    for (const auto& p : terms) canon.push_back(rho::canon_proc(p));
    std::vector<std::uint32_t> cls(terms.size());
    for (std::size_t i = 0; i < terms.size(); ++i) cls[i] = uf.find(roots[i]);
    {
        auto sorted = cls;
        std::sort(sorted.begin(), sorted.end());
        a.oracle_classes = static_cast<std::size_t>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
    }
    for (std::size_t i = 0; i < terms.size(); ++i) {
        for (std::size_t j = i + 1; j < terms.size(); ++j) {
            ++a.pairs;
            bool oracle_same = cls[i] == cls[j];
            bool canon_same = canon[i] == canon[j];
            bool disagree = oracle_same != canon_same;
            // drop terms also exercise name equivalence directly
            if (!disagree && terms[i].kind() == ProcKind::Drop && terms[j].kind() == ProcKind::Drop)
                disagree = rho::name_eq(terms[i].name(), terms[j].name()) != oracle_same;
            if (!disagree) continue;
            if (a.disagreements++ == 0)
                a.first_disagreement = syntax::print(terms[i]) + " vs " + syntax::print(terms[j]) + " (oracle " +
                                       (oracle_same ? "equal" : "distinct") + ")";
        }
    }
    return a;
}

}  // namespace rhopi::oracle
