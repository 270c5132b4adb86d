#include "rhopi/equiv.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "rhopi/syntax.hpp"

namespace rhopi::equiv {

const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::Bisimilar: return "bisimilar";
    case Verdict::NotBisimilar: return "not-bisimilar";
    case Verdict::Unknown: return "unknown";
    }
    return "unknown";
}

const char* to_string(Divergence d) {
    switch (d) {
    case Divergence::Diverges: return "diverges";
    case Divergence::Terminates: return "terminates";
    case Divergence::Unknown: return "unknown";
    }
    return "unknown";
}

namespace {

using Ids = std::vector<std::uint32_t>;

/// Disjoint union of two explored graphs with interned barb sets.
struct Graph {
    std::vector<Ids> succ;
    std::vector<Ids> barbs;  // sorted barb ids
    std::uint32_t left_root = 0;
    std::uint32_t right_root = 0;
    std::size_t left_count = 0;
};

template <class Term, class BarbsFn>
Graph join(const Lts<Term>& l, const Lts<Term>& r, BarbsFn&& barbs_of,
           std::vector<std::string>& barb_names) {
    Graph g;
    std::map<std::string, std::uint32_t> ids;
    auto add = [&](const Lts<Term>& lts, std::uint32_t offset) {
        for (std::size_t i = 0; i < lts.states.size(); ++i) {
            Ids succ;
            for (auto t : lts.edges[i]) succ.push_back(t + offset);
            std::sort(succ.begin(), succ.end());
            succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
            g.succ.push_back(std::move(succ));
            Ids bs;
            for (const auto& b : barbs_of(lts.states[i])) {
                auto [it, fresh] = ids.emplace(b, static_cast<std::uint32_t>(barb_names.size()));
                if (fresh) barb_names.push_back(b);
                bs.push_back(it->second);
            }
            std::sort(bs.begin(), bs.end());
            g.barbs.push_back(std::move(bs));
        }
    };
    add(l, 0);
    g.left_count = l.states.size();
    add(r, static_cast<std::uint32_t>(g.left_count));
    g.left_root = l.root;
    g.right_root = static_cast<std::uint32_t>(g.left_count) + r.root;
    return g;
}

/// Strongly connected components, numbered in reverse topological order
/// (every edge goes from a higher or equal component number to a lower or equal one).
std::vector<std::uint32_t> scc(const std::vector<Ids>& succ, std::uint32_t& count) {
    const auto n = static_cast<std::uint32_t>(succ.size());
    constexpr std::uint32_t kUnset = ~0u;
    std::vector<std::uint32_t> index(n, kUnset), low(n, 0), comp(n, kUnset);
    std::vector<bool> on_stack(n, false);
    std::vector<std::uint32_t> stack;
    std::uint32_t next = 0;
    count = 0;
    struct Frame {
        std::uint32_t v;
        std::size_t edge;
    };
    for (std::uint32_t root = 0; root < n; ++root) {
        if (index[root] != kUnset) continue;
        std::vector<Frame> call{{root, 0}};
        index[root] = low[root] = next++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            Frame& f = call.back();
            if (f.edge < succ[f.v].size()) {
                std::uint32_t w = succ[f.v][f.edge++];
                if (index[w] == kUnset) {
                    index[w] = low[w] = next++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
                continue;
            }
            std::uint32_t v = f.v;
            call.pop_back();
            if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
            if (low[v] == index[v]) {
                std::uint32_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp[w] = count;
                } while (w != v);
                ++count;
            }
        }
    }
    return comp;
}

Ids merge(const Ids& a, const Ids& b) {
    Ids out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

/// For each node, the union of `label` over every node reachable in zero or more steps.
std::vector<Ids> reach_union(const std::vector<Ids>& succ, const std::vector<std::uint32_t>& comp,
                             std::uint32_t ncomp, const std::function<Ids(std::uint32_t)>& label) {
    std::vector<std::vector<std::uint32_t>> members(ncomp);
    for (std::uint32_t v = 0; v < comp.size(); ++v) members[comp[v]].push_back(v);
    std::vector<Ids> per_comp(ncomp);
    for (std::uint32_t c = 0; c < ncomp; ++c) {
        Ids acc;
        for (auto v : members[c]) {
            acc = merge(acc, label(v));
            for (auto w : succ[v])
                if (comp[w] != c) acc = merge(acc, per_comp[comp[w]]);
        }
        per_comp[c] = std::move(acc);
    }
    std::vector<Ids> out(comp.size());
    for (std::uint32_t v = 0; v < comp.size(); ++v) out[v] = per_comp[comp[v]];
    return out;
}

/// Coarsest stable partition. Strong: successors are one step. Weak: successors
/// and barbs are taken over the reflexive-transitive closure.
std::vector<std::uint32_t> refine(const Graph& g, Mode mode, std::vector<Ids>& barbs_used) {
    const std::size_t n = g.succ.size();
    std::uint32_t ncomp = 0;
    std::vector<std::uint32_t> comp;
    if (mode == Mode::Weak) {
        comp = scc(g.succ, ncomp);
        barbs_used = reach_union(g.succ, comp, ncomp, [&](std::uint32_t v) { return g.barbs[v]; });
    } else {
        barbs_used = g.barbs;
    }
    std::vector<std::uint32_t> block(n);
    {
        std::map<Ids, std::uint32_t> keys;
        for (std::size_t v = 0; v < n; ++v)
            block[v] = keys.emplace(barbs_used[v], static_cast<std::uint32_t>(keys.size())).first->second;
    }
    std::size_t blocks = 0;
    for (;;) {
        std::vector<Ids> next_sets(n);
        if (mode == Mode::Weak) {
            next_sets = reach_union(g.succ, comp, ncomp, [&](std::uint32_t v) { return Ids{block[v]}; });
        } else {
            for (std::size_t v = 0; v < n; ++v) {
                Ids s;
                for (auto w : g.succ[v]) s.push_back(block[w]);
                std::sort(s.begin(), s.end());
                s.erase(std::unique(s.begin(), s.end()), s.end());
                next_sets[v] = std::move(s);
            }
        }
        std::map<std::pair<std::uint32_t, Ids>, std::uint32_t> keys;
        std::vector<std::uint32_t> nb(n);
        for (std::size_t v = 0; v < n; ++v)
            nb[v] = keys.emplace(std::make_pair(block[v], std::move(next_sets[v])),
                                 static_cast<std::uint32_t>(keys.size()))
                        .first->second;
        block = std::move(nb);
        if (keys.size() == blocks) break;
        blocks = keys.size();
    }
    return block;
}

/// Shortest path in the graph from `from` to `to`, as node ids.
Ids path(const Graph& g, std::uint32_t from, std::uint32_t to) {
    std::vector<std::int64_t> parent(g.succ.size(), -1);
    std::deque<std::uint32_t> q{from};
    parent[from] = from;
    while (!q.empty()) {
        auto v = q.front();
        q.pop_front();
        if (v == to) break;
        for (auto w : g.succ[v])
            if (parent[w] < 0) {
                parent[w] = v;
                q.push_back(w);
            }
    }
    Ids out;
    if (parent[to] < 0) return out;
    for (std::uint32_t v = to;; v = static_cast<std::uint32_t>(parent[v])) {
        out.push_back(v);
        if (v == from) break;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

template <class Term>
struct Checker {
    const Lts<Term>& left;
    const Lts<Term>& right;
    Graph g;
    std::vector<std::string> barb_names;

    std::string show(std::uint32_t v) const {
        return v < g.left_count ? syntax::print(left.states[v])
                                : syntax::print(right.states[v - g.left_count]);
    }
    std::vector<std::string> trace(const Ids& ids) const {
        std::vector<std::string> out;
        for (auto v : ids) out.push_back(show(v));
        return out;
    }

    /// A barb reached by one side and provably never reached by the other.
    std::optional<Witness> barb_witness(const std::vector<Ids>& weak) const {
        for (int side = 0; side < 2; ++side) {
            const bool left_side = side == 0;
            std::uint32_t root = left_side ? g.left_root : g.right_root;
            std::uint32_t other = left_side ? g.right_root : g.left_root;
            const Ids& mine = weak[root];
            const Ids& theirs = weak[other];
            for (auto b : mine) {
                if (std::binary_search(theirs.begin(), theirs.end(), b)) continue;
                // find the state that exhibits the barb
                std::size_t lo = left_side ? 0 : g.left_count;
                std::size_t hi = left_side ? g.left_count : g.succ.size();
                for (std::size_t v = lo; v < hi; ++v) {
                    if (!std::binary_search(g.barbs[v].begin(), g.barbs[v].end(), b)) continue;
                    Ids p = path(g, root, static_cast<std::uint32_t>(v));
                    if (p.empty()) continue;
                    Witness w;
                    w.reason = std::string(left_side ? "left" : "right") + " reaches barb " +
                               barb_names[b] + " which the other side never exhibits";
                    (left_side ? w.left_trace : w.right_trace) = trace(p);
                    (left_side ? w.right_trace : w.left_trace) = std::vector<std::string>{show(other)};
                    return w;
                }
            }
        }
        return std::nullopt;
    }

    BisimVerdict run(Mode mode, const Bounds& bounds) {
        BisimVerdict out;
        out.bounds_used = bounds;
        out.left_states = left.states.size();
        out.right_states = right.states.size();
        out.left_truncated = left.truncated;
        out.right_truncated = right.truncated;

        const bool complete = left.complete() && right.complete();
        std::vector<Ids> barbs_used;
        auto block = refine(g, mode, barbs_used);

        if (!complete) {
            // Decisive only when a barb difference cannot be affected by missing states.
            const Ids& lb = barbs_used[g.left_root];
            const Ids& rb = barbs_used[g.right_root];
            if (mode == Mode::Strong && lb != rb) {
                out.result = Verdict::NotBisimilar;
                out.witness = Witness{"the roots exhibit different barbs", {show(g.left_root)}, {show(g.right_root)}};
                return out;
            }
            // weak barbs found on one side, with the other side fully explored
            for (int side = 0; side < 2; ++side) {
                bool other_complete = side == 0 ? right.complete() : left.complete();
                const Ids& mine = side == 0 ? lb : rb;
                const Ids& theirs = side == 0 ? rb : lb;
                if (other_complete && !std::includes(theirs.begin(), theirs.end(), mine.begin(), mine.end())) {
                    out.result = Verdict::NotBisimilar;
                    out.witness = barb_witness(barbs_used);
                    if (!out.witness) out.witness = Witness{"barb sets differ", {show(g.left_root)}, {show(g.right_root)}};
                    return out;
                }
            }
            out.result = Verdict::Unknown;
            return out;
        }

        if (block[g.left_root] == block[g.right_root]) {
            out.result = Verdict::Bisimilar;
            return out;
        }
        out.result = Verdict::NotBisimilar;
        if (barbs_used[g.left_root] != barbs_used[g.right_root]) {
            out.witness = barb_witness(barbs_used);
            if (!out.witness) out.witness = Witness{"the roots exhibit different barbs", {show(g.left_root)}, {show(g.right_root)}};
            return out;
        }
        // a move of one root that no move of the other root matches
        auto moves = [&](std::uint32_t v) {
            Ids s;
            if (mode == Mode::Strong) {
                s = g.succ[v];
            } else {
                std::vector<bool> seen(g.succ.size(), false);
                std::deque<std::uint32_t> q{v};
                seen[v] = true;
                while (!q.empty()) {
                    auto x = q.front();
                    q.pop_front();
                    s.push_back(x);
                    for (auto w : g.succ[x])
                        if (!seen[w]) {
                            seen[w] = true;
                            q.push_back(w);
                        }
                }
            }
            return s;
        };
        for (int side = 0; side < 2; ++side) {
            std::uint32_t a = side == 0 ? g.left_root : g.right_root;
            std::uint32_t b = side == 0 ? g.right_root : g.left_root;
            Ids bm = moves(b);
            for (auto t : moves(a)) {
                bool matched = std::any_of(bm.begin(), bm.end(), [&](auto u) { return block[u] == block[t]; });
                if (matched) continue;
                Witness w;
                w.reason = std::string(side == 0 ? "left" : "right") + " has a move the other side cannot match";
                (side == 0 ? w.left_trace : w.right_trace) = trace(path(g, a, t));
                (side == 0 ? w.right_trace : w.left_trace) = std::vector<std::string>{show(b)};
                out.witness = w;
                return out;
            }
        }
        out.witness = Witness{"partition refinement separates the roots", {show(g.left_root)}, {show(g.right_root)}};
        return out;
    }
};

std::string barb_text(BarbDir d, const std::string& name) {
    return std::string(d == BarbDir::Out ? "out " : "in ") + name;
}

}  // namespace

BisimVerdict barbed_bisim(const rho::Proc& p, const rho::Proc& q, const rho::NameSet& restrict, Mode mode,
                          const Bounds& bounds) {
    auto l = rho::explore(p, bounds);
    auto r = rho::explore(q, bounds);
    rho::NameSet rs = rho::make_name_set(restrict);
    Checker<rho::Proc> c{l, r, {}, {}};
    c.g = join(l, r, [&](const rho::Proc& s) {
        std::vector<std::string> out;
        for (const auto& b : rho::barbs(s, rs)) out.push_back(barb_text(b.dir, syntax::print(b.name)));
        return out;
    }, c.barb_names);
    return c.run(mode, bounds);
}

BisimVerdict barbed_bisim(const pi::Proc& p, const pi::Proc& q, const pi::AtomSet& restrict, Mode mode,
                          const Bounds& bounds) {
    auto l = pi::pi_explore(p, bounds);
    auto r = pi::pi_explore(q, bounds);
    Checker<pi::Proc> c{l, r, {}, {}};
    c.g = join(l, r, [&](const pi::Proc& s) {
        std::vector<std::string> out;
        for (const auto& b : pi::pi_barbs(s, restrict)) out.push_back(barb_text(b.dir, b.name));
        return out;
    }, c.barb_names);
    return c.run(mode, bounds);
}

JointPartition joint_partition(std::span<const rho::RhoLts> graphs, const rho::NameSet& restrict, Mode mode) {
    rho::NameSet rs = rho::make_name_set(restrict);
    Graph g;
    std::map<std::string, std::uint32_t> ids;
    std::vector<std::uint32_t> offsets;
    JointPartition out;
    for (const auto& lts : graphs) {
        auto offset = static_cast<std::uint32_t>(g.succ.size());
        offsets.push_back(offset);
        out.complete = out.complete && lts.complete();
        for (std::size_t i = 0; i < lts.states.size(); ++i) {
            Ids succ;
            for (auto t : lts.edges[i]) succ.push_back(t + offset);
            std::sort(succ.begin(), succ.end());
            succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
            g.succ.push_back(std::move(succ));
            Ids bs;
            for (const auto& b : rho::barbs(lts.states[i], rs))
                bs.push_back(ids.emplace(barb_text(b.dir, syntax::print(b.name)),
                                         static_cast<std::uint32_t>(ids.size()))
                                 .first->second);
            std::sort(bs.begin(), bs.end());
            g.barbs.push_back(std::move(bs));
        }
    }
    std::vector<Ids> barbs_used;
    auto block = refine(g, mode, barbs_used);
    for (std::size_t i = 0; i < graphs.size(); ++i)
        out.blocks.emplace_back(block.begin() + offsets[i], block.begin() + offsets[i] + graphs[i].states.size());
    return out;
}

BisimVerdict barbed_bisim(const AnyTerm& p, const AnyTerm& q, const AnyRestrict& restrict, Mode mode,
                          const Bounds& bounds) {
    if (p.index() != q.index() || p.index() != restrict.index())
        throw CalculusMismatch("bisimulation requires terms from the same calculus");
    if (p.index() == 0)
        return barbed_bisim(std::get<0>(p), std::get<0>(q), std::get<0>(restrict), mode, bounds);
    return barbed_bisim(std::get<1>(p), std::get<1>(q), std::get<1>(restrict), mode, bounds);
}

// ---------------------------------------------------------------------------
// Divergence

namespace {

template <class Term>
bool has_cycle(const Lts<Term>& lts) {
    std::uint32_t n = 0;
    auto comp = scc(lts.edges, n);
    if (n < lts.states.size()) return true;
    for (std::size_t v = 0; v < lts.edges.size(); ++v)
        for (auto w : lts.edges[v])
            if (w == v) return true;
    return false;
}

template <class Term>
std::vector<Term> top_components(const Term& t) {
    std::vector<Term> out;
    if (t.kind() == decltype(t.kind())::Par) {
        out.assign(t.children().begin(), t.children().end());
    } else if (t.kind() != decltype(t.kind())::Nil) {
        out.push_back(t);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// A →+ S with S ⊋ A as multisets of top-level components; reduction is closed
/// under parallel composition, so S keeps regrowing forever.
template <class Term>
bool has_growth(const Lts<Term>& lts) {
    const std::size_t n = lts.states.size();
    std::vector<std::int64_t> parent(n, -1);
    std::deque<std::uint32_t> q{lts.root};
    parent[lts.root] = lts.root;
    while (!q.empty()) {
        auto v = q.front();
        q.pop_front();
        for (auto w : lts.edges[v])
            if (parent[w] < 0) {
                parent[w] = v;
                q.push_back(w);
            }
    }
    std::vector<std::vector<Term>> comps(n);
    for (std::size_t v = 0; v < n; ++v) comps[v] = top_components(lts.states[v]);
    constexpr int kAncestors = 64;
    for (std::size_t v = 0; v < n; ++v) {
        if (parent[v] < 0) continue;
        auto a = static_cast<std::uint32_t>(parent[v]);
        for (int k = 0; k < kAncestors; ++k) {
            if (comps[v].size() > comps[a].size() &&
                std::includes(comps[v].begin(), comps[v].end(), comps[a].begin(), comps[a].end()))
                return true;
            if (a == lts.root) break;
            a = static_cast<std::uint32_t>(parent[a]);
        }
    }
    return false;
}

rho::Name shift_name(const rho::Name& x, std::uint32_t k) {
    return x.is_bound() ? rho::Name::bound(x.index() + k) : x;
}

rho::Proc shift(const rho::Proc& p, std::uint32_t k) {
    using rho::Proc;
    switch (p.kind()) {
    case rho::ProcKind::Nil: return p;
    case rho::ProcKind::Drop: return Proc::drop(shift_name(p.name(), k));
    case rho::ProcKind::Lift: return Proc::lift(shift_name(p.name(), k), shift(p.body(), k));
    case rho::ProcKind::Input:
        return Proc::input(shift_name(p.name(), k), shift_name(p.binder(), k), shift(p.body(), k));
    case rho::ProcKind::Par: {
        std::vector<Proc> cs;
        for (const auto& c : p.children()) cs.push_back(shift(c, k));
        return Proc::par(std::move(cs));
    }
    }
    return p;
}

/// D(x) | x!(X) | y1!(..) | … | yk!(..) with X = y1?(..).…yk?(..).B, where B
/// contains D(x) and fresh lifts on every yi: the copier re-arms itself forever.
bool self_feeding_copier(const rho::Proc& state) {
    auto comps = top_components(state);
    for (const auto& d : comps) {
        if (d.kind() != rho::ProcKind::Input || d.name().is_bound()) continue;
        const rho::Name& x = d.name();
        const rho::Proc dx = rho::canon_proc(rho::copier(x));
        if (d != dx) continue;
        for (const auto& lift : comps) {
            if (lift.kind() != rho::ProcKind::Lift || lift.name() != x) continue;
            std::vector<rho::Name> ys;
            const rho::Proc* cur = &lift.body();
            while (cur->kind() == rho::ProcKind::Input) {
                const rho::Name& y = cur->name();
                if (y.is_bound() || y == x || std::find(ys.begin(), ys.end(), y) != ys.end()) break;
                bool supplied = std::any_of(comps.begin(), comps.end(), [&](const rho::Proc& c) {
                    return c.kind() == rho::ProcKind::Lift && c.name() == y;
                });
                if (!supplied) break;
                ys.push_back(y);
                cur = &cur->body();
                auto k = static_cast<std::uint32_t>(ys.size());
                auto body = top_components(*cur);
                bool rearmed = std::find(body.begin(), body.end(), shift(dx, k)) != body.end();
                for (const auto& yi : ys) {
                    rearmed = rearmed && std::any_of(body.begin(), body.end(), [&](const rho::Proc& c) {
                                  return c.kind() == rho::ProcKind::Lift && c.name() == yi;
                              });
                }
                if (rearmed) return true;
            }
        }
    }
    return false;
}

template <class Term, class Extra>
DivergenceReport probe(const Lts<Term>& lts, Extra&& extra) {
    DivergenceReport r;
    r.states = lts.states.size();
    if (has_cycle(lts)) {
        r.result = Divergence::Diverges;
        r.evidence = "cycle";
        return r;
    }
    if (lts.complete()) {
        r.result = Divergence::Terminates;
        r.evidence = "complete";
        return r;
    }
    if (has_growth(lts)) {
        r.result = Divergence::Diverges;
        r.evidence = "growth";
        return r;
    }
    if (extra(lts)) {
        r.result = Divergence::Diverges;
        r.evidence = "copier";
        return r;
    }
    r.result = Divergence::Unknown;
    r.evidence = "bounds";
    return r;
}

}  // namespace

DivergenceReport divergence_probe(const rho::Proc& p, const Bounds& bounds) {
    auto lts = rho::explore(p, bounds);
    return probe(lts, [](const Lts<rho::Proc>& l) {
        return std::any_of(l.states.begin(), l.states.end(), self_feeding_copier);
    });
}

DivergenceReport divergence_probe(const pi::Proc& p, const Bounds& bounds) {
    auto lts = pi::pi_explore(p, bounds);
    return probe(lts, [](const Lts<pi::Proc>&) { return false; });
}

// ---------------------------------------------------------------------------
// Restricted weak observation

namespace {

Tri leaf_obs(const pi::Proc& s, const rho::Name& n, const enc::Encoding& e, const rho::NameSet& restrict,
             const rho::Barb& barb, const Bounds& bounds) {
    enc::RenamingPolicy policy = e.policy;
    rho::Proc t = rho::Proc::par(enc::translate_ns(s, n, e.params.v, policy), e.server);
    const rho::NameSet image = policy.image();
    const rho::Name served_root = e.params.s;
    auto administrative = [&](const rho::Name& subject) {
        return !rho::contains(image, subject) && !enc::in_left_namespace(served_root, subject);
    };
    auto step = [&](const rho::Proc& state) {
        std::vector<rho::Proc> out;
        for (const auto& r : rho::redexes(state))
            if (administrative(r.subject)) out.push_back(rho::fire(state, r));
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    };
    rho::Barb b{barb.dir, rho::canon_name(barb.name)};
    if (!rho::contains(restrict, b.name)) return Tri::No;
    auto lts = explore_with<rho::Proc, rho::ProcHash>(rho::canon_proc(t), step, bounds,
                                                       [&](const rho::Proc& st) { return rho::has_barb(st, b); });
    if (lts.stopped) return Tri::Yes;
    return lts.truncated ? Tri::Unknown : Tri::No;
}

Tri obs(const pi::Proc& s, const rho::Name& n, const enc::Encoding& e, const rho::NameSet& restrict,
        const rho::Barb& barb, const Bounds& bounds) {
    if (s.kind() != pi::PiKind::Par) return leaf_obs(s, n, e, restrict, barb, bounds);
    auto cs = s.children();
    Tri left = obs(cs[0], rho::lincr(n), e, restrict, barb, bounds);
    if (left == Tri::Yes) return Tri::Yes;
    Tri right = obs(pi::Proc::par(std::vector<pi::Proc>(cs.begin() + 1, cs.end())), rho::rincr(n), e, restrict,
                    barb, bounds);
    if (right == Tri::Yes) return Tri::Yes;
    return left == Tri::Unknown || right == Tri::Unknown ? Tri::Unknown : Tri::No;
}

}  // namespace

Tri restricted_weak_obs(const pi::Proc& source, const enc::Encoding& encoding, const rho::NameSet& restrict,
                        const rho::Barb& barb, const Bounds& bounds) {
    return obs(source, encoding.params.n, encoding, rho::make_name_set(restrict), barb, bounds);
}

}  // namespace rhopi::equiv
