#include "rhopi/rho_reduce.hpp"

#include <algorithm>

namespace rhopi {

const char* to_string(Tri t) {
    switch (t) {
    case Tri::Yes: return "yes";
    case Tri::No: return "no";
    case Tri::Unknown: return "unknown";
    }
    return "unknown";
}

}  // namespace rhopi

namespace rhopi::rho {

std::span<const Proc> components(const Proc& canonical) {
    if (canonical.kind() == ProcKind::Par) return canonical.children();
    if (canonical.kind() == ProcKind::Nil) return {};
    return {&canonical, 1};
}

std::vector<Redex> redexes(const Proc& canonical) {
    auto parts = components(canonical);
    std::vector<Redex> out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i].kind() != ProcKind::Input) continue;
        for (std::size_t j = 0; j < parts.size(); ++j) {
            if (parts[j].kind() == ProcKind::Lift && parts[j].name() == parts[i].name()) {
                out.push_back({i, j, parts[i].name()});
            }
        }
    }
    return out;
}

Proc fire(const Proc& canonical, const Redex& r) {
    auto parts = components(canonical);
    const Proc& in = parts[r.input_index];
    const Proc& out = parts[r.lift_index];
    // A top-level input binds the level-0 marker; the lift body is closed.
    const Proc& payload = out.body();
    Name payload_name = canon_name(Name::quote(payload));
    Proc reduct = canon_proc(subst_raw(in.body(), payload_name, Name::bound(0), &payload));

    std::vector<Proc> rest;
    rest.reserve(parts.size());
    for (std::size_t k = 0; k < parts.size(); ++k) {
        if (k != r.input_index && k != r.lift_index) rest.push_back(parts[k]);
    }
    for (const auto& c : components(reduct)) rest.push_back(c);
    std::sort(rest.begin(), rest.end());
    return Proc::par(std::move(rest));
}

std::vector<Proc> step(const Proc& p) {
    Proc c = canon_proc(p);
    std::vector<Proc> out;
    for (const auto& r : redexes(c)) out.push_back(fire(c, r));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

BarbSet barbs(const Proc& p, const NameSet& restrict) {
    Proc c = canon_proc(p);
    NameSet r = make_name_set(restrict);
    BarbSet out;
    for (const auto& part : components(c)) {
        if (part.kind() == ProcKind::Lift && contains(r, part.name())) {
            out.push_back({BarbDir::Out, part.name()});
        } else if (part.kind() == ProcKind::Input && contains(r, part.name())) {
            out.push_back({BarbDir::In, part.name()});
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool has_barb(const Proc& canonical, const Barb& b) {
    const ProcKind want = b.dir == BarbDir::Out ? ProcKind::Lift : ProcKind::Input;
    for (const auto& part : components(canonical)) {
        if (part.kind() == want && part.name() == b.name) return true;
    }
    return false;
}

RhoLts explore(const Proc& root, const Bounds& bounds) {
    return explore_with<Proc, ProcHash>(canon_proc(root), step, bounds);
}

Tri weak_barb(const Proc& root, const NameSet& restrict, const Barb& barb, const Bounds& bounds) {
    Barb b{barb.dir, canon_name(barb.name)};
    if (!contains(make_name_set(restrict), b.name)) return Tri::No;
    auto lts = explore_with<Proc, ProcHash>(
        canon_proc(root), step, bounds, [&](const Proc& s) { return has_barb(s, b); });
    if (lts.stopped) return Tri::Yes;
    return lts.truncated ? Tri::Unknown : Tri::No;
}

}  // namespace rhopi::rho
