#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "rhopi/lts.hpp"

namespace rhopi::pi {

/// An atomic π name, or (internally) a bound marker indexed by binder level.
struct PiName {
    bool bound = false;
    std::string atom;
    std::uint32_t index = 0;

    static PiName make_atom(std::string a) { return {false, std::move(a), 0}; }
    static PiName marker(std::uint32_t i) { return {true, {}, i}; }

    friend auto operator<=>(const PiName&, const PiName&) = default;
    friend bool operator==(const PiName&, const PiName&) = default;
};

/// Atoms starting with this character are reserved for internal α-renaming.
inline constexpr char kReservedPrefix = '%';

enum class PiKind : std::uint8_t { Nil, Output, Input, New, Repl, Par };

struct PiNode;

/// Immutable asynchronous choice-free π-calculus process.
class Proc {
public:
    Proc();

    static Proc nil();
    static Proc output(PiName subject, PiName object);
    static Proc input(PiName subject, PiName binder, Proc body);
    static Proc restrict(PiName binder, Proc body);
    static Proc repl(Proc body);
    static Proc par(std::vector<Proc> children);
    static Proc par(Proc a, Proc b);

    // Convenience constructors over atoms.
    static Proc out(const std::string& x, const std::string& y);
    static Proc in(const std::string& x, const std::string& y, Proc body);
    static Proc nu(const std::string& x, Proc body);

    PiKind kind() const;
    /// Output/Input: subject. New: binder.
    const PiName& name() const;
    /// Output: object. Input: binder.
    const PiName& second() const;
    /// Input/New/Repl.
    const Proc& body() const;
    std::span<const Proc> children() const;

    std::size_t hash() const;
    std::uint32_t size() const;

    friend bool operator==(const Proc& a, const Proc& b);
    friend std::strong_ordering operator<=>(const Proc& a, const Proc& b);

private:
    explicit Proc(std::shared_ptr<const PiNode> n) : node_(std::move(n)) {}
    std::shared_ptr<const PiNode> node_;
    static Proc make(PiKind kind, std::vector<PiName> names, std::vector<Proc> procs);
};

struct PiNode {
    PiKind kind = PiKind::Nil;
    std::vector<PiName> names;
    std::vector<Proc> procs;
    std::size_t hash = 0;
    std::uint32_t size = 1;
};

struct ProcHash {
    std::size_t operator()(const Proc& p) const { return p.hash(); }
};

using Barb = BasicBarb<std::string>;
using BarbSet = std::vector<Barb>;
using AtomSet = std::set<std::string>;
using PiLts = Lts<Proc>;

Proc pi_canon(const Proc& p);
bool pi_struct_eq(const Proc& p, const Proc& q);

AtomSet free_atoms(const Proc& p);
/// All atoms (free and bound) in first-occurrence order.
std::vector<std::string> atoms_in_order(const Proc& p);

/// Capture-avoiding substitution of `replacement` for the free atom `target`. Canonical result.
Proc pi_subst(const Proc& p, const std::string& replacement, const std::string& target);

/// Renames free occurrences of an atom without canonicalizing. `to` must not be
/// bound anywhere in `p`.
Proc rename_free(const Proc& p, const std::string& from, const std::string& to);

std::vector<Proc> pi_step(const Proc& p);
BarbSet pi_barbs(const Proc& p, const AtomSet& restrict);
bool pi_has_barb(const Proc& canonical, const Barb& b);

PiLts pi_explore(const Proc& root, const Bounds& bounds = {});
Tri pi_weak_barb(const Proc& root, const AtomSet& restrict, const Barb& barb,
                 const Bounds& bounds = {});

}  // namespace rhopi::pi
