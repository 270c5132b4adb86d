#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace rhopi::rho {

// Constructor tags. The declaration order is the canonical total order.
enum class ProcKind : std::uint8_t { Nil, Drop, Lift, Input, Par };
enum class NameKind : std::uint8_t { Quote, Bound };

struct ProcNode;
struct NameNode;
class Name;

/// Immutable ρ-calculus process. Copies share structure.
class Proc {
public:
    Proc();  // 0

    static Proc nil();
    static Proc drop(Name x);
    static Proc lift(Name subject, Proc body);
    static Proc input(Name subject, Name binder, Proc body);
    static Proc par(std::vector<Proc> children);
    static Proc par(Proc a, Proc b);

    ProcKind kind() const;
    /// Drop: the dropped name. Lift/Input: the subject.
    const Name& name() const;
    /// Input only.
    const Name& binder() const;
    /// Lift/Input only.
    const Proc& body() const;
    /// Par only.
    std::span<const Proc> children() const;

    std::size_t hash() const;
    std::uint32_t size() const;
    const ProcNode* node() const { return node_.get(); }

    friend bool operator==(const Proc& a, const Proc& b);
    friend std::strong_ordering operator<=>(const Proc& a, const Proc& b);

private:
    explicit Proc(std::shared_ptr<const ProcNode> n) : node_(std::move(n)) {}
    std::shared_ptr<const ProcNode> node_;
    friend struct Builder;
};

/// A name: a quoted process, or (internally) a bound-variable marker.
class Name {
public:
    Name();  // @0

    static Name quote(Proc body);
    static Name bound(std::uint32_t index);

    NameKind kind() const;
    bool is_bound() const { return kind() == NameKind::Bound; }
    /// Quote only.
    const Proc& body() const;
    /// Bound only.
    std::uint32_t index() const;
    /// True when this name is known to be in canonical form.
    bool canonical() const;

    std::size_t hash() const;
    std::uint32_t size() const;

    friend bool operator==(const Name& a, const Name& b);
    friend std::strong_ordering operator<=>(const Name& a, const Name& b);

private:
    explicit Name(std::shared_ptr<const NameNode> n) : node_(std::move(n)) {}
    std::shared_ptr<const NameNode> node_;
    friend struct Builder;
};

struct ProcNode {
    ProcKind kind = ProcKind::Nil;
    std::vector<Name> names;   // Drop: {x}; Lift: {subject}; Input: {subject, binder}
    std::vector<Proc> procs;   // Lift/Input: {body}; Par: children
    std::size_t hash = 0;
    std::uint32_t size = 1;
};

struct NameNode {
    NameKind kind = NameKind::Quote;
    Proc body;
    std::uint32_t index = 0;
    bool canonical = false;
    std::size_t hash = 0;
    std::uint32_t size = 1;
};

struct NameHash {
    std::size_t operator()(const Name& n) const { return n.hash(); }
};
struct ProcHash {
    std::size_t operator()(const Proc& p) const { return p.hash(); }
};

/// Sorted, duplicate-free set of canonical names.
using NameSet = std::vector<Name>;
NameSet make_name_set(std::vector<Name> names);  // canonicalizes, sorts, dedups
bool contains(const NameSet& set, const Name& canonical_name);

enum class NamespaceScheme { LeftIncrement, RightIncrement, Composition };

// Structural congruence and name equivalence.
Proc canon_proc(const Proc& p);
Name canon_name(const Name& x);
bool struct_eq(const Proc& p, const Proc& q);
bool name_eq(const Name& x, const Name& y);

// Names occurring in a process.
NameSet free_names(const Proc& p);
/// Free and bound names at name positions (quotes are not entered).
NameSet all_names(const Proc& p);
bool fresh_for(const Name& x, const Proc& p);
Name gen_fresh(const NameSet& avoid);
Name gen_fresh(std::span<const Name> avoid);

// Substitution. Results are canonical.
Proc subst_syn(const Proc& p, const Name& replacement, const Name& target);
Proc subst_sem(const Proc& p, const Name& payload, const Name& target);

/// Substitution on an already-canonical term, without re-canonicalizing.
/// When `drop_payload` is set, drops of `target` are replaced by that process.
Proc subst_raw(const Proc& p, const Name& replacement, const Name& target,
               const Proc* drop_payload);

// Quote depth, invariant under name equivalence.
std::uint32_t quote_depth(const Name& x);
std::uint32_t quote_depth_proc(const Proc& p);

// Static quoting.
Name lincr(const Name& x);
Name rincr(const Name& x);
Name ncomp(const Name& x, const Name& y);
/// Left-associated iterated composition: x^1 = x, x^(k+1) = x^k . x
Name ncomp_power(const Name& x, unsigned k);
Name lincr_n(const Name& x, unsigned k);

bool ns_member(const Name& root, NamespaceScheme scheme, const Name& x);
/// Membership in the namespace generated from `roots` by any mix of the three templates.
bool ns_member_any(std::span<const Name> roots, const Name& x);

/// Copier process D(x) = x?(y).(*y | x!(*y)).
Proc copier(const Name& x);
/// x!(*y): π-style output of the name y.
Proc emit(const Name& channel, const Name& y);

}  // namespace rhopi::rho
