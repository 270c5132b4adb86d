#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rhopi/pi_term.hpp"
#include "rhopi/rho_term.hpp"

namespace rhopi::enc {

using rho::Name;
using RhoProc = rho::Proc;
using PiProc = pi::Proc;

struct UnguardedReplication : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct InvalidParams : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class Scheme { NameServer, LegacyMR };

/// Injective map from π atoms to ρ names: the i-th registered atom goes to lincr^i(seed).
class RenamingPolicy {
public:
    explicit RenamingPolicy(Name seed = Name());
    /// Registers every atom of `p` (free and bound) in first-occurrence order.
    static RenamingPolicy for_term(const PiProc& p, Name seed = Name());

    const Name& add(const std::string& atom);
    /// Registers every name of `p`, bound markers included, in traversal order.
    void register_names(const PiProc& p);
    /// Memoizing lookup. Bound markers get a private key so they map injectively too.
    const Name& operator()(const pi::PiName& x);
    const Name& operator()(const std::string& atom) { return add(atom); }
    /// Lookup without registration; throws std::out_of_range for unknown atoms.
    const Name& at(const std::string& atom) const;

    const Name& seed() const { return seed_; }
    const std::vector<std::pair<std::string, Name>>& entries() const { return entries_; }
    rho::NameSet image() const;

private:
    Name seed_;
    std::vector<std::pair<std::string, Name>> entries_;
};

struct EncodingParams {
    Name n, v, x, z, s;
};

struct LegacyParams {
    Name n, p;
};

/// Parameter names seen while translating.
struct TranslationLog {
    /// Every `n` handed to a recursive call, including the top-level one.
    std::vector<Name> passed;
    /// Names actually emitted as a return address or replication handle.
    std::vector<Name> materialized;
};

/// True iff `to` lies in the namespace generated from `from` by any mix of
/// left increment, right increment and composition (zero steps included).
bool derivable(std::span<const Name> from, const Name& to);
bool derivable(const Name& from, const Name& to);
/// Membership in ˡN(root).
bool in_left_namespace(const Name& root, const Name& x);

/// Throws InvalidParams when an invariant fails.
void validate(const EncodingParams& params, const rho::NameSet& source_image);
void validate(const LegacyParams& params, const rho::NameSet& source_image);

/// Fresh parameters for a source whose names are all registered in `policy`.
/// The namespaces of n and s are also kept apart from `extra_avoid`.
EncodingParams choose_params(const RenamingPolicy& policy, std::span<const Name> extra_avoid = {});

RhoProc name_server(const EncodingParams& params);

RhoProc translate_ns(const PiProc& p, const Name& n, const Name& v, RenamingPolicy& policy,
                     TranslationLog* log = nullptr);

struct Encoding {
    RhoProc term;         // translation | name server
    RhoProc translation;  // ⟦P⟧(n,v)
    RhoProc server;
    EncodingParams params;
    RenamingPolicy policy;
};

Encoding encode_ns(const PiProc& p, RenamingPolicy policy);
Encoding encode_ns(const PiProc& p);
Encoding encode_ns(const PiProc& p, RenamingPolicy policy, const EncodingParams& params);

RhoProc translate_mr(const PiProc& p, const Name& n, const Name& pn, RenamingPolicy& policy);
/// Validates `params` against the policy image, then translates.
RhoProc encode_mr(const PiProc& p, const LegacyParams& params, RenamingPolicy& policy);
LegacyParams default_legacy_params(const PiProc& p, const RenamingPolicy& policy);

}  // namespace rhopi::enc
