#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "rhopi/encoder.hpp"
#include "rhopi/lts.hpp"
#include "rhopi/pi_term.hpp"
#include "rhopi/rho_reduce.hpp"

namespace rhopi::equiv {

struct CalculusMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class Mode { Strong, Weak };
enum class Verdict { Bisimilar, NotBisimilar, Unknown };
enum class Divergence { Diverges, Terminates, Unknown };

const char* to_string(Verdict v);
const char* to_string(Divergence d);

/// Evidence for a failed bisimulation: one side reaches a state (trace of
/// printed terms from its root) whose behaviour the other side cannot match.
struct Witness {
    std::string reason;
    std::vector<std::string> left_trace;
    std::vector<std::string> right_trace;
};

struct BisimVerdict {
    Verdict result = Verdict::Unknown;
    std::optional<Witness> witness;
    Bounds bounds_used;
    std::size_t left_states = 0;
    std::size_t right_states = 0;
    bool left_truncated = false;
    bool right_truncated = false;
};

BisimVerdict barbed_bisim(const rho::Proc& p, const rho::Proc& q, const rho::NameSet& restrict,
                          Mode mode, const Bounds& bounds = {});
BisimVerdict barbed_bisim(const pi::Proc& p, const pi::Proc& q, const pi::AtomSet& restrict,
                          Mode mode, const Bounds& bounds = {});

/// Several explored graphs partitioned together into restricted (strong or
/// weak) barbed bisimilarity classes; blocks[i][k] is the class of state k of
/// graph i. Exact only when every graph is complete.
struct JointPartition {
    std::vector<std::vector<std::uint32_t>> blocks;
    bool complete = true;
};
JointPartition joint_partition(std::span<const rho::RhoLts> graphs, const rho::NameSet& restrict, Mode mode);

using AnyTerm = std::variant<rho::Proc, pi::Proc>;
using AnyRestrict = std::variant<rho::NameSet, pi::AtomSet>;
/// Throws CalculusMismatch unless both terms and the restriction set share a calculus.
BisimVerdict barbed_bisim(const AnyTerm& p, const AnyTerm& q, const AnyRestrict& restrict, Mode mode,
                          const Bounds& bounds = {});

struct DivergenceReport {
    Divergence result = Divergence::Unknown;
    /// Which detector fired: "cycle", "growth", "copier", "complete" or "bounds".
    std::string evidence;
    std::size_t states = 0;
};

DivergenceReport divergence_probe(const rho::Proc& p, const Bounds& bounds = {});
DivergenceReport divergence_probe(const pi::Proc& p, const Bounds& bounds = {});

/// The structurally restricted weak observation predicate: split the source
/// over its top-level parallel composition (n to ˡn / nʳ), and at each leaf S
/// explore ⟦S⟧(n,v) | NS using only administrative reductions (subjects that
/// are neither φ-images nor served names), testing the barb along the way.
Tri restricted_weak_obs(const pi::Proc& source, const enc::Encoding& encoding,
                        const rho::NameSet& restrict, const rho::Barb& barb,
                        const Bounds& bounds = {});

}  // namespace rhopi::equiv
