#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "rhopi/encoder.hpp"
#include "rhopi/equiv.hpp"
#include "rhopi/lts.hpp"
#include "rhopi/pi_term.hpp"
#include "rhopi/rho_term.hpp"

namespace rhopi::harness {

enum class Outcome { Pass, Fail, Unknown };
const char* to_string(Outcome o);

struct Check {
    std::string label;
    Outcome verdict = Outcome::Unknown;
    std::string evidence;
};

struct Report {
    std::string name;
    std::vector<Check> checks;
    Bounds bounds_used;

    void add(std::string label, Outcome verdict, std::string evidence = {});
    /// Pass when `ok`, otherwise Fail with the evidence.
    void expect(std::string label, bool ok, std::string evidence = {});
    bool passed() const;
    std::size_t count(Outcome o) const;
    std::string to_json() const;
};

struct CorpusOptions {
    std::uint64_t seed = 1;
    std::size_t count = 50;
    std::size_t size_limit = 10;
};

struct Corpus {
    std::uint64_t seed = 1;
    std::size_t size_limit = 10;
    std::vector<pi::Proc> terms;
};

/// Deterministic random π terms over the atoms a..f with input-guarded replication.
Corpus make_corpus(const CorpusOptions& options = {});
pi::Proc random_pi(std::mt19937_64& rng, std::size_t size_limit);

/// Random ρ terms and names; `size` bounds the number of constructors.
rho::Proc random_rho(std::mt19937_64& rng, std::size_t size);
rho::Name random_rho_name(std::mt19937_64& rng, std::size_t size);
/// A randomly rewritten name that is ≡N to `x` (monoid laws, n-drop, α-renaming).
rho::Name equivalent_variant(std::mt19937_64& rng, const rho::Name& x);
rho::Proc equivalent_variant(std::mt19937_64& rng, const rho::Proc& p);

/// The legacy encoding's names grow with every replication round, so the
/// reproductions use a smaller state budget than the general default.
inline constexpr Bounds kReproBounds{2000, 200};

Report repro_cex1(const pi::Proc& q = pi::Proc::nil(), const Bounds& bounds = kReproBounds);
Report repro_cex2(const Bounds& bounds = kReproBounds);
Report repro_separation_witness(const Bounds& bounds = kReproBounds);
/// The name server reaches its ready state deterministically and serves
/// s, ˡs, ˡˡs, ... to successive requests.
Report check_name_server(std::size_t requests = 5);

/// Bounds for the per-term criteria; each exploration is small for size-10 terms.
inline constexpr Bounds kCriteriaBounds{20000, 200};

Report check_criteria(const Corpus& corpus, const Bounds& bounds = kCriteriaBounds);

/// ≡N-equivalent names have equal quote depth.
Report check_quote_depth(std::uint64_t seed, std::size_t pairs = 1000);
/// Names materialized while translating are pairwise distinct and derivable from n.
Report check_param_distinctness(std::uint64_t seed, std::size_t terms = 200);
/// Translating Pσ equals substituting φ-images in ⟦P⟧.
Report check_substitution(std::uint64_t seed, std::size_t instances = 200);
/// P → P' implies P[x/n] → P'[x/n] for fresh x.
Report check_reduction_renaming(std::uint64_t seed, std::size_t instances = 300);
/// The legacy encoding of !0 diverges; the name-server encodings of the
/// terminating corpus terms terminate.
Report check_divergence_contrast(const Corpus& corpus, const Bounds& bounds = kCriteriaBounds);

}  // namespace rhopi::harness
