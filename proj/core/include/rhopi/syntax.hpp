#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "rhopi/encoder.hpp"
#include "rhopi/lts.hpp"
#include "rhopi/pi_term.hpp"
#include "rhopi/rho_term.hpp"

namespace rhopi::syntax {

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t line, std::size_t column);
    std::size_t line;
    std::size_t column;
};

/// ρ grammar:
///   P ::= 0 | P | P | x!(P) | x?(y).P | *x | (P) | ident
///   x ::= @0 | @(P) | @*x | (x) | ident
/// An identifier in binder position introduces a fresh name. Lines of the form
/// `def ident = P` or `def ident = x` define abbreviations; `//` starts a comment.
rho::Proc parse_rho(std::string_view text);
rho::Name parse_rho_name(std::string_view text);

/// π grammar:
///   P ::= 0 | P | P | x!y | x?(y).P | new x . P | !P | (P) | ident
/// Prefixes bind tighter than `|`: `new x . a!x | b!x` is `(new x . a!x) | b!x`.
pi::Proc parse_pi(std::string_view text);

using Aliases = std::map<rho::Name, std::string>;

std::string print(const rho::Proc& p, const Aliases& aliases = {});
std::string print(const rho::Name& x, const Aliases& aliases = {});
std::string print(const pi::Proc& p);
std::string print(const pi::PiName& x);

/// Aliases for φ-images and the named parameters of an encoding.
Aliases aliases_for(const enc::RenamingPolicy& policy);
Aliases aliases_for(const enc::Encoding& e);

std::string manifest_json(const enc::Encoding& e, bool raw = false);
std::string manifest_json(const enc::LegacyParams& ps, const enc::RenamingPolicy& policy, bool raw = false);

/// One JSON object per line: {"id","depth","expanded","term","succ"}.
std::string lts_jsonl(const Lts<rho::Proc>& lts);
std::string lts_jsonl(const Lts<pi::Proc>& lts);

}  // namespace rhopi::syntax
