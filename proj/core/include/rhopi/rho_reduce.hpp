#pragma once

#include <cstddef>
#include <vector>

#include "rhopi/lts.hpp"
#include "rhopi/rho_term.hpp"

namespace rhopi::rho {

using Barb = BasicBarb<Name>;
using BarbSet = std::vector<Barb>;  // sorted, unique
using RhoLts = Lts<Proc>;

/// A communication between two top-level components of a canonical term.
struct Redex {
    std::size_t input_index;
    std::size_t lift_index;
    Name subject;
};

/// Top-level parallel components of a canonical term.
std::span<const Proc> components(const Proc& canonical);

std::vector<Redex> redexes(const Proc& canonical);
/// All one-step reducts, canonical, sorted and duplicate-free. Accepts any term.
std::vector<Proc> step(const Proc& p);
/// Reduct of a single redex of a canonical term.
Proc fire(const Proc& canonical, const Redex& r);

BarbSet barbs(const Proc& p, const NameSet& restrict);
bool has_barb(const Proc& canonical, const Barb& b);

RhoLts explore(const Proc& root, const Bounds& bounds = {});
Tri weak_barb(const Proc& root, const NameSet& restrict, const Barb& barb,
              const Bounds& bounds = {});

}  // namespace rhopi::rho
