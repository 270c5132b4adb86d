#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "rhopi/rho_term.hpp"

namespace rhopi::oracle {

/// Size measure: 0 and each process constructor count one; a name @P has the size of P.
std::size_t term_size(const rho::Proc& p);
std::size_t term_size(const rho::Name& x);

/// Every raw ρ term of size at most `max_size`, binary compositions only.
std::vector<rho::Proc> enumerate_procs(std::size_t max_size);
std::vector<rho::Name> enumerate_names(std::size_t max_size);

struct OracleOptions {
    std::size_t rewrite_depth = 4;
    /// Terms larger than the start term by more than this are not explored.
    std::size_t size_slack = 2;
};

struct Agreement {
    std::size_t terms = 0;
    std::size_t pairs = 0;
    std::size_t oracle_classes = 0;
    std::size_t disagreements = 0;
    std::string first_disagreement;
};

/// Groups the terms by a bounded breadth-first closure under the monoid laws,
/// n-drop in both directions and guarded α-renaming, then compares every pair
/// against canonical struct_eq.
Agreement compare_with_struct_eq(const std::vector<rho::Proc>& terms, const OracleOptions& options = {});

}  // namespace rhopi::oracle
