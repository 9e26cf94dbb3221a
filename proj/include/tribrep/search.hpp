#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "tribrep/equation.hpp"
#include "tribrep/two_adic.hpp"

namespace tribrep {

// Enumeration ranges for one equation.  k_range/l_range come from the
// block-length caps; m is never enumerated (it is read off the product
// via as_repdigit and checked against m_min).
struct SearchSpace {
    EquationId eq = EquationId::Eq1;
    unsigned long n_max = 0;   // n runs 1..n_max
    unsigned k_max = 0;        // leading block for Eq3/Eq4, else 0
    unsigned l_max = 0;
    unsigned long m_min = 2;   // repdigits have at least two digits
};

SearchSpace search_space(EquationId eq, unsigned long n_max);

struct Solution {
    unsigned long n = 0;
    unsigned k = 0;
    unsigned l = 0;
    unsigned digit = 0;
    unsigned long length = 0;
    mpz_class value;
};

struct SearchReport {
    SearchSpace space;
    unsigned long candidates_scanned = 0;
    std::vector<Solution> solutions;     // sorted by (n, k, l)
    std::vector<std::string> filters;    // pre-filters applied, in order
};

// Product of the shifted block starting at index n, in the pattern's
// order.  A zero factor (T_1 - 1 or T_2 - 1) makes the product 0, which
// is returned as-is; repdigit matching skips non-positive values.
mpz_class product_of_block(unsigned long n, const ShiftPattern& pattern);

// Unshifted product T_n T_{n+1} ... T_{n+l-1}.
mpz_class product_plain(unsigned long n, unsigned l);

SearchReport exhaustive_search(const SearchSpace& space, unsigned jobs = 1);

// Independent re-check of a claimed solution with cache-free sequence
// evaluation: product of the equation's block at (n, k, l) equals the
// repdigit with digit d and length m.
bool verify_solution(EquationId eq, unsigned long n, unsigned k, unsigned l,
                     unsigned long m, unsigned digit);

} // namespace tribrep
