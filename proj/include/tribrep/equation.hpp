#pragma once

#include <gmpxx.h>

#include <string>

namespace tribrep {

// The four shifted-product equation families plus the unshifted sanity
// search.  Eq1: (T_n+1)...(T_{n+l-1}+1) = repdigit.  Eq2: same with -1.
// Eq3: k minus-shifted factors followed by l plus-shifted.  Eq4: k plus
// followed by l minus.  Bgl: plain products T_n...T_{n+l-1}.
enum class EquationId { Eq1, Eq2, Eq3, Eq4, Bgl };

std::string equation_name(EquationId eq);  // "eq1".."eq4", "bgl"

// Linear expression a*n + b.
struct LinearForm {
    long a;
    long b;
    mpz_class eval(const mpz_class& n) const { return a * n + b; }
};

// Upper bound on the repdigit length m implied by the growth of the
// product; equation-specific.  k is the leading block length for Eq3/Eq4
// and must be 0 for Eq1/Eq2.
mpz_class m_upper(EquationId eq, const mpz_class& n, unsigned k, unsigned l);

// Absolute value of the alpha-exponent in the associated linear form:
// (k+l)n + (k+l)(k+l-1)/2.
mpz_class b1_abs(const mpz_class& n, unsigned k, unsigned l);

// B(n) = max(m_upper(n), b1_abs(n)) at the equation's block-length caps,
// as a single linear form (the max is attained by one branch uniformly
// in n >= 1).
LinearForm b_expression(EquationId eq);

// Block-length caps (k_max, l_max); 0 where the equation has no block of
// that kind.  Certification lives in two_adic::max_block_lengths.
struct Caps {
    unsigned k_max;
    unsigned l_max;
};
Caps equation_caps(EquationId eq);

} // namespace tribrep
