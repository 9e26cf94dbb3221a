#pragma once

#include <string>

#include "tribrep/interval.hpp"

namespace tribrep {

// Certified enclosures of the algebraic constants: the dominant root
// alpha of z^3 - z^2 - z - 1, the Binet coefficient
// c_alpha = 1/(3 alpha^2 - 2 alpha - 1), their logs, and |beta| = alpha^{-1/2}.
struct TribConstants {
    unsigned digits;  // requested decimal precision
    Interval alpha;
    Interval c_alpha;
    Interval log_alpha;
    Interval log_10;
    Interval theta;  // log alpha / log 10
    Interval beta_abs;
};

// Isolates alpha by exact rational bisection of the characteristic
// polynomial on [9/5, 19/10], then derives the rest by interval
// arithmetic.  All radii are certified <= 10^{2-digits}; the stated
// enclosures alpha in (1.83, 1.84), c_alpha in (0.18, 0.19),
// |beta| in (0.73, 0.74) and the defining identities are re-checked.
// Throws PrecisionError when the requested precision cannot certify them.
TribConstants compute_constants(unsigned digits);  // digits >= 50

// Verifies |T_s - c_alpha * alpha^{s+1}| < alpha^{-s/2} for 1 <= s <= n_max
// (the Binet error bound; the exponent s+1 is the convention under which
// the bound holds with c_alpha as above).  Picks its own working
// precision from n_max.  Returns false only on a certified violation;
// throws PrecisionError when a comparison cannot be decided.
bool binet_error_check(unsigned long n_max);

struct MinPolyReport {
    std::string annihilating;  // which of 44x^3 +/- 4x - 1 vanishes at c_alpha
    Interval plus_value;       // 44 c^3 + 4 c - 1
    Interval minus_value;      // 44 c^3 - 4 c - 1
    bool plus_vanishes;
    bool minus_vanishes;
    Interval height;  // h(c_alpha) = (1/3) log 44, same under either sign
};

// Audits the two candidate minimal polynomials of c_alpha; exactly one
// must vanish (a certified enclosure of 0), otherwise the constants are
// wrong and UnexpectedOutcome is thrown.  Requires >= 150 digits.
MinPolyReport minimal_poly_check_c_alpha(const TribConstants& k);

// Upper bound 2 log 9 + f*(1/3) log 44 on the logarithmic height of
// d/(9 c_alpha^f); d enters only through h(d) <= log 9, hence does not
// appear in the value but is validated to lie in 1..9.
Interval height_eta1(unsigned d, unsigned f, const TribConstants& k);

} // namespace tribrep
