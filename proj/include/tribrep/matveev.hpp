#pragma once

#include <gmpxx.h>

#include <optional>

#include "tribrep/constants.hpp"
#include "tribrep/equation.hpp"
#include "tribrep/interval.hpp"

namespace tribrep {

// C(s, D) = 1.4 * 30^{s+3} * s^{4.5} * D^2 * (1 + log D)
Interval matveev_constant(int s, int D, unsigned digits = 60);

// One application of the lower bound for linear forms in three
// logarithms, with the equation-specific height bounds A_j and the
// linear expression B(n) >= max |b_j|.
struct MatveevInstance {
    EquationId eq;
    int s = 3;
    int D = 3;
    unsigned f_cap;                 // largest factor count in scope
    mpq_class A1, A2, A3;           // height bounds (exact rationals)
    LinearForm B;                   // recomputed max(m_upper, |b_1|)
    std::optional<LinearForm> published_B;  // as printed, when stated
    Interval C;
    bool admissible;  // every A_j certified >= max(D h(eta_j), |log eta_j|, 0.16)
};

MatveevInstance matveev_instance(EquationId eq, const TribConstants& k);

// The tail of the product expansion: 3^f - 1 remainder terms bounded by
// coefficient * alpha^{-3n/2} with coefficient = ceil(3^f / c_alpha).
struct GammaBound {
    EquationId eq;
    unsigned f;
    mpz_class remainder_terms;
    mpz_class coefficient;
    mpz_class published_coefficient;  // 0 where the source prints none
    mpq_class decay_rate;             // 3/2
};

GammaBound gamma_bound(EquationId eq, unsigned f, const TribConstants& k);

// Absolute bound on n from the inequality n < F(n),
// F(n) = (C A1 A2 A3 (1 + log(a n + b)) + log coefficient) / ((3/2) log alpha),
// solved by the monotone iteration n <- ceil(F(n)) from above.  The
// result is exclusive: every solution satisfies n < bound.
struct InitialBound {
    mpz_class bound;
    Interval K;  // C A1 A2 A3 / ((3/2) log alpha)
    int iterations;
    bool fixed_point_certified;  // F(bound) <= bound
    bool slope_certified;        // d/dn F < 1 at bound, so no fixed point above
};

InitialBound initial_bound(EquationId eq, const TribConstants& k);

} // namespace tribrep
