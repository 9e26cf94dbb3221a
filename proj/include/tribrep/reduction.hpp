#pragma once

#include <gmpxx.h>

#include <functional>
#include <utility>
#include <vector>

#include "tribrep/constants.hpp"
#include "tribrep/equation.hpp"
#include "tribrep/interval.hpp"

namespace tribrep {

// Certified continued-fraction expansion of an irrational number.
// partial_quotients holds a_0..a_depth; convergents holds (p_k, q_k)
// with the standard recurrence p_k = a_k p_{k-1} + p_{k-2} (seeds
// p_{-1}=1, p_{-2}=0, q_{-1}=0, q_{-2}=1).
struct ContinuedFraction {
    Interval value;
    std::vector<mpz_class> partial_quotients;
    std::vector<std::pair<mpz_class, mpz_class>> convergents;
    unsigned precision_digits = 0;  // digits at which every a_k was certified
};

// theta_at(digits) must return an enclosure of one fixed irrational
// number, computed to roughly `digits` decimal digits.  The expansion
// starts at start_digits and doubles the working precision on any
// ambiguous floor until max_digits is exceeded; each quotient is then
// re-derived at twice the successful precision and must agree.
ContinuedFraction cf_expand(const std::function<Interval(unsigned)>& theta_at,
                            unsigned depth,
                            unsigned start_digits = 200,
                            unsigned max_digits = 3200);

// Certified ceil(c_gamma * (-log(1-a)) / a): the constant trading
// |e^Lambda - 1| < c_gamma e^{-delta Y} for |Lambda| < c e^{-delta Y}
// when |e^Lambda - 1| < a < 1.
mpz_class lambda_coefficient(const mpz_class& c_gamma, const mpq_class& a,
                             unsigned digits = 120);

// Homogeneous two-term reduction (beta = 0): with |x_2| <= X0 and
// Y0 = -1 + log(sqrt(5) X0 + 1)/log((1+sqrt(5))/2), any solution obeys
// Y < (1/delta) log(c (A+2) X0 / |theta2|) where A = max a_{k+1} over
// k <= Y0.  bound is inclusive: Y <= bound.
struct HomogeneousReduction {
    Interval y0;
    unsigned long index_limit = 0;  // floor(Y0)
    mpz_class largest_quotient;     // A
    Interval value;
    mpz_class bound;
};

HomogeneousReduction reduce_homogeneous(const ContinuedFraction& cf,
                                        const mpq_class& c,
                                        const mpq_class& delta,
                                        const mpz_class& X0,
                                        const Interval& theta2_abs);

// One inhomogeneous case: psi = (log d - log 9 - f log c_alpha)/log 10.
struct PsiCase {
    unsigned digit = 1;    // d in 1..9
    unsigned factors = 1;  // f = number of shifted factors
    Interval psi;
};

// Outcome of de Weger's inhomogeneous lemma applied with a single
// convergent denominator q > X0 such that ||q psi|| > 2 X0 / q holds
// for every case.  bound is exclusive: Y < bound.
struct InhomogeneousReduction {
    unsigned convergent_index = 0;
    mpz_class q;
    Interval value;
    mpz_class bound;
    std::size_t checked_cases = 0;
};

InhomogeneousReduction reduce_inhomogeneous(const ContinuedFraction& cf,
                                            const std::vector<PsiCase>& cases,
                                            const mpz_class& c,
                                            const mpq_class& delta,
                                            const mpz_class& X0,
                                            const Interval& theta2_abs);

struct ReductionStage {
    mpz_class x0;
    InhomogeneousReduction outcome;
};

// Full reduction of one equation: the |Gamma| -> |Lambda| conversion
// constant, certification of the |Gamma| < a cap and of delta = 3/5,
// then two rounds of the inhomogeneous lemma with X0 = B(previous
// bound - 1).
struct TwoStageReduction {
    EquationId eq;
    mpz_class lambda_c;             // c in |Lambda| < c exp(-delta n)
    mpq_class gamma_cap;            // the a with |Gamma| < a
    unsigned long gamma_threshold;  // cap certified for n >= this
    std::vector<mpz_class> partial_quotients;               // of theta
    std::vector<std::pair<mpz_class, mpz_class>> convergents;
    ReductionStage stage1;
    ReductionStage stage2;
    mpz_class search_ceiling;       // stage-2 bound is exclusive, so this
                                    // is the largest n not yet excluded
    unsigned long n_max;            // search range actually used
    unsigned precision_digits;
};

TwoStageReduction two_stage_reduce(EquationId eq,
                                   const TribConstants& k,
                                   const mpz_class& initial_n_bound,
                                   unsigned digits = 200,
                                   unsigned depth = 49);

} // namespace tribrep
