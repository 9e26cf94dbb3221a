#include "tribrep/reduction.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

#include "tribrep/errors.hpp"
#include "tribrep/matveev.hpp"

namespace tribrep {

namespace {

struct CfAttempt {
    std::vector<mpz_class> quotients;
    Interval theta;
};

// Expand at one fixed precision.  Throws PrecisionError (with
// *fail_index set) as soon as a floor is ambiguous.
CfAttempt cf_attempt(const std::function<Interval(unsigned)>& theta_at,
                     unsigned depth, unsigned digits, unsigned* fail_index) {
    CfAttempt out;
    out.theta = theta_at(digits);
    mpfr_prec_t bits = out.theta.precision();
    Interval x = out.theta;
    out.quotients.reserve(depth + 1);
    for (unsigned k = 0; k <= depth; ++k) {
        *fail_index = k;
        mpz_class a = x.floor_certain();
        if (k > 0 && a < 1)
            throw UnexpectedOutcome("cf_attempt: partial quotient a_" +
                                    std::to_string(k) + " is not positive");
        out.quotients.push_back(a);
        if (k == depth) break;
        Interval frac = x - Interval::exact_int(a, bits);
        if (frac.contains_zero())
            throw PrecisionError("cf_attempt: fractional part at index " +
                                 std::to_string(k) +
                                 " not separated from zero");
        x = frac.inv();
    }
    return out;
}

} // namespace

ContinuedFraction cf_expand(const std::function<Interval(unsigned)>& theta_at,
                            unsigned depth,
                            unsigned start_digits,
                            unsigned max_digits) {
    if (depth > 200)
        throw std::invalid_argument("cf_expand: depth must be <= 200");
    if (start_digits < 50) start_digits = 50;
    if (max_digits < start_digits) max_digits = start_digits;

    unsigned digits = start_digits;
    unsigned fail_index = 0;
    CfAttempt got;
    for (;;) {
        try {
            got = cf_attempt(theta_at, depth, digits, &fail_index);
            break;
        } catch (const PrecisionError&) {
            if (digits * 2 > max_digits)
                throw PrecisionError(
                    "cf_expand: partial quotient a_" +
                    std::to_string(fail_index) + " not certified within " +
                    std::to_string(max_digits) + " digits");
            digits *= 2;
        }
    }

    // Every quotient must survive a precision doubling unchanged.
    CfAttempt check = cf_attempt(theta_at, depth, digits * 2, &fail_index);
    if (check.quotients != got.quotients)
        throw UnexpectedOutcome(
            "cf_expand: partial quotients changed under precision doubling");

    ContinuedFraction cf;
    cf.value = check.theta;
    cf.partial_quotients = std::move(check.quotients);
    cf.precision_digits = digits;
    mpfr_prec_t bits = cf.value.precision();

    mpz_class p_prev = 1, p_prev2 = 0;  // p_{-1}, p_{-2}
    mpz_class q_prev = 0, q_prev2 = 1;  // q_{-1}, q_{-2}
    cf.convergents.reserve(depth + 1);
    for (unsigned k = 0; k <= depth; ++k) {
        const mpz_class& a = cf.partial_quotients[k];
        mpz_class p = a * p_prev + p_prev2;
        mpz_class q = a * q_prev + q_prev2;
        if (k >= 1) {
            mpz_class det = p * q_prev - p_prev * q;
            mpz_class want = (k % 2 == 1) ? 1 : -1;  // (-1)^{k-1}
            if (det != want)
                throw UnexpectedOutcome(
                    "cf_expand: convergent determinant broken at index " +
                    std::to_string(k));
        }
        cf.convergents.emplace_back(p, q);
        p_prev2 = p_prev; p_prev = p;
        q_prev2 = q_prev; q_prev = q;
    }

    // |theta - p_k/q_k| < 1/(q_k q_{k+1}) for every k with a successor.
    for (unsigned k = 0; k + 1 <= depth; ++k) {
        const mpz_class& p = cf.convergents[k].first;
        const mpz_class& q = cf.convergents[k].second;
        mpq_class approx(p, q);
        approx.canonicalize();
        Interval diff = (cf.value - Interval::exact_ratio(approx, bits)).abs();
        mpq_class lim(1, q * cf.convergents[k + 1].second);
        lim.canonicalize();
        Interval lim_iv = Interval::exact_ratio(lim, bits);
        if (diff.certainly_less(lim_iv)) continue;
        if (diff.certainly_greater(lim_iv))
            throw UnexpectedOutcome(
                "cf_expand: approximation quality broken at index " +
                std::to_string(k));
        throw PrecisionError(
            "cf_expand: approximation check unresolved at index " +
            std::to_string(k));
    }
    return cf;
}

mpz_class lambda_coefficient(const mpz_class& c_gamma, const mpq_class& a,
                             unsigned digits) {
    if (c_gamma <= 0)
        throw std::invalid_argument("lambda_coefficient: c_gamma must be positive");
    if (a <= 0 || a >= 1)
        throw std::invalid_argument("lambda_coefficient: need 0 < a < 1");
    mpfr_prec_t bits = digits_to_bits(digits);
    mpq_class one_minus = 1 - a;
    Interval factor = -(Interval::exact_ratio(one_minus, bits).log()) /
                      Interval::exact_ratio(a, bits);
    // c_gamma * (-log(1-a))/a is irrational for rational a in (0,1), so
    // its ceiling is floor + 1.
    return factor.mul_z(c_gamma).floor_certain() + 1;
}

HomogeneousReduction reduce_homogeneous(const ContinuedFraction& cf,
                                        const mpq_class& c,
                                        const mpq_class& delta,
                                        const mpz_class& X0,
                                        const Interval& theta2_abs) {
    if (c <= 0 || delta <= 0 || X0 < 1)
        throw std::invalid_argument(
            "reduce_homogeneous: need c > 0, delta > 0, X0 >= 1");
    mpfr_prec_t bits = cf.value.precision();
    Interval one = Interval::exact_int(1, bits);
    Interval sqrt5 = Interval::exact_int(5, bits).sqrt();
    Interval phi = (one + sqrt5) * Interval::exact_ratio(1, 2, bits);

    HomogeneousReduction out;
    out.y0 = (sqrt5.mul_z(X0) + one).log() / phi.log() - one;
    mpz_class limit = out.y0.floor_certain();
    if (limit < 0) limit = 0;
    out.index_limit = limit.get_ui();

    // A = max a_{k+1} over 0 <= k <= floor(Y0).
    if (cf.partial_quotients.size() < out.index_limit + 2)
        throw PrecisionError(
            "reduce_homogeneous: expansion depth " +
            std::to_string(cf.partial_quotients.size() - 1) +
            " insufficient, need partial quotient a_" +
            std::to_string(out.index_limit + 1));
    out.largest_quotient = 0;
    for (unsigned long i = 1; i <= out.index_limit + 1; ++i)
        if (cf.partial_quotients[i] > out.largest_quotient)
            out.largest_quotient = cf.partial_quotients[i];

    Interval num = Interval::exact_ratio(c, bits)
                       .mul_z((out.largest_quotient + 2) * X0) / theta2_abs;
    out.value = num.log() / Interval::exact_ratio(delta, bits);
    out.bound = out.value.floor_certain();  // Y < value, so Y <= floor(value)
    return out;
}

InhomogeneousReduction reduce_inhomogeneous(const ContinuedFraction& cf,
                                            const std::vector<PsiCase>& cases,
                                            const mpz_class& c,
                                            const mpq_class& delta,
                                            const mpz_class& X0,
                                            const Interval& theta2_abs) {
    if (cases.empty())
        throw std::invalid_argument("reduce_inhomogeneous: no cases given");
    if (c <= 0 || delta <= 0 || X0 < 1)
        throw std::invalid_argument(
            "reduce_inhomogeneous: need c > 0, delta > 0, X0 >= 1");
    mpfr_prec_t bits = cf.value.precision();

    bool any_candidate = false;
    std::string offenders;
    for (std::size_t k = 0; k < cf.convergents.size(); ++k) {
        const mpz_class& q = cf.convergents[k].second;
        if (q <= X0) continue;
        any_candidate = true;

        mpq_class thr_q(2 * X0, q);
        thr_q.canonicalize();
        Interval thr = Interval::exact_ratio(thr_q, bits);

        bool certain_fail = false;
        std::string unresolved;
        offenders.clear();
        for (const PsiCase& pc : cases) {
            Interval dist = pc.psi.mul_z(q).nearest_int_distance();
            if (dist.certainly_greater(thr)) continue;
            std::string tag = "(d=" + std::to_string(pc.digit) +
                              ",f=" + std::to_string(pc.factors) + ")";
            if (dist.certainly_less(thr)) {
                certain_fail = true;
                if (!offenders.empty()) offenders += ", ";
                offenders += tag;
            } else if (unresolved.empty()) {
                unresolved = tag;
            }
        }
        // An undecided case only matters if nothing certainly failed:
        // with a certain failure this convergent is out either way.
        if (certain_fail) continue;
        if (!unresolved.empty())
            throw PrecisionError(
                "reduce_inhomogeneous: ||q psi|| vs 2 X0/q unresolved at "
                "convergent " + std::to_string(k) + " for " + unresolved);

        InhomogeneousReduction out;
        out.convergent_index = static_cast<unsigned>(k);
        out.q = q;
        Interval num = Interval::exact_int(q * q * c, bits) /
                       theta2_abs.mul_z(X0);
        out.value = num.log() / Interval::exact_ratio(delta, bits);
        out.bound = out.value.floor_certain() + 1;  // Y < bound, exclusive
        out.checked_cases = cases.size();
        return out;
    }

    if (!any_candidate)
        throw PrecisionError(
            "reduce_inhomogeneous: no convergent exceeds X0 = " +
            X0.get_str() + "; expansion too shallow");
    throw UnexpectedOutcome(
        "reduce_inhomogeneous: every convergent > X0 fails the norm "
        "condition; offenders at deepest index: " + offenders);
}

namespace {

struct EqReductionParams {
    unsigned f_lo;
    unsigned f_hi;
    mpq_class cap;            // a with |Gamma| < a on the certified range
    unsigned long threshold;  // smallest n for which the cap is certified
    unsigned long published_range;
};

EqReductionParams reduction_params(EquationId eq) {
    switch (eq) {
        case EquationId::Eq1: return {1, 7, mpq_class(1, 50), 15, 48};
        case EquationId::Eq2: return {1, 6, mpq_class(1, 200), 15, 46};
        case EquationId::Eq3: return {2, 13, mpq_class(1, 500), 25, 68};
        case EquationId::Eq4: return {2, 13, mpq_class(1, 500), 25, 68};
        default: break;
    }
    throw std::invalid_argument("two_stage_reduce: no reduction for " +
                                equation_name(eq));
}

void require_less(const Interval& lhs, const Interval& rhs, const char* what) {
    if (lhs.certainly_less(rhs)) return;
    if (lhs.certainly_greater(rhs))
        throw UnexpectedOutcome(std::string(what) + " fails");
    throw PrecisionError(std::string(what) +
                         " unresolved at current precision");
}

TwoStageReduction attempt_reduction(EquationId eq, const TribConstants& base,
                                    const mpz_class& initial_n_bound,
                                    unsigned digits, unsigned depth) {
    EqReductionParams par = reduction_params(eq);
    TribConstants local{};
    const TribConstants& K =
        base.digits >= digits ? base : (local = compute_constants(digits));
    mpfr_prec_t bits = digits_to_bits(digits);

    TwoStageReduction out;
    out.eq = eq;
    out.gamma_cap = par.cap;
    out.gamma_threshold = par.threshold;
    out.precision_digits = digits;

    // delta = 3/5 is admissible because the true decay rate of |Gamma|
    // is (3/2) log alpha = 0.914... per unit of n.
    mpq_class delta(3, 5);
    require_less(Interval::exact_ratio(delta, bits),
                 Interval::exact_ratio(3, 2, bits) * K.log_alpha,
                 "delta admissibility (3/5 < (3/2) log alpha)");

    GammaBound gb = gamma_bound(eq, par.f_hi, K);

    // coefficient * alpha^{-3 n0 / 2} < cap at the stated threshold n0;
    // the left side only decreases for larger n.
    Interval decay = K.alpha.pow_ui(3 * par.threshold).sqrt().inv();
    require_less(decay.mul_z(gb.coefficient),
                 Interval::exact_ratio(par.cap, bits),
                 "|Gamma| cap at threshold");

    out.lambda_c = lambda_coefficient(gb.coefficient, par.cap, digits);

    Interval log9 = Interval::exact_int(9, bits).log();
    Interval log_c_alpha = K.c_alpha.log();
    std::vector<PsiCase> cases;
    cases.reserve(9 * (par.f_hi - par.f_lo + 1));
    for (unsigned f = par.f_lo; f <= par.f_hi; ++f) {
        Interval fterm = log_c_alpha.mul_z(mpz_class(f));
        for (unsigned d = 1; d <= 9; ++d) {
            PsiCase pc;
            pc.digit = d;
            pc.factors = f;
            pc.psi = (Interval::exact_int(static_cast<long>(d), bits).log() -
                      log9 - fterm) / K.log_10;
            cases.push_back(std::move(pc));
        }
    }

    auto theta_at = [&K](unsigned dg) {
        return dg <= K.digits ? K.theta : compute_constants(dg).theta;
    };
    ContinuedFraction cf =
        cf_expand(theta_at, depth, digits, std::max(3200u, digits));
    out.partial_quotients = cf.partial_quotients;
    out.convergents = cf.convergents;

    LinearForm B = b_expression(eq);

    out.stage1.x0 = B.eval(initial_n_bound - 1);
    out.stage1.outcome = reduce_inhomogeneous(cf, cases, out.lambda_c, delta,
                                              out.stage1.x0, K.log_10);

    out.stage2.x0 = B.eval(out.stage1.outcome.bound - 1);
    out.stage2.outcome = reduce_inhomogeneous(cf, cases, out.lambda_c, delta,
                                              out.stage2.x0, K.log_10);

    if (out.stage2.outcome.bound > out.stage1.outcome.bound ||
        out.stage1.outcome.bound > initial_n_bound)
        throw UnexpectedOutcome("two_stage_reduce: bound dominance violated");

    out.search_ceiling = out.stage2.outcome.bound - 1;
    out.n_max = std::max(out.search_ceiling.get_ui(), par.published_range);
    return out;
}

} // namespace

TwoStageReduction two_stage_reduce(EquationId eq, const TribConstants& k,
                                   const mpz_class& initial_n_bound,
                                   unsigned digits, unsigned depth) {
    if (initial_n_bound < 2)
        throw std::invalid_argument("two_stage_reduce: initial bound too small");
    if (digits < 100)
        throw PrecisionError(
            "two_stage_reduce: reduction needs >= 100 digits, got " +
            std::to_string(digits));
    unsigned d = digits;
    for (;;) {
        try {
            return attempt_reduction(eq, k, initial_n_bound, d, depth);
        } catch (const PrecisionError&) {
            if (d >= 1600) throw;
            d = std::min(1600u, d * 2);
        }
    }
}

} // namespace tribrep
