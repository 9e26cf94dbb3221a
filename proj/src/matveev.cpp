#include "tribrep/matveev.hpp"

#include <stdexcept>

#include "tribrep/errors.hpp"

namespace tribrep {

Interval matveev_constant(int s, int D, unsigned digits) {
    if (s < 1 || D < 1) throw std::invalid_argument("matveev_constant: s, D >= 1");
    mpfr_prec_t bits = digits_to_bits(digits);
    Interval thirty = Interval::exact_int(30L, bits);
    Interval sI = Interval::exact_int(static_cast<long>(s), bits);
    Interval dI = Interval::exact_int(static_cast<long>(D), bits);
    // s^{4.5} = s^4 * sqrt(s)
    Interval s45 = sI.pow_ui(4) * sI.sqrt();
    return Interval::exact_ratio(7, 5, bits) * thirty.pow_ui(static_cast<unsigned long>(s) + 3) *
           s45 * dI.pow_ui(2) * (Interval::exact_int(1L, bits) + dI.log());
}

namespace {

unsigned factor_cap(EquationId eq) {
    Caps c = equation_caps(eq);
    switch (eq) {
        case EquationId::Eq1:
        case EquationId::Eq2: return c.l_max;
        case EquationId::Eq3:
        case EquationId::Eq4: return c.k_max + c.l_max;
        case EquationId::Bgl: break;
    }
    throw std::invalid_argument("factor_cap: no linear-form setup for this equation");
}

} // namespace

MatveevInstance matveev_instance(EquationId eq, const TribConstants& k) {
    MatveevInstance inst;
    inst.eq = eq;
    inst.f_cap = factor_cap(eq);
    inst.A2 = mpq_class(7, 10);
    inst.A3 = 7;
    switch (eq) {
        case EquationId::Eq1:
            inst.A1 = 40;
            inst.B = b_expression(eq);
            inst.published_B = LinearForm{8, 28};  // printed; the displayed log uses 7n+28
            break;
        case EquationId::Eq2:
            inst.A1 = 40;
            inst.B = b_expression(eq);
            inst.published_B = inst.B;  // printed 6n+15, matches
            break;
        case EquationId::Eq3:
            inst.A1 = mpq_class(312, 5);  // 62.4
            inst.B = b_expression(eq);
            inst.published_B = LinearForm{13, 85};  // printed inside the log
            break;
        case EquationId::Eq4:
            inst.A1 = mpq_class(312, 5);
            inst.B = b_expression(eq);
            inst.published_B = std::nullopt;  // no printed counterpart
            break;
        case EquationId::Bgl:
            throw std::invalid_argument("matveev_instance: not defined for bgl");
    }
    inst.C = matveev_constant(inst.s, inst.D, k.digits);

    mpfr_prec_t bits = k.alpha.precision();
    Interval a1 = Interval::exact_ratio(inst.A1, bits);
    Interval a2 = Interval::exact_ratio(inst.A2, bits);
    Interval a3 = Interval::exact_ratio(inst.A3, bits);
    Interval three = Interval::exact_int(3L, bits);
    Interval p16 = Interval::exact_ratio(16, 100, bits);
    // eta_1 = d/(9 c_alpha^f): D h <= 3 (2 log 9 + (f/3) log 44) and
    // |log eta_1| <= f |log c_alpha| for every d in 1..9, f <= f_cap
    Interval dh1 = three * height_eta1(9, inst.f_cap, k);
    Interval labs1 = Interval::exact_int(static_cast<long>(inst.f_cap), bits) *
                     (-k.c_alpha.log());
    bool ok1 = dh1.certainly_less(a1) && labs1.certainly_less(a1) &&
               p16.certainly_less(a1);
    // eta_2 = alpha: D h(alpha) = log alpha = |log alpha|
    bool ok2 = k.log_alpha.certainly_less(a2) && p16.certainly_less(a2);
    // eta_3 = 10
    bool ok3 = (three * k.log_10).certainly_less(a3) && p16.certainly_less(a3);
    inst.admissible = ok1 && ok2 && ok3;
    if (!inst.admissible)
        throw UnexpectedOutcome("matveev_instance: A_j admissibility failed");
    return inst;
}

GammaBound gamma_bound(EquationId eq, unsigned f, const TribConstants& k) {
    unsigned cap = factor_cap(eq);
    if (f < 1 || f > cap)
        throw std::invalid_argument("gamma_bound: f outside caps");
    GammaBound g;
    g.eq = eq;
    g.f = f;
    mpz_class p3;
    mpz_ui_pow_ui(p3.get_mpz_t(), 3, f);
    g.remainder_terms = p3 - 1;
    mpfr_prec_t bits = k.c_alpha.precision();
    Interval q = Interval::exact_int(p3, bits) * k.c_alpha.inv();
    // certified ceiling: both endpoints must round up to the same integer
    mpz_class fl = q.floor_certain();
    g.coefficient = fl + 1;  // 3^f/c_alpha is irrational, so ceil = floor + 1
    g.decay_rate = mpq_class(3, 2);
    g.published_coefficient = 0;
    if (eq == EquationId::Eq1 && f == 7) g.published_coefficient = 11964;
    if (eq == EquationId::Eq2 && f == 6) g.published_coefficient = 3988;
    if ((eq == EquationId::Eq3 || eq == EquationId::Eq4) && f == 13)
        g.published_coefficient = 8721506;
    return g;
}

InitialBound initial_bound(EquationId eq, const TribConstants& k) {
    MatveevInstance inst = matveev_instance(eq, k);
    GammaBound g = gamma_bound(eq, inst.f_cap, k);
    mpfr_prec_t bits = k.alpha.precision();

    Interval CA = inst.C * Interval::exact_ratio(inst.A1 * inst.A2 * inst.A3, bits);
    Interval logcoeff = Interval::exact_int(g.coefficient, bits).log();
    Interval denom = Interval::exact_ratio(3, 2, bits) * k.log_alpha;
    Interval one = Interval::exact_int(1L, bits);
    long a = inst.B.a, b = inst.B.b;

    auto F = [&](const mpz_class& n) {
        Interval arg = Interval::exact_int(a * n + b, bits);
        return (CA * (one + arg.log()) + logcoeff) / denom;
    };

    InitialBound out;
    out.K = CA / denom;
    mpz_class cur("1000000000000000000000000000000");  // 10^30, above any fixed point
    int iters = 0;
    while (iters < 200) {
        ++iters;
        mpz_class nxt = F(cur).ceil_upper();
        if (nxt >= cur) break;
        cur = nxt;
    }
    out.bound = cur;
    out.iterations = iters;
    out.fixed_point_certified = F(cur).ceil_upper() <= cur;
    // slope K a/(a n + b) < 1 at n = bound: decreasing in n, so no further
    // fixed point exists above and the exclusive bound is sound
    Interval slope = out.K * Interval::exact_ratio(mpq_class(mpz_class(a), a * cur + b), bits);
    out.slope_certified = slope.certainly_less(one);
    if (!out.fixed_point_certified || !out.slope_certified)
        throw UnexpectedOutcome("initial_bound: fixed point certification failed");
    return out;
}

} // namespace tribrep
