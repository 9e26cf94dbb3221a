#include "tribrep/constants.hpp"

#include <stdexcept>

#include "tribrep/errors.hpp"

namespace tribrep {

namespace {

// sign of z^3 - z^2 - z - 1 at an exact rational
int char_poly_sign(const mpq_class& z) {
    mpq_class v = z * z * z - z * z - z - 1;
    return sgn(v);
}

mpq_class pow10_inv(unsigned decimals) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, decimals);
    return mpq_class(1, p);
}

void require(bool cond, const char* what) {
    if (!cond) throw PrecisionError(std::string("compute_constants: cannot certify ") + what);
}

} // namespace

TribConstants compute_constants(unsigned digits) {
    if (digits < 50)
        throw std::invalid_argument("compute_constants: precision must be >= 50 digits");
    mpfr_prec_t bits = digits_to_bits(digits + 10);

    // exact bisection on [9/5, 19/10]; the sign change is rational-exact,
    // so the enclosure is rigorous before any rounding enters
    mpq_class lo(9, 5), hi(19, 10);
    if (char_poly_sign(lo) >= 0 || char_poly_sign(hi) <= 0)
        throw std::logic_error("compute_constants: bad bracketing interval");
    unsigned iters = static_cast<unsigned>((digits + 8) * 3.33) + 4;
    for (unsigned i = 0; i < iters; ++i) {
        mpq_class mid = (lo + hi) / 2;
        if (char_poly_sign(mid) < 0)
            lo = mid;
        else
            hi = mid;
    }

    TribConstants k;
    k.digits = digits;
    k.alpha = Interval::hull(Interval::exact_ratio(lo, bits),
                             Interval::exact_ratio(hi, bits));
    Interval one = Interval::exact_int(1L, bits);
    Interval a = k.alpha;
    k.c_alpha = (Interval::exact_int(3L, bits) * a * a -
                 Interval::exact_int(2L, bits) * a - one)
                    .inv();
    k.log_alpha = a.log();
    k.log_10 = Interval::exact_int(10L, bits).log();
    k.theta = k.log_alpha / k.log_10;
    k.beta_abs = a.sqrt().inv();

    mpq_class max_radius = pow10_inv(digits) * 100;  // 10^{2-digits}
    require(k.alpha.radius_leq(max_radius), "alpha radius");
    require(k.c_alpha.radius_leq(max_radius), "c_alpha radius");
    require(k.log_alpha.radius_leq(max_radius), "log_alpha radius");
    require(k.log_10.radius_leq(max_radius), "log_10 radius");
    require(k.theta.radius_leq(max_radius), "theta radius");
    require(k.beta_abs.radius_leq(max_radius), "beta_abs radius");

    require(k.alpha.certainly_greater(Interval::exact_ratio(183, 100, bits)) &&
                k.alpha.certainly_less(Interval::exact_ratio(184, 100, bits)),
            "alpha in (1.83, 1.84)");
    require(k.c_alpha.certainly_greater(Interval::exact_ratio(18, 100, bits)) &&
                k.c_alpha.certainly_less(Interval::exact_ratio(19, 100, bits)),
            "c_alpha in (0.18, 0.19)");
    require(k.beta_abs.certainly_greater(Interval::exact_ratio(73, 100, bits)) &&
                k.beta_abs.certainly_less(Interval::exact_ratio(74, 100, bits)),
            "|beta| in (0.73, 0.74)");
    require((a * a * a - a * a - a - one).contains_zero(), "alpha root identity");
    require((k.beta_abs * k.beta_abs * a - one).contains_zero(), "|beta|^2 alpha = 1");
    require((k.c_alpha * (Interval::exact_int(3L, bits) * a * a -
                          Interval::exact_int(2L, bits) * a - one) -
             one)
                .contains_zero(),
            "c_alpha defining identity");
    return k;
}

bool binet_error_check(unsigned long n_max) {
    if (n_max < 1) throw std::invalid_argument("binet_error_check: n_max must be >= 1");
    // |T_s - c_alpha alpha^{s+1}| ~ alpha^{-s/2} while T_s ~ alpha^s, so the
    // difference needs ~(3/2) s log10(alpha) = 0.4 s digits to resolve
    unsigned digits = static_cast<unsigned>(n_max * 2 / 5) + 60;
    TribConstants k = compute_constants(digits);
    mpfr_prec_t bits = k.alpha.precision();

    mpz_class t0 = 0, t1 = 1, t2 = 1;  // T_{s-1}, T_s, T_{s+1} at s = 1
    Interval apow = k.alpha * k.alpha;  // alpha^{s+1} at s = 1
    Interval bpow = k.beta_abs;         // alpha^{-s/2} at s = 1
    for (unsigned long s = 1; s <= n_max; ++s) {
        Interval err = (Interval::exact_int(t1, bits) - k.c_alpha * apow).abs();
        if (!err.certainly_less(bpow)) {
            if (err.certainly_greater(bpow)) return false;  // genuine violation
            throw PrecisionError("binet_error_check: comparison undecided at s=" +
                                 std::to_string(s));
        }
        if (s < n_max) {
            mpz_class t3 = t0 + t1 + t2;
            t0 = t1;
            t1 = t2;
            t2 = t3;
            apow = apow * k.alpha;
            bpow = bpow * k.beta_abs;
        }
    }
    return true;
}

MinPolyReport minimal_poly_check_c_alpha(const TribConstants& k) {
    if (k.digits < 150)
        throw std::invalid_argument("minimal_poly_check_c_alpha: needs >= 150 digits");
    mpfr_prec_t bits = k.c_alpha.precision();
    Interval c = k.c_alpha;
    Interval c3 = c * c * c;
    Interval f44 = Interval::exact_int(44L, bits);
    Interval f4 = Interval::exact_int(4L, bits);
    Interval one = Interval::exact_int(1L, bits);
    MinPolyReport r;
    r.plus_value = f44 * c3 + f4 * c - one;
    r.minus_value = f44 * c3 - f4 * c - one;
    r.plus_vanishes = r.plus_value.contains_zero();
    r.minus_vanishes = r.minus_value.contains_zero();
    if (r.plus_vanishes == r.minus_vanishes)
        throw UnexpectedOutcome(
            "minimal_poly_check_c_alpha: expected exactly one candidate to vanish");
    r.annihilating = r.plus_vanishes ? "44x^3+4x-1" : "44x^3-4x-1";
    r.height = f44.log() / Interval::exact_int(3L, bits);
    return r;
}

Interval height_eta1(unsigned d, unsigned f, const TribConstants& k) {
    if (d < 1 || d > 9) throw std::invalid_argument("height_eta1: d must be 1..9");
    mpfr_prec_t bits = k.alpha.precision();
    Interval log9 = Interval::exact_int(9L, bits).log();
    Interval log44 = Interval::exact_int(44L, bits).log();
    return Interval::exact_int(2L, bits) * log9 +
           Interval::exact_int(static_cast<long>(f), bits) * log44 /
               Interval::exact_int(3L, bits);
}

} // namespace tribrep
