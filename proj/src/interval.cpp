#include "tribrep/interval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

namespace tribrep {

mpfr_prec_t digits_to_bits(unsigned digits) {
    // log2(10) = 3.3219..., plus guard bits
    return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873626)) + 16;
}

Interval::Interval() {
    mpfr_init2(lo_, 64);
    mpfr_init2(hi_, 64);
    mpfr_set_ui(lo_, 0, MPFR_RNDD);
    mpfr_set_ui(hi_, 0, MPFR_RNDU);
}

Interval::Interval(mpfr_prec_t bits) {
    mpfr_init2(lo_, bits);
    mpfr_init2(hi_, bits);
    mpfr_set_ui(lo_, 0, MPFR_RNDD);
    mpfr_set_ui(hi_, 0, MPFR_RNDU);
}

Interval::Interval(const Interval& o) {
    mpfr_init2(lo_, mpfr_get_prec(o.lo_));
    mpfr_init2(hi_, mpfr_get_prec(o.hi_));
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& o) noexcept {
    mpfr_init2(lo_, mpfr_get_prec(o.lo_));
    mpfr_init2(hi_, mpfr_get_prec(o.hi_));
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
}

Interval& Interval::operator=(const Interval& o) {
    if (this != &o) {
        mpfr_set_prec(lo_, mpfr_get_prec(o.lo_));
        mpfr_set_prec(hi_, mpfr_get_prec(o.hi_));
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    return *this;
}

Interval& Interval::operator=(Interval&& o) noexcept {
    if (this != &o) {
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
    }
    return *this;
}

Interval::~Interval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

Interval Interval::exact_int(long v, mpfr_prec_t bits) {
    Interval r(bits);
    mpfr_set_si(r.lo_, v, MPFR_RNDD);
    mpfr_set_si(r.hi_, v, MPFR_RNDU);
    return r;
}

Interval Interval::exact_int(const mpz_class& v, mpfr_prec_t bits) {
    Interval r(bits);
    mpfr_set_z(r.lo_, v.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi_, v.get_mpz_t(), MPFR_RNDU);
    return r;
}

Interval Interval::exact_ratio(long num, long den, mpfr_prec_t bits) {
    return exact_ratio(mpq_class(num, den), bits);
}

Interval Interval::exact_ratio(const mpq_class& q, mpfr_prec_t bits) {
    Interval r(bits);
    mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
    return r;
}

Interval Interval::hull(const Interval& a, const Interval& b) {
    Interval r(std::max(a.precision(), b.precision()));
    mpfr_set(r.lo_, mpfr_cmp(a.lo_, b.lo_) <= 0 ? a.lo_ : b.lo_, MPFR_RNDD);
    mpfr_set(r.hi_, mpfr_cmp(a.hi_, b.hi_) >= 0 ? a.hi_ : b.hi_, MPFR_RNDU);
    return r;
}

Interval Interval::result_like(const Interval& o) const {
    return Interval(std::max(precision(), o.precision()));
}

void Interval::check_valid(const char* op) const {
    if (mpfr_nan_p(lo_) || mpfr_nan_p(hi_) || mpfr_cmp(lo_, hi_) > 0)
        throw PrecisionError(std::string("invalid interval after ") + op);
}

Interval Interval::operator+(const Interval& o) const {
    Interval r = result_like(o);
    mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
    r.check_valid("+");
    return r;
}

Interval Interval::operator-(const Interval& o) const {
    Interval r = result_like(o);
    mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
    r.check_valid("-");
    return r;
}

Interval Interval::operator*(const Interval& o) const {
    Interval r = result_like(o);
    mpfr_t t;
    mpfr_init2(t, r.precision());
    const mpfr_srcptr a[2] = {lo_, hi_};
    const mpfr_srcptr b[2] = {o.lo_, o.hi_};
    bool first = true;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            mpfr_mul(t, a[i], b[j], MPFR_RNDD);
            if (first || mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
            mpfr_mul(t, a[i], b[j], MPFR_RNDU);
            if (first || mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
            first = false;
        }
    mpfr_clear(t);
    r.check_valid("*");
    return r;
}

Interval Interval::operator/(const Interval& o) const {
    if (o.contains_zero())
        throw PrecisionError("interval division: divisor contains zero");
    Interval r = result_like(o);
    mpfr_t t;
    mpfr_init2(t, r.precision());
    const mpfr_srcptr a[2] = {lo_, hi_};
    const mpfr_srcptr b[2] = {o.lo_, o.hi_};
    bool first = true;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            mpfr_div(t, a[i], b[j], MPFR_RNDD);
            if (first || mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
            mpfr_div(t, a[i], b[j], MPFR_RNDU);
            if (first || mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
            first = false;
        }
    mpfr_clear(t);
    r.check_valid("/");
    return r;
}

Interval Interval::operator-() const {
    Interval r(precision());
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    return r;
}

Interval Interval::abs() const {
    Interval r(precision());
    if (mpfr_sgn(lo_) >= 0) return *this;
    if (mpfr_sgn(hi_) <= 0) return -*this;
    // straddles zero
    mpfr_set_ui(r.lo_, 0, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    if (mpfr_cmp(r.hi_, hi_) < 0) mpfr_set(r.hi_, hi_, MPFR_RNDU);
    return r;
}

Interval Interval::inv() const {
    return exact_int(1L, precision()) / *this;
}

Interval Interval::log() const {
    if (mpfr_sgn(lo_) <= 0)
        throw PrecisionError("interval log: lower endpoint not positive");
    Interval r(precision());
    mpfr_log(r.lo_, lo_, MPFR_RNDD);
    mpfr_log(r.hi_, hi_, MPFR_RNDU);
    r.check_valid("log");
    return r;
}

Interval Interval::sqrt() const {
    if (mpfr_sgn(lo_) < 0)
        throw PrecisionError("interval sqrt: lower endpoint negative");
    Interval r(precision());
    mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
    mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
    r.check_valid("sqrt");
    return r;
}

Interval Interval::pow_ui(unsigned long e) const {
    if (mpfr_sgn(lo_) < 0)
        throw PrecisionError("interval pow_ui: base not certainly nonnegative");
    Interval r(precision());
    mpfr_pow_ui(r.lo_, lo_, e, MPFR_RNDD);
    mpfr_pow_ui(r.hi_, hi_, e, MPFR_RNDU);
    r.check_valid("pow_ui");
    return r;
}

Interval Interval::mul_z(const mpz_class& z) const {
    Interval r(precision());
    if (mpz_sgn(z.get_mpz_t()) >= 0) {
        mpfr_mul_z(r.lo_, lo_, z.get_mpz_t(), MPFR_RNDD);
        mpfr_mul_z(r.hi_, hi_, z.get_mpz_t(), MPFR_RNDU);
    } else {
        mpfr_mul_z(r.lo_, hi_, z.get_mpz_t(), MPFR_RNDD);
        mpfr_mul_z(r.hi_, lo_, z.get_mpz_t(), MPFR_RNDU);
    }
    r.check_valid("mul_z");
    return r;
}

bool Interval::contains_zero() const {
    return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
}

bool Interval::certainly_positive() const { return mpfr_sgn(lo_) > 0; }
bool Interval::certainly_negative() const { return mpfr_sgn(hi_) < 0; }

bool Interval::certainly_less(const Interval& o) const {
    return mpfr_cmp(hi_, o.lo_) < 0;
}

bool Interval::certainly_greater(const Interval& o) const {
    return mpfr_cmp(lo_, o.hi_) > 0;
}

mpz_class Interval::floor_certain() const {
    mpz_class fl, fh;
    mpfr_get_z(fl.get_mpz_t(), lo_, MPFR_RNDD);
    mpfr_get_z(fh.get_mpz_t(), hi_, MPFR_RNDD);
    if (fl != fh)
        throw PrecisionError("floor_certain: enclosure straddles an integer");
    return fl;
}

mpz_class Interval::ceil_upper() const {
    mpz_class c;
    mpfr_get_z(c.get_mpz_t(), hi_, MPFR_RNDU);
    return c;
}

Interval Interval::nearest_int_distance() const {
    Interval r(precision());
    mpz_class fl, fh;
    mpfr_get_z(fl.get_mpz_t(), lo_, MPFR_RNDD);
    mpfr_get_z(fh.get_mpz_t(), hi_, MPFR_RNDD);
    mpfr_t a, b;
    mpfr_init2(a, precision());
    mpfr_init2(b, precision());
    if (fl == fh) {
        // whole enclosure lies in [fl, fl+1]
        mpz_class fl1 = fl + 1;
        mpfr_sub_z(a, lo_, fl.get_mpz_t(), MPFR_RNDD);   // lo - floor
        mpfr_z_sub(b, fl1.get_mpz_t(), hi_, MPFR_RNDD);  // floor+1 - hi
        if (mpfr_cmp(a, b) <= 0) mpfr_set(r.lo_, a, MPFR_RNDD);
        else mpfr_set(r.lo_, b, MPFR_RNDD);
        if (mpfr_sgn(r.lo_) < 0) mpfr_set_ui(r.lo_, 0, MPFR_RNDD);
        // d(x) <= x - fl <= hi - fl and d(x) <= fl+1 - x <= fl+1 - lo
        mpfr_sub_z(a, hi_, fl.get_mpz_t(), MPFR_RNDU);
        mpfr_z_sub(b, fl1.get_mpz_t(), lo_, MPFR_RNDU);
        if (mpfr_cmp(a, b) <= 0) mpfr_set(r.hi_, a, MPFR_RNDU);
        else mpfr_set(r.hi_, b, MPFR_RNDU);
        if (mpfr_cmp_d(r.hi_, 0.5) > 0) mpfr_set_d(r.hi_, 0.5, MPFR_RNDU);
    } else {
        // straddles at least one integer: no useful lower bound
        mpfr_set_ui(r.lo_, 0, MPFR_RNDD);
        mpz_class mid = fh;  // an integer inside [lo, hi]
        mpfr_sub_z(a, hi_, mid.get_mpz_t(), MPFR_RNDU);
        mpfr_z_sub(b, mid.get_mpz_t(), lo_, MPFR_RNDU);
        if (mpfr_cmp(a, b) >= 0) mpfr_set(r.hi_, a, MPFR_RNDU);
        else mpfr_set(r.hi_, b, MPFR_RNDU);
        if (mpfr_cmp_d(r.hi_, 0.5) > 0) mpfr_set_d(r.hi_, 0.5, MPFR_RNDU);
    }
    mpfr_clear(a);
    mpfr_clear(b);
    r.check_valid("nearest_int_distance");
    return r;
}

double Interval::lo_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Interval::hi_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }

static std::string fmt(mpfr_srcptr x, size_t digits, mpfr_rnd_t rnd) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%%.%zuR*g", digits);
    std::vector<char> out(digits + 64);
    mpfr_snprintf(out.data(), out.size(), buf, rnd, x);
    return std::string(out.data());
}

std::string Interval::lo_string(size_t digits) const {
    return fmt(lo_, digits, MPFR_RNDD);
}

std::string Interval::hi_string(size_t digits) const {
    return fmt(hi_, digits, MPFR_RNDU);
}

std::string Interval::midpoint_string(size_t digits) const {
    mpfr_t m;
    mpfr_init2(m, precision());
    mpfr_add(m, lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(m, m, 1, MPFR_RNDN);
    std::string s = fmt(m, digits, MPFR_RNDN);
    mpfr_clear(m);
    return s;
}

double Interval::radius_double() const {
    mpfr_t w;
    mpfr_init2(w, 64);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    mpfr_div_2ui(w, w, 1, MPFR_RNDU);
    double d = mpfr_get_d(w, MPFR_RNDU);
    mpfr_clear(w);
    return d;
}

std::string Interval::radius_string() const {
    mpfr_t w;
    mpfr_init2(w, 64);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    mpfr_div_2ui(w, w, 1, MPFR_RNDU);
    std::string s = fmt(w, 3, MPFR_RNDU);
    mpfr_clear(w);
    return s;
}

bool Interval::radius_leq(const mpq_class& bound) const {
    mpfr_t w;
    mpfr_init2(w, precision());
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    mpfr_div_2ui(w, w, 1, MPFR_RNDU);
    bool ok = mpfr_cmp_q(w, const_cast<mpq_ptr>(bound.get_mpq_t())) <= 0;
    mpfr_clear(w);
    return ok;
}

} // namespace tribrep
