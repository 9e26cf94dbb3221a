#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

#include "tribrep/errors.hpp"

namespace tribrep {

mpfr_prec_t digits_to_bits(unsigned digits);

// Closed interval [lo, hi] with MPFR endpoints and outward rounding.
// Every operation returns an interval guaranteed to contain the exact
// result; comparisons only report "certain" verdicts.  Endpoints are
// never constructed from doubles: use exact_int / exact_ratio.
class Interval {
public:
    Interval();
    explicit Interval(mpfr_prec_t bits);
    Interval(const Interval& o);
    Interval(Interval&& o) noexcept;
    Interval& operator=(const Interval& o);
    Interval& operator=(Interval&& o) noexcept;
    ~Interval();

    static Interval exact_int(long v, mpfr_prec_t bits);
    static Interval exact_int(const mpz_class& v, mpfr_prec_t bits);
    static Interval exact_ratio(long num, long den, mpfr_prec_t bits);
    static Interval exact_ratio(const mpq_class& q, mpfr_prec_t bits);
    static Interval hull(const Interval& a, const Interval& b);

    mpfr_prec_t precision() const { return mpfr_get_prec(lo_); }

    Interval operator+(const Interval& o) const;
    Interval operator-(const Interval& o) const;
    Interval operator*(const Interval& o) const;
    Interval operator/(const Interval& o) const;
    Interval operator-() const;

    Interval abs() const;
    Interval inv() const;
    Interval log() const;                  // requires lo > 0
    Interval sqrt() const;                 // requires lo >= 0
    Interval pow_ui(unsigned long e) const; // requires lo >= 0
    Interval mul_z(const mpz_class& z) const;

    bool contains_zero() const;
    bool certainly_positive() const;
    bool certainly_negative() const;
    bool certainly_less(const Interval& o) const;    // hi < o.lo
    bool certainly_greater(const Interval& o) const; // lo > o.hi

    // Both endpoints have the same floor, or PrecisionError.
    mpz_class floor_certain() const;
    // Sound integer upper bound: ceil(hi).
    mpz_class ceil_upper() const;
    // Interval [L, U] containing the distance from the exact value to
    // the nearest integer.  L is clamped at 0 when the enclosure
    // straddles an integer.
    Interval nearest_int_distance() const;

    double lo_double() const;  // rounded down
    double hi_double() const;  // rounded up
    std::string lo_string(size_t digits) const;
    std::string hi_string(size_t digits) const;
    std::string midpoint_string(size_t digits) const;
    double radius_double() const;  // upper bound on (hi - lo) / 2
    std::string radius_string() const;  // radius upper bound, short scientific form
    bool radius_leq(const mpq_class& bound) const;

private:
    mpfr_t lo_, hi_;

    Interval result_like(const Interval& o) const;
    void check_valid(const char* op) const;
};

} // namespace tribrep
