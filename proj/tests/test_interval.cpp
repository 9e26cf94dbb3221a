#include <doctest.h>

#include <gmpxx.h>

#include <random>
#include <vector>

#include "tribrep/errors.hpp"
#include "tribrep/interval.hpp"

using namespace tribrep;

namespace {

constexpr mpfr_prec_t kBits = 256;

Interval span(long lo, long hi) {
    return Interval::hull(Interval::exact_int(lo, kBits),
                          Interval::exact_int(hi, kBits));
}

bool encloses(const Interval& x, const mpq_class& v) {
    return (x - Interval::exact_ratio(v, x.precision())).contains_zero();
}

} // namespace

TEST_CASE("exact constructors bracket the represented value") {
    Interval x = Interval::exact_ratio(7, 10, kBits);
    CHECK(x.lo_double() <= 0.7);
    CHECK(x.hi_double() >= 0.7);
    CHECK(x.certainly_positive());
    CHECK_FALSE(x.contains_zero());

    Interval z = Interval::exact_int(0L, kBits);
    CHECK(z.contains_zero());
    CHECK_FALSE(z.certainly_positive());
    CHECK_FALSE(z.certainly_negative());

    mpz_class big("123456789012345678901234567890");
    CHECK(Interval::exact_int(big, kBits).floor_certain() == big);
}

TEST_CASE("arithmetic encloses the exact rational result") {
    Interval a = Interval::exact_ratio(1, 3, kBits);
    Interval b = Interval::exact_ratio(1, 6, kBits);
    CHECK(encloses(a + b, mpq_class(1, 2)));
    CHECK(encloses(a - b, mpq_class(1, 6)));
    CHECK(encloses(a * b, mpq_class(1, 18)));
    CHECK(encloses(a / b, mpq_class(2)));
    CHECK(encloses(-a, mpq_class(-1, 3)));
    CHECK(encloses(a.inv(), mpq_class(3)));
    CHECK(encloses(a.mul_z(mpz_class(12)), mpq_class(4)));

    Interval m = span(-2, -1) * span(3, 4);
    CHECK(m.lo_double() <= -8.0);
    CHECK(m.hi_double() >= -3.0);
    CHECK(m.certainly_negative());
}

TEST_CASE("partial operations reject invalid inputs") {
    Interval a = Interval::exact_ratio(1, 3, kBits);
    Interval z = span(-1, 1);
    CHECK_THROWS_AS(a / z, PrecisionError);
    CHECK_THROWS_AS(z.inv(), PrecisionError);
    CHECK_THROWS_AS(z.log(), PrecisionError);
    CHECK_THROWS_AS(Interval::exact_int(0L, kBits).log(), PrecisionError);
    CHECK_THROWS_AS(span(-2, -1).sqrt(), PrecisionError);

    CHECK(encloses(Interval::exact_int(9L, kBits).sqrt(), mpq_class(3)));
    CHECK(encloses(Interval::exact_ratio(1, 2, kBits).pow_ui(10),
                   mpq_class(1, 1024)));
    // log 8 = 3 log 2
    Interval l8 = Interval::exact_int(8L, kBits).log();
    Interval l2 = Interval::exact_int(2L, kBits).log();
    CHECK((l8 - l2 - l2 - l2).contains_zero());
}

TEST_CASE("certified comparisons are strict") {
    Interval a = Interval::exact_ratio(1, 3, kBits);
    Interval b = Interval::exact_ratio(1, 2, kBits);
    CHECK(a.certainly_less(b));
    CHECK(b.certainly_greater(a));
    CHECK_FALSE(a.certainly_less(a));  // shared endpoint is not a verdict
    CHECK_FALSE(a.certainly_greater(a));
}

TEST_CASE("floor, ceil and nearest-integer distance") {
    CHECK(Interval::exact_ratio(7, 2, kBits).floor_certain() == 3);
    CHECK(Interval::exact_ratio(-7, 2, kBits).floor_certain() == -4);
    CHECK(Interval::exact_int(5L, kBits).floor_certain() == 5);
    CHECK_THROWS_AS(Interval::hull(Interval::exact_ratio(199, 100, kBits),
                                   Interval::exact_ratio(201, 100, kBits))
                        .floor_certain(),
                    PrecisionError);

    CHECK(Interval::exact_ratio(7, 2, kBits).ceil_upper() == 4);
    CHECK(Interval::exact_int(3L, kBits).ceil_upper() == 3);

    Interval d = Interval::exact_ratio(13, 4, kBits).nearest_int_distance();
    CHECK(encloses(d, mpq_class(1, 4)));
    Interval s = Interval::hull(Interval::exact_ratio(29, 10, kBits),
                                Interval::exact_ratio(31, 10, kBits))
                     .nearest_int_distance();
    CHECK(s.lo_double() == 0.0);  // straddles 3, so the lower end clamps
    CHECK(s.hi_double() >= 0.1);
}

TEST_CASE("radius reporting") {
    mpfr_prec_t bits = digits_to_bits(100);
    Interval third = Interval::exact_ratio(1, 3, bits);
    mpz_class p90, p200;
    mpz_ui_pow_ui(p90.get_mpz_t(), 10, 90);
    mpz_ui_pow_ui(p200.get_mpz_t(), 10, 200);
    CHECK(third.radius_leq(mpq_class(mpz_class(1), p90)));
    CHECK_FALSE(third.radius_leq(mpq_class(mpz_class(1), p200)));
    CHECK(third.radius_double() < 1e-80);
    CHECK(Interval::exact_int(4L, kBits).radius_double() == 0.0);
}

// Randomized expression trees: the result at precision P contains the
// result at 2P, and both contain the exact rational value.
TEST_CASE("evaluations at doubled precision nest") {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 9), op(0, 3);

    for (int trial = 0; trial < 10; ++trial) {
        mpq_class truth(num(rng), den(rng));
        truth.canonicalize();
        Interval narrow = Interval::exact_ratio(truth, 96);
        Interval wide = Interval::exact_ratio(truth, 192);

        for (int step = 0; step < 8; ++step) {
            mpq_class operand(num(rng), den(rng));
            operand.canonicalize();
            Interval n2 = Interval::exact_ratio(operand, 96);
            Interval w2 = Interval::exact_ratio(operand, 192);
            int o = op(rng);
            if (o == 3 && (operand == 0 || n2.contains_zero()))
                o = 2;  // keep division total
            switch (o) {
                case 0: truth += operand; narrow = narrow + n2; wide = wide + w2; break;
                case 1: truth -= operand; narrow = narrow - n2; wide = wide - w2; break;
                case 2: truth *= operand; narrow = narrow * n2; wide = wide * w2; break;
                case 3: truth /= operand; narrow = narrow / n2; wide = wide / w2; break;
            }
        }
        CHECK(narrow.lo_double() <= wide.lo_double());
        CHECK(wide.hi_double() <= narrow.hi_double());
        CHECK(encloses(narrow, truth));
        CHECK(encloses(wide, truth));
    }
}
