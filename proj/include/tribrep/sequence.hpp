#pragma once

#include <gmpxx.h>

#include <optional>

namespace tribrep {

// T(0)=0, T(1)=T(2)=1, T(n+3)=T(n+2)+T(n+1)+T(n).
// Values are memoised in a thread-safe cache (grown to at least 200
// entries on first use).
mpz_class trib(unsigned long n);

// Recomputes from the seeds without touching the cache.  Used by the
// independent re-verification path.
mpz_class trib_fresh(unsigned long n);

// T(n) mod m, computed iteratively on residues.  m >= 2.
mpz_class trib_mod(unsigned long n, const mpz_class& m);

struct RepdigitForm {
    unsigned digit;        // 1..9
    unsigned long length;  // number of repetitions
};

// d * (10^m - 1) / 9
mpz_class repdigit(unsigned digit, unsigned long length);

// Decomposes v as a repdigit if possible.  Throws std::invalid_argument
// for v <= 0.
std::optional<RepdigitForm> as_repdigit(const mpz_class& v);

// p-adic valuation of v; nullopt encodes +infinity (v == 0).
std::optional<unsigned long> nu(const mpz_class& p, const mpz_class& v);

// shorthand for nu(2, v) on nonzero v
unsigned long nu2(const mpz_class& v);

} // namespace tribrep
