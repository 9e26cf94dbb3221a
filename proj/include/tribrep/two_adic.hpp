#pragma once

#include <gmpxx.h>

#include <vector>

#include "tribrep/equation.hpp"

namespace tribrep {

enum class BlockOrder { PlusOnly, MinusOnly, MinusThenPlus, PlusThenMinus };

// A block of consecutive shifted factors: plus_count factors T_i + 1 and
// minus_count factors T_i - 1, arranged per `order`.
struct ShiftPattern {
    unsigned plus_count;
    unsigned minus_count;
    BlockOrder order;

    unsigned total() const { return plus_count + minus_count; }
    void validate() const;  // k + l >= 1, order consistent with counts
};

// Pattern for equation eq with leading block length k and trailing block
// length l (k ignored / must be 0 for Eq1, Eq2).  Not defined for Bgl.
ShiftPattern pattern_for(EquationId eq, unsigned k, unsigned l);

// Closed forms for nu_2(T_n + 1) / nu_2(T_n - 1), n >= 5.
//
// The published plus form reads, for n > 61 with n = 61 (mod 64),
// nu2((n-61)(n+7)) - 3; direct computation refutes that branch (first
// counterexample n = 125: true order 10, formula gives 5).  The form
// implemented here replaces it with nu2((n - 167997)(n + 3)) - 3, where
// 167997 = 36925 + 2^17 pins the 2-adic zero of the class to 18 bits;
// it is exact whenever nu2(n - 167997) < 18 and falls back to direct
// residue computation otherwise.  It reproduces the special value
// nu2(T_61 + 1) = 15 and matches direct computation over 5..10^5.
unsigned long nu2_shift_plus(unsigned long n);
unsigned long nu2_shift_minus(unsigned long n);

// Sum of factor valuations over the pattern starting at index n.
unsigned long nu2_product(unsigned long n, const ShiftPattern& pattern);

enum class VerdictKind { Exact, AtLeast };

struct ValuationTableRow {
    int table;               // 1 = plus products (mod 64), 2 = minus (mod 8)
    unsigned block_length;
    unsigned residue;
    VerdictKind kind;        // scan verdict
    unsigned long value;     // Exact value, or AtLeast lower bound (= scan min)
    unsigned long scan_max;  // largest order seen in the sample
    VerdictKind published_kind;
    unsigned long published_value;
    bool consistent;         // scan verdict compatible with the published entry
};

// Recomputes both published valuation tables by direct residue scans of
// the products over 5..range_max and checks row-by-row consistency
// (the stray row token "i60" is read as residue 60).
std::vector<ValuationTableRow> verify_valuation_tables(unsigned long range_max = 70000);

struct CapCertification {
    EquationId eq;
    Caps caps;
    unsigned long range_max;
    // Minimum product valuation over every start 5 <= n <= range_max for a
    // run one longer than the cap; ~0UL where the equation has no block of
    // that kind.  Any longer or mixed pattern contains such a run, and the
    // factor valuations are nonnegative, so these minima cover every
    // pattern exceeding the caps.
    unsigned long plus_overcap_min;
    unsigned long minus_overcap_min;
    // Minimum at the cap itself (informational: shows the cap is tight).
    unsigned long plus_atcap_min;
    unsigned long minus_atcap_min;
    bool certified;  // every applicable overcap minimum >= 4 > nu2(d)
};

// Block-length caps with scan certification.  Not defined for Bgl.
CapCertification max_block_lengths(EquationId eq, unsigned long range_max = 70000);

} // namespace tribrep
