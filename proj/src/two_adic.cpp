#include "tribrep/two_adic.hpp"

#include <bit>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "tribrep/sequence.hpp"

namespace tribrep {

void ShiftPattern::validate() const {
    if (plus_count + minus_count < 1)
        throw std::invalid_argument("ShiftPattern: k + l must be >= 1");
    switch (order) {
        case BlockOrder::PlusOnly:
            if (minus_count != 0)
                throw std::invalid_argument("ShiftPattern: PlusOnly with minus factors");
            break;
        case BlockOrder::MinusOnly:
            if (plus_count != 0)
                throw std::invalid_argument("ShiftPattern: MinusOnly with plus factors");
            break;
        case BlockOrder::MinusThenPlus:
        case BlockOrder::PlusThenMinus:
            if (plus_count == 0 || minus_count == 0)
                throw std::invalid_argument("ShiftPattern: mixed order needs both blocks");
            break;
    }
}

ShiftPattern pattern_for(EquationId eq, unsigned k, unsigned l) {
    ShiftPattern p{};
    switch (eq) {
        case EquationId::Eq1:
            if (k != 0) throw std::invalid_argument("pattern_for: Eq1 has no leading block");
            p = {l, 0, BlockOrder::PlusOnly};
            break;
        case EquationId::Eq2:
            if (k != 0) throw std::invalid_argument("pattern_for: Eq2 has no leading block");
            p = {0, l, BlockOrder::MinusOnly};
            break;
        case EquationId::Eq3:
            p = {l, k, BlockOrder::MinusThenPlus};
            break;
        case EquationId::Eq4:
            p = {k, l, BlockOrder::PlusThenMinus};
            break;
        case EquationId::Bgl:
            throw std::invalid_argument("pattern_for: Bgl products are unshifted");
    }
    p.validate();
    return p;
}

namespace {

constexpr unsigned long kU61 = 167997;  // 36925 + 2^17

unsigned long nu2_ul(unsigned long v) {
    if (v == 0) throw std::logic_error("nu2_ul: zero");
    return static_cast<unsigned long>(std::countr_zero(v));
}

// direct fallback: nu2(T_n + 1) from residues, growing the modulus until
// the valuation is resolved
unsigned long nu2_plus_direct(unsigned long n) {
    for (unsigned long bits = 64;; bits *= 2) {
        mpz_class mod;
        mpz_ui_pow_ui(mod.get_mpz_t(), 2, bits);
        mpz_class r = (trib_mod(n, mod) + 1) % mod;
        if (r != 0) return nu2(r);
        if (bits > 4096)
            throw std::runtime_error("nu2_plus_direct: valuation implausibly large");
    }
}

} // namespace

unsigned long nu2_shift_plus(unsigned long n) {
    if (n < 5) throw std::invalid_argument("nu2_shift_plus: defined for n >= 5");
    unsigned long r4 = n % 4;
    if (r4 == 0 || r4 == 3) return 0;
    unsigned long r8 = n % 8;
    if (r8 == 1 || r8 == 2 || r8 == 6) return 1;
    if (n % 16 == 5) return 3;
    unsigned long r64 = n % 64;
    if (r64 == 13 || r64 == 29 || r64 == 45) return 2 * nu2_ul(n + 3) - 3;
    // r64 == 61
    if (n == kU61) return nu2_plus_direct(n);
    unsigned long diff = n > kU61 ? n - kU61 : kU61 - n;
    unsigned long vd = nu2_ul(diff);
    if (vd >= 18) return nu2_plus_direct(n);
    return vd + nu2_ul(n + 3) - 3;
}

unsigned long nu2_shift_minus(unsigned long n) {
    if (n < 5) throw std::invalid_argument("nu2_shift_minus: defined for n >= 5");
    unsigned long r4 = n % 4;
    if (r4 == 0 || r4 == 3) return 0;
    unsigned long r8 = n % 8;
    if (r8 == 5) return 1;
    if (r8 == 6) return nu2_ul(n + 2) - 1;
    if (r8 == 2) return nu2_ul(n - 2) - 1;
    // r8 == 1
    return nu2_ul(n - 1) + nu2_ul(n + 7) - 3;
}

unsigned long nu2_product(unsigned long n, const ShiftPattern& pattern) {
    if (n < 5) throw std::invalid_argument("nu2_product: defined for n >= 5");
    pattern.validate();
    unsigned first_plus;  // offset where the plus block starts
    switch (pattern.order) {
        case BlockOrder::PlusOnly: first_plus = 0; break;
        case BlockOrder::MinusOnly: first_plus = 0; break;
        case BlockOrder::MinusThenPlus: first_plus = pattern.minus_count; break;
        case BlockOrder::PlusThenMinus: first_plus = 0; break;
        default: throw std::logic_error("nu2_product: bad order");
    }
    unsigned long total = 0;
    for (unsigned i = 0; i < pattern.total(); ++i) {
        bool is_plus;
        if (pattern.order == BlockOrder::PlusThenMinus)
            is_plus = i < pattern.plus_count;
        else
            is_plus = i >= first_plus && i < first_plus + pattern.plus_count;
        total += is_plus ? nu2_shift_plus(n + i) : nu2_shift_minus(n + i);
    }
    return total;
}

namespace {

constexpr uint8_t kNoValue = 255;

struct ValuationArrays {
    std::vector<uint8_t> plus;   // nu2(T_i + 1)
    std::vector<uint8_t> minus;  // nu2(T_i - 1); 255 where T_i - 1 = 0
};

// Rolling Tribonacci residues mod 2^64 (natural uint64 wraparound); valid
// because every order in the scanned range is far below 64.
ValuationArrays direct_valuations(unsigned long hi) {
    ValuationArrays a;
    a.plus.assign(hi + 1, kNoValue);
    a.minus.assign(hi + 1, kNoValue);
    uint64_t t0 = 0, t1 = 1, t2 = 1;
    for (unsigned long i = 0; i <= hi; ++i) {
        uint64_t t = i == 0 ? t0 : i == 1 ? t1 : i == 2 ? t2 : 0;
        if (i >= 3) {
            t = t0 + t1 + t2;
            t0 = t1;
            t1 = t2;
            t2 = t;
        }
        uint64_t p = t + 1, m = t - 1;
        if (p != 0) a.plus[i] = static_cast<uint8_t>(std::countr_zero(p));
        if (m != 0 && t != 0) a.minus[i] = static_cast<uint8_t>(std::countr_zero(m));
    }
    return a;
}

struct PublishedRow {
    int table;
    unsigned l;
    unsigned x;
    VerdictKind kind;
    unsigned long value;
};

// Both published tables, verbatim; the table-1 row-2 token "i60" is
// transcribed as residue 60.
const PublishedRow kPublished[] = {
    {1, 1, 13, VerdictKind::Exact, 5},  {1, 1, 29, VerdictKind::Exact, 7},
    {1, 1, 45, VerdictKind::Exact, 5},  {1, 1, 61, VerdictKind::AtLeast, 5},
    {1, 2, 5, VerdictKind::Exact, 4},   {1, 2, 12, VerdictKind::Exact, 5},
    {1, 2, 21, VerdictKind::Exact, 4},  {1, 2, 28, VerdictKind::Exact, 7},
    {1, 2, 37, VerdictKind::Exact, 4},  {1, 2, 44, VerdictKind::Exact, 5},
    {1, 2, 53, VerdictKind::Exact, 4},  {1, 2, 60, VerdictKind::AtLeast, 5},
    {1, 3, 4, VerdictKind::Exact, 4},   {1, 3, 11, VerdictKind::Exact, 5},
    {1, 3, 20, VerdictKind::Exact, 4},  {1, 3, 27, VerdictKind::Exact, 7},
    {1, 3, 36, VerdictKind::Exact, 4},  {1, 3, 43, VerdictKind::Exact, 5},
    {1, 3, 52, VerdictKind::Exact, 4},  {1, 3, 59, VerdictKind::AtLeast, 5},
    {1, 4, 2, VerdictKind::Exact, 4},   {1, 4, 3, VerdictKind::Exact, 4},
    {1, 4, 10, VerdictKind::Exact, 6},  {1, 4, 18, VerdictKind::Exact, 4},
    {1, 4, 19, VerdictKind::Exact, 4},  {1, 4, 26, VerdictKind::Exact, 8},
    {1, 4, 34, VerdictKind::Exact, 4},  {1, 4, 35, VerdictKind::Exact, 4},
    {1, 4, 42, VerdictKind::Exact, 6},  {1, 4, 50, VerdictKind::Exact, 4},
    {1, 4, 51, VerdictKind::Exact, 4},  {1, 4, 58, VerdictKind::AtLeast, 6},
    {1, 5, 1, VerdictKind::Exact, 5},   {1, 5, 9, VerdictKind::Exact, 7},
    {1, 5, 17, VerdictKind::Exact, 5},  {1, 5, 25, VerdictKind::Exact, 9},
    {1, 5, 33, VerdictKind::Exact, 5},  {1, 5, 41, VerdictKind::Exact, 7},
    {1, 5, 49, VerdictKind::Exact, 5},  {1, 5, 57, VerdictKind::AtLeast, 8},
    {1, 6, 0, VerdictKind::Exact, 5},   {1, 6, 8, VerdictKind::Exact, 7},
    {1, 6, 16, VerdictKind::Exact, 5},  {1, 6, 24, VerdictKind::Exact, 9},
    {1, 6, 32, VerdictKind::Exact, 5},  {1, 6, 40, VerdictKind::Exact, 7},
    {1, 6, 48, VerdictKind::Exact, 5},  {1, 6, 56, VerdictKind::AtLeast, 7},
    {1, 7, 7, VerdictKind::Exact, 7},   {1, 7, 15, VerdictKind::Exact, 5},
    {1, 7, 23, VerdictKind::Exact, 9},  {1, 7, 31, VerdictKind::Exact, 5},
    {1, 7, 39, VerdictKind::Exact, 7},  {1, 7, 47, VerdictKind::Exact, 5},
    {1, 7, 55, VerdictKind::AtLeast, 7}, {1, 7, 63, VerdictKind::Exact, 5},
    {1, 8, 6, VerdictKind::Exact, 8},   {1, 8, 14, VerdictKind::Exact, 6},
    {1, 8, 22, VerdictKind::Exact, 10}, {1, 8, 30, VerdictKind::Exact, 6},
    {1, 8, 38, VerdictKind::Exact, 8},  {1, 8, 46, VerdictKind::Exact, 6},
    {1, 8, 54, VerdictKind::AtLeast, 8}, {1, 8, 62, VerdictKind::Exact, 6},
    {2, 1, 1, VerdictKind::AtLeast, 4},
    {2, 2, 0, VerdictKind::AtLeast, 4},
    {2, 4, 6, VerdictKind::AtLeast, 5}, {2, 4, 7, VerdictKind::AtLeast, 5},
    {2, 5, 2, VerdictKind::AtLeast, 6}, {2, 5, 5, VerdictKind::AtLeast, 6},
    {2, 6, 4, VerdictKind::AtLeast, 6},
    {2, 7, 3, VerdictKind::AtLeast, 6},
};

} // namespace

std::vector<ValuationTableRow> verify_valuation_tables(unsigned long range_max) {
    if (range_max < 64UL * 16 + 69)
        throw std::invalid_argument("verify_valuation_tables: range_max too small");
    ValuationArrays arr = direct_valuations(range_max + 8);
    std::vector<ValuationTableRow> rows;
    for (const PublishedRow& pr : kPublished) {
        unsigned long modulus = pr.table == 1 ? 64 : 8;
        const std::vector<uint8_t>& v = pr.table == 1 ? arr.plus : arr.minus;
        unsigned long mn = std::numeric_limits<unsigned long>::max(), mx = 0;
        unsigned long n = pr.x;
        while (n < 5) n += modulus;
        for (; n <= range_max; n += modulus) {
            unsigned long sum = 0;
            for (unsigned i = 0; i < pr.l; ++i) {
                if (v[n + i] == kNoValue)
                    throw std::logic_error("verify_valuation_tables: zero factor in scan");
                sum += v[n + i];
            }
            if (sum < mn) mn = sum;
            if (sum > mx) mx = sum;
        }
        ValuationTableRow row;
        row.table = pr.table;
        row.block_length = pr.l;
        row.residue = pr.x;
        row.kind = (mn == mx) ? VerdictKind::Exact : VerdictKind::AtLeast;
        row.value = mn;
        row.scan_max = mx;
        row.published_kind = pr.kind;
        row.published_value = pr.value;
        row.consistent = pr.kind == VerdictKind::Exact
                             ? (row.kind == VerdictKind::Exact && mn == pr.value)
                             : (mn >= pr.value);
        rows.push_back(row);
    }
    return rows;
}

namespace {

unsigned long scan_run_min(const std::vector<uint8_t>& v, unsigned len,
                           unsigned long range_max) {
    unsigned long mn = std::numeric_limits<unsigned long>::max();
    for (unsigned long n = 5; n + len - 1 <= range_max; ++n) {
        unsigned long sum = 0;
        for (unsigned i = 0; i < len; ++i) sum += v[n + i];
        if (sum < mn) mn = sum;
    }
    return mn;
}

} // namespace

CapCertification max_block_lengths(EquationId eq, unsigned long range_max) {
    if (eq == EquationId::Bgl)
        throw std::invalid_argument("max_block_lengths: no caps for the unshifted search");
    constexpr unsigned long kNone = std::numeric_limits<unsigned long>::max();
    CapCertification cert;
    cert.eq = eq;
    cert.caps = equation_caps(eq);
    cert.range_max = range_max;
    cert.plus_overcap_min = cert.minus_overcap_min = kNone;
    cert.plus_atcap_min = cert.minus_atcap_min = kNone;
    ValuationArrays arr = direct_valuations(range_max + 16);

    unsigned plus_cap = 0, minus_cap = 0;
    switch (eq) {
        case EquationId::Eq1: plus_cap = cert.caps.l_max; break;
        case EquationId::Eq2: minus_cap = cert.caps.l_max; break;
        case EquationId::Eq3: minus_cap = cert.caps.k_max; plus_cap = cert.caps.l_max; break;
        case EquationId::Eq4: plus_cap = cert.caps.k_max; minus_cap = cert.caps.l_max; break;
        default: break;
    }
    bool ok = true;
    if (plus_cap) {
        cert.plus_overcap_min = scan_run_min(arr.plus, plus_cap + 1, range_max);
        cert.plus_atcap_min = scan_run_min(arr.plus, plus_cap, range_max);
        ok = ok && cert.plus_overcap_min >= 4;
    }
    if (minus_cap) {
        cert.minus_overcap_min = scan_run_min(arr.minus, minus_cap + 1, range_max);
        cert.minus_atcap_min = scan_run_min(arr.minus, minus_cap, range_max);
        ok = ok && cert.minus_overcap_min >= 4;
    }
    cert.certified = ok;
    return cert;
}

} // namespace tribrep
