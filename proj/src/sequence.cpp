#include "tribrep/sequence.hpp"

#include <mutex>
#include <stdexcept>
#include <vector>

namespace tribrep {

namespace {
std::mutex cache_mutex;
std::vector<mpz_class> cache;  // cache[n] = T(n)

void ensure_cached(unsigned long n) {
    if (cache.empty()) {
        cache.reserve(256);
        cache.push_back(0);
        cache.push_back(1);
        cache.push_back(1);
    }
    unsigned long target = n < 200 ? 200 : n;
    while (cache.size() <= target) {
        size_t s = cache.size();
        cache.push_back(cache[s - 1] + cache[s - 2] + cache[s - 3]);
    }
}
} // namespace

mpz_class trib(unsigned long n) {
    std::lock_guard<std::mutex> lock(cache_mutex);
    ensure_cached(n);
    return cache[n];
}

mpz_class trib_fresh(unsigned long n) {
    if (n == 0) return 0;
    if (n <= 2) return 1;
    mpz_class a = 0, b = 1, c = 1;
    for (unsigned long i = 3; i <= n; ++i) {
        mpz_class d = a + b + c;
        a = b;
        b = c;
        c = d;
    }
    return c;
}

mpz_class trib_mod(unsigned long n, const mpz_class& m) {
    if (m < 2) throw std::invalid_argument("trib_mod: modulus must be >= 2");
    if (n == 0) return 0;
    if (n <= 2) return mpz_class(1) % m;
    mpz_class a = 0, b = 1, c = 1;
    for (unsigned long i = 3; i <= n; ++i) {
        mpz_class d = (a + b + c) % m;
        a = b;
        b = c;
        c = d;
    }
    return c;
}

mpz_class repdigit(unsigned digit, unsigned long length) {
    if (digit < 1 || digit > 9)
        throw std::invalid_argument("repdigit: digit must be 1..9");
    if (length == 0) throw std::invalid_argument("repdigit: length must be >= 1");
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, length);
    return digit * (p - 1) / 9;
}

std::optional<RepdigitForm> as_repdigit(const mpz_class& v) {
    if (v <= 0) throw std::invalid_argument("as_repdigit: value must be positive");
    std::string s = v.get_str(10);
    char d = s[0];
    for (char c : s)
        if (c != d) return std::nullopt;
    return RepdigitForm{static_cast<unsigned>(d - '0'), s.size()};
}

std::optional<unsigned long> nu(const mpz_class& p, const mpz_class& v) {
    if (p < 2) throw std::invalid_argument("nu: p must be >= 2");
    if (v == 0) return std::nullopt;  // infinite valuation
    mpz_class rest;
    unsigned long k = mpz_remove(rest.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
    return k;
}

unsigned long nu2(const mpz_class& v) {
    if (v == 0) throw std::invalid_argument("nu2: value must be nonzero");
    return mpz_scan1(v.get_mpz_t(), 0);
}

} // namespace tribrep
