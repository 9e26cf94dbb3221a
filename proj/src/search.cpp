#include "tribrep/search.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <thread>
#include <tuple>
#include <utility>

#include "tribrep/sequence.hpp"

namespace tribrep {

namespace {

// Walk the pattern's blocks in order, multiplying term(i) + shift.
mpz_class block_product(unsigned long n, const ShiftPattern& pattern,
                        const std::function<mpz_class(unsigned long)>& term) {
    pattern.validate();
    if (n < 1)
        throw std::invalid_argument("block_product: n must be >= 1");
    struct Block {
        unsigned len;
        int shift;
    };
    Block blocks[2] = {{0, 0}, {0, 0}};
    switch (pattern.order) {
        case BlockOrder::PlusOnly:
            blocks[0] = {pattern.plus_count, +1};
            break;
        case BlockOrder::MinusOnly:
            blocks[0] = {pattern.minus_count, -1};
            break;
        case BlockOrder::MinusThenPlus:
            blocks[0] = {pattern.minus_count, -1};
            blocks[1] = {pattern.plus_count, +1};
            break;
        case BlockOrder::PlusThenMinus:
            blocks[0] = {pattern.plus_count, +1};
            blocks[1] = {pattern.minus_count, -1};
            break;
    }
    mpz_class prod = 1;
    unsigned long idx = n;
    for (const Block& b : blocks)
        for (unsigned i = 0; i < b.len; ++i, ++idx)
            prod *= term(idx) + b.shift;
    return prod;
}

} // namespace

mpz_class product_of_block(unsigned long n, const ShiftPattern& pattern) {
    return block_product(n, pattern,
                         [](unsigned long i) { return trib(i); });
}

mpz_class product_plain(unsigned long n, unsigned l) {
    if (n < 1 || l < 1)
        throw std::invalid_argument("product_plain: need n >= 1, l >= 1");
    mpz_class prod = 1;
    for (unsigned i = 0; i < l; ++i) prod *= trib(n + i);
    return prod;
}

SearchSpace search_space(EquationId eq, unsigned long n_max) {
    if (n_max < 1)
        throw std::invalid_argument("search_space: n_max must be >= 1");
    Caps caps = equation_caps(eq);
    SearchSpace s;
    s.eq = eq;
    s.n_max = n_max;
    s.k_max = caps.k_max;
    s.l_max = caps.l_max;
    s.m_min = 2;
    return s;
}

namespace {

std::vector<std::pair<unsigned, unsigned>> kl_grid(const SearchSpace& s) {
    std::vector<std::pair<unsigned, unsigned>> kl;
    if (s.eq == EquationId::Eq3 || s.eq == EquationId::Eq4) {
        for (unsigned k = 1; k <= s.k_max; ++k)
            for (unsigned l = 1; l <= s.l_max; ++l) kl.emplace_back(k, l);
    } else {
        for (unsigned l = 1; l <= s.l_max; ++l) kl.emplace_back(0, l);
    }
    return kl;
}

struct WorkerState {
    unsigned long scanned = 0;
    std::vector<Solution> solutions;
};

void scan_index(const SearchSpace& space,
                const std::vector<std::pair<unsigned, unsigned>>& kl,
                unsigned long n, WorkerState& st) {
    for (const auto& [k, l] : kl) {
        ++st.scanned;
        mpz_class v = space.eq == EquationId::Bgl
                          ? product_plain(n, l)
                          : product_of_block(n, pattern_for(space.eq, k, l));
        if (v <= 0) continue;            // zero factor, never a repdigit
        if (nu2(v) > 3) continue;        // repdigits have nu2 = nu2(d) <= 3
        if (v >= 10000) {
            // A repdigit with >= 4 digits ends in dddd = d * 1111.
            unsigned long r = mpz_class(v % 10000).get_ui();
            if (r == 0 || r % 1111 != 0) continue;
        }
        auto rd = as_repdigit(v);
        if (!rd || rd->length < space.m_min) continue;
        Solution sol;
        sol.n = n;
        sol.k = k;
        sol.l = l;
        sol.digit = rd->digit;
        sol.length = rd->length;
        sol.value = v;
        st.solutions.push_back(std::move(sol));
    }
}

} // namespace

SearchReport exhaustive_search(const SearchSpace& space, unsigned jobs) {
    if (space.n_max < 1)
        throw std::invalid_argument("exhaustive_search: empty n range");
    if (space.l_max < 1)
        throw std::invalid_argument("exhaustive_search: empty l range");
    if (jobs < 1) jobs = 1;
    if (jobs > space.n_max) jobs = static_cast<unsigned>(space.n_max);

    // Warm the shared cache once so workers mostly read.
    trib(space.n_max + space.k_max + space.l_max);

    auto kl = kl_grid(space);
    std::vector<WorkerState> locals(jobs);
    auto work = [&](unsigned w) {
        for (unsigned long n = 1 + w; n <= space.n_max; n += jobs)
            scan_index(space, kl, n, locals[w]);
    };
    if (jobs == 1) {
        work(0);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(jobs);
        for (unsigned w = 0; w < jobs; ++w) threads.emplace_back(work, w);
        for (auto& t : threads) t.join();
    }

    SearchReport report;
    report.space = space;
    for (auto& st : locals) {
        report.candidates_scanned += st.scanned;
        for (auto& s : st.solutions) report.solutions.push_back(std::move(s));
    }
    std::sort(report.solutions.begin(), report.solutions.end(),
              [](const Solution& a, const Solution& b) {
                  return std::tie(a.n, a.k, a.l) < std::tie(b.n, b.k, b.l);
              });
    report.filters = {
        "positive product",
        "nu2(value) <= 3",
        "value mod 10^4 in {1111 d : d = 1..9} for values >= 10^4",
        "exact repdigit decomposition with length >= m_min",
    };
    return report;
}

bool verify_solution(EquationId eq, unsigned long n, unsigned k, unsigned l,
                     unsigned long m, unsigned digit) {
    if (n < 1)
        throw std::invalid_argument("verify_solution: n must be >= 1");
    mpz_class lhs;
    if (eq == EquationId::Bgl) {
        if (k != 0)
            throw std::invalid_argument(
                "verify_solution: bgl takes no leading block");
        if (l < 1 || l > equation_caps(eq).l_max)
            throw std::invalid_argument("verify_solution: l out of range");
        lhs = 1;
        for (unsigned i = 0; i < l; ++i) lhs *= trib_fresh(n + i);
    } else {
        lhs = block_product(n, pattern_for(eq, k, l),
                            [](unsigned long i) { return trib_fresh(i); });
    }
    return lhs == repdigit(digit, m);
}

} // namespace tribrep
