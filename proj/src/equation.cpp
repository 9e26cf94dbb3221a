#include "tribrep/equation.hpp"

#include <stdexcept>

namespace tribrep {

std::string equation_name(EquationId eq) {
    switch (eq) {
        case EquationId::Eq1: return "eq1";
        case EquationId::Eq2: return "eq2";
        case EquationId::Eq3: return "eq3";
        case EquationId::Eq4: return "eq4";
        case EquationId::Bgl: return "bgl";
    }
    throw std::logic_error("equation_name: bad id");
}

Caps equation_caps(EquationId eq) {
    switch (eq) {
        case EquationId::Eq1: return {0, 7};  // plus block only
        case EquationId::Eq2: return {0, 6};  // minus block only
        case EquationId::Eq3: return {6, 7};  // k minus, l plus
        case EquationId::Eq4: return {7, 6};  // k plus, l minus
        case EquationId::Bgl: return {0, 8};  // unshifted, l only
    }
    throw std::logic_error("equation_caps: bad id");
}

mpz_class m_upper(EquationId eq, const mpz_class& n, unsigned k, unsigned l) {
    Caps caps = equation_caps(eq);
    if (k > caps.k_max || l > caps.l_max)
        throw std::invalid_argument("m_upper: block lengths exceed caps");
    if ((eq == EquationId::Eq1 || eq == EquationId::Eq2) && k != 0)
        throw std::invalid_argument("m_upper: k must be 0 for single-block equations");
    long K = k, L = l;
    switch (eq) {
        case EquationId::Eq1:
            return L * n + L * (L + 1) / 2;
        case EquationId::Eq2:
            return L * n + L * (L - 3) / 2;
        case EquationId::Eq3:
            return (K + L) * n + K * (K - 3) / 2 + L * (2 * K + L + 1) / 2;
        case EquationId::Eq4:
            // mirrored derivation: plus block first, then minus block
            return (K + L) * n + K * (K + 1) / 2 + L * (2 * K + L - 2) / 2;
        case EquationId::Bgl:
            // T_u <= alpha^{u-1}: product < alpha^{l n + l(l-1)/2 - ... },
            // crude 10^{m-1} < product bound analogous to Eq1
            return L * n + L * (L - 1) / 2;
    }
    throw std::logic_error("m_upper: bad id");
}

mpz_class b1_abs(const mpz_class& n, unsigned k, unsigned l) {
    long f = static_cast<long>(k) + static_cast<long>(l);
    return f * n + f * (f - 1) / 2;
}

LinearForm b_expression(EquationId eq) {
    // max of m_upper and b1_abs at the caps; the larger branch is the
    // same for every n >= 1 because the slopes agree.
    switch (eq) {
        case EquationId::Eq1: return {7, 28};  // m_upper wins (b1: 7n+21)
        case EquationId::Eq2: return {6, 15};  // b1 wins (m_upper: 6n+9)
        case EquationId::Eq3: return {13, 79}; // m_upper wins (b1: 13n+78)
        case EquationId::Eq4: return {13, 82}; // m_upper wins
        case EquationId::Bgl: break;
    }
    throw std::invalid_argument("b_expression: no linear form for this equation");
}

} // namespace tribrep
