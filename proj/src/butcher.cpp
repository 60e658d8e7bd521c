#include "tpi/butcher.hpp"

#include <cmath>
#include <stdexcept>

namespace tpi {

void ButcherTableau::validate() const {
    const std::size_t S = b.size();
    if (S == 0 || c.size() != S || a.size() != S) throw std::invalid_argument("tableau: inconsistent sizes");
    if (c[0] != 0.0) throw std::invalid_argument("tableau: c_1 must be 0");
    double sb = 0.0;
    for (std::size_t s = 0; s < S; ++s) {
        if (a[s].size() != s) throw std::invalid_argument("tableau: a must be strictly lower triangular");
        double row = 0.0;
        for (double x : a[s]) row += x;
        if (std::abs(row - c[s]) > 1e-14) throw std::invalid_argument("tableau: row sums must equal c");
        if (b[s] < 0.0 || b[s] > 1.0 || c[s] < 0.0 || c[s] > 1.0)
            throw std::invalid_argument("tableau: b and c must lie in [0,1]");
        if (s > 0 && c[s] == 0.0) throw std::invalid_argument("tableau: c_s = 0 for s >= 2 is not supported");
        sb += b[s];
    }
    if (std::abs(sb - 1.0) > 1e-14) throw std::invalid_argument("tableau: weights must sum to 1");
}

ButcherTableau rk2_tableau() {
    return {{{}, {0.5}}, {0.0, 1.0}, {0.0, 0.5}};
}

ButcherTableau rk4_tableau() {
    return {{{}, {0.5}, {0.0, 0.5}, {0.0, 0.0, 1.0}},
            {1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0},
            {0.0, 0.5, 0.5, 1.0}};
}

std::string to_string(OuterMethod m) {
    switch (m) {
        case OuterMethod::PFE: return "PFE";
        case OuterMethod::PRK2: return "PRK2";
        case OuterMethod::PRK4: return "PRK4";
    }
    return "?";
}

OuterMethod parse_outer_method(const std::string& s) {
    if (s == "PFE" || s == "pfe") return OuterMethod::PFE;
    if (s == "PRK2" || s == "prk2") return OuterMethod::PRK2;
    if (s == "PRK4" || s == "prk4") return OuterMethod::PRK4;
    throw std::invalid_argument("unknown outer method '" + s + "'");
}

ButcherTableau tableau_for(OuterMethod m) {
    switch (m) {
        case OuterMethod::PRK2: return rk2_tableau();
        case OuterMethod::PRK4: return rk4_tableau();
        default: return {{{}}, {1.0}, {0.0}};
    }
}

}  // namespace tpi
