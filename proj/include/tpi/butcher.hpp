#pragma once

#include <string>
#include <vector>

namespace tpi {

struct ButcherTableau {
    std::vector<std::vector<double>> a;  // a[s][m], m < s
    std::vector<double> b;
    std::vector<double> c;

    int stages() const { return static_cast<int>(b.size()); }
    /// Throws if sum b != 1, row sums != c, c_1 != 0 or entries leave [0,1].
    void validate() const;
};

/// b = (0, 1), c = (0, 1/2).
ButcherTableau rk2_tableau();
ButcherTableau rk4_tableau();

enum class OuterMethod { PFE, PRK2, PRK4 };

std::string to_string(OuterMethod m);
OuterMethod parse_outer_method(const std::string& s);
/// Tableau for PRK methods; PFE is the one-stage forward Euler tableau.
ButcherTableau tableau_for(OuterMethod m);

}  // namespace tpi
