#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace tpi {

using cplx = std::complex<double>;

/// Dense row-major complex square matrix.
struct ComplexMatrix {
    std::size_t n = 0;
    std::vector<cplx> a;

    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t n_) : n(n_), a(n_ * n_) {}

    cplx& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

struct EigenConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// All eigenvalues (with multiplicity) by Householder reduction to Hessenberg
/// form followed by Wilkinson-shifted QR sweeps. Throws EigenConvergenceError
/// when 100*n sweeps are not enough.
std::vector<cplx> eig_dense(ComplexMatrix A);

}  // namespace tpi
