#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace circderiv {

/// Eigenvalues of a dense complex n x n matrix given column-major, via LAPACK
/// zgeev (balancing, Householder reduction to Hessenberg form, implicitly
/// shifted QR). Throws EigenFailure when QR exhausts its 30n sweep budget.
std::vector<std::complex<double>> dense_eigenvalues(std::vector<std::complex<double>> matrix,
                                                    std::size_t n);

/// Pins the BLAS backend to one thread when callers parallelise across
/// instances. No-op when the backend exposes no such control.
void limit_blas_threads(int threads);

}  // namespace circderiv
