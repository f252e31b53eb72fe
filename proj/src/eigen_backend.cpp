#include "circderiv/eigen_backend.hpp"

#include <string>

#include "circderiv/error.hpp"

extern "C" {
void zgeev_(const char* jobvl, const char* jobvr, const int* n, std::complex<double>* a,
            const int* lda, std::complex<double>* w, std::complex<double>* vl, const int* ldvl,
            std::complex<double>* vr, const int* ldvr, std::complex<double>* work, const int* lwork,
            double* rwork, int* info);
void openblas_set_num_threads(int) __attribute__((weak));
}

namespace circderiv {

std::vector<std::complex<double>> dense_eigenvalues(std::vector<std::complex<double>> matrix,
                                                    std::size_t n) {
  if (matrix.size() != n * n) throw Error(ErrorKind::InvalidArgument, "matrix size mismatch");
  std::vector<std::complex<double>> values(n);
  if (n == 0) return values;
  const int order = static_cast<int>(n);
  const char job = 'N';
  int one = 1;
  int info = 0;
  int lwork = -1;
  std::complex<double> query;
  std::vector<double> rwork(2 * n);
  zgeev_(&job, &job, &order, matrix.data(), &order, values.data(), nullptr, &one, nullptr, &one,
         &query, &lwork, rwork.data(), &info);
  lwork = static_cast<int>(query.real());
  std::vector<std::complex<double>> work(static_cast<std::size_t>(lwork));
  zgeev_(&job, &job, &order, matrix.data(), &order, values.data(), nullptr, &one, nullptr, &one,
         work.data(), &lwork, rwork.data(), &info);
  if (info > 0)
    throw Error(ErrorKind::EigenFailure,
                "QR iteration failed to converge (" + std::to_string(info) + " eigenvalues unresolved)");
  if (info < 0) throw Error(ErrorKind::EigenFailure, "zgeev rejected argument " + std::to_string(-info));
  return values;
}

void limit_blas_threads(int threads) {
  if (openblas_set_num_threads) openblas_set_num_threads(threads);
}

}  // namespace circderiv
