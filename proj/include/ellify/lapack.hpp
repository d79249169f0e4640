#pragma once

// Thin wrappers around the LAPACK routines used by the float pipeline:
// dggev (QZ, generalized eigenvalues of a real pencil), dgelsd (minimum-norm
// least squares) and dgesvd (used by tests as a pseudoinverse oracle).

#include <complex>
#include <stdexcept>
#include <vector>

#include "ellify/matrix.hpp"

extern "C" {
void dggev_(const char* jobvl, const char* jobvr, const int* n, double* a, const int* lda,
            double* b, const int* ldb, double* alphar, double* alphai, double* beta, double* vl,
            const int* ldvl, double* vr, const int* ldvr, double* work, const int* lwork,
            int* info);
void dgelsd_(const int* m, const int* n, const int* nrhs, double* a, const int* lda, double* b,
             const int* ldb, double* s, const double* rcond, int* rank, double* work,
             const int* lwork, int* iwork, int* info);
void dgesvd_(const char* jobu, const char* jobvt, const int* m, const int* n, double* a,
             const int* lda, double* s, double* u, const int* ldu, double* vt, const int* ldvt,
             double* work, const int* lwork, int* info);
}

namespace ellify {

namespace lapack_detail {

inline std::vector<double> to_fortran(const Matrix<double>& m) {
    std::vector<double> f(m.rows() * m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j)
        for (std::size_t i = 0; i < m.rows(); ++i) f[j * m.rows() + i] = m(i, j);
    return f;
}

}  // namespace lapack_detail

struct GeneralizedEigen {
    std::vector<std::complex<double>> alpha;
    std::vector<double> beta;
    Matrix<std::complex<double>> right;  // eigenvectors as columns when requested
};

// Eigenvalues alpha/beta of the pencil A - lambda B via QZ; beta == 0 marks
// an infinite eigenvalue.
inline GeneralizedEigen generalized_eigen(const Matrix<double>& a, const Matrix<double>& b,
                                          bool want_right) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
        throw std::invalid_argument("lapack: pencil matrices must be square of equal size");
    const int n = static_cast<int>(a.rows());
    GeneralizedEigen out;
    if (n == 0) return out;
    std::vector<double> fa = lapack_detail::to_fortran(a);
    std::vector<double> fb = lapack_detail::to_fortran(b);
    std::vector<double> ar(n), ai(n), be(n), vr(want_right ? n * n : 1), vl(1);
    const char jobvl = 'N';
    const char jobvr = want_right ? 'V' : 'N';
    int info = 0, lwork = -1, ldvl = 1, ldvr = want_right ? n : 1;
    double wkopt = 0;
    dggev_(&jobvl, &jobvr, &n, fa.data(), &n, fb.data(), &n, ar.data(), ai.data(), be.data(),
           vl.data(), &ldvl, vr.data(), &ldvr, &wkopt, &lwork, &info);
    lwork = static_cast<int>(wkopt);
    std::vector<double> work(lwork);
    dggev_(&jobvl, &jobvr, &n, fa.data(), &n, fb.data(), &n, ar.data(), ai.data(), be.data(),
           vl.data(), &ldvl, vr.data(), &ldvr, work.data(), &lwork, &info);
    if (info != 0) throw std::runtime_error("lapack: dggev failed, info=" + std::to_string(info));

    out.alpha.resize(n);
    out.beta.assign(be.begin(), be.end());
    for (int j = 0; j < n; ++j) out.alpha[j] = {ar[j], ai[j]};
    if (want_right) {
        out.right = Matrix<std::complex<double>>(n, n);
        for (int j = 0; j < n; ++j) {
            if (ai[j] > 0.0) {  // complex conjugate pair stored in two real columns
                for (int i = 0; i < n; ++i) {
                    std::complex<double> v(vr[j * n + i], vr[(j + 1) * n + i]);
                    out.right(i, j) = v;
                    out.right(i, j + 1) = std::conj(v);
                }
            } else if (ai[j] == 0.0) {
                for (int i = 0; i < n; ++i) out.right(i, j) = vr[j * n + i];
            }
        }
    }
    return out;
}

// Minimum-Frobenius-norm solution of the least squares problem A X = B.
inline Matrix<double> least_squares_min_norm(const Matrix<double>& a, const Matrix<double>& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("lapack: dgelsd rhs mismatch");
    const int m = static_cast<int>(a.rows());
    const int n = static_cast<int>(a.cols());
    const int nrhs = static_cast<int>(b.cols());
    const int ldb = std::max(m, n);
    std::vector<double> fa = lapack_detail::to_fortran(a);
    std::vector<double> fb(static_cast<std::size_t>(ldb) * nrhs, 0.0);
    for (int j = 0; j < nrhs; ++j)
        for (int i = 0; i < m; ++i) fb[j * ldb + i] = b(i, j);
    std::vector<double> s(std::min(m, n));
    double rcond = -1;  // machine-precision rank decisions
    int rank = 0, info = 0, lwork = -1;
    double wkopt = 0;
    int iwkopt = 0;
    dgelsd_(&m, &n, &nrhs, fa.data(), &m, fb.data(), &ldb, s.data(), &rcond, &rank, &wkopt, &lwork,
            &iwkopt, &info);
    lwork = static_cast<int>(wkopt);
    std::vector<double> work(lwork);
    std::vector<int> iwork(std::max(1, iwkopt));
    dgelsd_(&m, &n, &nrhs, fa.data(), &m, fb.data(), &ldb, s.data(), &rcond, &rank, work.data(),
            &lwork, iwork.data(), &info);
    if (info != 0) throw std::runtime_error("lapack: dgelsd failed, info=" + std::to_string(info));
    Matrix<double> x(n, nrhs);
    for (int j = 0; j < nrhs; ++j)
        for (int i = 0; i < n; ++i) x(i, j) = fb[j * ldb + i];
    return x;
}

struct Svd {
    Matrix<double> u;
    std::vector<double> s;
    Matrix<double> vt;
};

inline Svd svd(const Matrix<double>& a) {
    const int m = static_cast<int>(a.rows());
    const int n = static_cast<int>(a.cols());
    const int k = std::min(m, n);
    std::vector<double> fa = lapack_detail::to_fortran(a);
    Svd out;
    out.s.resize(k);
    std::vector<double> u(static_cast<std::size_t>(m) * k), vt(static_cast<std::size_t>(k) * n);
    const char jobu = 'S', jobvt = 'S';
    int info = 0, lwork = -1;
    double wkopt = 0;
    dgesvd_(&jobu, &jobvt, &m, &n, fa.data(), &m, out.s.data(), u.data(), &m, vt.data(), &k,
            &wkopt, &lwork, &info);
    lwork = static_cast<int>(wkopt);
    std::vector<double> work(lwork);
    dgesvd_(&jobu, &jobvt, &m, &n, fa.data(), &m, out.s.data(), u.data(), &m, vt.data(), &k,
            work.data(), &lwork, &info);
    if (info != 0) throw std::runtime_error("lapack: dgesvd failed, info=" + std::to_string(info));
    out.u = Matrix<double>(m, k);
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < m; ++i) out.u(i, j) = u[j * m + i];
    out.vt = Matrix<double>(k, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < k; ++i) out.vt(i, j) = vt[j * k + i];
    return out;
}

}  // namespace ellify
