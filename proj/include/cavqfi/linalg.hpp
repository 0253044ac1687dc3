#pragma once

#include <complex>

#include <Eigen/Dense>

namespace cavqfi {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr cplx kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Cached eigendecomposition of a Hermitian matrix, used to form exp(i t H)
/// for many t without re-diagonalizing.
class HermitianSpectrum {
public:
    explicit HermitianSpectrum(const CMatrix& hermitian);

    /// exp(i t H).
    CMatrix expi(double t) const;

    const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
    const CMatrix& eigenvectors() const { return eigenvectors_; }

private:
    Eigen::VectorXd eigenvalues_;
    CMatrix eigenvectors_;
};

/// exp(i t H) for Hermitian H.
CMatrix expi_hermitian(const CMatrix& hermitian, double t);

/// exp(A) for anti-Hermitian A (A^dagger = -A), via the Hermitian -iA.
CMatrix exp_anti_hermitian(const CMatrix& anti_hermitian);

CMatrix kron(const CMatrix& left, const CMatrix& right);
CVector kron(const CVector& left, const CVector& right);

double max_abs(const CMatrix& m);

/// ln C(n, k) through lgamma; valid far beyond factorial overflow.
double log_binomial(int n, int k);

/// z^n evaluated as exp(n log z) on the principal branch. Exact zero and
/// nonnegative/negative real bases are special-cased so the result carries
/// no spurious imaginary residue.
cplx log_domain_pow(cplx z, int n);

/// x^n for real x in the log domain (sign restored from parity).
double log_domain_pow(double x, int n);

/// Reduce an angle into [0, 2pi).
double canonical_phase(double angle);

}  // namespace cavqfi
