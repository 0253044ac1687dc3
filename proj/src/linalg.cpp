#include "cavqfi/linalg.hpp"

#include <cmath>
#include <limits>

#include "cavqfi/errors.hpp"

namespace cavqfi {

HermitianSpectrum::HermitianSpectrum(const CMatrix& hermitian) {
    if (hermitian.rows() != hermitian.cols()) {
        throw InvalidArgument("HermitianSpectrum: matrix must be square");
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("HermitianSpectrum: eigensolver did not converge");
    }
    eigenvalues_ = solver.eigenvalues();
    eigenvectors_ = solver.eigenvectors();
}

CMatrix HermitianSpectrum::expi(double t) const {
    const Eigen::Index n = eigenvalues_.size();
    CVector phases(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        phases(k) = std::polar(1.0, t * eigenvalues_(k));
    }
    return eigenvectors_ * phases.asDiagonal() * eigenvectors_.adjoint();
}

CMatrix expi_hermitian(const CMatrix& hermitian, double t) {
    return HermitianSpectrum(hermitian).expi(t);
}

CMatrix exp_anti_hermitian(const CMatrix& anti_hermitian) {
    // A = i H with H = -i A Hermitian.
    const CMatrix h = (-kI) * anti_hermitian;
    const CMatrix symmetrized = 0.5 * (h + h.adjoint());
    return HermitianSpectrum(symmetrized).expi(1.0);
}

CMatrix kron(const CMatrix& left, const CMatrix& right) {
    CMatrix out(left.rows() * right.rows(), left.cols() * right.cols());
    for (Eigen::Index i = 0; i < left.rows(); ++i) {
        for (Eigen::Index j = 0; j < left.cols(); ++j) {
            out.block(i * right.rows(), j * right.cols(), right.rows(), right.cols()) =
                left(i, j) * right;
        }
    }
    return out;
}

CVector kron(const CVector& left, const CVector& right) {
    CVector out(left.size() * right.size());
    for (Eigen::Index i = 0; i < left.size(); ++i) {
        out.segment(i * right.size(), right.size()) = left(i) * right;
    }
    return out;
}

double max_abs(const CMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double log_binomial(int n, int k) {
    if (k < 0 || k > n) {
        return -std::numeric_limits<double>::infinity();
    }
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double log_domain_pow(double x, int n) {
    if (n == 0) {
        return 1.0;
    }
    if (x == 0.0) {
        return 0.0;
    }
    const double magnitude = std::exp(n * std::log(std::abs(x)));
    return (x < 0.0 && (n % 2 != 0)) ? -magnitude : magnitude;
}

cplx log_domain_pow(cplx z, int n) {
    if (n == 0) {
        return {1.0, 0.0};
    }
    if (z.imag() == 0.0) {
        return {log_domain_pow(z.real(), n), 0.0};
    }
    return std::exp(static_cast<double>(n) * std::log(z));
}

double canonical_phase(double angle) {
    double r = std::fmod(angle, kTwoPi);
    if (r < 0.0) {
        r += kTwoPi;
    }
    if (r >= kTwoPi) {
        r = 0.0;
    }
    return r;
}

}  // namespace cavqfi
