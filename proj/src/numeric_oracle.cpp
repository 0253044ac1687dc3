#include "cavqfi/numeric_oracle.hpp"

#include <cmath>
#include <sstream>

#include "cavqfi/errors.hpp"

namespace cavqfi::oracle {

namespace {

constexpr double kNormTolerance = 1e-10;

CMatrix identity(int n) { return CMatrix::Identity(n, n); }

// Block-diagonal exp(i theta n Sx) over Fock levels n.
CMatrix number_rotation(const ProductSpace& space, double theta) {
    const int ds = space.spin().dim();
    const HermitianSpectrum sx(space.spin().sx());
    CMatrix w = CMatrix::Zero(space.dim(), space.dim());
    for (int n = 0; n < space.fock().dim(); ++n) {
        w.block(n * ds, n * ds, ds, ds) = sx.expi(theta * n);
    }
    return w;
}

// U psi = W (D (x) 1) W^dag psi, applied block by block. With psi stored as
// the (N + 1) x (cutoff + 1) matrix of Fock blocks, D (x) 1 acts as M D^T.
CVector apply_protocol(const ProductSpace& space, const HermitianSpectrum& sx, const CMatrix& d,
                       double theta, const CVector& psi) {
    const int ds = space.spin().dim();
    const int df = space.fock().dim();
    CMatrix m = Eigen::Map<const CMatrix>(psi.data(), ds, df);
    for (int n = 0; n < df; ++n) {
        m.col(n) = sx.expi(-theta * n) * m.col(n);
    }
    m = m * d.transpose();
    for (int n = 0; n < df; ++n) {
        m.col(n) = sx.expi(theta * n) * m.col(n);
    }
    return Eigen::Map<const CVector>(m.data(), psi.size());
}

void check_delta(double delta) {
    if (!(delta >= 1e-5 && delta <= 1e-2)) {
        throw InvalidArgument("fidelity step delta must lie in [1e-5, 1e-2]");
    }
}

}  // namespace

ProductSpace::ProductSpace(boson::FockSpace fock, spin::SpinSpace spin, int max_dim)
    : fock_(std::move(fock)), spin_(std::move(spin)) {
    const long long d = static_cast<long long>(fock_.dim()) * spin_.dim();
    if (d > max_dim) {
        std::ostringstream os;
        os << "product dimension " << d << " exceeds limit " << max_dim;
        throw DimensionOverflow(os.str());
    }
}

CMatrix ProductSpace::lifted_a() const { return kron(fock_.a(), identity(spin_.dim())); }

CMatrix ProductSpace::lifted_sx() const { return kron(identity(fock_.dim()), spin_.sx()); }

CVector product_state(const CVector& optical, const CVector& atomic) {
    return kron(optical, atomic);
}

CMatrix generator_matrix(const ProductSpace& space, double theta) {
    const CMatrix e = expi_hermitian(space.spin().sx(), theta);
    const CMatrix h = -kI * (kron(space.fock().a_dag(), e) - kron(space.fock().a(), CMatrix(e.adjoint())));
    return h;
}

double qfi_oracle_variance(const CMatrix& generator, const CVector& psi) {
    if (generator.rows() != psi.size() || generator.cols() != psi.size()) {
        throw InvalidArgument("generator and state dimensions differ");
    }
    const double norm2 = psi.squaredNorm();
    if (std::abs(norm2 - 1.0) > kNormTolerance) {
        throw InvalidState("qfi_oracle_variance: state is not normalized");
    }
    const CVector v = generator * psi;
    const double mean = psi.dot(v).real();  // conjugate-linear in psi
    return 4.0 * (v.squaredNorm() - mean * mean);
}

CMatrix protocol_unitary(const ProductSpace& space, double theta, double beta) {
    const CMatrix w = number_rotation(space, theta);
    const CMatrix d = kron(boson::displacement_operator(space.fock(), cplx(beta, 0.0)),
                           identity(space.spin().dim()));
    return w * d * w.adjoint();
}

double qfi_oracle_fidelity(const ProductSpace& space, const CVector& psi, double theta, double beta,
                           double delta) {
    check_delta(delta);
    if (std::abs(psi.squaredNorm() - 1.0) > kNormTolerance) {
        throw InvalidState("qfi_oracle_fidelity: state is not normalized");
    }
    const HermitianSpectrum sx(space.spin().sx());
    const CVector here = apply_protocol(
        space, sx, boson::displacement_operator(space.fock(), cplx(beta, 0.0)), theta, psi);
    const CVector there = apply_protocol(
        space, sx, boson::displacement_operator(space.fock(), cplx(beta + delta, 0.0)), theta, psi);
    const double overlap = std::abs(here.dot(there));
    return 8.0 * (1.0 - overlap) / (delta * delta);
}

double qfi_oracle_fidelity_richardson(const ProductSpace& space, const CVector& psi, double theta,
                                      double beta, double delta) {
    check_delta(delta);
    check_delta(0.5 * delta);
    const double coarse = qfi_oracle_fidelity(space, psi, theta, beta, delta);
    const double fine = qfi_oracle_fidelity(space, psi, theta, beta, 0.5 * delta);
    return (4.0 * fine - coarse) / 3.0;
}

double verify_bch_identity(const ProductSpace& space, double theta, double beta) {
    const CMatrix u = protocol_unitary(space, theta, beta);
    const CMatrix e = expi_hermitian(space.spin().sx(), theta);
    const CMatrix gen =
        beta * (kron(space.fock().a_dag(), e) - kron(space.fock().a(), CMatrix(e.adjoint())));
    const CMatrix direct = exp_anti_hermitian(gen);
    const int ds = space.spin().dim();
    const int safe = static_cast<int>(0.8 * space.fock().dim()) * ds;
    return max_abs((u - direct).topLeftCorner(safe, safe));
}

}  // namespace cavqfi::oracle
