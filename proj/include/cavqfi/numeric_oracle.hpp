#pragma once

#include "cavqfi/boson_algebra.hpp"
#include "cavqfi/linalg.hpp"
#include "cavqfi/spin_algebra.hpp"

// Brute-force QFI on the truncated product space, independent of the
// closed forms. Basis index = n_fock * (N + 1) + n_dicke.
namespace cavqfi::oracle {

inline constexpr int kDefaultMaxDim = 20000;

class ProductSpace {
public:
    /// Throws DimensionOverflow when (cutoff + 1)(N + 1) exceeds max_dim.
    ProductSpace(boson::FockSpace fock, spin::SpinSpace spin, int max_dim = kDefaultMaxDim);

    const boson::FockSpace& fock() const { return fock_; }
    const spin::SpinSpace& spin() const { return spin_; }
    int dim() const { return fock_.dim() * spin_.dim(); }

    /// a (x) 1 and 1 (x) Sx on the product space.
    CMatrix lifted_a() const;
    CMatrix lifted_sx() const;

private:
    boson::FockSpace fock_;
    spin::SpinSpace spin_;
};

CVector product_state(const CVector& optical, const CVector& atomic);

/// -i (a^dag (x) e^{i theta Sx} - a (x) e^{-i theta Sx}).
CMatrix generator_matrix(const ProductSpace& space, double theta);

/// 4 (<psi|H^2|psi> - <psi|H|psi>^2). Throws InvalidState if psi is not
/// normalized to 1e-10.
double qfi_oracle_variance(const CMatrix& generator, const CVector& psi);

/// exp(i theta a^dag a Sx) D(beta) exp(-i theta a^dag a Sx), built as the
/// block-diagonal rotation sandwiching D (x) 1.
CMatrix protocol_unitary(const ProductSpace& space, double theta, double beta);

/// 8 (1 - |<psi|U(beta)^dag U(beta + delta)|psi>|) / delta^2 with
/// delta in [1e-5, 1e-2].
double qfi_oracle_fidelity(const ProductSpace& space, const CVector& psi, double theta, double beta,
                           double delta = 1e-3);

/// Richardson combination (4 F(delta / 2) - F(delta)) / 3 of the fidelity
/// estimate, cancelling the delta^2 error term.
double qfi_oracle_fidelity_richardson(const ProductSpace& space, const CVector& psi, double theta,
                                      double beta, double delta = 1e-3);

/// max |U - exp(beta (e^{i theta Sx} (x) a^dag) - beta (e^{-i theta Sx} (x) a))|
/// over matrix elements whose Fock indices both lie below 0.8 * (cutoff + 1),
/// away from the truncation edge.
double verify_bch_identity(const ProductSpace& space, double theta, double beta);

}  // namespace cavqfi::oracle
