#pragma once

#include <variant>

#include "cavqfi/linalg.hpp"

// Collective spin of N spin-1/2 particles restricted to the symmetric
// j = N/2 sector. Dicke index n = 0..N labels |N/2, n - N/2>, so n = 0 is the
// collective ground state (all spins down).
namespace cavqfi::spin {

inline constexpr int kDefaultMaxSpins = 4096;

class SpinSpace {
public:
    explicit SpinSpace(int n_spins, int max_spins = kDefaultMaxSpins);

    int n_spins() const { return n_spins_; }
    int dim() const { return n_spins_ + 1; }

    const CMatrix& sx() const { return sx_; }
    const CMatrix& sy() const { return sy_; }
    const CMatrix& sz() const { return sz_; }
    const CMatrix& s_plus() const { return s_plus_; }
    const CMatrix& s_minus() const { return s_minus_; }

private:
    int n_spins_;
    CMatrix sx_, sy_, sz_, s_plus_, s_minus_;
};

SpinSpace build_spin_space(int n_spins, int max_spins = kDefaultMaxSpins);

/// Bloch-sphere direction of a spin-coherent state. The zenith is folded into
/// [0, pi] and the azimuth into [0, 2pi); (z, a) and (2pi - z, a + pi) name the
/// same point.
class SpinCoherentParams {
public:
    SpinCoherentParams() = default;
    SpinCoherentParams(double zenith, double azimuth);

    double zenith() const { return zenith_; }
    double azimuth() const { return azimuth_; }

    /// eta = -exp(-i azimuth) tan(zenith / 2). Infinite at the north pole.
    cplx eta() const;

    /// The branch reached by eta -> -eta: same zenith, azimuth shifted by pi.
    SpinCoherentParams negated() const;

private:
    double zenith_ = 0.0;
    double azimuth_ = 0.0;
};

struct CollectiveGround {};

struct SpinCat {
    SpinCoherentParams params;
    double relative_phase = 0.0;  // nu
};

using AtomicKind = std::variant<CollectiveGround, SpinCat>;

struct AtomicState {
    int n_spins = 0;
    AtomicKind kind;
    CVector vector;
};

/// exp(i zenith (Sx sin(azimuth) - Sy cos(azimuth))) by Hermitian
/// eigendecomposition.
CMatrix rotation_operator(const SpinSpace& space, double zenith, double azimuth);

/// Dicke amplitudes of R(zenith, azimuth)|0>, evaluated from log-binomials so
/// that N in the hundreds of thousands is fine.
CVector spin_coherent_vector(int n_spins, const SpinCoherentParams& params);
CVector spin_coherent_state(const SpinSpace& space, const SpinCoherentParams& params);

AtomicState collective_ground(int n_spins);

/// ||(|eta> + e^{i nu}|-eta>)||^2 = 2 (1 + cos(nu) cos^N(zenith)).
double spin_cat_norm_squared(int n_spins, const SpinCoherentParams& params, double nu);

/// Normalized (|eta> + e^{i nu}|-eta>). Throws DegenerateState when the squared
/// norm falls below 1e-14.
AtomicState spin_cat_state(int n_spins, const SpinCoherentParams& params, double nu);
AtomicState spin_cat_state(const SpinSpace& space, const SpinCoherentParams& params, double nu);

/// <eta| exp(sign * 2i * lambda_theta * Sx) |eta>
///   = [cos(lt) - sign * i sin(lt) sin(zenith) cos(azimuth)]^N
cplx atomic_char_same(const SpinCoherentParams& params, int n_spins, double lambda_theta, int sign);

/// <eta| exp(sign * 2i * lambda_theta * Sx) |-eta>
///   = [cos(lt) cos(zenith) + sign * sin(lt) sin(zenith) sin(azimuth)]^N
cplx atomic_char_cross(const SpinCoherentParams& params, int n_spins, double lambda_theta, int sign);

/// <exp(i zeta_theta Sx)> from closed forms. Ground: cos^N(zeta_theta / 2).
/// Spin cat: the four same/cross branch terms over the squared norm.
cplx atomic_expectation(int n_spins, const AtomicKind& kind, double zeta_theta);
cplx atomic_expectation(const AtomicState& state, double zeta_theta);

}  // namespace cavqfi::spin
