#include "cavqfi/spin_algebra.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "cavqfi/errors.hpp"

namespace cavqfi::spin {

namespace {

constexpr double kDegenerateNorm = 1e-14;

void check_sign(int sign) {
    if (sign != 1 && sign != -1) {
        throw InvalidArgument("atomic characteristic sign must be +1 or -1");
    }
}

void check_spins(int n_spins) {
    if (n_spins < 1) {
        throw InvalidArgument("n_spins must be >= 1, got " + std::to_string(n_spins));
    }
}

}  // namespace

SpinSpace::SpinSpace(int n_spins, int max_spins) : n_spins_(n_spins) {
    if (n_spins < 1 || n_spins > max_spins) {
        throw InvalidArgument("n_spins must lie in [1, " + std::to_string(max_spins) + "], got " +
                              std::to_string(n_spins));
    }
    const int d = n_spins + 1;
    s_plus_ = CMatrix::Zero(d, d);
    sz_ = CMatrix::Zero(d, d);
    for (int n = 0; n < d; ++n) {
        sz_(n, n) = n - 0.5 * n_spins;
        if (n < n_spins) {
            s_plus_(n + 1, n) = std::sqrt(static_cast<double>(n + 1) * (n_spins - n));
        }
    }
    s_minus_ = s_plus_.adjoint();
    sx_ = 0.5 * (s_plus_ + s_minus_);
    sy_ = (s_plus_ - s_minus_) / (2.0 * kI);
}

SpinSpace build_spin_space(int n_spins, int max_spins) { return SpinSpace(n_spins, max_spins); }

SpinCoherentParams::SpinCoherentParams(double zenith, double azimuth) {
    if (!std::isfinite(zenith) || !std::isfinite(azimuth)) {
        throw InvalidArgument("spin-coherent angles must be finite");
    }
    double z = canonical_phase(zenith);
    double a = azimuth;
    if (z > kPi) {
        z = kTwoPi - z;
        a += kPi;
    }
    zenith_ = z;
    azimuth_ = canonical_phase(a);
}

cplx SpinCoherentParams::eta() const {
    return -std::polar(1.0, -azimuth_) * std::tan(0.5 * zenith_);
}

SpinCoherentParams SpinCoherentParams::negated() const {
    return SpinCoherentParams(zenith_, azimuth_ + kPi);
}

CMatrix rotation_operator(const SpinSpace& space, double zenith, double azimuth) {
    if (!std::isfinite(zenith) || !std::isfinite(azimuth)) {
        throw InvalidArgument("rotation angles must be finite");
    }
    const CMatrix generator = space.sx() * std::sin(azimuth) - space.sy() * std::cos(azimuth);
    return expi_hermitian(generator, zenith);
}

CVector spin_coherent_vector(int n_spins, const SpinCoherentParams& params) {
    check_spins(n_spins);
    // c_k = sqrt(C(N,k)) cos^{N-k}(z/2) (-e^{-i a} sin(z/2))^k
    const double half = 0.5 * params.zenith();
    const double c = std::cos(half);
    const double s = std::sin(half);
    const double log_c = c > 0.0 ? std::log(c) : -std::numeric_limits<double>::infinity();
    const double log_s = s > 0.0 ? std::log(s) : -std::numeric_limits<double>::infinity();
    CVector v(n_spins + 1);
    for (int k = 0; k <= n_spins; ++k) {
        double log_mag = 0.5 * log_binomial(n_spins, k);
        if (n_spins - k > 0) log_mag += (n_spins - k) * log_c;
        if (k > 0) log_mag += k * log_s;
        const double phase = k * (kPi - params.azimuth());
        v(k) = std::polar(std::exp(log_mag), phase);
    }
    return v;
}

CVector spin_coherent_state(const SpinSpace& space, const SpinCoherentParams& params) {
    return spin_coherent_vector(space.n_spins(), params);
}

AtomicState collective_ground(int n_spins) {
    check_spins(n_spins);
    AtomicState state;
    state.n_spins = n_spins;
    state.kind = CollectiveGround{};
    state.vector = CVector::Zero(n_spins + 1);
    state.vector(0) = 1.0;
    return state;
}

double spin_cat_norm_squared(int n_spins, const SpinCoherentParams& params, double nu) {
    return 2.0 * (1.0 + std::cos(nu) * log_domain_pow(std::cos(params.zenith()), n_spins));
}

AtomicState spin_cat_state(int n_spins, const SpinCoherentParams& params, double nu) {
    check_spins(n_spins);
    const double norm2 = spin_cat_norm_squared(n_spins, params, nu);
    if (!(norm2 >= kDegenerateNorm)) {
        throw DegenerateState("spin cat superposition is degenerate (norm^2 = " +
                              std::to_string(norm2) + ")");
    }
    // |-eta> has amplitudes (-1)^k c_k.
    const CVector branch = spin_coherent_vector(n_spins, params);
    const cplx weight = std::polar(1.0, nu);
    const double scale = 1.0 / std::sqrt(norm2);
    AtomicState state;
    state.n_spins = n_spins;
    state.kind = SpinCat{params, canonical_phase(nu)};
    state.vector.resize(n_spins + 1);
    for (int k = 0; k <= n_spins; ++k) {
        const double parity = (k % 2 == 0) ? 1.0 : -1.0;
        state.vector(k) = scale * branch(k) * (1.0 + weight * parity);
    }
    return state;
}

AtomicState spin_cat_state(const SpinSpace& space, const SpinCoherentParams& params, double nu) {
    return spin_cat_state(space.n_spins(), params, nu);
}

cplx atomic_char_same(const SpinCoherentParams& params, int n_spins, double lambda_theta, int sign) {
    check_sign(sign);
    const cplx bracket{std::cos(lambda_theta),
                       -sign * std::sin(lambda_theta) * std::sin(params.zenith()) *
                           std::cos(params.azimuth())};
    return log_domain_pow(bracket, n_spins);
}

cplx atomic_char_cross(const SpinCoherentParams& params, int n_spins, double lambda_theta, int sign) {
    check_sign(sign);
    const double bracket = std::cos(lambda_theta) * std::cos(params.zenith()) +
                           sign * std::sin(lambda_theta) * std::sin(params.zenith()) *
                               std::sin(params.azimuth());
    return {log_domain_pow(bracket, n_spins), 0.0};
}

cplx atomic_expectation(int n_spins, const AtomicKind& kind, double zeta_theta) {
    check_spins(n_spins);
    const double lambda_theta = 0.5 * zeta_theta;
    if (std::holds_alternative<CollectiveGround>(kind)) {
        return {log_domain_pow(std::cos(lambda_theta), n_spins), 0.0};
    }
    const auto& cat = std::get<SpinCat>(kind);
    const SpinCoherentParams& p = cat.params;
    const SpinCoherentParams q = p.negated();
    const double norm2 = spin_cat_norm_squared(n_spins, p, cat.relative_phase);
    if (!(norm2 >= kDegenerateNorm)) {
        throw DegenerateState("spin cat superposition is degenerate");
    }
    const cplx weight = std::polar(1.0, cat.relative_phase);
    const cplx sum = atomic_char_same(p, n_spins, lambda_theta, 1) +
                     atomic_char_same(q, n_spins, lambda_theta, 1) +
                     weight * atomic_char_cross(p, n_spins, lambda_theta, 1) +
                     std::conj(weight) * atomic_char_cross(q, n_spins, lambda_theta, 1);
    return sum / norm2;
}

cplx atomic_expectation(const AtomicState& state, double zeta_theta) {
    return atomic_expectation(state.n_spins, state.kind, zeta_theta);
}

}  // namespace cavqfi::spin
