#include "cavqfi/boson_algebra.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "cavqfi/errors.hpp"

namespace cavqfi::boson {

namespace {

constexpr double kDegenerateNorm = 1e-14;

void require_headroom(const FockSpace& space, double alpha, const char* what) {
    if (space.allows_inadequate()) return;
    const int cutoff = space.cutoff();
    const double tail = poisson_tail(alpha * alpha, cutoff);
    if (tail > kTailTolerance) {
        throw InadequateCutoff(std::string(what) + ": cutoff " + std::to_string(cutoff) +
                               " leaves Poisson tail " + std::to_string(tail) +
                               " for amplitude " + std::to_string(alpha));
    }
}

// e^{-alpha^2/2} alpha^n / sqrt(n!) for alpha >= 0.
double coherent_amplitude(double alpha, int n) {
    if (alpha == 0.0) {
        return n == 0 ? 1.0 : 0.0;
    }
    const double log_amp = -0.5 * alpha * alpha + n * std::log(alpha) - 0.5 * std::lgamma(n + 1.0);
    return std::exp(log_amp);
}

OpticalState finish(OpticalKind kind, CVector raw) {
    const double norm2 = raw.squaredNorm();
    OpticalState state;
    state.kind = kind;
    state.norm_deficit = 1.0 - norm2;
    state.vector = raw / std::sqrt(norm2);
    return state;
}

}  // namespace

FockSpace::FockSpace(int cutoff, double target_alpha, bool allow_inadequate)
    : cutoff_(cutoff), target_alpha_(std::abs(target_alpha)), allow_inadequate_(allow_inadequate) {
    if (cutoff < 1) {
        throw InvalidArgument("Fock cutoff must be >= 1, got " + std::to_string(cutoff));
    }
    if (!std::isfinite(target_alpha)) {
        throw InvalidArgument("target alpha must be finite");
    }
    tail_bound_ = poisson_tail(target_alpha_ * target_alpha_, cutoff);
    if (!allow_inadequate && tail_bound_ > kTailTolerance) {
        throw InadequateCutoff("cutoff " + std::to_string(cutoff) + " leaves Poisson tail " +
                               std::to_string(tail_bound_) + " for alpha = " +
                               std::to_string(target_alpha_));
    }
    a_ = CMatrix::Zero(cutoff + 1, cutoff + 1);
    for (int n = 1; n <= cutoff; ++n) {
        a_(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    a_dag_ = a_.adjoint();
}

FockSpace build_fock_space(int cutoff, double target_alpha, bool allow_inadequate) {
    return FockSpace(cutoff, target_alpha, allow_inadequate);
}

int default_cutoff(double alpha) {
    const double a = std::abs(alpha);
    return static_cast<int>(std::ceil(a * a + 10.0 * a + 20.0));
}

double poisson_tail(double mean, int cutoff) {
    if (mean < 0.0 || !std::isfinite(mean)) {
        throw InvalidArgument("Poisson mean must be finite and nonnegative");
    }
    if (mean == 0.0) {
        return 0.0;
    }
    const double log_mean = std::log(mean);
    auto log_term = [&](int n) { return -mean + n * log_mean - std::lgamma(n + 1.0); };
    if (cutoff + 1 > mean) {
        // Terms decrease monotonically past the mode; stop when negligible.
        double sum = 0.0;
        for (int n = cutoff + 1;; ++n) {
            const double term = std::exp(log_term(n));
            sum += term;
            if (term <= sum * 1e-17 || term == 0.0) break;
        }
        return sum;
    }
    double head = 0.0;
    for (int n = 0; n <= cutoff; ++n) {
        head += std::exp(log_term(n));
    }
    return std::max(0.0, 1.0 - head);
}

OpticalState coherent_state(const FockSpace& space, double alpha) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
        throw InvalidArgument("coherent amplitude must be real, finite and >= 0");
    }
    require_headroom(space, alpha, "coherent_state");
    CVector raw(space.dim());
    for (int n = 0; n < space.dim(); ++n) {
        raw(n) = coherent_amplitude(alpha, n);
    }
    return finish(Coherent{alpha}, std::move(raw));
}

double cat_norm_factor(double alpha, double phase) {
    // 1 + e^{-2a^2} cos p = 2 cos^2(p/2) + cos(p) expm1(-2a^2)
    const double c = std::cos(0.5 * phase);
    return 2.0 * c * c + std::cos(phase) * std::expm1(-2.0 * alpha * alpha);
}

OpticalState cat_state(const FockSpace& space, double alpha, double phase) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha) || !std::isfinite(phase)) {
        throw InvalidArgument("cat parameters must be finite with alpha >= 0");
    }
    const double norm_factor = cat_norm_factor(alpha, phase);
    if (!(norm_factor >= kDegenerateNorm)) {
        throw DegenerateState("even/odd cat is degenerate (1 + e^{-2a^2} cos phi = " +
                              std::to_string(norm_factor) + ")");
    }
    require_headroom(space, alpha, "cat_state");
    const cplx weight = std::polar(1.0, phase);
    const double scale = 1.0 / std::sqrt(2.0 * norm_factor);
    CVector raw(space.dim());
    for (int n = 0; n < space.dim(); ++n) {
        const double parity = (n % 2 == 0) ? 1.0 : -1.0;
        raw(n) = scale * coherent_amplitude(alpha, n) * (1.0 + weight * parity);
    }
    return finish(EvenOddCat{alpha, canonical_phase(phase)}, std::move(raw));
}

OpticalState fock_state(const FockSpace& space, int n) {
    if (n < 0 || n > space.cutoff()) {
        throw InvalidArgument("Fock level " + std::to_string(n) + " outside [0, cutoff]");
    }
    CVector raw = CVector::Zero(space.dim());
    raw(n) = 1.0;
    return finish(Fock{n}, std::move(raw));
}

OpticalMoments cat_moments(double alpha, double phase) {
    const double norm_factor = cat_norm_factor(alpha, phase);
    if (!(norm_factor > kDegenerateNorm)) {
        throw DegenerateState("even/odd cat moments are degenerate");
    }
    const double a2 = alpha * alpha;
    const double decay = std::exp(-2.0 * a2);
    const double s = std::sin(0.5 * phase);
    // 1 - e^{-2a^2} cos p = 2 sin^2(p/2) - cos(p) expm1(-2a^2)
    const double numerator = 2.0 * s * s - std::cos(phase) * std::expm1(-2.0 * a2);
    OpticalMoments m;
    m.mean_a = cplx{0.0, -alpha * decay * std::sin(phase) / norm_factor};
    m.mean_a2 = cplx{a2, 0.0};
    m.mean_n = a2 * numerator / norm_factor;
    return m;
}

OpticalMoments optical_moments(const OpticalKind& kind) {
    if (const auto* coh = std::get_if<Coherent>(&kind)) {
        const double a = coh->alpha;
        return {cplx{a, 0.0}, cplx{a * a, 0.0}, a * a};
    }
    if (const auto* cat = std::get_if<EvenOddCat>(&kind)) {
        return cat_moments(cat->alpha, cat->phase);
    }
    const auto& fock = std::get<Fock>(kind);
    return {cplx{}, cplx{}, static_cast<double>(fock.n)};
}

OpticalMoments numeric_moments(const FockSpace& space, const CVector& vector) {
    if (vector.size() != space.dim()) {
        throw InvalidState("optical vector length does not match the Fock space");
    }
    const CVector av = space.a() * vector;
    const CVector a2v = space.a() * av;
    OpticalMoments m;
    m.mean_a = vector.dot(av);
    m.mean_a2 = vector.dot(a2v);
    m.mean_n = av.squaredNorm();
    return m;
}

CMatrix displacement_operator(const FockSpace& space, cplx beta, bool allow_inadequate) {
    if (!std::isfinite(beta.real()) || !std::isfinite(beta.imag())) {
        throw InvalidArgument("displacement must be finite");
    }
    if (!allow_inadequate) {
        require_headroom(space, space.target_alpha() + std::abs(beta), "displacement_operator");
    }
    if (beta == cplx{}) {
        return CMatrix::Identity(space.dim(), space.dim());
    }
    const CMatrix generator = beta * space.a_dag() - std::conj(beta) * space.a();
    return exp_anti_hermitian(generator);
}

}  // namespace cavqfi::boson
