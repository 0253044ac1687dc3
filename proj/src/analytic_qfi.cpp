#include "cavqfi/analytic_qfi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cavqfi/errors.hpp"

namespace cavqfi::analytic {

namespace {

constexpr double kImagResidueLimit = 1e-6;
constexpr double kVarianceFloor = -1e-9;
constexpr double kShortTimeLimit = 0.01;  // N theta^2

void check_alpha(double alpha) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
        throw InvalidArgument("alpha must be finite and >= 0");
    }
}

void check_spins(int n_spins) {
    if (n_spins < 1) {
        throw InvalidArgument("n_spins must be >= 1");
    }
}

std::string describe(const char* what, double value) {
    std::ostringstream os;
    os << what << " = " << value;
    return os.str();
}

}  // namespace

ProtocolParams::ProtocolParams(double mu, double tau, double beta)
    : mu_(mu), tau_(tau), theta_(mu * tau), beta_(beta) {
    if (!std::isfinite(mu) || !std::isfinite(tau) || !std::isfinite(beta)) {
        throw InvalidArgument("protocol parameters must be finite");
    }
    if (tau < 0.0) {
        throw InvalidArgument("tau must be >= 0");
    }
}

AtomicCharacteristics AtomicCharacteristics::from_plus(cplx plus1, cplx plus2) {
    return {plus1, std::conj(plus1), plus2, std::conj(plus2)};
}

AtomicCharacteristics AtomicCharacteristics::from_state(int n_spins, const spin::AtomicKind& kind,
                                                        double theta) {
    AtomicCharacteristics c;
    c.plus1 = spin::atomic_expectation(n_spins, kind, theta);
    c.minus1 = spin::atomic_expectation(n_spins, kind, -theta);
    c.plus2 = spin::atomic_expectation(n_spins, kind, 2.0 * theta);
    c.minus2 = spin::atomic_expectation(n_spins, kind, -2.0 * theta);
    return c;
}

std::string_view to_string(Regime regime) {
    switch (regime) {
        case Regime::exact: return "exact";
        case Regime::short_time_asymptotic: return "short_time_asymptotic";
        case Regime::long_time_asymptotic: return "long_time_asymptotic";
    }
    return "unknown";
}

std::string_view to_string(Provenance provenance) {
    return provenance == Provenance::analytic ? "analytic" : "oracle";
}

double qfi_general(const boson::OpticalMoments& optical, const AtomicCharacteristics& atomic) {
    const cplx a = optical.mean_a;
    const cplx a2 = optical.mean_a2;
    const cplx pairing = std::conj(a2) * atomic.plus2 + a2 * atomic.minus2;
    const cplx shift = std::conj(a) * atomic.plus1 - a * atomic.minus1;
    const cplx total = 2.0 * optical.mean_n + 1.0 - pairing + shift * shift;
    if (std::abs(total.imag()) > kImagResidueLimit) {
        throw InconsistentMoments(describe("qfi_general: imaginary residue", total.imag()));
    }
    const double f = 4.0 * total.real();
    if (f < kVarianceFloor) {
        throw InconsistentMoments(describe("qfi_general: negative variance, F", f));
    }
    return std::max(f, 0.0);
}

double phase_threshold_y(int n_spins, double theta) {
    return 1.0 - 2.0 * log_domain_pow(std::cos(0.5 * theta), 2 * n_spins);
}

double qfi_case_a(double alpha, double phase, int n_spins, double theta) {
    check_alpha(alpha);
    check_spins(n_spins);
    const double denom = boson::cat_norm_factor(alpha, phase);
    if (!(denom > 1e-14)) {
        throw DegenerateState("qfi_case_a: degenerate cat normalization");
    }
    // Numerator and denominator divided through by e^{4 alpha^2}:
    // [1 - e^{-4a^2} + e^{-4a^2} y sin^2 p] / (1 + e^{-2a^2} cos p)^2 - cos^N(theta)
    const double a2 = alpha * alpha;
    const double y = phase_threshold_y(n_spins, theta);
    const double sin_p = std::sin(phase);
    const double ratio =
        (-std::expm1(-4.0 * a2) + std::exp(-4.0 * a2) * y * sin_p * sin_p) / (denom * denom);
    const double cos_n = log_domain_pow(std::cos(theta), n_spins);
    return 4.0 + 8.0 * a2 * (ratio - cos_n);
}

double alpha1_root(double y, double phase) {
    const double c = std::cos(phase);
    const double arg = 0.5 * (-y * c + std::sqrt(4.0 * (1.0 - y) + y * y * c * c));
    const double log_arg = std::log(arg);
    if (!(log_arg >= 0.0)) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return std::sqrt(0.5 * log_arg);
}

PhaseOptimum qfi_case_a_max_phi(double alpha, int n_spins, double theta) {
    check_alpha(alpha);
    check_spins(n_spins);
    PhaseOptimum opt;
    opt.y = phase_threshold_y(n_spins, theta);
    opt.alpha1 = opt.y <= 0.0 ? alpha1_root(opt.y, 0.0) : std::numeric_limits<double>::quiet_NaN();
    if (alpha == 0.0) {
        opt.phase = 0.0;
        opt.qfi = 4.0;
        return opt;
    }
    const double at_pi = qfi_case_a(alpha, kPi, n_spins, theta);
    const double at_zero = qfi_case_a(alpha, 0.0, n_spins, theta);
    if (at_pi >= at_zero) {
        opt.phase = kPi;
        opt.qfi = at_pi;
    } else {
        opt.phase = 0.0;
        opt.qfi = at_zero;
    }
    return opt;
}

double odd_cat_excess(double alpha) {
    const double a2 = alpha * alpha;
    if (a2 == 0.0) {
        return 1.0;
    }
    return 2.0 * a2 / std::expm1(2.0 * a2);
}

double odd_cat_mean_n(double alpha) { return alpha * alpha + odd_cat_excess(alpha); }

Flagged qfi_case_a_short_time(double alpha, int n_spins, double theta) {
    check_alpha(alpha);
    check_spins(n_spins);
    const double n_theta2 = n_spins * theta * theta;
    Flagged out;
    // 4 + 4a^2 (N th^2 - 2) + 8 a^2 coth a^2 with the 8a^2 cancelled by hand
    out.value = 4.0 + 4.0 * alpha * alpha * n_theta2 + 8.0 * odd_cat_excess(alpha);
    if (!(n_theta2 < kShortTimeLimit)) {
        out.warnings.push_back(describe("short-time regime violated: N theta^2", n_theta2));
    }
    return out;
}

Flagged qfi_case_a_short_time(double alpha, int n_spins, double mu, double tau) {
    return qfi_case_a_short_time(alpha, n_spins, ProtocolParams(mu, tau).theta());
}

double qfi_case_a_long_time(double alpha, int n_spins) {
    check_alpha(alpha);
    check_spins(n_spins);
    const double parity = (n_spins % 2 != 0) ? 1.0 : 0.0;
    return 4.0 + 8.0 * alpha * alpha * parity + 8.0 * odd_cat_mean_n(alpha);
}

Flagged qfi_case_b_short_time(double alpha, double phase, int n_spins, double theta) {
    check_alpha(alpha);
    check_spins(n_spins);
    const boson::OpticalMoments m = boson::cat_moments(alpha, phase);
    const double a2 = alpha * alpha;
    // <n> - alpha^2 = -2 alpha^2 e cos p / (1 + e cos p)
    const double n_excess = a2 == 0.0
        ? 0.0
        : -2.0 * a2 * std::exp(-2.0 * a2) * std::cos(phase) / boson::cat_norm_factor(alpha, phase);
    const double n_theta2 = n_spins * theta * theta;
    const double n2_theta2 = static_cast<double>(n_spins) * n_spins * theta * theta;
    const double shift2 = std::norm(m.mean_a);  // alpha^2 (e sin p / (1 + e cos p))^2
    Flagged out;
    out.value = 4.0 + 8.0 * n_excess + 4.0 * a2 * n2_theta2 + 4.0 * (n2_theta2 - 4.0) * shift2;
    if (!(n_theta2 < kShortTimeLimit)) {
        out.warnings.push_back(describe("short-time regime violated: N theta^2", n_theta2));
    }
    if (!(n2_theta2 > 1.0)) {
        out.warnings.push_back(describe("dominant-term condition unmet: N^2 theta^2", n2_theta2));
    }
    return out;
}

double qfi_case_b_exact(double alpha, double phase, int n_spins, double theta, double zenith,
                        double azimuth, double nu) {
    check_alpha(alpha);
    check_spins(n_spins);
    const spin::AtomicKind kind = spin::SpinCat{spin::SpinCoherentParams(zenith, azimuth), nu};
    return qfi_general(boson::cat_moments(alpha, phase),
                       AtomicCharacteristics::from_state(n_spins, kind, theta));
}

PhaseOptimum qfi_case_b_max_phi(double alpha, int n_spins, double theta, double zenith,
                                double azimuth, double nu) {
    check_alpha(alpha);
    check_spins(n_spins);
    const spin::AtomicKind kind = spin::SpinCat{spin::SpinCoherentParams(zenith, azimuth), nu};
    const double re1 = spin::atomic_expectation(n_spins, kind, theta).real();
    PhaseOptimum opt;
    opt.y = 1.0 - 2.0 * re1 * re1;
    opt.alpha1 = opt.y <= 0.0 ? alpha1_root(opt.y, 0.0) : std::numeric_limits<double>::quiet_NaN();
    if (alpha == 0.0) {
        opt.phase = 0.0;
        opt.qfi = qfi_case_b_exact(alpha, 0.0, n_spins, theta, zenith, azimuth, nu);
        return opt;
    }
    const double at_pi = qfi_case_b_exact(alpha, kPi, n_spins, theta, zenith, azimuth, nu);
    const double at_zero = qfi_case_b_exact(alpha, 0.0, n_spins, theta, zenith, azimuth, nu);
    opt.phase = at_pi >= at_zero ? kPi : 0.0;
    opt.qfi = std::max(at_pi, at_zero);
    return opt;
}

double qfi_case_b_long_time(double alpha) {
    check_alpha(alpha);
    return 4.0 + 24.0 * alpha * alpha + 8.0 * odd_cat_excess(alpha);
}

double metrological_gain(double qfi) {
    if (!(qfi > 0.0)) {
        throw InvalidArgument("metrological gain needs F > 0");
    }
    return qfi / 4.0;
}

double coherence_decay(double kappa, double t, cplx alpha1, cplx alpha2) {
    if (!(kappa >= 0.0) || !(t >= 0.0)) {
        throw InvalidArgument("kappa and t must be >= 0");
    }
    return std::exp(-0.5 * kappa * t * std::norm(alpha1 - alpha2));
}

QfiReport report_case_a(double alpha, double phase, int n_spins, double theta) {
    QfiReport r;
    r.qfi = qfi_case_a(alpha, phase, n_spins, theta);
    r.optical = boson::cat_moments(alpha, phase);
    const spin::AtomicKind ground = spin::CollectiveGround{};
    r.atomic_char1 = spin::atomic_expectation(n_spins, ground, theta);
    r.atomic_char2 = spin::atomic_expectation(n_spins, ground, 2.0 * theta);
    return r;
}

QfiReport report_case_b(double alpha, double phase, int n_spins, double theta, double zenith,
                        double azimuth, double nu) {
    QfiReport r;
    r.qfi = qfi_case_b_exact(alpha, phase, n_spins, theta, zenith, azimuth, nu);
    r.optical = boson::cat_moments(alpha, phase);
    const spin::AtomicKind kind = spin::SpinCat{spin::SpinCoherentParams(zenith, azimuth), nu};
    r.atomic_char1 = spin::atomic_expectation(n_spins, kind, theta);
    r.atomic_char2 = spin::atomic_expectation(n_spins, kind, 2.0 * theta);
    return r;
}

}  // namespace cavqfi::analytic
