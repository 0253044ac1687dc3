#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cavqfi/boson_algebra.hpp"
#include "cavqfi/linalg.hpp"
#include "cavqfi/spin_algebra.hpp"

// Closed-form quantum Fisher information of the time-reversal displacement
// protocol U = exp(i theta a^dag a Sx) D(beta) exp(-i theta a^dag a Sx) for
// product initial states (optical (x) atomic).
namespace cavqfi::analytic {

class ProtocolParams {
public:
    /// mu: coupling rate (rad/s), tau: half-protocol duration (s), beta: the
    /// real displacement being estimated.
    ProtocolParams(double mu, double tau, double beta = 0.0);

    double mu() const { return mu_; }
    double tau() const { return tau_; }
    double theta() const { return theta_; }
    double beta() const { return beta_; }

private:
    double mu_, tau_, theta_, beta_;
};

/// <exp(+-i theta Sx)> and <exp(+-2i theta Sx)> of the atomic state.
struct AtomicCharacteristics {
    cplx plus1{1.0, 0.0};
    cplx minus1{1.0, 0.0};
    cplx plus2{1.0, 0.0};
    cplx minus2{1.0, 0.0};

    /// Fills the minus entries as complex conjugates.
    static AtomicCharacteristics from_plus(cplx plus1, cplx plus2);
    static AtomicCharacteristics from_state(int n_spins, const spin::AtomicKind& kind, double theta);
};

enum class Regime { exact, short_time_asymptotic, long_time_asymptotic };
enum class Provenance { analytic, oracle };

std::string_view to_string(Regime regime);
std::string_view to_string(Provenance provenance);

struct QfiReport {
    double qfi = 0.0;
    boson::OpticalMoments optical;
    cplx atomic_char1{1.0, 0.0};  // <exp(i theta Sx)>
    cplx atomic_char2{1.0, 0.0};  // <exp(2i theta Sx)>
    Regime regime = Regime::exact;
    Provenance provenance = Provenance::analytic;
    double truncation_bound = 0.0;
    std::vector<std::string> warnings;
};

/// Value of an asymptotic formula plus the regime conditions it violated.
struct Flagged {
    double value = 0.0;
    std::vector<std::string> warnings;

    bool in_regime() const { return warnings.empty(); }
};

/// Factorized QFI for a product state:
///   F = 4 [2<n> + 1 - (<a^dag2><e^{2i th Sx}> + <a^2><e^{-2i th Sx}>)
///          + (<a^dag><e^{i th Sx}> - <a><e^{-i th Sx}>)^2]
/// Throws InconsistentMoments if the total carries an imaginary residue above
/// 1e-6 or a variance below -1e-9.
double qfi_general(const boson::OpticalMoments& optical, const AtomicCharacteristics& atomic);

/// Even/odd cat (x) collective ground state.
double qfi_case_a(double alpha, double phase, int n_spins, double theta);

/// y = 1 - 2 cos^{2N}(theta / 2).
double phase_threshold_y(int n_spins, double theta);

/// Root in alpha of the sign function f of dF/dphase at a given phase:
///   sqrt(ln{[-y cos(phase) + sqrt(4(1-y) + y^2 cos^2(phase))] / 2} / 2).
/// NaN where the logarithm is negative (no nonnegative root).
double alpha1_root(double y, double phase);

struct PhaseOptimum {
    double phase = 0.0;      // argmax over the cat phase, in {0, pi}
    double qfi = 0.0;        // qfi_case_a at that phase
    double y = 0.0;
    double alpha1 = 0.0;     // alpha1_root(y, 0); NaN for y > 0
};

/// Maximizes qfi_case_a over the cat phase. dF/dphase = sin(phase) f / (..)^3
/// with f affine in cos(phase), so only phase = 0 and phase = pi can be
/// maxima; ties go to pi. alpha = 0 is the vacuum (phase-independent, F = 4).
PhaseOptimum qfi_case_a_max_phi(double alpha, int n_spins, double theta);

/// 4 + 4 alpha^2 (N theta^2 - 2 + 2 coth alpha^2), theta = mu tau. Flags
/// N theta^2 >= 0.01.
Flagged qfi_case_a_short_time(double alpha, int n_spins, double mu, double tau);
Flagged qfi_case_a_short_time(double alpha, int n_spins, double theta);

/// 4 + 8 alpha^2 [(1 - (-1)^N) / 2 + coth alpha^2].
double qfi_case_a_long_time(double alpha, int n_spins);

/// Short-time case-b maximum with atomic settings zenith = pi/2, azimuth = 0,
/// nu = pi:
///   4 + 4 alpha^2 [2 (1 - e cos p) / (1 + e cos p) + N^2 th^2 - 2
///                  + (N^2 th^2 - 4) (e sin p / (1 + e cos p))^2],  e = exp(-2 alpha^2)
/// Flags N theta^2 >= 0.01 and N^2 theta^2 <= 1.
Flagged qfi_case_b_short_time(double alpha, double phase, int n_spins, double theta);

/// Exact factorized QFI for even/odd cat (x) spin cat.
double qfi_case_b_exact(double alpha, double phase, int n_spins, double theta, double zenith,
                        double azimuth, double nu);

/// Same endpoint search for the spin cat: F depends on the cat phase through
/// the case-a structure with cos^N(theta / 2) replaced by Re<exp(i theta Sx)>.
PhaseOptimum qfi_case_b_max_phi(double alpha, int n_spins, double theta, double zenith,
                                double azimuth, double nu);

/// 4 + 8 alpha^2 (2 + coth alpha^2).
double qfi_case_b_long_time(double alpha);

/// Delta^2 beta_SQL / Delta^2 beta = F / 4.
double metrological_gain(double qfi);

/// exp(-kappa t |alpha1 - alpha2|^2 / 2).
double coherence_decay(double kappa, double t, cplx alpha1, cplx alpha2);

/// alpha^2 coth(alpha^2), the odd-cat photon number; 1 at alpha = 0.
double odd_cat_mean_n(double alpha);
/// alpha^2 (coth(alpha^2) - 1) = 2 alpha^2 / expm1(2 alpha^2); 1 at alpha = 0.
double odd_cat_excess(double alpha);

QfiReport report_case_a(double alpha, double phase, int n_spins, double theta);
QfiReport report_case_b(double alpha, double phase, int n_spins, double theta, double zenith,
                        double azimuth, double nu);

}  // namespace cavqfi::analytic
