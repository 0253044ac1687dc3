#pragma once

#include <variant>

#include "cavqfi/linalg.hpp"

// Single cavity mode truncated to Fock levels 0..cutoff.
namespace cavqfi::boson {

/// Largest Poisson tail P(n > cutoff) accepted without an explicit opt-in.
inline constexpr double kTailTolerance = 1e-8;

class FockSpace {
public:
    FockSpace(int cutoff, double target_alpha, bool allow_inadequate = false);

    int cutoff() const { return cutoff_; }
    int dim() const { return cutoff_ + 1; }
    double target_alpha() const { return target_alpha_; }
    /// P(n > cutoff) for a coherent state of amplitude target_alpha.
    double truncation_tail_bound() const { return tail_bound_; }
    /// True when the caller opted in to a cutoff that fails the tail check.
    bool allows_inadequate() const { return allow_inadequate_; }

    const CMatrix& a() const { return a_; }
    const CMatrix& a_dag() const { return a_dag_; }

private:
    int cutoff_;
    double target_alpha_;
    double tail_bound_;
    bool allow_inadequate_;
    CMatrix a_, a_dag_;
};

FockSpace build_fock_space(int cutoff, double target_alpha, bool allow_inadequate = false);

/// ceil(alpha^2 + 10 alpha + 20).
int default_cutoff(double alpha);

/// P(n > cutoff) for a Poisson distribution of the given mean, summed in the
/// log domain.
double poisson_tail(double mean, int cutoff);

struct Coherent {
    double alpha = 0.0;
};

/// (|alpha> + e^{i phase}|-alpha>) / sqrt(2 (1 + e^{-2 alpha^2} cos phase))
struct EvenOddCat {
    double alpha = 0.0;
    double phase = 0.0;
};

struct Fock {
    int n = 0;
};

using OpticalKind = std::variant<Coherent, EvenOddCat, Fock>;

struct OpticalState {
    OpticalKind kind;
    CVector vector;
    /// 1 - ||unrenormalized truncated vector||^2.
    double norm_deficit = 0.0;
};

OpticalState coherent_state(const FockSpace& space, double alpha);
OpticalState cat_state(const FockSpace& space, double alpha, double phase);
OpticalState fock_state(const FockSpace& space, int n);

struct OpticalMoments {
    cplx mean_a{0.0, 0.0};
    cplx mean_a2{0.0, 0.0};
    double mean_n = 0.0;
};

/// 1 + e^{-2 alpha^2} cos(phase), computed without cancellation near the odd
/// cat at small alpha.
double cat_norm_factor(double alpha, double phase);

/// Closed-form <a>, <a^2>, <a^dag a> of the even/odd cat with real alpha.
/// Throws DegenerateState when cat_norm_factor < 1e-14.
OpticalMoments cat_moments(double alpha, double phase);

/// Closed-form moments of any supported optical state.
OpticalMoments optical_moments(const OpticalKind& kind);

/// <a>, <a^2>, <a^dag a> evaluated on a truncated vector.
OpticalMoments numeric_moments(const FockSpace& space, const CVector& vector);

/// exp(beta a^dag - conj(beta) a) on the truncated space. The displaced
/// target amplitude |target_alpha| + |beta| must keep the Poisson tail within
/// kTailTolerance unless allow_inadequate is set.
CMatrix displacement_operator(const FockSpace& space, cplx beta, bool allow_inadequate = false);

}  // namespace cavqfi::boson
