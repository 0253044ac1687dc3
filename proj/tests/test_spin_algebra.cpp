#include <cmath>

#include "cavqfi/errors.hpp"
#include "cavqfi/spin_algebra.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cavqfi;
using namespace cavqfi::spin;

TEST_SUITE("spin_algebra") {

TEST_CASE("spin matrices match the ladder construction and algebra") {
    for (int n = 1; n <= 9; ++n) {
        const SpinSpace s(n);
        const oracles::LadderSpin ref = oracles::ladder_spin(n);
        CHECK(s.dim() == n + 1);
        CHECK(max_abs(s.sx() - ref.sx) < 1e-13);
        CHECK(max_abs(s.sy() - ref.sy) < 1e-13);
        CHECK(max_abs(s.sz() - ref.sz) < 1e-13);
        const CMatrix comm = s.sx() * s.sy() - s.sy() * s.sx();
        CHECK(max_abs(comm - kI * s.sz()) < 1e-12);
        const double j = 0.5 * n;
        const CMatrix casimir = s.sx() * s.sx() + s.sy() * s.sy() + s.sz() * s.sz();
        CHECK(max_abs(casimir - j * (j + 1.0) * CMatrix::Identity(n + 1, n + 1)) < 1e-11);
    }
}

TEST_CASE("spin space rejects bad sizes") {
    CHECK_THROWS_AS(SpinSpace(0), InvalidArgument);
    CHECK_THROWS_AS(SpinSpace(-3), InvalidArgument);
    CHECK_THROWS_AS(SpinSpace(11, 10), InvalidArgument);
    CHECK_NOTHROW(SpinSpace(10, 10));
}

TEST_CASE("coherent parameters fold onto the sphere") {
    const SpinCoherentParams p(1.5 * oracles::kPi, 0.25);
    CHECK(p.zenith() == doctest::Approx(0.5 * oracles::kPi));
    CHECK(p.azimuth() == doctest::Approx(0.25 + oracles::kPi));
    const SpinCoherentParams q(0.7, -0.5);
    CHECK(q.azimuth() == doctest::Approx(2.0 * oracles::kPi - 0.5));
    const cplx eta = SpinCoherentParams(0.8, 0.3).eta();
    CHECK(std::abs(eta - (-std::polar(1.0, -0.3) * std::tan(0.4))) < 1e-14);
    const SpinCoherentParams neg = SpinCoherentParams(0.8, 0.3).negated();
    CHECK(std::abs(neg.eta() + eta) < 1e-14);
}

TEST_CASE("rotation operator matches the Pade exponential") {
    for (int n : {1, 4, 7}) {
        const SpinSpace s(n);
        for (double z : {0.3, 1.9, 3.0}) {
            for (double a : {0.0, 1.1, 4.0}) {
                const oracles::Mat gen = cplx(0.0, z) * (s.sx() * std::sin(a) - s.sy() * std::cos(a));
                CHECK(max_abs(rotation_operator(s, z, a) - oracles::expm(gen)) < 1e-12);
            }
        }
    }
}

TEST_CASE("coherent vector equals the rotated ground state") {
    for (int n : {1, 2, 5, 10}) {
        const SpinSpace s(n);
        CVector ground = CVector::Zero(n + 1);
        ground(0) = 1.0;
        for (double z : {0.0, 0.4, 1.5707963267948966, 2.6, 3.141592653589793}) {
            for (double a : {0.0, 0.9, 3.7}) {
                const CVector want = rotation_operator(s, z, a) * ground;
                const CVector got = spin_coherent_vector(n, SpinCoherentParams(z, a));
                CHECK((got - want).norm() < 1e-12);
            }
        }
    }
}

TEST_CASE("exp(-i theta Sx) ground state carries sqrt-binomial amplitudes") {
    // <k| e^{-i th Sx} |0> = sqrt(C(N,k)) cos^{N-k}(th/2) (-i sin(th/2))^k
    for (int n : {3, 8}) {
        const SpinSpace s(n);
        for (double th : {0.2, 1.3, 2.9}) {
            const oracles::Mat u = oracles::expm(cplx(0.0, -th) * oracles::Mat(s.sx()));
            for (int k = 0; k <= n; ++k) {
                const double binom = std::tgamma(n + 1.0) / (std::tgamma(k + 1.0) * std::tgamma(n - k + 1.0));
                const cplx want = std::sqrt(binom) * std::pow(std::cos(th / 2), n - k) *
                                  std::pow(cplx(0.0, -std::sin(th / 2)), k);
                CHECK(std::abs(u(k, 0) - want) < 1e-12);
            }
        }
    }
}

TEST_CASE("coherent vectors stay normalized at very large N") {
    for (int n : {1000, 200000}) {
        const CVector v = spin_coherent_vector(n, SpinCoherentParams(1.2, 0.4));
        CHECK(std::abs(v.norm() - 1.0) < 1e-9);
        CHECK(v.allFinite());
    }
}

TEST_CASE("antipodal overlap is cos^N of the zenith") {
    for (int n : {1, 4, 9}) {
        for (double z : {0.3, 1.2, 2.5}) {
            const SpinCoherentParams p(z, 0.7);
            const cplx overlap =
                spin_coherent_vector(n, p).dot(spin_coherent_vector(n, p.negated()));
            CHECK(std::abs(overlap - std::pow(std::cos(z), n)) < 1e-13);
        }
    }
}

TEST_CASE("spin cat normalization and degeneracy") {
    const SpinCoherentParams p(0.9, 0.3);
    for (int n : {1, 2, 6}) {
        const AtomicState cat = spin_cat_state(n, p, 1.1);
        CHECK(std::abs(cat.vector.norm() - 1.0) < 1e-13);
        CHECK(spin_cat_norm_squared(n, p, 1.1) ==
              doctest::Approx(2.0 * (1.0 + std::cos(1.1) * std::pow(std::cos(0.9), n))));
    }
    // The ground state is its own antipode, so nu = pi cancels it exactly.
    CHECK_THROWS_AS(spin_cat_state(3, SpinCoherentParams(0.0, 0.0), oracles::kPi), DegenerateState);
    // Same state built from the space overload.
    const SpinSpace s(4);
    CHECK((spin_cat_state(s, p, 0.4).vector - spin_cat_state(4, p, 0.4).vector).norm() < 1e-14);
}

TEST_CASE("same/cross closed forms match matrix sandwiches") {
    for (int n : {1, 3, 6}) {
        const SpinSpace s(n);
        const oracles::Mat sx = s.sx();
        for (double z : {0.4, 1.7}) {
            for (double a : {0.2, 2.2}) {
                const SpinCoherentParams p(z, a);
                const CVector up = spin_coherent_vector(n, p);
                const CVector down = spin_coherent_vector(n, p.negated());
                for (double lt : {0.3, 1.4}) {
                    for (int sign : {1, -1}) {
                        const oracles::Mat u = oracles::expm(cplx(0.0, 2.0 * sign * lt) * sx);
                        CHECK(std::abs(atomic_char_same(p, n, lt, sign) - up.dot(u * up)) < 1e-12);
                        CHECK(std::abs(atomic_char_cross(p, n, lt, sign) - up.dot(u * down)) < 1e-12);
                    }
                }
            }
        }
    }
    CHECK_THROWS_AS(atomic_char_same(SpinCoherentParams(), 2, 0.1, 0), InvalidArgument);
    CHECK_THROWS_AS(atomic_char_cross(SpinCoherentParams(), 2, 0.1, 2), InvalidArgument);
}

TEST_CASE("atomic expectations for ground and spin cat") {
    for (int n : {1, 5}) {
        const SpinSpace s(n);
        const oracles::Mat sx = s.sx();
        for (double zt : {0.0, 0.8, -2.3, 5.0}) {
            const oracles::Mat u = oracles::expm(cplx(0.0, zt) * sx);
            CHECK(std::abs(atomic_expectation(collective_ground(n), zt) - std::pow(std::cos(zt / 2), n)) <
                  1e-14);
            CHECK(std::abs(atomic_expectation(collective_ground(n), zt) - u(0, 0)) < 1e-12);
            const AtomicState cat = spin_cat_state(n, SpinCoherentParams(0.9, 0.3), 1.1);
            CHECK(std::abs(atomic_expectation(cat, zt) - cat.vector.dot(u * cat.vector)) < 1e-12);
        }
    }
}

}  // TEST_SUITE
