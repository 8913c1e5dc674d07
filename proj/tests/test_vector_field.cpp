#include "cvcorr/vector_field.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace cvcorr;

namespace {

TDoFField make_field(std::complex<double> a, std::complex<double> b,
                     std::complex<double> c, std::complex<double> d) {
    TDoFField f;
    f.amplitudes << a, b, c, d;
    return f;
}

TDoFField random_field(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    TDoFField f;
    for (int i = 0; i < 4; ++i) f.amplitudes(i) = {g(rng), g(rng)};
    return f.normalized();
}

}  // namespace

TEST_CASE("coherence matrix") {
    const CoherenceMatrix4 g = coherence_matrix({TDoFField::radial()});
    g.validate();
    CHECK(g.gamma.trace().real() == doctest::Approx(1.0));
    // rank 1
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(g.gamma);
    CHECK(es.eigenvalues()(3) == doctest::Approx(1.0).epsilon(1e-12));

    // equal mix of two orthogonal product fields -> rank-2 diagonal
    const CoherenceMatrix4 mix = coherence_matrix(
        {make_field(1, 0, 0, 0), make_field(0, 0, 0, 1)}, {0.5, 0.5});
    CHECK(mix.gamma.diagonal().real().sum() == doctest::Approx(1.0));
    CHECK((mix.gamma - mix.gamma.diagonal().asDiagonal().toDenseMatrix())
              .cwiseAbs()
              .maxCoeff() < 1e-14);

    CHECK_THROWS_AS(coherence_matrix({make_field(0, 0, 0, 0)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        coherence_matrix({TDoFField::radial()}, {0.5}), std::invalid_argument);
}

TEST_CASE("entanglement degree") {
    CHECK(entanglement_degree_sq(coherence_matrix({TDoFField::radial()})) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(entanglement_degree(coherence_matrix({make_field(1, 0, 0, 0)})) ==
          doctest::Approx(0.0).epsilon(1e-12));
    const TDoFField f =
        make_field(std::sqrt(0.8), 0.0, 0.0, std::sqrt(0.2));
    CHECK(entanglement_degree_sq(coherence_matrix({f})) ==
          doctest::Approx(0.64).epsilon(1e-12));
    CHECK(entanglement_degree(coherence_matrix({f})) ==
          doctest::Approx(0.8).epsilon(1e-12));
    // same for either reduction
    CHECK(entanglement_degree_sq(coherence_matrix({f}), 1) ==
          doctest::Approx(0.64).epsilon(1e-12));
}

TEST_CASE("polarization degree") {
    CHECK(polarization_degree(coherence_matrix({TDoFField::radial()})) ==
          doctest::Approx(0.0).epsilon(1e-12));
    // uniform H-polarized field
    CHECK(polarization_degree(coherence_matrix(
              {make_field(1 / std::sqrt(2.0), 0, 1 / std::sqrt(2.0), 0)})) ==
          doctest::Approx(1.0).epsilon(1e-12));
    const TDoFField f = make_field(std::sqrt(0.8), 0, 0, std::sqrt(0.2));
    CHECK(polarization_degree(coherence_matrix({f})) ==
          doctest::Approx(0.6).epsilon(1e-10));
}

TEST_CASE("coherence and predictability") {
    // identical beams at both points
    const TDoFField same = make_field(0.5, 0.5, 0.5, 0.5);
    const auto cp = coherence_and_predictability(coherence_matrix({same}));
    CHECK(std::abs(cp.mu) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cp.delta == doctest::Approx(0.0).epsilon(1e-12));

    const auto bell = coherence_and_predictability(
        coherence_matrix({TDoFField::radial()}));
    CHECK(std::abs(bell.mu) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(bell.delta == doctest::Approx(0.0).epsilon(1e-12));

    CHECK_THROWS_AS(coherence_and_predictability(
                        coherence_matrix({make_field(1, 0, 0, 0)})),
                    std::invalid_argument);
}

TEST_CASE("schmidt weight and concurrence") {
    CHECK(schmidt_weight(make_field(1, 0, 0, 0)) == doctest::Approx(1.0));
    CHECK(schmidt_weight(TDoFField::radial()) == doctest::Approx(2.0));
    CHECK(schmidt_weight(make_field(std::sqrt(0.8), 0, 0, std::sqrt(0.2))) ==
          doctest::Approx(1.0 / 0.68).epsilon(1e-12));

    CHECK(concurrence(TDoFField::radial()) == doctest::Approx(1.0));
    CHECK(concurrence(make_field(1, 0, 0, 0)) == doctest::Approx(0.0));
    CHECK(concurrence(make_field(std::sqrt(0.8), 0, 0, std::sqrt(0.2))) ==
          doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("pure-field identities on random fields") {
    std::mt19937_64 rng(9);
    for (int k = 0; k < 1000; ++k) {
        const TDoFField f = random_field(rng);
        const CoherenceMatrix4 g = coherence_matrix({f});
        const double p = polarization_degree(g);
        const double c = concurrence(f);
        const double e2 = entanglement_degree_sq(g);
        const double kw = schmidt_weight(f);
        CHECK(std::abs(p * p + c * c - 1.0) < 1e-10);
        CHECK(std::abs(p - std::sqrt(1.0 - e2)) < 1e-10);
        CHECK(verify_entanglement_identity(f) < 1e-10);
        CHECK(std::abs(p * p - (1.0 - 2.0 * (1.0 - 1.0 / kw))) < 1e-10);
    }
}

TEST_CASE("entanglement degree is invariant under local unitaries") {
    std::mt19937_64 rng(13);
    std::normal_distribution<double> g;
    for (int k = 0; k < 100; ++k) {
        const TDoFField f = random_field(rng);
        const double e = entanglement_degree(coherence_matrix({f}));

        // random Jones unitary on polarization, rotation on the spatial pair
        Eigen::Matrix2cd z;
        for (int i = 0; i < 4; ++i) z(i / 2, i % 2) = {g(rng), g(rng)};
        const Eigen::Matrix2cd q =
            Eigen::HouseholderQR<Eigen::Matrix2cd>(z).householderQ();
        TDoFField fp = f, fs = f;
        for (int s = 0; s < 2; ++s) {
            fp.amplitudes(2 * s) = q(0, 0) * f.amplitudes(2 * s) +
                                   q(0, 1) * f.amplitudes(2 * s + 1);
            fp.amplitudes(2 * s + 1) = q(1, 0) * f.amplitudes(2 * s) +
                                       q(1, 1) * f.amplitudes(2 * s + 1);
        }
        for (int p = 0; p < 2; ++p) {
            fs.amplitudes(p) =
                q(0, 0) * f.amplitudes(p) + q(0, 1) * f.amplitudes(2 + p);
            fs.amplitudes(2 + p) =
                q(1, 0) * f.amplitudes(p) + q(1, 1) * f.amplitudes(2 + p);
        }
        CHECK(entanglement_degree(coherence_matrix({fp})) ==
              doctest::Approx(e).epsilon(1e-10));
        CHECK(entanglement_degree(coherence_matrix({fs})) ==
              doctest::Approx(e).epsilon(1e-10));
    }
}

TEST_CASE("tdof stokes") {
    const TDoFStokes s = tdof_stokes(coherence_matrix({TDoFField::radial()}));
    Eigen::Matrix4d expect = Eigen::Vector4d(1, 1, -1, 1).asDiagonal();
    CHECK((s.s - expect).cwiseAbs().maxCoeff() < 1e-12);

    CoherenceMatrix4 mixed;
    mixed.gamma = 0.25 * Eigen::Matrix4cd::Identity();
    const TDoFStokes sm = tdof_stokes(mixed);
    CHECK(sm.s(0, 0) == doctest::Approx(1.0));
    CHECK(sm.s.cwiseAbs().sum() == doctest::Approx(1.0));

    // product field: S_jk is the outer product of the two cebit Stokes vectors
    const TDoFField prod = make_field(1, 0, 0, 0);  // psi10, H
    const TDoFStokes sp = tdof_stokes(coherence_matrix({prod}));
    const Eigen::Vector4d pol(1, 1, 0, 0), spa(1, 1, 0, 0);
    CHECK((sp.s - pol * spa.transpose()).cwiseAbs().maxCoeff() < 1e-12);

    // round trip
    std::mt19937_64 rng(31);
    for (int k = 0; k < 50; ++k) {
        const CoherenceMatrix4 g =
            coherence_matrix({random_field(rng), random_field(rng)}, {0.4, 0.6});
        const CoherenceMatrix4 back = tdof_stokes_inverse(tdof_stokes(g));
        CHECK((back.gamma - g.gamma).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("mueller of jones and cloude") {
    const MuellerMatrix ident = mueller_of_jones(Eigen::Matrix2cd::Identity());
    CHECK(ident.m.isApprox(Eigen::Matrix4d::Identity(), 1e-12));

    Eigen::Matrix2cd hpol = Eigen::Matrix2cd::Zero();
    hpol(0, 0) = 1.0;
    const MuellerMatrix mp = mueller_of_jones(hpol);
    Eigen::Matrix4d expect = Eigen::Matrix4d::Zero();
    expect(0, 0) = expect(0, 1) = expect(1, 0) = expect(1, 1) = 0.5;
    CHECK((mp.m - expect).cwiseAbs().maxCoeff() < 1e-12);

    // unphysical: flipping S0 sign
    MuellerMatrix bad;
    bad.m = -Eigen::Matrix4d::Identity();
    CHECK_THROWS_AS(cloude_decompose(bad), std::invalid_argument);
}

TEST_CASE("apply mueller") {
    const CoherenceMatrix4 probe = coherence_matrix({TDoFField::radial()});
    MuellerMatrix ident;
    const CoherenceMatrix4 same = apply_mueller(probe, ident);
    CHECK((same.gamma - probe.gamma).cwiseAbs().maxCoeff() < 1e-12);

    Eigen::Matrix2cd hpol = Eigen::Matrix2cd::Zero();
    hpol(0, 0) = 1.0;
    const CoherenceMatrix4 hout = apply_mueller(probe, mueller_of_jones(hpol));
    // output supported on H polarization only: V rows/cols vanish
    for (int s = 0; s < 2; ++s)
        for (int t = 0; t < 4; ++t) {
            CHECK(std::abs(hout.gamma(2 + s, t)) < 1e-14);
            CHECK(std::abs(hout.gamma(t, 2 + s)) < 1e-14);
        }

    // depolarizer diag(1,d,d,d) shrinks P by d on a polarized uniform input
    MuellerMatrix dep;
    dep.m = Eigen::Vector4d(1, 0.4, 0.4, 0.4).asDiagonal();
    const CoherenceMatrix4 hfield =
        coherence_matrix({make_field(1 / std::sqrt(2.0), 0, 1 / std::sqrt(2.0), 0)});
    const double p_out = polarization_degree(apply_mueller(hfield, dep));
    CHECK(p_out == doctest::Approx(0.4).epsilon(1e-10));
}

TEST_CASE("single-shot mueller recovery") {
    const CoherenceMatrix4 probe = coherence_matrix({TDoFField::radial()});

    MuellerMatrix ident;
    CHECK(recover_mueller_single_shot(apply_mueller(probe, ident))
              .m.isApprox(Eigen::Matrix4d::Identity(), 1e-10));

    Eigen::Matrix2cd hpol = Eigen::Matrix2cd::Zero();
    hpol(0, 0) = 1.0;
    const MuellerMatrix mp = mueller_of_jones(hpol);
    CHECK((recover_mueller_single_shot(apply_mueller(probe, mp)).m - mp.m)
              .cwiseAbs()
              .maxCoeff() < 1e-10);

    // 20 random physical Mueller matrices: round trip and agreement with the
    // conventional four-probe recovery
    std::mt19937_64 rng(77);
    std::normal_distribution<double> g;
    const std::vector<StokesVector> probes = {
        {{1, 0, 0, 0}}, {{1, 1, 0, 0}}, {{1, 0, 1, 0}}, {{1, 0, 0, 1}}};
    for (int k = 0; k < 20; ++k) {
        Eigen::Matrix4cd x;
        for (int i = 0; i < 16; ++i) x(i / 4, i % 4) = {g(rng), g(rng)};
        Eigen::Matrix4cd t = x * x.adjoint();
        t /= t.trace().real();
        // physical M from a random PSD coherency: mix the four Jones pieces
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(t);
        Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
        for (int i = 0; i < 4; ++i) {
            Eigen::Matrix2cd j;
            const Eigen::Vector4cd v = es.eigenvectors().col(i);
            j << v(0), v(1), v(2), v(3);
            m += es.eigenvalues()(i) * mueller_of_jones(j).m;
        }
        MuellerMatrix mm;
        mm.m = m;
        const MuellerMatrix rec =
            recover_mueller_single_shot(apply_mueller(probe, mm));
        CHECK((rec.m - m).cwiseAbs().maxCoeff() < 1e-8);
        const MuellerMatrix conv = conventional_polarimetry(mm, probes);
        CHECK((conv.m - rec.m).cwiseAbs().maxCoeff() < 1e-8);
    }

    // rank-deficient probe set
    const std::vector<StokesVector> degenerate = {
        {{1, 0, 0, 0}}, {{1, 0, 0, 0}}, {{1, 0, 1, 0}}, {{1, 0, 0, 1}}};
    MuellerMatrix ident2;
    CHECK_THROWS_AS(conventional_polarimetry(ident2, degenerate),
                    std::invalid_argument);
}

TEST_CASE("kinematic sensing") {
    // unobstructed beam: unpolarized
    const KinematicResult open = kinematic_sense(-3.0);
    CHECK(std::abs(open.stokes.s[1] / open.stokes.s[0]) < 5e-3);

    // mirrored edges give mirrored S1 (the half-blocked case sits at S1 = 0)
    const KinematicResult plus = kinematic_sense(0.8);
    const KinematicResult minus = kinematic_sense(-0.8);
    CHECK(plus.stokes.s[1] + minus.stokes.s[1] ==
          doctest::Approx(0.0).epsilon(1e-6));
    const KinematicResult half = kinematic_sense(0.0);
    CHECK(std::abs(half.stokes.s[1] / half.stokes.s[0]) < 1e-10);

    for (double x0 : {-1.0, -0.5, 0.0, 0.3, 1.0}) {
        const KinematicResult r = kinematic_sense(x0);
        CHECK(std::abs(r.x0_hat - x0) < 0.01);
    }

    CHECK_THROWS_AS(kinematic_sense(3.5), std::invalid_argument);
    CHECK_THROWS_AS(kinematic_sense(0.0, 100), std::invalid_argument);
}
