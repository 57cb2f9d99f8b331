#include "capedu/analysis.hpp"
#include "capedu/errors.hpp"
#include "capedu/integrator.hpp"

#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <random>

using namespace capedu;
using doctest::Approx;

namespace {

std::vector<std::complex<double>> eigen_solver(const Matrix& m) {
    Eigen::MatrixXd a(m.dim(), m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j)
            a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
    const Eigen::VectorXcd ev = a.eigenvalues();
    std::vector<std::complex<double>> out(ev.data(), ev.data() + ev.size());
    std::sort(out.begin(), out.end(), [](auto x, auto y) { return x.real() > y.real(); });
    return out;
}

} // namespace

TEST_CASE("equilibrium of the reference parameter set") {
    const EconState eq = equilibrium(testing::fig1());
    const auto ref = oracle::equilibrium_bisection(oracle::kFig1);
    CHECK(testing::rel_diff(eq.K, ref[0]) < 1e-12);
    CHECK(testing::rel_diff(eq.E, ref[1]) < 1e-12);
    // the four-digit values quoted alongside the figure
    CHECK(eq.K == Approx(3.8054).epsilon(1e-4));
    CHECK(eq.E == Approx(0.5708).epsilon(1e-4));
    CHECK(production(testing::fig1(), eq) == Approx(1.4271).epsilon(1e-4));
}

TEST_CASE("equilibrium output for delta_r = 0.15 matches the table's last column") {
    const ModelParams p = testing::fig4();
    const double Y0 = production(p, equilibrium(p));
    CHECK(std::abs(Y0 - 1.79) < 0.01);
    // closed form agrees with the bisection oracle
    const auto ref = oracle::equilibrium_bisection({0.4, 0.1, 0.15, 0.15, 0.2, 0.35});
    CHECK(testing::rel_diff(Y0, oracle::cobb_douglas(0.2, 0.35, ref[0], ref[1])) < 1e-12);
}

TEST_CASE("symmetric investment and decay give K0 = E0") {
    ModelParams p = testing::fig1();
    p.s_k = p.s_r = 0.3;
    p.delta_k = p.delta_r = 0.1;
    const EconState eq = equilibrium(p);
    CHECK(testing::rel_diff(eq.K, eq.E) < 1e-12);
}

TEST_CASE("equilibrium residual over random parameters") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 1000; ++i) {
        const oracle::Params q = oracle::random_params(rng);
        const ModelParams p = testing::to_model(q);
        const EconState eq = equilibrium(p);
        const double Y = production(p, eq);
        // residual relative to the size of each balancing term
        CHECK(std::abs(p.s_k * Y - p.delta_k * eq.K) <= 1e-10 * p.delta_k * eq.K);
        CHECK(std::abs(p.s_r * Y - p.delta_r * eq.E) <= 1e-10 * p.delta_r * eq.E);
        const auto ref = oracle::equilibrium_bisection(q);
        CHECK(testing::rel_diff(eq.K, ref[0]) < 1e-9);
    }
}

TEST_CASE("structurally unstable and degenerate cases") {
    ModelParams p = testing::fig1();
    p.alpha = 0.4;
    p.beta = 0.6;
    CHECK_THROWS_AS(equilibrium(p), StructurallyUnstable);
    CHECK_THROWS_AS(jacobian_basic(p), StructurallyUnstable);
    CHECK_THROWS_AS(eigen_basic(p), StructurallyUnstable);
    p = testing::fig1();
    p.s_k = 0.0;
    CHECK_THROWS_AS(equilibrium(p), DomainError);
}

TEST_CASE("Jacobian at the critical point") {
    const Matrix j = jacobian_basic(testing::fig1());
    CHECK(j(0, 0) == Approx(-0.0975));
    CHECK(j(0, 1) == Approx(0.2));
    CHECK(j(1, 0) == Approx(0.013125));
    CHECK(j(1, 1) == Approx(-0.2));
    CHECK(j.trace() == Approx(-0.2975));
    CHECK(j.determinant() == Approx(0.016875));

    SUBCASE("matches finite differences of the vector field") {
        std::mt19937_64 rng(23);
        for (int i = 0; i < 100; ++i) {
            const oracle::Params q = oracle::random_params(rng);
            const ModelParams p = testing::to_model(q);
            const EconState eq = equilibrium(p);
            const auto fd = oracle::jacobian_fd(oracle::basic_rhs(q), {eq.K, eq.E});
            const Matrix jj = jacobian_basic(p);
            for (std::size_t r = 0; r < 2; ++r)
                for (std::size_t c = 0; c < 2; ++c)
                    CHECK(std::abs(jj(r, c) - fd[r][c]) < 1e-6 * (1.0 + std::abs(fd[r][c])));
        }
    }
}

TEST_CASE("eigenvalues of the basic linearisation") {
    const auto ev = eigen_basic(testing::fig1());
    CHECK(ev[0].real() == Approx(-0.0762823).epsilon(1e-6));
    CHECK(ev[1].real() == Approx(-0.2212177).epsilon(1e-6));
    CHECK(ev[0].imag() == 0.0);
    const auto ref = eigen_solver(jacobian_basic(testing::fig1()));
    CHECK(std::abs(ev[0] - ref[0]) < 1e-12);
    CHECK(std::abs(ev[1] - ref[1]) < 1e-12);
    CHECK(classify(ev) == StabilityClass::StableNode);
}

TEST_CASE("trace and determinant identities over random parameters") {
    std::mt19937_64 rng(29);
    for (int i = 0; i < 1000; ++i) {
        const ModelParams p = testing::to_model(oracle::random_params(rng));
        const auto ev = eigen_basic(p);
        const double tr = (p.alpha - 1.0) * p.delta_r + (p.beta - 1.0) * p.delta_k;
        const double det = (1.0 - p.alpha - p.beta) * p.delta_r * p.delta_k;
        CHECK(testing::rel_diff((ev[0] + ev[1]).real(), tr) < 1e-12);
        CHECK(testing::rel_diff((ev[0] * ev[1]).real(), det) < 1e-12);
        CHECK(ev[0].real() < 0.0);
        CHECK(ev[1].real() < 0.0);
        CHECK(classify(ev) == StabilityClass::StableNode);
        const auto ref = eigen_solver(jacobian_basic(p));
        CHECK(std::abs(ev[0] - ref[0]) < 1e-10);
        CHECK(std::abs(ev[1] - ref[1]) < 1e-10);
    }
}

TEST_CASE("increasing returns give exactly one positive eigenvalue") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 1000; ++i) {
        const ModelParams p = testing::to_model(oracle::random_params(rng, false));
        REQUIRE(p.alpha + p.beta > 1.0);
        const auto ev = eigen_basic(p);
        const int positive = (ev[0].real() > 0.0) + (ev[1].real() > 0.0);
        CHECK(positive == 1);
        CHECK(classify(ev) == StabilityClass::Saddle);
    }
}

TEST_CASE("classification rules") {
    using C = std::complex<double>;
    CHECK(classify(std::vector<C>{{-0.0763, 0}, {-0.2212, 0}}) == StabilityClass::StableNode);
    CHECK(classify(std::vector<C>{{0.1, 0}, {-0.2, 0}}) == StabilityClass::Saddle);
    CHECK(classify(std::vector<C>{{-0.1, 0.3}, {-0.1, -0.3}}) == StabilityClass::StableFocus);
    CHECK(classify(std::vector<C>{{0.1, 0.3}, {0.1, -0.3}}) == StabilityClass::Unstable);
    CHECK(classify(std::vector<C>{{0.1, 0}, {0.2, 0}}) == StabilityClass::Unstable);
    CHECK(classify(std::vector<C>{{0.0, 0}, {-0.2, 0}}) == StabilityClass::Degenerate);
    CHECK(classify(std::vector<C>{{-1e-13, 0}, {-0.2, 0}}) == StabilityClass::Degenerate);
    CHECK(classify(std::vector<C>{{-0.1, 0.3}, {-0.1, -0.3}, {-1.0, 0.0}}) ==
          StabilityClass::StableFocus);
    CHECK_THROWS(classify(std::vector<C>{}));
}

TEST_CASE("controlled equilibrium") {
    const ModelParams p = testing::fig1();
    struct Row {
        double target, s_r, Y0;
    };
    for (const Row& r : {Row{0.4, 0.2, 1.94195}, Row{0.47, 0.13, 1.60357},
                         Row{0.55, 0.05, 1.04871}}) {
        const EquilibriumReport rep = controlled_equilibrium(p, r.target);
        REQUIRE(rep.s_r.has_value());
        CHECK(*rep.s_r == Approx(r.s_r));
        CHECK(rep.Y0 == Approx(r.Y0).epsilon(1e-5));
        REQUIRE(rep.eigenvalues.size() == 3);
        CHECK(rep.classification == StabilityClass::StableNode);

        ModelParams at = p;
        at.s_r = r.s_r;
        const auto two = eigen_basic(at);
        // block-triangular: spectrum is the 2-D one plus -Y0, exactly
        std::vector<std::complex<double>> expected{two[0], two[1], {-rep.Y0, 0.0}};
        for (const auto& z : expected)
            CHECK(std::count(rep.eigenvalues.begin(), rep.eigenvalues.end(), z) == 1);

        const auto ref = eigen_solver(rep.jacobian);
        for (std::size_t i = 0; i < 3; ++i)
            CHECK(std::abs(rep.eigenvalues[i] - ref[i]) < 1e-10);

        // Jacobian agrees with finite differences of the 3-D field at the equilibrium
        const auto fd =
            oracle::jacobian_fd(oracle::controlled_rhs(oracle::kFig1, r.target),
                                {rep.K0, rep.E0, r.s_r});
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                CHECK(std::abs(rep.jacobian(i, j) - fd[i][j]) < 1e-6);
    }
    CHECK(controlled_equilibrium(p, 0.47).eigenvalues.back().real() ==
          Approx(-1.60357).epsilon(1e-5));
    CHECK_THROWS_AS(controlled_equilibrium(p, 0.6), InvalidTarget);
    CHECK_THROWS_AS(controlled_equilibrium(p, 0.0), InvalidTarget);
}

TEST_CASE("invariant manifold") {
    ModelParams p = testing::fig1();
    CHECK_FALSE(invariant_manifold(p).has_value());
    p.delta_k = p.delta_r = 0.2;
    REQUIRE(invariant_manifold(p).has_value());
    CHECK(*invariant_manifold(p) == Approx(4.0));
    p.s_k = p.s_r = 0.2;
    CHECK(*invariant_manifold(p) == Approx(1.0));
}

TEST_CASE("long integration converges to the closed-form equilibrium") {
    const ModelParams p = testing::fig1();
    const EconState eq = equilibrium(p);
    for (const EconState start : {EconState{4.0, 1.0}, EconState{1.0, 1.0}, EconState{8.0, 0.1}}) {
        const RawTrajectory r =
            integrate(make_basic_field(p), {start.K, start.E}, 0.0, 500.0, {}, 500.0);
        CHECK(std::abs(r.back()[0] - eq.K) < 1e-6);
        CHECK(std::abs(r.back()[1] - eq.E) < 1e-6);
    }
}

TEST_CASE("report for the basic system") {
    const EquilibriumReport r = equilibrium_report(testing::fig1());
    CHECK(r.jacobian.dim() == 2);
    CHECK(r.eigenvalues.size() == 2);
    CHECK_FALSE(r.s_r.has_value());
    CHECK(r.Y0 == Approx(1.4271).epsilon(1e-4));
    CHECK(to_string(r.classification) == "StableNode");
}
