#include <random>

#include <Eigen/Eigenvalues>
#include <doctest.h>

#include "swanson/error.hpp"
#include "swanson/fock_oracle.hpp"
#include "swanson/iho.hpp"

using namespace swanson;

namespace {

double maxabs(const DenseMatrix& m) { return m.cwiseAbs().maxCoeff(); }

DenseMatrix random_hermitian(std::mt19937_64& g, std::size_t n) {
  std::normal_distribution<double> u;
  DenseMatrix m(n, n);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = Complex(u(g), u(g));
  return 0.5 * (m + m.adjoint());
}

}  // namespace

TEST_CASE("operators: commutator, moments, hermiticity") {
  const FockBasis b{20, 1.3};
  const DenseMatrix a = ladder_lower(b).dense();
  const DenseMatrix c = a * a.adjoint() - a.adjoint() * a;
  for (Eigen::Index i = 0; i < 19; ++i) CHECK(std::abs(c(i, i) - 1.0) < 1e-14);
  CHECK(std::abs(c(19, 19) + 19.0) < 1e-12);
  const DenseMatrix x2 = position_sq(b).dense();
  CHECK(std::abs(x2(0, 0) - 0.5 * 1.3 * 1.3) < 1e-15);
  // exact truncations agree with products away from the edge
  const DenseMatrix x = position(b).dense(), p = momentum(b).dense();
  CHECK(maxabs((x * x - x2).topLeftCorner(19, 19)) < 1e-13);
  CHECK(maxabs((p * p - momentum_sq(b).dense()).topLeftCorner(19, 19)) < 1e-13);
  CHECK(maxabs((x * p + p * x - xp_plus_px(b).dense()).topLeftCorner(19, 19)) < 1e-13);
  CHECK_THROWS_AS(ladder_lower({1, 1.0}), Error);
}

TEST_CASE("build_operators: H_c, hermiticity, spectrum of the image") {
  const SwansonParams p{1.0, 0.2, 0.3};
  const OperatorSet s = build_operators(80, p);
  CHECK(maxabs(s.h_c.dense() - s.h_sw.dense().adjoint()) == 0.0);
  const OperatorSet sym = build_operators(30, {1.0, 0.25, 0.25});
  CHECK(maxabs(sym.h_sw.dense() - sym.h_sw.dense().adjoint()) == 0.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(s.h0.dense());
  const double om = std::sqrt(0.76);
  for (int n = 0; n <= 20; ++n) CHECK(std::abs(es.eigenvalues()(n) - om * (n + 0.5)) < 1e-10);
}

TEST_CASE("build_operators: u, v conventions give the same number operator") {
  const SwansonParams p{1.0, -1.0, -1.0};
  const OperatorSet a = build_operators(40, p, UvConvention::PlusP);
  const OperatorSet b = build_operators(40, p, UvConvention::MinusP);
  REQUIRE(a.uv_number);
  REQUIRE(b.uv_number);
  CHECK(maxabs(a.uv_number->dense() - b.uv_number->dense()) < 1e-13);
  CHECK(maxabs(a.u->dense() - b.v->dense()) < 1e-15);
  CHECK_FALSE(build_operators(10, {1.0, 0.2, 0.3}).u);
}

TEST_CASE("thermal_state") {
  const FockBasis b{60, 1.0};
  const DenseMatrix h0 = oscillator(b, 1.0, 1.0).dense();
  const DensityMatrix r = thermal_state(h0, 1.0);
  CHECK(std::abs(r.trace() - 1.0) < 1e-14);
  CHECK(std::abs((r.rho * h0).trace() - 0.5 / std::tanh(0.5)) < 1e-12);
  CHECK(std::abs((r.rho * r.rho).trace() - std::tanh(0.5)) < 1e-12);
  const DensityMatrix g = thermal_state(h0, 1e3);
  CHECK(std::abs(g.rho(0, 0) - 1.0) < 1e-14);
  CHECK(maxabs(g.rho) - 1.0 < 1e-14);
  DenseMatrix bad = h0;
  bad(0, 1) += 0.1;
  CHECK_THROWS_AS(thermal_state(bad, 1.0), Error);
  CHECK_THROWS_AS(thermal_state(h0, -1.0), Error);
}

TEST_CASE("propagate: static generator, drift and stability guard") {
  const FockBasis b{30, 1.0};
  const BandedOperator h0 = oscillator(b, 1.0, 1.0);
  const DensityMatrix r0 = thermal_state(h0, 1.0);
  const std::vector<double> grid{0.0, 0.5, 1.0};
  // h0 commutes with its thermal state
  const Trajectory tr = propagate(r0, [&](double, BandedOperator& h) { h = h0; }, grid, 0.01);
  REQUIRE(tr.states.size() == 3);
  CHECK(maxabs(tr.states[2].rho - r0.rho) < 1e-10);
  CHECK(tr.stats.max_trace_drift < 1e-12);
  CHECK(tr.stats.steps == 100);

  const BandedOperator x2 = position_sq(b);
  auto driven = [&](double t, BandedOperator& h) { h = h0 + Complex(0.3 * std::cos(t)) * x2; };
  const Trajectory d = propagate(r0, driven, grid, 0.01);
  CHECK(d.stats.max_trace_drift < 1e-9);
  CHECK(d.stats.max_hermiticity_error < 1e-10);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(d.states.back().rho);
  CHECK(es.eigenvalues().minCoeff() >= -1e-9);

  try {
    propagate(r0, driven, grid, 0.5);
    FAIL("expected StepTooLarge");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::StepTooLarge);
  }
  const std::vector<double> bad{1.0, 0.0};
  CHECK_THROWS_AS(propagate(r0, driven, bad, 0.01), Error);
}

TEST_CASE("propagate: fourth-order convergence") {
  const FockBasis b{20, 1.0};
  const BandedOperator h0 = oscillator(b, 1.0, 1.0), x2 = position_sq(b);
  const DensityMatrix r0 = thermal_state(h0, 1.0);
  auto driven = [&](double t, BandedOperator& h) { h = h0 + Complex(0.2 * std::cos(1.3 * t)) * x2; };
  const std::vector<double> grid{0.0, 2.0};
  auto final_x2 = [&](double dt) {
    return expectation(propagate(r0, driven, grid, dt).states.back().rho, x2);
  };
  const Complex ref = final_x2(0.0025);
  const double e1 = std::abs(final_x2(0.04) - ref), e2 = std::abs(final_x2(0.02) - ref);
  CHECK(e1 / e2 > 12.0);
  CHECK(e1 / e2 < 20.0);
}

TEST_CASE("expectation matches the dense trace") {
  std::mt19937_64 g(8);
  const DenseMatrix rho = random_hermitian(g, 12);
  const BandedOperator x2 = position_sq({12, 0.8});
  CHECK(std::abs(expectation(rho, x2) - (rho * x2.dense()).trace()) < 1e-12);
}

TEST_CASE("spectral_intensity") {
  const FockBasis b{40, 1.0};
  const DenseMatrix h0 = oscillator(b, 1.0, 1.0).dense(), x = position(b).dense();
  SUBCASE("zero temperature: one line at -Omega") {
    const auto lines = spectral_intensity(x, x, h0, 1e3);
    double total = 0.0;
    const SpectralLine* best = nullptr;
    for (const auto& l : lines) {
      total += std::abs(l.weight);
      if (!best || std::abs(l.weight) > std::abs(best->weight)) best = &l;
    }
    CHECK(std::abs(best->omega + 1.0) < 1e-12);
    CHECK(std::abs(best->weight - 0.5) < 1e-12);
    CHECK(total - std::abs(best->weight) < 1e-12);
  }
  SUBCASE("identity operators") {
    const DenseMatrix id = DenseMatrix::Identity(40, 40);
    const auto lines = spectral_intensity(id, id, h0, 1.0);
    int nonzero = 0;
    for (const auto& l : lines)
      if (std::abs(l.weight) > 1e-14) {
        ++nonzero;
        CHECK(std::abs(l.omega) < 1e-9);
        CHECK(std::abs(l.weight - 1.0) < 1e-12);
      }
    CHECK(nonzero == 1);
  }
  SUBCASE("KMS line by line") {
    for (double beta : {0.5, 1.0, 2.0}) {
      const auto j = spectral_intensity(x, x, h0, beta, Ordering::AB);
      const auto jp = spectral_intensity(x, x, h0, beta, Ordering::BA);
      REQUIRE(j.size() == jp.size());
      for (std::size_t k = 0; k < j.size(); ++k) {
        CHECK(j[k].omega == jp[k].omega);
        const Complex r = std::exp(beta * j[k].omega) * j[k].weight;
        CHECK(std::abs(jp[k].weight - r) <= 1e-12 * std::max(std::abs(r), std::abs(jp[k].weight)));
      }
    }
  }
}

TEST_CASE("gauge_check") {
  CHECK(gauge_check({1.0, 0.25, 0.25}, std::nullopt, 0.0) < 1e-10);
  CHECK(gauge_check({1.0, 0.2, 0.3}, std::nullopt, 0.0) < 1e-6);
  CHECK(gauge_check({1.0, 0.2, 0.3, 1.5}, std::nullopt, 0.0) < 1e-6);
  // without the guard band the cut pollutes the whole block
  CHECK(gauge_check({1.0, 0.2, 0.3}, std::nullopt, 0.0, {80, 8, 0}) > 1.0);
  CHECK_THROWS_AS(gauge_check({1.0, 0.2, 0.3}, std::nullopt, 0.0, {8, 8, 48}), Error);
}

TEST_CASE("gauge_check: example-2 gauge residuals are finite under both variants") {
  const SwansonParams p{1.0, 0.2, 0.1};
  for (auto variant : {DriveVariant::Printed, DriveVariant::Rescaled}) {
    const auto d = MathieuDrive::from_model(p.alpha - p.gamma, 0.16, 1.0, variant);
    const double r = gauge_check(p, d, 0.5);
    CHECK(std::isfinite(r));
    MESSAGE(std::string(variant == DriveVariant::Printed ? "printed" : "rescaled")
            << " residual " << r);
  }
}

TEST_CASE("trace_check") {
  const SwansonParams sym{1.0, 0.25, 0.25};
  const DenseMatrix x2 = build_operators(40, sym).x2.dense();
  TracePair t = trace_check(sym, 1.0, x2);
  CHECK(std::abs(t.lhs - t.rhs) < 1e-12);
  const SwansonParams p{1.0, 0.2, 0.3};
  t = trace_check(p, 1.0, build_operators(80, p).x2.dense());
  CHECK(std::abs(t.lhs - t.rhs) <= 1e-10 * std::abs(t.rhs));
  std::mt19937_64 g(21);
  for (int k = 0; k < 10; ++k) {
    const DenseMatrix o = random_hermitian(g, 80);
    t = trace_check(p, 1.0, o);
    CHECK(std::abs(t.lhs - t.rhs) <= 1e-10 * std::max(1.0, std::abs(t.rhs)));
  }
  CHECK_THROWS_AS(trace_check({1.0, -1.0, -1.0}, 1.0, x2), Error);
}

TEST_CASE("resonant sums") {
  const double w = 1.0, beta = kPi;
  const ResonantSum r = resonant_partition_sum_detail(w, beta, 40'000'000, 1e-6);
  CHECK(std::abs(r.extrapolated - Complex(0.0, -0.5)) < 1e-4);
  const Complex twice = resonant_partition_sum(w, beta, 80'000'000, 1e-6);
  CHECK(std::abs(twice - r.extrapolated) < 1e-10);
  const Complex zz = resonant_double_sum(w, 1.3, 4'000'000, 1e-5);
  const double z = partition_reduced(w, 1.3).Z;
  CHECK(std::abs(zz - z) < 1e-4 * z);
  CHECK_THROWS_AS(resonant_partition_sum(w, beta, 10, 0.0), Error);
}
