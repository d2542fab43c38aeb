#include <doctest.h>

#include <cstring>
#include <random>

#include "oracles.hpp"
#include "sivnuc/csv.hpp"
#include "sivnuc/dynamics.hpp"
#include "sivnuc/spectrum.hpp"
#include "sivnuc/sweep.hpp"

using namespace sivnuc;

namespace {

Mat8 random_hermitian(std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> n(0.0, scale);
  Mat8 a;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) a(i, j) = Complex(n(rng), n(rng));
  return 0.5 * (a + a.adjoint());
}

double angle_deg(const Vec3& a, const Vec3& b) {
  return rad_to_deg(std::acos(std::clamp(a.normalized().dot(b.normalized()), -1.0, 1.0)));
}

SystemConfig random_operating_config(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  SystemConfig c;
  c.field = {0.2 + 6.8 * u(rng), 180.0 * u(rng), 360.0 * u(rng)};
  if (u(rng) < 0.5) c.strain = {300000.0 * (u(rng) - 0.5), 300000.0 * (u(rng) - 0.5)};
  return c;
}

}  // namespace

TEST_SUITE("spectrum") {
  TEST_CASE("scaled identity") {
    const auto s = diagonalize(Mat8::Identity() * 3.25);
    for (double e : s.energies) CHECK(e == doctest::Approx(3.25));
    CHECK((s.vectors.adjoint() * s.vectors - Mat8::Identity()).norm() < 1e-12);
  }

  TEST_CASE("random Hermitian matrices: residuals, orthonormality, reconstruction") {
    std::mt19937_64 rng(21);
    for (int n = 0; n < 200; ++n) {
      const Mat8 h = random_hermitian(rng, 1000.0);
      const auto s = diagonalize(h);
      const double hn = spectral_norm(h);
      for (int i = 0; i < 8; ++i) {
        CHECK((h * s.vectors.col(i) - s.energies[i] * s.vectors.col(i)).norm() <= 1e-9 * hn);
        if (i > 0) CHECK(s.energies[i] >= s.energies[i - 1]);
      }
      CHECK((s.vectors.adjoint() * s.vectors - Mat8::Identity()).norm() <= 1e-10);
      Eigen::Matrix<double, 8, 1> d;
      for (int i = 0; i < 8; ++i) d(i) = s.energies[i];
      const Mat8 back = s.vectors * d.cast<Complex>().asDiagonal() * s.vectors.adjoint();
      CHECK((back - h).norm() <= 1e-9 * h.norm());
      const auto ref = oracle::eigenvalues(h);
      for (int i = 0; i < 8; ++i) CHECK(std::abs(s.energies[i] - ref[i]) <= 1e-9 * hn);
    }
  }

  TEST_CASE("physical spectra agree with the Jacobi oracle and respect spin bounds") {
    std::mt19937_64 rng(22);
    for (int n = 0; n < 300; ++n) {
      const auto c = oracle::random_config(rng);
      const auto s = diagonalize(build_hamiltonian(c).matrix);
      const auto ref = oracle::eigenvalues(oracle::hamiltonian(c));
      for (int i = 0; i < 8; ++i) {
        CHECK(s.energies[i] == doctest::Approx(ref[i]).epsilon(1e-9).scale(1e3));
        CHECK(s.electron_spin[i].norm() <= 0.5 + 1e-10);
        CHECK(s.nuclear_spin[i].norm() <= 0.5 + 1e-10);
        CHECK(std::abs(s.orbital[i]) <= 1.0 + 1e-10);
      }
    }
  }

  TEST_CASE("phase convention: largest component real positive, bit-stable") {
    std::mt19937_64 rng(23);
    for (int n = 0; n < 50; ++n) {
      const Mat8 h = build_hamiltonian(oracle::random_config(rng)).matrix;
      const auto a = diagonalize(h);
      const auto b = diagonalize(h);
      CHECK(std::memcmp(a.vectors.data(), b.vectors.data(), sizeof(Complex) * 64) == 0);
      CHECK(std::memcmp(a.energies.data(), b.energies.data(), sizeof(double) * 8) == 0);
      for (int i = 0; i < 8; ++i) {
        const double peak = a.vectors.col(i).cwiseAbs().maxCoeff();
        int k = 0;
        while (std::abs(a.vectors(k, i)) < peak - 1e-12) ++k;
        CHECK(a.vectors(k, i).imag() == 0.0);
        CHECK(a.vectors(k, i).real() > 0.0);
      }
    }
  }

  TEST_CASE("hyperfine field magnitude with the field along the symmetry axis") {
    const PhysicalConstants k;
    CHECK(hyperfine_field(k, Vec3(0, 0, 0.5)).norm() == doctest::Approx(k.A_par / (2 * 8.46)));
    for (double b : {0.5, 1.0, 2.0, 3.0, 6.0}) {
      const auto p = analyze(SystemConfig{}.with_field(b, 0.0), TransitionKind::SpinOrbitSeparated);
      CHECK(std::abs(p.geometry.hyperfine_alpha.norm() - 4.14) <= 0.02 * 4.14);
      CHECK(std::abs(p.geometry.hyperfine_beta.norm() - 4.14) <= 0.02 * 4.14);
    }
  }

  TEST_CASE("set-point A geometry") {
    const auto sp = setpoint_A();
    const auto p = analyze(sp.config, sp.transition);
    CHECK(p.transition.label == "omega1");
    CHECK(std::abs(p.geometry.delta_theta_deg - 120.0) <= 1.0);
    CHECK(p.transition.frequency_MHz > 0.0);
    // same orbital branch, opposite electron spin
    CHECK(p.transition.lower_doublet.orbital * p.transition.upper_doublet.orbital > 0.0);
    CHECK(p.transition.lower_doublet.electron_spin.dot(p.transition.upper_doublet.electron_spin) < 0.0);
    CHECK(p.geometry.period_alpha_ns * p.geometry.f_alpha == doctest::Approx(1000.0));
    CHECK(p.geometry.period_beta_ns * p.geometry.f_beta == doctest::Approx(1000.0));
  }

  TEST_CASE("set-point B geometry") {
    const auto sp = setpoint_B();
    CHECK(sp.config.strain.alpha == kReferenceStrainMHz);
    CHECK(sp.config.field.polar_deg == 54.7);
    const auto p = analyze(sp.config, sp.transition);
    CHECK(p.transition.label == "omega2");
    CHECK(p.transition.lower == 0);
    CHECK(p.transition.upper == 1);
    CHECK(std::abs(p.geometry.delta_theta_deg - 90.0) <= 0.5);
  }

  TEST_CASE("explicit transition indices are honoured") {
    const auto sp = setpoint_A();
    const auto h = build_hamiltonian(sp.config);
    const auto s = diagonalize(h.matrix);
    const auto pair = select_transition(s, 0, 1);
    CHECK(pair.lower == 0);
    CHECK(pair.upper == 1);
    CHECK(pair.label == "custom");
    const auto d = group_doublets(s);
    CHECK(pair.frequency_MHz == doctest::Approx(d[1].center - d[0].center));
    CHECK_THROWS(select_transition(s, 0, 0));
    CHECK_THROWS(select_transition(s, 0, 4));
  }

  TEST_CASE("delta theta is symmetric in the pair") {
    for (const auto& sp : {setpoint_A(), setpoint_B()}) {
      const auto fwd = analyze(sp.config, sp.transition);
      const auto rev = analyze(sp.config, fwd.transition.upper, fwd.transition.lower);
      CHECK(fwd.geometry.delta_theta_deg == doctest::Approx(rev.geometry.delta_theta_deg).epsilon(1e-12));
    }
  }

  TEST_CASE("delta_theta examples") {
    CHECK(delta_theta({1, 0, 0}, {1, 0, 0}) == doctest::Approx(0.0));
    CHECK(delta_theta({1, 0, 0}, {0, 1, 0}) == doctest::Approx(90.0));
    CHECK(delta_theta({1, 0, 0}, {-1, 0, 0}) == doctest::Approx(180.0));
    CHECK(delta_theta({1e-300, 0, 0}, {1, 1e-300, 0}) == doctest::Approx(0.0));
    CHECK_THROWS_AS(delta_theta({0, 0, 0}, {1, 0, 0}), ConfigError);
  }

  TEST_CASE("collinear limit with the field along the symmetry axis") {
    for (double b : {0.5, 1.0, 2.0, 3.0, 3.5, 5.0, 7.0}) {
      const auto p = analyze(SystemConfig{}.with_field(b, 0.0), TransitionKind::SpinOrbitSeparated);
      const double dt = p.geometry.delta_theta_deg;
      CHECK(std::min(dt, 180.0 - dt) <= 1e-6);
      CHECK(std::abs(p.geometry.B_alpha.normalized().z()) == doctest::Approx(1.0));
    }
  }

  TEST_CASE("azimuthal invariance of delta theta at zero strain") {
    std::mt19937_64 rng(24);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int n = 0; n < 100; ++n) {
      const SystemConfig c = SystemConfig{}.with_field(0.5 + 3.0 * u(rng), 10.0 + 80.0 * u(rng), 0.0);
      const double a = analyze(c, TransitionKind::SpinOrbitSeparated).geometry.delta_theta_deg;
      const auto rotated = c.with_field(c.field.magnitude_T, c.field.polar_deg, 360.0 * u(rng));
      CHECK(std::abs(analyze(rotated, TransitionKind::SpinOrbitSeparated).geometry.delta_theta_deg - a) <= 1e-6);
    }
  }

  TEST_CASE("doublet nuclear states are antiparallel and agree with the effective field") {
    std::mt19937_64 rng(25);
    for (int n = 0; n < 300; ++n) {
      const auto c = random_operating_config(rng);
      const auto s = diagonalize(build_hamiltonian(c).matrix);
      for (const auto& d : group_doublets(s)) {
        const Vec3 lo = nuclear_bloch_lab(s.state(d.low));
        const Vec3 hi = nuclear_bloch_lab(s.state(d.high));
        CHECK(180.0 - angle_deg(lo, hi) <= 0.5);
        const Vec3 b = net_nuclear_field(c, d);
        CHECK(std::abs(std::abs(c.constants.gamma_n) * b.norm() - d.splitting) <= 0.05 * d.splitting);
      }
    }
    for (const auto& sp : {setpoint_A(), setpoint_B()}) {
      const auto p = analyze(sp.config, sp.transition);
      for (const auto& d : {p.transition.lower_doublet, p.transition.upper_doublet}) {
        const Vec3 axis = doublet_nuclear_axis(p.spectrum, d);
        CHECK(angle_deg(axis, net_nuclear_field(sp.config, d)) <= 2.0);
      }
    }
  }

  TEST_CASE("degenerate doublet splitting is reported") {
    // Near the field where the applied and hyperfine fields cancel, the
    // first-order picture fails and the call must say so rather than guess.
    const SystemConfig c = SystemConfig{}.with_field(4.15, 0.0);
    const auto s = diagonalize(build_hamiltonian(c).matrix);
    bool reported = false;
    for (const auto& d : group_doublets(s)) {
      try {
        net_nuclear_field(c, d);
      } catch (const NumericalError&) {
        reported = true;
      }
    }
    CHECK(reported);
  }

  TEST_CASE("delta theta sweep") {
    FieldGrid grid;
    grid.magnitudes_T = {1.0, 3.5, 6.0};
    grid.polar_deg = {0.0, 30.0, 54.7};
    const auto rows = sweep_delta_theta(SystemConfig{}, grid);
    REQUIRE(rows.size() == 9);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      CHECK(rows[i].B_mag_T == grid.magnitudes_T[i / 3]);
      CHECK(rows[i].theta_deg == grid.polar_deg[i % 3]);
      CHECK(rows[i].status == "ok");
      CHECK(rows[i].dev_orthogonal_deg == doctest::Approx(std::abs(90.0 - rows[i].delta_theta_deg)));
      if (rows[i].theta_deg == 0.0) CHECK(rows[i].dev_orthogonal_deg == doctest::Approx(90.0));
    }
    CHECK(std::abs(rows[5].delta_theta_deg - 120.0) <= 1.0);

    SweepOptions one;
    one.threads = 1;
    SweepOptions many;
    many.threads = 4;
    const auto a = sweep_delta_theta(SystemConfig{}, FieldGrid::defaults(), one);
    const auto b = sweep_delta_theta(SystemConfig{}, FieldGrid::defaults(), many);
    REQUIRE(a.size() == 141 * 91);
    std::ostringstream sa, sb;
    write_csv(sa, a);
    write_csv(sb, b);
    CHECK(sa.str() == sb.str());
    CHECK(sa.str().rfind(kDeltaThetaHeader, 0) == 0);

    FieldGrid empty;
    CHECK_THROWS_AS(sweep_delta_theta(SystemConfig{}, empty), ConfigError);
  }

  TEST_CASE("delta theta approaches its large-field limit monotonically") {
    FieldGrid grid;
    grid.magnitudes_T = linspace(5.0, 7.0, 21);
    grid.polar_deg = {54.7};
    const auto rows = sweep_delta_theta(SystemConfig{}, grid);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      REQUIRE(rows[i].status == "ok");
      CHECK(rows[i].delta_theta_deg <= rows[i - 1].delta_theta_deg + 1e-9);
    }
  }

  TEST_CASE("precession sweep rows") {
    FieldGrid grid;
    grid.magnitudes_T = linspace(0.5, 7.0, 27);
    grid.polar_deg = {0.0, 54.7, 90.0};
    for (const auto& base : {SystemConfig{}, SystemConfig{}.with_strain(kReferenceStrainMHz, kReferenceStrainMHz)}) {
      const auto rows = sweep_precession(base, grid);
      REQUIRE(rows.size() == grid.size());
      int ok = 0;
      for (const auto& r : rows) {
        if (r.status != "ok") {
          CHECK(std::isnan(r.f_alpha_MHz));
          CHECK(r.status.rfind("error: ", 0) == 0);
          CHECK(r.status.find(',') == std::string::npos);
          continue;
        }
        ++ok;
        CHECK(r.period_alpha_ns * r.f_alpha_MHz == doctest::Approx(1000.0));
        CHECK(r.period_beta_ns * r.f_beta_MHz == doctest::Approx(1000.0));
      }
      CHECK(ok >= static_cast<int>(rows.size()) - 3);
    }
  }

  TEST_CASE("eigenstate orientations") {
    const auto mags = linspace(0.0, 7.0, 15);
    const auto rows = eigenstate_orientations(SystemConfig{}, mags);
    REQUIRE(rows.size() == mags.size() * 8);
    for (int i = 0; i < 8; ++i) {
      const auto& r = rows[i];
      CHECK(r.B_mag_T == 0.0);
      CHECK(std::min(r.S_polar_deg, 180.0 - r.S_polar_deg) <= 1e-6);
      CHECK(std::min(r.I_polar_deg, 180.0 - r.I_polar_deg) <= 1e-6);
    }

    // Zeeman fan: slopes from finite differences of the oracle eigenvalues
    // agree with the library's and stay inside the Hellmann-Feynman bound.
    const PhysicalConstants k;
    const double bound = k.gamma_e / 2 + k.gamma_L * k.q + std::abs(k.gamma_n) / 2 + 1e-6;
    const double h = 1e-4;
    for (double b : {2.0, 5.0}) {
      const auto up = oracle::eigenvalues(oracle::hamiltonian(SystemConfig{}.with_field(b + h, 54.7)));
      const auto dn = oracle::eigenvalues(oracle::hamiltonian(SystemConfig{}.with_field(b - h, 54.7)));
      const auto lib_up = eigenstate_orientations(SystemConfig{}, {b + h});
      const auto lib_dn = eigenstate_orientations(SystemConfig{}, {b - h});
      double steepest = 0.0;
      for (int i = 0; i < 8; ++i) {
        const double slope = (up[i] - dn[i]) / (2 * h);
        const double lib = (lib_up[i].energy_MHz - lib_dn[i].energy_MHz) / (2 * h);
        CHECK(lib == doctest::Approx(slope).epsilon(1e-5).scale(1.0));
        CHECK(std::abs(slope) <= bound);
        steepest = std::max(steepest, std::abs(slope));
      }
      CHECK(steepest >= k.gamma_e / 4);
    }
  }
}
