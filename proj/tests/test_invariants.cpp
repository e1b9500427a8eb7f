#include "helpers.hpp"

using namespace lpnb;
using namespace testutil;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("reduced dimension counts", "[invariants]") {
  CHECK(reduced_dim(2) == 3);
  CHECK(reduced_dim(3) == 10);
  CHECK(reduced_dim(4) == 21);
  CHECK(reduced_dim(5) == 36);
  for (int n = 2; n <= 5; ++n) {
    CHECK(static_cast<int>(delta_basis(n).size()) == delta_count(n));
    const ReducedState y(n);
    CHECK(y.packed().size() == reduced_dim(n));
  }
}

TEST_CASE("pair indexing round trip", "[invariants]") {
  for (int n = 2; n <= 6; ++n)
    for (int p = 0; p < pair_count(n); ++p) {
      auto [i, j] = pair_from_index(n, p);
      CHECK(i < j);
      CHECK(pair_index(n, i, j) == p);
      CHECK(pair_index(n, j, i) == p);
    }
  CHECK_THROWS_AS(pair_index(3, 1, 1), DimensionError);
}

TEST_CASE("projection of two bodies at rest", "[invariants]") {
  const auto sys = MassSystem::gravitational({1.0, 1.0});
  FullState s(2, 3);
  s.q << 0, 0, 0, 1, 0, 0;
  const ReducedState y = project(sys, s);
  CHECK_THAT(y.rho[0], WithinAbs(1.0, 0.0));
  CHECK_THAT(y.nu[0], WithinAbs(0.0, 0.0));
  CHECK_THAT(y.sigma[0], WithinAbs(0.0, 0.0));
  CHECK(y.delta.size() == 0);
}

TEST_CASE("projection is Galilean invariant", "[invariants]") {
  Rng rng(2024);
  const auto sys = mixed3();
  for (int d : {2, 3, 4}) {
    for (int rep = 0; rep < 20; ++rep) {
      const FullState s = random_full_state(rng, 3, d);
      const Eigen::MatrixXd rot = random_orthogonal(rng, d);
      const FullState s2 = galilean_transform(
          s, rot, 2.0 * Eigen::RowVectorXd::Random(d), Eigen::RowVectorXd::Random(d),
          0.7);
      CHECK(state_rel_diff(project(sys, s), project(sys, s2)) < 1e-13);
    }
  }
}

TEST_CASE("delta equals its defining scalar products", "[invariants]") {
  Rng rng(77);
  const auto sys3 = mixed3();
  for (int rep = 0; rep < 10; ++rep) {
    const FullState s = random_full_state(rng, 3, 3);
    const ReducedState y = project(sys3, s);
    // three-body convention: delta = q_23.v_31 - v_23.q_31 (1-based)
    const double direct = s.qdiff(1, 2).dot(s.vdiff(2, 0)) - s.vdiff(1, 2).dot(s.qdiff(2, 0));
    CHECK_THAT(y.delta[0], WithinRel(direct, 1e-12));
  }
  const auto sys4 = mixed4();
  for (int rep = 0; rep < 10; ++rep) {
    const FullState s = random_full_state(rng, 4, 3);
    const ReducedState y = project(sys4, s);
    const double d1 = s.qdiff(0, 1).dot(s.vdiff(3, 2)) - s.vdiff(0, 1).dot(s.qdiff(3, 2));
    const double d2 = s.qdiff(1, 2).dot(s.vdiff(3, 0)) - s.vdiff(1, 2).dot(s.qdiff(3, 0));
    const double d3 = s.qdiff(1, 3).dot(s.vdiff(2, 0)) - s.vdiff(1, 3).dot(s.qdiff(2, 0));
    CHECK_THAT(y.delta[0], WithinRel(d1, 1e-12));
    CHECK_THAT(y.delta[1], WithinRel(d2, 1e-12));
    CHECK_THAT(y.delta[2], WithinRel(d3, 1e-12));
  }
}

TEST_CASE("relative kinetic energy", "[invariants]") {
  SECTION("vanishes at zero relative speed") {
    const auto sys = mixed3();
    ReducedState y(3);
    y.rho << 1, 2, 3;
    CHECK_THAT(relative_kinetic_energy(sys, y), WithinAbs(0.0, 0.0));
  }
  SECTION("two-body value equals mu nu / 2") {
    const auto sys = MassSystem::gravitational({1.0, 1.0});
    ReducedState y(2);
    y.rho << 1;
    y.nu << 4;
    CHECK_THAT(relative_kinetic_energy(sys, y), WithinRel(1.0, 1e-15));
    CHECK_THAT(relative_kinetic_energy(sys, y), WithinRel(0.5 * sys.mu(0, 1) * 4.0, 1e-15));
  }
  SECTION("matches full kinetic energy minus drift term") {
    Rng rng(11);
    const auto sys = mixed3();
    for (int rep = 0; rep < 200; ++rep) {
      const FullState s = random_full_state(rng, 3, 3);
      double kin = 0.0;
      for (int i = 0; i < 3; ++i) kin += 0.5 * sys.mass(i) * s.v.row(i).squaredNorm();
      const double pp = total_momentum(sys, s).squaredNorm() / (2.0 * sys.total_mass());
      CHECK_THAT(relative_kinetic_energy(sys, project(sys, s)),
                 WithinRel(kin - pp, 1e-12));
    }
  }
}

TEST_CASE("potential energy", "[invariants]") {
  SECTION("two-body gravitational value") {
    const auto sys = MassSystem::gravitational({1.0, 1.0});
    ReducedState y(2);
    y.rho << 4;
    CHECK_THAT(potential_energy(sys, y), WithinRel(-0.5, 1e-15));
  }
  SECTION("homogeneity under squared-distance scaling") {
    const auto sys = mixed3();
    Rng rng(5);
    const ReducedState y = random_flow_state(rng, 3);
    const double lambda = 1.7;
    ReducedState ys = y;
    ys.rho *= lambda * lambda;
    CHECK_THAT(potential_energy(sys, ys),
               WithinRel(potential_energy(sys, y) / lambda, 1e-13));
  }
  SECTION("matches direct pairwise sum") {
    Rng rng(6);
    const auto sys = mixed3();
    for (int rep = 0; rep < 20; ++rep) {
      const FullState s = random_separated_state(rng, 3, 3);
      double direct = 0.0;
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
          direct -= sys.G() * sys.mass(i) * sys.mass(j) / s.qdiff(i, j).norm();
      CHECK_THAT(potential_energy(sys, project(sys, s)), WithinRel(direct, 1e-12));
    }
  }
  SECTION("collision floor raises") {
    const auto sys = MassSystem::gravitational({1.0, 1.0}, 1.0, 1e-6);
    ReducedState y(2);
    y.rho << 1e-7;
    CHECK_THROWS_AS(potential_energy(sys, y), CollisionError);
    CHECK_THROWS_AS(potential_gradient(sys, y.rho), CollisionError);
  }
}

TEST_CASE("reduced hamiltonian", "[invariants]") {
  SECTION("figure-eight continuum point") {
    const auto sys = equal3();
    const ReducedState y = seed_to_state(figure8_continuum_point());
    CHECK_THAT(reduced_hamiltonian(sys, y), WithinAbs(-0.84, 5e-3));
  }
  SECTION("reduces to potential at zero relative speed") {
    const auto sys = mixed3();
    ReducedState y(3);
    y.rho << 1, 2, 3;
    CHECK_THAT(reduced_hamiltonian(sys, y), WithinRel(potential_energy(sys, y), 1e-15));
  }
  SECTION("matches full hamiltonian minus drift term") {
    Rng rng(12);
    const auto sys = mixed3();
    for (int rep = 0; rep < 50; ++rep) {
      const FullState s = random_separated_state(rng, 3, 3);
      const double expected =
          oracle::full_hamiltonian(sys, s) -
          total_momentum(sys, s).squaredNorm() / (2.0 * sys.total_mass());
      CHECK_THAT(reduced_hamiltonian(sys, project(sys, s)), WithinRel(expected, 1e-12));
    }
  }
}

TEST_CASE("squared angular momentum closed forms", "[invariants]") {
  SECTION("collinear two-body state has zero") {
    const auto sys = mixed2();
    FullState s(2, 3);
    s.q << 0, 0, 0, 2, 0, 0;
    s.v << 0.3, 0, 0, -0.4, 0, 0; // velocities parallel to the separation
    const ReducedState y = project(sys, s);
    CHECK_THAT(y.rho[0] * y.nu[0] - y.sigma[0] * y.sigma[0], WithinAbs(0.0, 1e-14));
    CHECK_THAT(angular_momentum_sq(sys, y), WithinAbs(0.0, 1e-14));
  }
  SECTION("matches the full-coordinate value") {
    Rng rng(13);
    for (const auto& sys : {mixed2(), mixed3(), equal3()}) {
      for (int rep = 0; rep < 40; ++rep) {
        const FullState s = random_full_state(rng, sys.n(), 3);
        const double expected = oracle::angular_momentum_sq_full(sys, s);
        CHECK_THAT(angular_momentum_sq(sys, project(sys, s)),
                   WithinRel(expected, 1e-10));
      }
    }
  }
  SECTION("equilateral rotating triangle is positive") {
    const auto sys = equal3();
    FullState s(3, 2);
    const double r = 1.0, w = 0.9;
    for (int i = 0; i < 3; ++i) {
      const double ang = 2.0 * M_PI * i / 3.0;
      s.q(i, 0) = r * std::cos(ang);
      s.q(i, 1) = r * std::sin(ang);
      s.v(i, 0) = -w * r * std::sin(ang);
      s.v(i, 1) = w * r * std::cos(ang);
    }
    const double val = angular_momentum_sq(sys, project(sys, s));
    CHECK(val > 0.0);
    CHECK_THAT(val, WithinRel(oracle::angular_momentum_sq_full(sys, s), 1e-10));
  }
  SECTION("no closed form beyond three bodies") {
    const auto sys = mixed4();
    CHECK_THROWS_AS(angular_momentum_sq(sys, ReducedState(4)), DimensionError);
  }
}

TEST_CASE("gram matrix", "[invariants]") {
  SECTION("two bodies") {
    const auto sys = mixed2();
    ReducedState y(2);
    y.rho << 2.0;
    y.nu << 3.0;
    y.sigma << 0.5;
    const Eigen::MatrixXd g = gram_matrix(sys, y);
    CHECK_THAT(g(0, 0), WithinRel(2.0, 1e-15));
    CHECK_THAT(g(1, 1), WithinRel(3.0, 1e-15));
    CHECK_THAT(g(0, 1), WithinRel(0.5, 1e-15));
    const double mu = sys.mu(0, 1);
    CHECK_THAT(g.determinant() * mu * mu,
               WithinRel(angular_momentum_sq(sys, y), 1e-13));
  }
  SECTION("planar three-body states are rank deficient") {
    Rng rng(14);
    const auto sys = mixed3();
    for (int rep = 0; rep < 20; ++rep) {
      const FullState s = random_full_state(rng, 3, 2);
      CHECK_THAT(gram_det(sys, project(sys, s)), WithinAbs(0.0, 1e-10));
    }
  }
  SECTION("entries match the difference-vector scalar products") {
    Rng rng(15);
    for (const auto& sys : {mixed3(), mixed4()}) {
      const int n = sys.n();
      for (int rep = 0; rep < 10; ++rep) {
        const FullState s = random_full_state(rng, n, 4);
        const Eigen::MatrixXd g = gram_matrix(sys, project(sys, s));
        const int k = n - 1;
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j) {
            CHECK_THAT(g(i, j),
                       WithinAbs(s.qdiff(i, n - 1).dot(s.qdiff(j, n - 1)), 1e-11));
            CHECK_THAT(g(k + i, k + j),
                       WithinAbs(s.vdiff(i, n - 1).dot(s.vdiff(j, n - 1)), 1e-11));
            CHECK_THAT(g(i, k + j),
                       WithinAbs(s.qdiff(i, n - 1).dot(s.vdiff(j, n - 1)), 1e-11));
          }
      }
    }
  }
  SECTION("positive semidefinite on projected states") {
    Rng rng(16);
    for (const auto& sys : {mixed3(), mixed4()}) {
      for (int rep = 0; rep < 20; ++rep) {
        const FullState s = random_full_state(rng, sys.n(), 3);
        const Eigen::MatrixXd g = gram_matrix(sys, project(sys, s));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
        CHECK(es.eigenvalues().minCoeff() > -1e-10 * std::max(1.0, g.norm()));
      }
    }
  }
  SECTION("three-body closed-form table in the cyclic basis") {
    // the reference table lists the Gram of (q_23, q_31, v_23, v_31);
    // map our (q_13, q_23, v_13, v_23) rows onto it
    Rng rng(17);
    const auto sys = mixed3();
    const FullState s = random_full_state(rng, 3, 3);
    const ReducedState y = project(sys, s);
    const Eigen::MatrixXd g = gram_matrix(sys, y);
    Eigen::Matrix4d t = Eigen::Matrix4d::Zero();
    t(0, 1) = 1;  // q_23
    t(1, 0) = -1; // q_31 = -q_13
    t(2, 3) = 1;  // v_23
    t(3, 2) = -1; // v_31
    const Eigen::Matrix4d twice = 2.0 * (t * g * t.transpose());
    const double r12 = y.rho[0], r13 = y.rho[1], r23 = y.rho[2];
    const double n12 = y.nu[0], n13 = y.nu[1], n23 = y.nu[2];
    const double s12 = y.sigma[0], s13 = y.sigma[1], s23 = y.sigma[2];
    const double del = y.delta[0];
    CHECK_THAT(twice(0, 0), WithinRel(2 * r23, 1e-12));
    CHECK_THAT(twice(0, 1), WithinRel(r12 - r13 - r23, 1e-12));
    CHECK_THAT(twice(0, 2), WithinRel(2 * s23, 1e-12));
    CHECK_THAT(twice(0, 3), WithinRel(del + s12 - s13 - s23, 1e-12));
    CHECK_THAT(twice(1, 1), WithinRel(2 * r13, 1e-12));
    CHECK_THAT(twice(1, 2), WithinRel(-del + s12 - s13 - s23, 1e-12));
    CHECK_THAT(twice(1, 3), WithinRel(2 * s13, 1e-12));
    CHECK_THAT(twice(2, 2), WithinRel(2 * n23, 1e-12));
    CHECK_THAT(twice(2, 3), WithinRel(n12 - n13 - n23, 1e-12));
    CHECK_THAT(twice(3, 3), WithinRel(2 * n13, 1e-12));
  }
}

TEST_CASE("moment of inertia", "[invariants]") {
  SECTION("coincident bodies give zero") {
    const auto sys = mixed3();
    CHECK_THAT(moment_of_inertia(sys, ReducedState(3)), WithinAbs(0.0, 0.0));
  }
  SECTION("two equal bodies") {
    const auto sys = MassSystem::gravitational({1.0, 1.0});
    ReducedState y(2);
    y.rho << 2.0;
    CHECK_THAT(moment_of_inertia(sys, y), WithinRel(1.0, 1e-15));
  }
  SECTION("matches the centre-of-mass sum") {
    Rng rng(18);
    const auto sys = mixed3();
    for (int rep = 0; rep < 20; ++rep) {
      const FullState s = random_full_state(rng, 3, 3);
      const Eigen::RowVectorXd c = centre_of_mass(sys, s);
      double direct = 0.0;
      for (int i = 0; i < 3; ++i)
        direct += sys.mass(i) * (s.q.row(i) - c).squaredNorm();
      CHECK_THAT(moment_of_inertia(sys, project(sys, s)), WithinRel(direct, 1e-12));
    }
  }
}

TEST_CASE("mass system validation and derived constants", "[invariants]") {
  CHECK_THROWS_AS(MassSystem::gravitational({1.0}), DimensionError);
  CHECK_THROWS(MassSystem::gravitational({1.0, -1.0}));
  const auto sys = mixed3();
  CHECK_THAT(sys.total_mass(), WithinRel(3.7, 1e-15));
  CHECK_THAT(sys.mu(0, 1), WithinRel(1.0 * 2.0 / 3.0, 1e-15));
  CHECK_THAT(sys.kinetic_gradient()[pair_index(3, 0, 2)],
             WithinRel(1.0 * 0.7 / (2.0 * 3.7), 1e-15));
}
