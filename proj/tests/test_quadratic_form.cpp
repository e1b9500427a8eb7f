#include "helpers.hpp"

using namespace lpnb;
using namespace testutil;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("laplacian unit pattern", "[forms]") {
  const Eigen::MatrixXd e = laplacian_unit(3, 0, 1);
  Eigen::MatrixXd expected(3, 3);
  expected << 1, -1, 0, -1, 1, 0, 0, 0, 0;
  CHECK((e - expected).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("basis forms are block Laplacian", "[forms]") {
  for (int n : {2, 3, 4, 5})
    for (const auto& f : invariant_basis(n)) CHECK(f.is_block_laplacian(0.0));
}

TEST_CASE("basis forms evaluate to the projected invariants", "[forms]") {
  Rng rng(21);
  for (const auto& sys : {mixed3(), mixed4()}) {
    const int n = sys.n();
    const auto basis = invariant_basis(n);
    for (int rep = 0; rep < 10; ++rep) {
      const FullState s = random_full_state(rng, n, 3);
      const Eigen::VectorXd y = project(sys, s).packed();
      for (int a = 0; a < reduced_dim(n); ++a)
        CHECK_THAT(basis[static_cast<std::size_t>(a)].eval(s), WithinRel(y[a], 1e-12));
    }
  }
}

TEST_CASE("composition represents the canonical bracket", "[forms]") {
  // {Q_A, Q_B} evaluated directly in full coordinates must equal the value
  // of the composed form A*B; this pins every sign and factor downstream.
  Rng rng(22);
  for (const auto& sys : {mixed2(), mixed3(), mixed4()}) {
    const int n = sys.n();
    const auto basis = invariant_basis(n);
    for (int rep = 0; rep < 5; ++rep) {
      const FullState s = random_full_state(rng, n, 3);
      for (std::size_t a = 0; a < basis.size(); ++a)
        for (std::size_t b = a + 1; b < basis.size(); ++b) {
          const double direct = oracle::canonical_bracket(sys, s, basis[a], basis[b]);
          const double composed = compose(basis[a], basis[b], sys).eval(s);
          CHECK_THAT(composed, WithinRel(direct, 1e-10) || WithinAbs(direct, 1e-12));
        }
    }
  }
}

TEST_CASE("composition is antisymmetric and closed", "[forms]") {
  Rng rng(23);
  const auto sys = mixed4();
  const auto basis = invariant_basis(4);
  std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
  for (int rep = 0; rep < 40; ++rep) {
    const auto& a = basis[pick(rng)];
    const auto& b = basis[pick(rng)];
    const QuadraticForm ab = compose(a, b, sys);
    const QuadraticForm ba = compose(b, a, sys);
    CHECK((ab.full() + ba.full()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(compose(a, a, sys).full().cwiseAbs().maxCoeff() == 0.0);
    CHECK(ab.is_block_laplacian(1e-12));
  }
}

TEST_CASE("two-body rho * nu composition", "[forms]") {
  const auto sys = mixed2();
  const double mu = sys.mu(0, 1);
  const QuadraticForm c =
      compose(QuadraticForm::rho_form(2, 0, 1), QuadraticForm::nu_form(2, 0, 1), sys);
  // {rho, nu} = (4/mu) sigma: the composed form is (4/mu) times the sigma form
  const QuadraticForm sigma = QuadraticForm::sigma_form(2, 0, 1);
  CHECK(max_rel_diff(c.full(), (4.0 / mu) * sigma.full()) < 1e-15);
}

TEST_CASE("compositions expand exactly in the invariant basis", "[forms]") {
  for (const auto& sys : {mixed3(), mixed4()}) {
    const LiePoissonAlgebra alg(sys);
    const auto& basis = alg.basis();
    for (std::size_t a = 0; a < basis.size(); ++a)
      for (std::size_t b = a + 1; b < basis.size(); ++b)
        CHECK_NOTHROW(alg.expand(compose(basis[a], basis[b], sys), 1e-12));
  }
}

TEST_CASE("non-invariant forms are rejected by expansion", "[forms]") {
  const auto sys = mixed3();
  const LiePoissonAlgebra alg(sys);
  QuadraticForm bad(3);
  bad.R = Eigen::MatrixXd::Identity(3, 3); // not Laplacian
  CHECK_THROWS_AS(alg.expand(bad), ExpansionError);
}

TEST_CASE("delta basis quadruples are independent", "[forms]") {
  for (int n : {3, 4, 5, 6}) {
    const auto basis = delta_basis(n);
    Eigen::MatrixXd cols(n * n, static_cast<int>(basis.size()));
    for (std::size_t m = 0; m < basis.size(); ++m) {
      const Eigen::MatrixXd dm = delta_matrix(n, basis[m]);
      cols.col(static_cast<int>(m)) = Eigen::Map<const Eigen::VectorXd>(dm.data(), n * n);
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(cols);
    CHECK(qr.rank() == static_cast<int>(basis.size()));
  }
}

TEST_CASE("three-body delta convention matches the general rule", "[forms]") {
  // q_23.v_31 - v_23.q_31 and C_{12,23} are the same quadratic form
  const Eigen::MatrixXd a = delta_matrix(3, DeltaPair{1, 2, 2, 0});
  const Eigen::MatrixXd b = delta_matrix(3, DeltaPair{0, 1, 1, 2});
  CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
}
