#include <cmath>
#include <random>

#include <doctest.h>

#include "qmirror/errors.hpp"
#include "qmirror/fock.hpp"
#include "test_support.hpp"

using namespace qmirror;

TEST_CASE("fock_state basis vectors") {
  const Vector vac = fock_state(4, 0);
  CHECK(vac(0) == cxd(1.0));
  CHECK(vac.tail(3).norm() == 0.0);

  const Vector two = fock_state(4, 2);
  CHECK(two(2) == cxd(1.0));
  CHECK(std::abs(two.norm() - 1.0) < 1e-15);

  CHECK_THROWS_AS(fock_state(2, 2), std::invalid_argument);
  CHECK_THROWS_AS(fock_state(4, -1), std::invalid_argument);
}

TEST_CASE("coherent_state amplitudes") {
  SUBCASE("alpha = 0 is the vacuum") {
    const Vector v = coherent_state(8, 0.0);
    CHECK(std::abs(v(0) - 1.0) < 1e-15);
    CHECK(v.tail(7).norm() == 0.0);
  }
  SUBCASE("small alpha follows alpha^j/sqrt(j!)") {
    const Vector v = coherent_state(8, 0.02);
    CHECK(std::abs(v(1) / v(0) - 0.02) < 1e-15);
    CHECK(std::abs(v(2) / v(0) - 0.02 * 0.02 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(v.norm() - 1.0) < 1e-12);
  }
  SUBCASE("squared amplitudes are Poisson weights") {
    const Vector v = coherent_state(16, 1.0);
    double fact = 1.0;
    for (int j = 0; j < 16; ++j) {
      if (j > 0) fact *= j;
      const double poisson = std::exp(-1.0) / fact;
      CHECK(std::abs(std::norm(v(j)) - poisson) < 1e-6);
    }
  }
  SUBCASE("truncations agree after un-renormalization") {
    const cxd alpha(0.5, 0.3);
    const Vector small = coherent_state(8, alpha);
    const Vector big = coherent_state(16, alpha);
    for (int j = 0; j < 8; ++j)
      CHECK(std::abs(small(j) / small(0) - big(j) / big(0)) < 1e-12);
  }
  SUBCASE("truncation warning flag") {
    CHECK(coherent_truncation_suspect(8, 3.0));
    CHECK_FALSE(coherent_truncation_suspect(8, 0.02));
  }
}

TEST_CASE("poisson_tail_mass") {
  CHECK(poisson_tail_mass(0.0, 1) == 0.0);
  CHECK(poisson_tail_mass(1.0, 0) == 1.0);
  // P[N >= 1] = 1 - e^{-mean}
  CHECK(std::abs(poisson_tail_mass(0.7, 1) - (1.0 - std::exp(-0.7))) < 1e-14);
  // Tail decreases and eventually clears 1e-10 for alpha = 1.
  CHECK(poisson_tail_mass(1.0, 7) > 1e-10);
  CHECK(poisson_tail_mass(1.0, 13) <= 1e-10);
}

TEST_CASE("ladder operators") {
  const Matrix a = annihilation(4);
  CHECK(std::abs(a(2, 3) - std::sqrt(3.0)) < 1e-15);

  const Vector three = fock_state(4, 3);
  const Vector lowered = a * three;
  CHECK(std::abs(lowered(2) - std::sqrt(3.0)) < 1e-15);

  CHECK((a * fock_state(4, 0)).norm() == 0.0);

  // a†a is exact on every retained level.
  const Matrix num = creation(4) * annihilation(4);
  CHECK(max_abs(num - number_operator(4)) < 1e-15);
  // a a† is truncated at the top: diag(1, 2, 3, 0) instead of diag(1, 2, 3, 4).
  const Matrix aad = annihilation(4) * creation(4);
  CHECK(std::abs(aad(3, 3)) == 0.0);
  CHECK(std::abs(aad(2, 2) - 3.0) < 1e-15);
}

TEST_CASE("index bijection on a (3,4,5) space") {
  const HilbertSpace space({3, 4, 5});
  CHECK(space.total_dim() == 60);
  for (int i = 0; i < 60; ++i) CHECK(space.flat_index(space.multi_index(i)) == i);
  CHECK(space.flat_index({0, 0, 0}) == 0);
  CHECK(space.flat_index({1, 0, 0}) == 20);  // mode 0 varies slowest
  CHECK(space.flat_index({0, 1, 0}) == 5);
  CHECK(space.flat_index({0, 0, 1}) == 1);
  CHECK_THROWS_AS(space.flat_index({3, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(space.multi_index(60), std::invalid_argument);
}

TEST_CASE("embed") {
  const HilbertSpace space({3, 4, 4});

  SUBCASE("identity embeds to identity") {
    const Matrix id = embed(Matrix::Identity(4, 4), 1, space);
    CHECK(max_abs(id - Matrix::Identity(space.total_dim(), space.total_dim())) == 0.0);
  }
  SUBCASE("number operator acts on its own mode") {
    const Matrix n0 = embed(number_operator(3), 0, space);
    Vector state = Vector::Zero(space.total_dim());
    state(space.flat_index({2, 0, 0})) = 1.0;
    CHECK((n0 * state - 2.0 * state).norm() < 1e-15);
  }
  SUBCASE("operators on distinct modes commute") {
    const Matrix a1 = embed(annihilation(4), 1, space);
    const Matrix a2 = embed(annihilation(4), 2, space);
    CHECK(max_abs(a1 * a2 - a2 * a1) < 1e-13);
  }
  SUBCASE("hermiticity is preserved") {
    std::mt19937_64 rng(41);
    const Matrix h = test::random_hermitian(rng, 4);
    CHECK(hermiticity_defect(embed(h, 2, space)) < 1e-14);
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(embed(Matrix::Identity(5, 5), 1, space), std::invalid_argument);
  }
}

TEST_CASE("partial_trace") {
  std::mt19937_64 rng(42);

  SUBCASE("product state factors") {
    const HilbertSpace space({2, 3});
    const Vector psi = test::random_pure(rng, 2);
    const Vector phi = test::random_pure(rng, 3);
    const Vector joint = kron(Matrix(psi), Matrix(phi));
    const Matrix rho = joint * joint.adjoint();
    CHECK(max_abs(partial_trace(rho, space, {0}) - psi * psi.adjoint()) < 1e-14);
    CHECK(max_abs(partial_trace(rho, space, {1}) - phi * phi.adjoint()) < 1e-14);
  }

  SUBCASE("cavity Fock factor traces out") {
    const HilbertSpace space({3, 2, 2});
    const Vector n_state = fock_state(3, 1);
    const Vector pair = test::random_pure(rng, 4);
    const Vector joint = kron(Matrix(n_state), Matrix(pair));
    const Matrix sigma = pair * pair.adjoint();
    const Matrix reduced = partial_trace(joint * joint.adjoint(), space, {1, 2});
    CHECK(max_abs(reduced - sigma) < 1e-14);
  }

  SUBCASE("matches a brute-force index summation") {
    const HilbertSpace space({2, 2, 2});
    const Vector psi = test::random_pure(rng, 8);
    const Matrix rho = psi * psi.adjoint();
    const Matrix reduced = partial_trace(rho, space, {0});

    Matrix oracle = Matrix::Zero(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b)
            oracle(i, j) += rho(space.flat_index({i, a, b}), space.flat_index({j, a, b}));

    CHECK(max_abs(reduced - oracle) < 1e-14);
    const Eigen::VectorXd ev_impl = density_eigenvalues(reduced);
    const Eigen::VectorXd ev_oracle = density_eigenvalues(oracle);
    CHECK((ev_impl - ev_oracle).cwiseAbs().maxCoeff() < 1e-12);
  }

  SUBCASE("trace- and positivity-preserving on 200 random pure states") {
    const HilbertSpace space({2, 3, 4});
    const std::vector<std::vector<int>> keeps = {{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}};
    for (int trial = 0; trial < 200; ++trial) {
      const Vector psi = test::random_pure(rng, space.total_dim());
      const Matrix rho = psi * psi.adjoint();
      const auto& keep = keeps[static_cast<std::size_t>(trial) % keeps.size()];
      const Matrix reduced = partial_trace(rho, space, keep);
      CHECK(std::abs(reduced.trace().real() - 1.0) < 1e-10);
      CHECK(std::abs(reduced.trace().imag()) < 1e-12);
      CHECK(hermiticity_defect(reduced) < 1e-10);
      Eigen::SelfAdjointEigenSolver<Matrix> es(reduced, Eigen::EigenvaluesOnly);
      CHECK(es.eigenvalues().minCoeff() >= -1e-9);
    }
  }

  SUBCASE("empty keep set is an error") {
    const HilbertSpace space({2, 2});
    CHECK_THROWS_AS(partial_trace(Matrix::Identity(4, 4), space, {}), std::invalid_argument);
  }
}

TEST_CASE("expm_hermitian") {
  SUBCASE("zero matrix gives identity") {
    const Matrix u = expm_hermitian(Matrix::Zero(5, 5), 3.7);
    CHECK(max_abs(u - Matrix::Identity(5, 5)) < 1e-14);
  }
  SUBCASE("integer spectrum is 2pi-periodic") {
    const Matrix u = expm_hermitian(number_operator(3), 2.0 * M_PI);
    CHECK(max_abs(u - Matrix::Identity(3, 3)) < 1e-10);
  }
  SUBCASE("group property and unitarity on random Hermitian input") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
      const Matrix h = test::random_hermitian(rng, 6);
      const double t = 0.1 + 0.3 * trial;
      const Matrix u = expm_hermitian(h, t);
      CHECK(unitarity_defect(u) < 1e-9);
      CHECK(max_abs(u * expm_hermitian(h, -t) - Matrix::Identity(6, 6)) < 1e-10);
    }
  }
  SUBCASE("rejects non-Hermitian input") {
    Matrix bad = Matrix::Zero(3, 3);
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(expm_hermitian(bad, 1.0), numerical_error);
  }
}

TEST_CASE("density eigenvalue clamp") {
  Matrix rho = Matrix::Zero(3, 3);
  rho(0, 0) = 1.0 + 5e-10;
  rho(1, 1) = -5e-10;  // roundoff-scale negative: clamped
  const Eigen::VectorXd ev = density_eigenvalues(rho);
  CHECK(ev.minCoeff() == 0.0);

  rho(1, 1) = -5e-9;  // beyond the clamp: a bug, not roundoff
  CHECK_THROWS_AS(density_eigenvalues(rho), numerical_error);
}
