#include <doctest.h>

#include <Eigen/Dense>
#include <complex>
#include <numbers>

#include "qbat/operators.hpp"

using namespace qbat;
using Complex = std::complex<double>;

namespace {

ChainSpec make_spec(int n, double g, double gamma,
                    CouplingScheme scheme = NearestNeighbor{}, double b = 1.0) {
  ChainSpec spec;
  spec.n_spins = n;
  spec.field_b = b;
  spec.coupling = scheme;
  spec.g = g;
  spec.gamma = gamma;
  return spec;
}

Eigen::MatrixXcd interaction_from_paulis(const ChainSpec& spec) {
  const Eigen::Index dim = spec.dim();
  Eigen::MatrixXcd h2 = Eigen::MatrixXcd::Zero(dim, dim);
  for (int i = 0; i < spec.n_spins; ++i) {
    for (int j = i + 1; j < spec.n_spins; ++j) {
      const double gij = coupling_strength(spec.coupling, spec.g, i, j);
      if (gij == 0.0) continue;
      const auto xi = pauli_at(PauliAxis::X, i, spec.n_spins).matrix();
      const auto xj = pauli_at(PauliAxis::X, j, spec.n_spins).matrix();
      const auto yi = pauli_at(PauliAxis::Y, i, spec.n_spins).matrix();
      const auto yj = pauli_at(PauliAxis::Y, j, spec.n_spins).matrix();
      h2 += -0.5 * gij *
            ((1.0 + spec.gamma) * xi * xj + (1.0 - spec.gamma) * yi * yj);
    }
  }
  return h2;
}

}  // namespace

TEST_CASE("pauli_at single-site examples") {
  const auto z0 = pauli_at(PauliAxis::Z, 0, 1).matrix();
  CHECK(z0(0, 0) == Complex(1, 0));
  CHECK(z0(1, 1) == Complex(-1, 0));
  CHECK(z0(0, 1) == Complex(0, 0));

  // I (x) sigma_x: antidiagonal ones inside each 2x2 diagonal block
  const auto x1 = pauli_at(PauliAxis::X, 1, 2).matrix();
  Eigen::MatrixXcd expected(4, 4);
  expected << 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0;
  CHECK((x1 - expected).cwiseAbs().maxCoeff() == 0.0);

  // sigma_y (x) I: entry (0,2) = -i, entry (2,0) = +i
  const auto y0 = pauli_at(PauliAxis::Y, 0, 2).matrix();
  CHECK(y0(0, 2) == Complex(0, -1));
  CHECK(y0(2, 0) == Complex(0, 1));
  CHECK(y0(1, 3) == Complex(0, -1));
  CHECK(y0(0, 1) == Complex(0, 0));
}

TEST_CASE("pauli_at rejects out-of-range sites") {
  CHECK_THROWS_AS(pauli_at(PauliAxis::X, 2, 2), argument_error);
  CHECK_THROWS_AS(pauli_at(PauliAxis::X, -1, 2), argument_error);
}

TEST_CASE("pauli algebra: squares and commutators on two sites") {
  const int n = 2;
  const Eigen::Index dim = 4;
  const auto eye = Eigen::MatrixXcd::Identity(dim, dim);
  for (auto axis : {PauliAxis::X, PauliAxis::Y, PauliAxis::Z}) {
    const auto p = pauli_at(axis, 0, n).matrix();
    CHECK((p * p - eye).cwiseAbs().maxCoeff() < 1e-15);
  }
  // sigma_x sigma_y = i sigma_z on the same site
  const auto x = pauli_at(PauliAxis::X, 1, n).matrix();
  const auto y = pauli_at(PauliAxis::Y, 1, n).matrix();
  const auto z = pauli_at(PauliAxis::Z, 1, n).matrix();
  CHECK((x * y - Complex(0, 1) * z).cwiseAbs().maxCoeff() < 1e-15);
  // different sites commute
  const auto x0 = pauli_at(PauliAxis::X, 0, n).matrix();
  CHECK((x0 * y - y * x0).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("build_field_term diagonals") {
  const auto h1 = build_field_term(make_spec(1, 0, 0)).matrix();
  CHECK(h1(0, 0).real() == 1.0);
  CHECK(h1(1, 1).real() == -1.0);

  const auto h2 = build_field_term(make_spec(2, 0, 0)).matrix();
  const Eigen::Vector4d expected2(2, 0, 0, -2);
  CHECK((h2.diagonal().real() - expected2).cwiseAbs().maxCoeff() == 0.0);

  const auto h3 = build_field_term(make_spec(3, 0, 0)).matrix();
  Eigen::VectorXd expected3(8);
  expected3 << 3, 1, 1, -1, 1, -1, -1, -3;
  CHECK((h3.diagonal().real() - expected3).cwiseAbs().maxCoeff() == 0.0);
  CHECK(h3.cwiseAbs().sum() ==
        doctest::Approx(h3.diagonal().cwiseAbs().sum()));  // diagonal only

  // explicit tensor sum agrees
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(8, 8);
  for (int i = 0; i < 3; ++i) sum += pauli_at(PauliAxis::Z, i, 3).matrix();
  CHECK((h3 - sum).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("build_interaction N=2 antidiagonal form") {
  const double g = 3.0, gamma = 0.25;
  const auto h2 = build_interaction(make_spec(2, g, gamma)).matrix();
  Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(4, 4);
  expected(3, 0) = expected(0, 3) = -g * gamma;
  expected(2, 1) = expected(1, 2) = -g;
  CHECK((h2 - expected).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("build_interaction zero coupling gives zero matrix") {
  const auto h2 = build_interaction(make_spec(4, 0.0, 0.7)).matrix();
  CHECK(h2.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("build_interaction long-range 1/|i-j| weighting") {
  const double g = 4.0;
  ChainSpec lr = make_spec(3, g, 0.5, LongRange{1.0});
  const auto h2 = build_interaction(lr).matrix();
  // pair (0,2) flips bits 2 and 0: |000> -> |101>, i.e. (0 -> 5)
  // pair (0,1) flips bits 2 and 1: |000> -> |110>, i.e. (0 -> 6)
  CHECK(h2(5, 0).real() == doctest::Approx(0.5 * h2(6, 0).real()));
  CHECK(h2(5, 0).real() == doctest::Approx(-0.5 * g * 0.5));
}

TEST_CASE("build_interaction matches explicit pauli products") {
  for (const auto& spec :
       {make_spec(3, 7.0, 0.6), make_spec(4, 2.5, -0.8, LongRange{1.0}),
        make_spec(4, 1.0, 0.0, LongRange{2.0})}) {
    const auto direct = build_interaction(spec).matrix();
    const auto reference = interaction_from_paulis(spec);
    CHECK((direct - reference).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("battery hamiltonian N=2 example matrix") {
  const auto h0 =
      build_battery_hamiltonian(make_spec(2, 10.0, 0.5, NearestNeighbor{}, 1.0))
          .matrix();
  Eigen::MatrixXcd expected(4, 4);
  expected << 2, 0, 0, -5, 0, 0, -10, 0, 0, -10, 0, 0, -5, 0, 0, -2;
  CHECK((h0 - expected).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("battery hamiltonian N=1 has no pairs") {
  const auto h0 =
      build_battery_hamiltonian(make_spec(1, 5.0, 0.5, NearestNeighbor{}, 2.0))
          .matrix();
  CHECK(h0(0, 0) == Complex(2, 0));
  CHECK(h0(1, 1) == Complex(-2, 0));
  CHECK(h0(0, 1) == Complex(0, 0));
}

TEST_CASE("long-range with huge exponent reduces to nearest-neighbor") {
  for (int n : {2, 3, 4, 5, 6}) {
    const auto nn = build_battery_hamiltonian(make_spec(n, 10.0, 0.5)).matrix();
    const auto lr =
        build_battery_hamiltonian(make_spec(n, 10.0, 0.5, LongRange{30.0}))
            .matrix();
    const double rel =
        (nn - lr).cwiseAbs().maxCoeff() / nn.cwiseAbs().maxCoeff();
    CHECK(rel < 1e-6);
  }
}

TEST_CASE("drive generator equals field term at B=1") {
  for (int n : {1, 2, 3}) {
    const auto d = build_drive_generator(n).matrix();
    const auto h1 = build_field_term(make_spec(n, 0, 0)).matrix();
    CHECK((d - h1).cwiseAbs().maxCoeff() == 0.0);
  }
  const auto d2 = build_drive_generator(2).matrix();
  CHECK(d2(0, 0) == Complex(2, 0));
  CHECK(d2(3, 3) == Complex(-2, 0));
}

TEST_CASE("drive generator commutes with isotropic interaction") {
  const auto spec = make_spec(4, 8.0, 0.0, LongRange{1.0});
  const auto d = build_drive_generator(4).matrix();
  const auto h2 = build_interaction(spec).matrix();
  CHECK((d * h2 - h2 * d).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("operators are traceless and Hermitian by construction") {
  for (const auto& spec :
       {make_spec(3, 10, 0.5), make_spec(4, 20, -1.0, LongRange{1.0})}) {
    const auto h1 = build_field_term(spec).matrix();
    const auto h2 = build_interaction(spec).matrix();
    const auto h0 = build_battery_hamiltonian(spec).matrix();
    CHECK(std::abs(h1.trace()) < 1e-12);
    CHECK(std::abs(h2.trace()) < 1e-12);
    CHECK(std::abs(h0.trace()) < 1e-12);
    CHECK((h0 - h0.adjoint()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("reflection symmetry: site relabeling i -> N-1-i preserves H0") {
  for (const auto& spec :
       {make_spec(3, 6.0, 0.4), make_spec(4, 3.0, -0.7, LongRange{1.0})}) {
    const int n = spec.n_spins;
    const Eigen::Index dim = spec.dim();
    // permutation reversing the site order = reversing the bit order
    Eigen::VectorXi perm(dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
      Eigen::Index r = 0;
      for (int k = 0; k < n; ++k) {
        if (b & (Eigen::Index{1} << k)) r |= Eigen::Index{1} << (n - 1 - k);
      }
      perm(b) = static_cast<int>(r);
    }
    const auto h0 = build_battery_hamiltonian(spec).matrix();
    Eigen::MatrixXcd permuted(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
      for (Eigen::Index c = 0; c < dim; ++c) {
        permuted(perm(r), perm(c)) = h0(r, c);
      }
    }
    CHECK((permuted - h0).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("gamma rotation covariance at N=2 and N=3") {
  for (int n : {2, 3}) {
    ChainSpec pos = make_spec(n, 9.0, 0.8, LongRange{1.0});
    ChainSpec neg = pos;
    neg.gamma = -pos.gamma;
    const Eigen::Index dim = pos.dim();
    const Eigen::VectorXd d = total_sz_diagonal(n);
    Eigen::VectorXcd u(dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
      u(b) = std::exp(Complex(0, -std::numbers::pi / 4) * d(b));
    }
    const Eigen::MatrixXcd rotated = u.asDiagonal() *
                                     build_interaction(pos).matrix() *
                                     u.conjugate().asDiagonal();
    CHECK((rotated - build_interaction(neg).matrix()).cwiseAbs().maxCoeff() <
          1e-12);
    // H1 and D are diagonal, hence untouched by the rotation
    const auto h1 = build_field_term(pos).matrix();
    const Eigen::MatrixXcd h1_rot =
        u.asDiagonal() * h1 * u.conjugate().asDiagonal();
    CHECK((h1_rot - h1).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("spec validation rejects bad parameters") {
  CHECK_THROWS_AS(make_spec(0, 0, 0).validate(), argument_error);
  CHECK_THROWS_AS(make_spec(13, 0, 0).validate(), argument_error);
  CHECK_THROWS_AS(make_spec(2, -1.0, 0).validate(), argument_error);
  CHECK_THROWS_AS(make_spec(2, 1.0, 1.5).validate(), argument_error);
  CHECK_THROWS_AS(make_spec(2, 1.0, 0.5, LongRange{-1.0}).validate(),
                  argument_error);
  CHECK_NOTHROW(make_spec(2, 0.0, -1.0).validate());
}

TEST_CASE("HermitianOperator rejects non-Hermitian input") {
  Eigen::MatrixXcd bad(2, 2);
  bad << 1, Complex(0, 1), Complex(0, 1), 1;  // (0,1) should be conj of (1,0)
  CHECK_THROWS_AS(HermitianOperator{bad}, integrity_error);

  Eigen::MatrixXcd odd = Eigen::MatrixXcd::Zero(3, 3);
  CHECK_THROWS_AS(HermitianOperator{odd}, argument_error);
}
