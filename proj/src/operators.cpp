#include "qbat/operators.hpp"

#include <bit>
#include <string>

namespace qbat {

namespace {

using Complex = std::complex<double>;

bool is_power_of_two(Eigen::Index n) {
  return n > 0 && std::has_single_bit(static_cast<std::size_t>(n));
}

// Bit position of `site` inside a basis index (site 0 = most significant).
int bit_of_site(int site, int n_spins) { return n_spins - 1 - site; }

void check_site(int site, int n_spins) {
  if (n_spins < 1 || n_spins > kMaxSpins) {
    throw argument_error("n_spins out of range: " + std::to_string(n_spins));
  }
  if (site < 0 || site >= n_spins) {
    throw argument_error("site " + std::to_string(site) +
                         " out of range for n_spins=" + std::to_string(n_spins));
  }
}

}  // namespace

HermitianOperator::HermitianOperator(Eigen::MatrixXcd entries)
    : mat_(std::move(entries)) {
  if (mat_.rows() != mat_.cols() || !is_power_of_two(mat_.rows())) {
    throw argument_error("operator must be square with power-of-two dimension");
  }
  const double scale = mat_.cwiseAbs().maxCoeff();
  const double tol = 1e-12 * std::max(1.0, scale);
  for (Eigen::Index c = 0; c < mat_.cols(); ++c) {
    for (Eigen::Index r = 0; r <= c; ++r) {
      if (std::abs(mat_(r, c) - std::conj(mat_(c, r))) > tol) {
        throw integrity_error("matrix is not Hermitian at (" +
                              std::to_string(r) + "," + std::to_string(c) + ")");
      }
    }
  }
}

HermitianOperator pauli_at(PauliAxis axis, int site, int n_spins) {
  check_site(site, n_spins);
  const Eigen::Index dim = Eigen::Index{1} << n_spins;
  const Eigen::Index mask = Eigen::Index{1} << bit_of_site(site, n_spins);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    const bool down = (b & mask) != 0;
    switch (axis) {
      case PauliAxis::X:
        m(b ^ mask, b) = Complex(1.0, 0.0);
        break;
      case PauliAxis::Y:
        // sigma_y |up> = i |down>, sigma_y |down> = -i |up>
        m(b ^ mask, b) = down ? Complex(0.0, -1.0) : Complex(0.0, 1.0);
        break;
      case PauliAxis::Z:
        m(b, b) = down ? Complex(-1.0, 0.0) : Complex(1.0, 0.0);
        break;
    }
  }
  return HermitianOperator(std::move(m));
}

Eigen::VectorXd total_sz_diagonal(int n_spins) {
  if (n_spins < 1 || n_spins > kMaxSpins) {
    throw argument_error("n_spins out of range: " + std::to_string(n_spins));
  }
  const Eigen::Index dim = Eigen::Index{1} << n_spins;
  Eigen::VectorXd d(dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    d(b) = n_spins - 2 * std::popcount(static_cast<std::size_t>(b));
  }
  return d;
}

HermitianOperator build_field_term(const ChainSpec& spec) {
  spec.validate();
  Eigen::MatrixXcd m =
      (spec.field_b * total_sz_diagonal(spec.n_spins)).asDiagonal();
  return HermitianOperator(std::move(m));
}

HermitianOperator build_interaction(const ChainSpec& spec) {
  spec.validate();
  const int n = spec.n_spins;
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double gij = coupling_strength(spec.coupling, spec.g, i, j);
      if (gij == 0.0) continue;
      const Eigen::Index mi = Eigen::Index{1} << bit_of_site(i, n);
      const Eigen::Index mj = Eigen::Index{1} << bit_of_site(j, n);
      // (1+gamma) X_i X_j + (1-gamma) Y_i Y_j flips both bits; the matrix
      // element is 2*gamma when the two bits are equal and 2 otherwise.
      for (Eigen::Index b = 0; b < dim; ++b) {
        const bool parallel = ((b & mi) != 0) == ((b & mj) != 0);
        m(b ^ mi ^ mj, b) += -gij * (parallel ? spec.gamma : 1.0);
      }
    }
  }
  return HermitianOperator(std::move(m));
}

HermitianOperator build_battery_hamiltonian(const ChainSpec& spec) {
  return HermitianOperator(build_field_term(spec).matrix() +
                           build_interaction(spec).matrix());
}

HermitianOperator build_drive_generator(int n_spins) {
  Eigen::MatrixXcd m = total_sz_diagonal(n_spins).asDiagonal();
  return HermitianOperator(std::move(m));
}

}  // namespace qbat
