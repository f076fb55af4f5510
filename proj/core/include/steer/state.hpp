#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace steer {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

namespace tolerance {
inline constexpr double kNorm = 1e-9;
inline constexpr double kTrace = 1e-9;
inline constexpr double kHermitian = 1e-8;
inline constexpr double kEigenFloor = -1e-8;
}  // namespace tolerance

/// Ordered local dimensions of a multipartite system. Party i is named 'A' + i and the
/// global basis index is row-major in party order: a * d_B * d_C + b * d_C + c.
class PartyLayout {
  public:
    explicit PartyLayout(std::vector<std::size_t> dims);

    std::size_t party_count() const noexcept { return dims_.size(); }
    std::size_t dim(std::size_t party) const { return dims_.at(party); }
    std::size_t total_dim() const noexcept { return total_; }
    const std::vector<std::size_t> &dims() const noexcept { return dims_; }

    /// Layout of the given (sorted, distinct) parties in original order.
    PartyLayout subset(std::span<const std::size_t> parties) const;
    PartyLayout concat(const PartyLayout &other) const;

    /// Per-party digits of a global basis index.
    std::vector<std::size_t> digits(std::size_t index) const;
    std::size_t index(std::span<const std::size_t> digits) const;

    static char party_name(std::size_t party) { return static_cast<char>('A' + party); }

    bool operator==(const PartyLayout &) const = default;

  private:
    std::vector<std::size_t> dims_;
    std::size_t total_ = 1;
};

class DensityOperator;

class PureState {
  public:
    /// Validates unit norm to 1e-9.
    PureState(Vector amplitudes, PartyLayout layout);

    const Vector &amplitudes() const noexcept { return amplitudes_; }
    const PartyLayout &layout() const noexcept { return layout_; }

    DensityOperator projector() const;

  private:
    Vector amplitudes_;
    PartyLayout layout_;
};

/// Trace-one Hermitian positive-semidefinite operator. Construction validates all three.
class DensityOperator {
  public:
    DensityOperator(Matrix matrix, PartyLayout layout);

    static DensityOperator maximally_mixed(const PartyLayout &layout);

    const Matrix &matrix() const noexcept { return matrix_; }
    const PartyLayout &layout() const noexcept { return layout_; }
    std::size_t dim() const noexcept { return layout_.total_dim(); }

    Complex trace() const { return matrix_.trace(); }

    /// Eigenvalues in ascending order, clipped at zero.
    Eigen::VectorXd eigenvalues() const;

  private:
    Matrix matrix_;
    PartyLayout layout_;
};

using StateValue = std::variant<PureState, DensityOperator>;

Matrix kron(const Matrix &a, const Matrix &b);
Vector kron(const Vector &a, const Vector &b);

DensityOperator tensor_product(std::span<const DensityOperator> factors);
PureState tensor_product(std::span<const PureState> factors);
/// Throws KindMismatch when the factors mix pure and density values.
StateValue tensor_product(std::span<const StateValue> factors);

/// Traces out every party not listed in `keep`. Duplicates in `keep` are ignored and the
/// kept parties appear in their original order.
DensityOperator partial_trace(const DensityOperator &state, std::span<const std::size_t> keep);
DensityOperator partial_trace(const DensityOperator &state, std::initializer_list<std::size_t> keep);

/// Result party i is original party order[i]; order must be a permutation.
DensityOperator permute_parties(const DensityOperator &state, std::span<const std::size_t> order);

PureState basis_state(const PartyLayout &layout, std::span<const std::size_t> digits);
PureState basis_state(const PartyLayout &layout, std::initializer_list<std::size_t> digits);

/// a|000> + sqrt(1 - a^2)|111>, 0 <= a <= 1.
PureState ghz_family(double a);
PureState ghz_state();
/// (|001> + |010> + |100>) / sqrt(3).
PureState w_state();
/// (|00> + |11>) / sqrt(2).
PureState bell_state();

/// p |psi><psi| + (1 - p) I / D.
DensityOperator white_noise_mix(const PureState &pure, double p);

}  // namespace steer
