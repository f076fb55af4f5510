#include "steer/state.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "steer/error.hpp"

namespace steer {

namespace {

std::vector<std::size_t> normalized_party_set(std::span<const std::size_t> parties, std::size_t count) {
    if (parties.empty()) {
        throw Error(ErrorCode::EmptyKeepSet, "at least one party must be kept");
    }
    std::vector<std::size_t> sorted(parties.begin(), parties.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (sorted.back() >= count) {
        std::ostringstream msg;
        msg << "party index " << sorted.back() << " out of range for " << count << " parties";
        throw Error(ErrorCode::BadPartyIndex, msg.str());
    }
    return sorted;
}

}  // namespace

PartyLayout::PartyLayout(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) {
        throw Error(ErrorCode::EmptyInput, "layout needs at least one party");
    }
    for (std::size_t d : dims_) {
        if (d < 2) {
            throw Error(ErrorCode::DomainError, "every local dimension must be >= 2");
        }
        total_ *= d;
    }
}

PartyLayout PartyLayout::subset(std::span<const std::size_t> parties) const {
    std::vector<std::size_t> dims;
    dims.reserve(parties.size());
    for (std::size_t p : parties) {
        dims.push_back(dim(p));
    }
    return PartyLayout(std::move(dims));
}

PartyLayout PartyLayout::concat(const PartyLayout &other) const {
    std::vector<std::size_t> dims = dims_;
    dims.insert(dims.end(), other.dims_.begin(), other.dims_.end());
    return PartyLayout(std::move(dims));
}

std::vector<std::size_t> PartyLayout::digits(std::size_t index) const {
    std::vector<std::size_t> out(dims_.size());
    for (std::size_t k = dims_.size(); k-- > 0;) {
        out[k] = index % dims_[k];
        index /= dims_[k];
    }
    return out;
}

std::size_t PartyLayout::index(std::span<const std::size_t> digits) const {
    if (digits.size() != dims_.size()) {
        throw Error(ErrorCode::DimensionMismatch, "digit count does not match party count");
    }
    std::size_t idx = 0;
    for (std::size_t k = 0; k < dims_.size(); ++k) {
        if (digits[k] >= dims_[k]) {
            throw Error(ErrorCode::DomainError, "digit exceeds local dimension");
        }
        idx = idx * dims_[k] + digits[k];
    }
    return idx;
}

PureState::PureState(Vector amplitudes, PartyLayout layout)
    : amplitudes_(std::move(amplitudes)), layout_(std::move(layout)) {
    if (static_cast<std::size_t>(amplitudes_.size()) != layout_.total_dim()) {
        throw Error(ErrorCode::DimensionMismatch, "amplitude count does not match layout");
    }
    double norm = amplitudes_.norm();
    if (std::abs(norm - 1.0) > tolerance::kNorm) {
        std::ostringstream msg;
        msg << "state vector norm " << norm << " differs from 1";
        throw Error(ErrorCode::InvalidState, msg.str());
    }
}

DensityOperator PureState::projector() const {
    return DensityOperator(amplitudes_ * amplitudes_.adjoint(), layout_);
}

DensityOperator::DensityOperator(Matrix matrix, PartyLayout layout)
    : matrix_(std::move(matrix)), layout_(std::move(layout)) {
    const auto n = static_cast<Eigen::Index>(layout_.total_dim());
    if (matrix_.rows() != n || matrix_.cols() != n) {
        throw Error(ErrorCode::DimensionMismatch, "matrix shape does not match layout");
    }
    double asym = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
    if (asym > tolerance::kHermitian) {
        std::ostringstream msg;
        msg << "matrix is not Hermitian (max deviation " << asym << ")";
        throw Error(ErrorCode::InvalidState, msg.str());
    }
    Complex tr = matrix_.trace();
    if (std::abs(tr - Complex(1.0, 0.0)) > tolerance::kTrace) {
        std::ostringstream msg;
        msg << "trace " << tr.real() << (tr.imag() < 0 ? "" : "+") << tr.imag() << "i differs from 1";
        throw Error(ErrorCode::InvalidState, msg.str());
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(matrix_, Eigen::EigenvaluesOnly);
    double lowest = solver.eigenvalues().minCoeff();
    if (lowest < tolerance::kEigenFloor) {
        std::ostringstream msg;
        msg << "negative eigenvalue " << lowest;
        throw Error(ErrorCode::InvalidState, msg.str());
    }
}

DensityOperator DensityOperator::maximally_mixed(const PartyLayout &layout) {
    const auto n = static_cast<Eigen::Index>(layout.total_dim());
    return DensityOperator(Matrix::Identity(n, n) / static_cast<double>(n), layout);
}

Eigen::VectorXd DensityOperator::eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(matrix_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseMax(0.0);
}

Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Vector kron(const Vector &a, const Vector &b) {
    Vector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        out.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return out;
}

DensityOperator tensor_product(std::span<const DensityOperator> factors) {
    if (factors.empty()) {
        throw Error(ErrorCode::EmptyInput, "tensor product of an empty list");
    }
    Matrix m = factors.front().matrix();
    PartyLayout layout = factors.front().layout();
    for (const auto &f : factors.subspan(1)) {
        m = kron(m, f.matrix());
        layout = layout.concat(f.layout());
    }
    return DensityOperator(std::move(m), std::move(layout));
}

PureState tensor_product(std::span<const PureState> factors) {
    if (factors.empty()) {
        throw Error(ErrorCode::EmptyInput, "tensor product of an empty list");
    }
    Vector v = factors.front().amplitudes();
    PartyLayout layout = factors.front().layout();
    for (const auto &f : factors.subspan(1)) {
        v = kron(v, f.amplitudes());
        layout = layout.concat(f.layout());
    }
    return PureState(std::move(v), std::move(layout));
}

StateValue tensor_product(std::span<const StateValue> factors) {
    if (factors.empty()) {
        throw Error(ErrorCode::EmptyInput, "tensor product of an empty list");
    }
    const bool pure = std::holds_alternative<PureState>(factors.front());
    for (const auto &f : factors) {
        if (std::holds_alternative<PureState>(f) != pure) {
            throw Error(ErrorCode::KindMismatch, "cannot mix pure and density factors");
        }
    }
    if (pure) {
        std::vector<PureState> items;
        for (const auto &f : factors) items.push_back(std::get<PureState>(f));
        return tensor_product(std::span<const PureState>(items));
    }
    std::vector<DensityOperator> items;
    for (const auto &f : factors) items.push_back(std::get<DensityOperator>(f));
    return tensor_product(std::span<const DensityOperator>(items));
}

DensityOperator partial_trace(const DensityOperator &state, std::span<const std::size_t> keep) {
    const PartyLayout &layout = state.layout();
    const std::vector<std::size_t> kept = normalized_party_set(keep, layout.party_count());
    std::vector<std::size_t> traced;
    for (std::size_t p = 0; p < layout.party_count(); ++p) {
        if (!std::binary_search(kept.begin(), kept.end(), p)) traced.push_back(p);
    }
    if (traced.empty()) {
        return state;
    }

    const PartyLayout kept_layout = layout.subset(kept);
    const std::size_t n = layout.total_dim();
    std::vector<std::size_t> kept_index(n), traced_index(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto d = layout.digits(i);
        std::size_t k = 0, t = 0;
        for (std::size_t p : kept) k = k * layout.dim(p) + d[p];
        for (std::size_t p : traced) t = t * layout.dim(p) + d[p];
        kept_index[i] = k;
        traced_index[i] = t;
    }

    const auto m = static_cast<Eigen::Index>(kept_layout.total_dim());
    Matrix out = Matrix::Zero(m, m);
    const Matrix &rho = state.matrix();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (traced_index[i] == traced_index[j]) {
                out(static_cast<Eigen::Index>(kept_index[i]), static_cast<Eigen::Index>(kept_index[j])) +=
                    rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            }
        }
    }
    return DensityOperator(std::move(out), kept_layout);
}

DensityOperator partial_trace(const DensityOperator &state, std::initializer_list<std::size_t> keep) {
    return partial_trace(state, std::span<const std::size_t>(keep.begin(), keep.size()));
}

DensityOperator permute_parties(const DensityOperator &state, std::span<const std::size_t> order) {
    const PartyLayout &layout = state.layout();
    const std::size_t parties = layout.party_count();
    std::vector<std::size_t> check(order.begin(), order.end());
    std::sort(check.begin(), check.end());
    std::vector<std::size_t> identity(parties);
    std::iota(identity.begin(), identity.end(), 0);
    if (check != identity) {
        throw Error(ErrorCode::BadPartyIndex, "party order is not a permutation");
    }

    std::vector<std::size_t> dims(parties);
    for (std::size_t k = 0; k < parties; ++k) dims[k] = layout.dim(order[k]);
    PartyLayout out_layout(std::move(dims));

    const std::size_t n = layout.total_dim();
    std::vector<std::size_t> map(n);
    std::vector<std::size_t> permuted(parties);
    for (std::size_t i = 0; i < n; ++i) {
        const auto d = layout.digits(i);
        for (std::size_t k = 0; k < parties; ++k) permuted[k] = d[order[k]];
        map[i] = out_layout.index(permuted);
    }

    const auto dim = static_cast<Eigen::Index>(n);
    Matrix out(dim, dim);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out(static_cast<Eigen::Index>(map[i]), static_cast<Eigen::Index>(map[j])) =
                state.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
    }
    return DensityOperator(std::move(out), std::move(out_layout));
}

PureState basis_state(const PartyLayout &layout, std::span<const std::size_t> digits) {
    Vector v = Vector::Zero(static_cast<Eigen::Index>(layout.total_dim()));
    v(static_cast<Eigen::Index>(layout.index(digits))) = 1.0;
    return PureState(std::move(v), layout);
}

PureState basis_state(const PartyLayout &layout, std::initializer_list<std::size_t> digits) {
    return basis_state(layout, std::span<const std::size_t>(digits.begin(), digits.size()));
}

PureState ghz_family(double a) {
    if (!(a >= 0.0 && a <= 1.0)) {
        throw Error(ErrorCode::DomainError, "GHZ amplitude must lie in [0, 1]");
    }
    Vector v = Vector::Zero(8);
    v(0) = a;
    v(7) = std::sqrt(std::max(0.0, 1.0 - a * a));
    return PureState(std::move(v), PartyLayout({2, 2, 2}));
}

PureState ghz_state() { return ghz_family(1.0 / std::sqrt(2.0)); }

PureState w_state() {
    Vector v = Vector::Zero(8);
    const double amp = 1.0 / std::sqrt(3.0);
    v(1) = amp;  // |001>
    v(2) = amp;  // |010>
    v(4) = amp;  // |100>
    return PureState(std::move(v), PartyLayout({2, 2, 2}));
}

PureState bell_state() {
    Vector v = Vector::Zero(4);
    v(0) = v(3) = 1.0 / std::sqrt(2.0);
    return PureState(std::move(v), PartyLayout({2, 2}));
}

DensityOperator white_noise_mix(const PureState &pure, double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw Error(ErrorCode::DomainError, "noise weight p must lie in [0, 1]");
    }
    const auto n = static_cast<Eigen::Index>(pure.layout().total_dim());
    Matrix m = p * (pure.amplitudes() * pure.amplitudes().adjoint()) +
               ((1.0 - p) / static_cast<double>(n)) * Matrix::Identity(n, n);
    return DensityOperator(std::move(m), pure.layout());
}

}  // namespace steer
