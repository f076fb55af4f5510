#include "steer/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "steer/error.hpp"

namespace steer {

namespace {
constexpr double kOrthonormality = 1e-9;
}

Observable::Observable(Matrix basis, std::string name) : basis_(std::move(basis)), name_(std::move(name)) {
    if (basis_.rows() != basis_.cols()) {
        throw Error(ErrorCode::InvalidObservable, "eigenbasis must contain exactly d vectors of length d");
    }
    if (basis_.rows() < 2) {
        throw Error(ErrorCode::DomainError, "observable dimension must be >= 2");
    }
    const Matrix gram = basis_.adjoint() * basis_;
    const auto n = basis_.rows();
    double worst = (gram - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
    if (worst > kOrthonormality) {
        std::ostringstream msg;
        msg << "eigenbasis of '" << name_ << "' is not orthonormal (deviation " << worst << ")";
        throw Error(ErrorCode::InvalidObservable, msg.str());
    }
}

Observable Observable::tensor(const Observable &other) const {
    return Observable(kron(basis_, other.basis_), name_ + "*" + other.name_);
}

Observable pauli_z() { return Observable(Matrix::Identity(2, 2), "pauliZ"); }

Observable pauli_x() {
    Matrix b(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    b << s, s, s, -s;
    return Observable(std::move(b), "pauliX");
}

Observable clock_basis(std::size_t d) {
    if (d < 2) throw Error(ErrorCode::DomainError, "clock basis needs d >= 2");
    const auto n = static_cast<Eigen::Index>(d);
    return Observable(Matrix::Identity(n, n), "clock");
}

Observable shift_basis(std::size_t d) {
    if (d < 2) throw Error(ErrorCode::DomainError, "shift basis needs d >= 2");
    const auto n = static_cast<Eigen::Index>(d);
    Matrix b(n, n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index k = 0; k < n; ++k) {
            const double phase = 2.0 * std::numbers::pi * static_cast<double>((j * k) % n) / static_cast<double>(n);
            b(k, j) = scale * Complex(std::cos(phase), std::sin(phase));
        }
    }
    return Observable(std::move(b), "shift");
}

Observable builtin_observable(std::string_view name, std::size_t d) {
    if (name == "pauliX" || name == "pauliZ") {
        if (d != 2) throw Error(ErrorCode::DimensionMismatch, "Pauli observables require d = 2");
        return name == "pauliX" ? pauli_x() : pauli_z();
    }
    if (name == "clock") return clock_basis(d);
    if (name == "shift") return shift_basis(d);
    throw Error(ErrorCode::ParseError, "unknown built-in observable '" + std::string(name) + "'");
}

double mub_overlap(const Observable &first, const Observable &second) {
    if (first.dim() != second.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "observables act on different dimensions");
    }
    const double alpha = (first.basis().adjoint() * second.basis()).cwiseAbs2().maxCoeff();
    // Unbiased pairs land a few ulps off 1/k (e.g. |1/sqrt2|^2); snap so bounds like -log2(1/2) = 1
    // come out exact.
    const double k = std::round(1.0 / alpha);
    return std::abs(alpha - 1.0 / k) <= kOverlapSnap ? 1.0 / k : alpha;
}

ObservablePair::ObservablePair(Observable first, Observable second)
    : first_(std::move(first)), second_(std::move(second)), alpha_(mub_overlap(first_, second_)) {}

ObservablePair pauli_pair() { return ObservablePair(pauli_x(), pauli_z()); }

ObservablePair mub_pair(std::size_t d) { return ObservablePair(shift_basis(d), clock_basis(d)); }

CompositeOverlap composite_overlap(const ObservablePair &pair_b, const ObservablePair &pair_c) {
    return {pair_b.alpha() * pair_c.alpha(), std::min(pair_b.alpha(), pair_c.alpha())};
}

}  // namespace steer
