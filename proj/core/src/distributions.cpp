#include "steer/distributions.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "steer/error.hpp"

namespace steer {

namespace {

constexpr double kNegativeFloor = -1e-12;
constexpr double kImaginaryResidue = 1e-10;
constexpr double kNormalization = 1e-9;

std::vector<std::size_t> identity_parties(std::size_t n) {
    std::vector<std::size_t> out(n);
    std::iota(out.begin(), out.end(), 0);
    return out;
}

}  // namespace

JointDistribution::JointDistribution(std::vector<double> probabilities, std::vector<std::size_t> shape)
    : JointDistribution(std::move(probabilities), shape, identity_parties(shape.size())) {}

JointDistribution::JointDistribution(std::vector<double> probabilities, std::vector<std::size_t> shape,
                                     std::vector<std::size_t> parties)
    : probabilities_(std::move(probabilities)), shape_(std::move(shape)), parties_(std::move(parties)) {
    if (shape_.empty()) throw Error(ErrorCode::EmptyInput, "distribution needs at least one party");
    if (parties_.size() != shape_.size()) {
        throw Error(ErrorCode::DimensionMismatch, "party label count does not match tensor rank");
    }
    const std::size_t total =
        std::accumulate(shape_.begin(), shape_.end(), std::size_t{1}, std::multiplies<>());
    if (total != probabilities_.size()) {
        throw Error(ErrorCode::DimensionMismatch, "probability count does not match shape");
    }
    double sum = 0.0;
    for (double &p : probabilities_) {
        if (!(p >= kNegativeFloor)) {
            std::ostringstream msg;
            msg << "probability " << p << " is negative beyond roundoff";
            throw Error(ErrorCode::InvalidDistribution, msg.str());
        }
        p = std::max(p, 0.0);
        sum += p;
    }
    if (std::abs(sum - 1.0) > kNormalization) {
        std::ostringstream msg;
        msg << "probabilities sum to " << sum;
        throw Error(ErrorCode::InvalidDistribution, msg.str());
    }
}

double JointDistribution::at(std::span<const std::size_t> outcomes) const {
    if (outcomes.size() != shape_.size()) {
        throw Error(ErrorCode::DimensionMismatch, "outcome tuple has wrong length");
    }
    std::size_t idx = 0;
    for (std::size_t k = 0; k < shape_.size(); ++k) {
        if (outcomes[k] >= shape_[k]) throw Error(ErrorCode::DomainError, "outcome out of range");
        idx = idx * shape_[k] + outcomes[k];
    }
    return probabilities_[idx];
}

double JointDistribution::at(std::initializer_list<std::size_t> outcomes) const {
    return at(std::span<const std::size_t>(outcomes.begin(), outcomes.size()));
}

std::size_t JointDistribution::axis_of(std::size_t party) const {
    auto it = std::find(parties_.begin(), parties_.end(), party);
    if (it == parties_.end()) {
        throw Error(ErrorCode::BadPartyIndex,
                    std::string("party ") + PartyLayout::party_name(party) + " is not in the distribution");
    }
    return static_cast<std::size_t>(it - parties_.begin());
}

JointDistribution joint_distribution(const DensityOperator &state, std::span<const Observable> observables) {
    const PartyLayout &layout = state.layout();
    if (observables.size() != layout.party_count()) {
        throw Error(ErrorCode::DimensionMismatch, "need exactly one observable per party");
    }
    Matrix basis = observables.front().basis();
    for (std::size_t p = 0; p < observables.size(); ++p) {
        if (observables[p].dim() != layout.dim(p)) {
            std::ostringstream msg;
            msg << "observable for party " << PartyLayout::party_name(p) << " has dimension "
                << observables[p].dim() << ", party has " << layout.dim(p);
            throw Error(ErrorCode::DimensionMismatch, msg.str());
        }
        if (p > 0) basis = kron(basis, observables[p].basis());
    }

    const Matrix rotated = basis.adjoint() * state.matrix() * basis;
    std::vector<double> probs(layout.total_dim());
    for (std::size_t i = 0; i < probs.size(); ++i) {
        const Complex v = rotated(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i));
        if (std::abs(v.imag()) > kImaginaryResidue) {
            throw Error(ErrorCode::InvalidDistribution, "complex diagonal entry in measured state");
        }
        probs[i] = v.real();
    }
    return JointDistribution(std::move(probs), layout.dims());
}

JointDistribution joint_distribution(const DensityOperator &state, std::initializer_list<Observable> observables) {
    return joint_distribution(state, std::span<const Observable>(observables.begin(), observables.size()));
}

JointDistribution marginalize(const JointDistribution &dist, std::span<const std::size_t> keep) {
    if (keep.empty()) throw Error(ErrorCode::EmptyKeepSet, "at least one party must be kept");

    std::vector<std::size_t> kept_axes;
    for (std::size_t party : keep) kept_axes.push_back(dist.axis_of(party));
    std::sort(kept_axes.begin(), kept_axes.end());
    kept_axes.erase(std::unique(kept_axes.begin(), kept_axes.end()), kept_axes.end());

    const auto &shape = dist.shape();
    std::vector<std::size_t> out_shape, out_parties;
    for (std::size_t axis : kept_axes) {
        out_shape.push_back(shape[axis]);
        out_parties.push_back(dist.parties()[axis]);
    }
    const std::size_t out_size =
        std::accumulate(out_shape.begin(), out_shape.end(), std::size_t{1}, std::multiplies<>());

    std::vector<double> out(out_size, 0.0);
    std::vector<std::size_t> digits(shape.size());
    const auto &probs = dist.probabilities();
    for (std::size_t i = 0; i < probs.size(); ++i) {
        std::size_t rest = i;
        for (std::size_t k = shape.size(); k-- > 0;) {
            digits[k] = rest % shape[k];
            rest /= shape[k];
        }
        std::size_t j = 0;
        for (std::size_t axis : kept_axes) j = j * shape[axis] + digits[axis];
        out[j] += probs[i];
    }
    return JointDistribution(std::move(out), std::move(out_shape), std::move(out_parties));
}

JointDistribution marginalize(const JointDistribution &dist, std::initializer_list<std::size_t> keep) {
    return marginalize(dist, std::span<const std::size_t>(keep.begin(), keep.size()));
}

std::string to_csv(const JointDistribution &dist) {
    std::ostringstream out;
    for (std::size_t party : dist.parties()) {
        out << static_cast<char>(std::tolower(PartyLayout::party_name(party))) << ',';
    }
    out << "probability\n";
    out << std::setprecision(12);
    const auto &shape = dist.shape();
    std::vector<std::size_t> digits(shape.size());
    for (std::size_t i = 0; i < dist.size(); ++i) {
        std::size_t rest = i;
        for (std::size_t k = shape.size(); k-- > 0;) {
            digits[k] = rest % shape[k];
            rest /= shape[k];
        }
        for (std::size_t d : digits) out << d << ',';
        out << dist.probabilities()[i] << '\n';
    }
    return out.str();
}

}  // namespace steer
