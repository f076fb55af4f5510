#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "steer/state.hpp"

namespace steer {

/// Rank-1 projective measurement on one party: an orthonormal eigenbasis whose column k
/// is the eigenvector for outcome label k. Eigenvalues are never needed.
class Observable {
  public:
    /// Throws InvalidObservable unless the columns are orthonormal to 1e-9.
    explicit Observable(Matrix basis, std::string name = "custom");

    std::size_t dim() const noexcept { return static_cast<std::size_t>(basis_.rows()); }
    const Matrix &basis() const noexcept { return basis_; }
    const std::string &name() const noexcept { return name_; }

    /// Eigenbasis of O (x) other with outcome label j * other.dim() + k.
    Observable tensor(const Observable &other) const;

  private:
    Matrix basis_;
    std::string name_;
};

Observable pauli_z();
Observable pauli_x();
/// Computational basis of dimension d.
Observable clock_basis(std::size_t d);
/// Discrete Fourier transform of the computational basis.
Observable shift_basis(std::size_t d);

/// Resolves "pauliX", "pauliZ", "clock" or "shift" for dimension d.
Observable builtin_observable(std::string_view name, std::size_t d);

/// Overlaps within this distance of 1/k are reported as exactly 1/k.
inline constexpr double kOverlapSnap = 1e-12;

/// Maximum squared overlap max_{j,k} |<x_j|z_k>|^2.
double mub_overlap(const Observable &first, const Observable &second);

/// Two measurement settings for one party: first is the "X" setting, second the "Z" setting.
class ObservablePair {
  public:
    ObservablePair(Observable first, Observable second);

    const Observable &first() const noexcept { return first_; }
    const Observable &second() const noexcept { return second_; }
    const Observable &setting(std::size_t index) const { return index == 0 ? first_ : second_; }
    std::size_t dim() const noexcept { return first_.dim(); }
    double alpha() const noexcept { return alpha_; }

  private:
    Observable first_;
    Observable second_;
    double alpha_;
};

ObservablePair pauli_pair();
/// (shift, clock) pair; mutually unbiased in any dimension.
ObservablePair mub_pair(std::size_t d);

struct CompositeOverlap {
    double alpha_bc;   // overlap of the product bases, alpha_B * alpha_C
    double alpha_min;  // min(alpha_B, alpha_C)
};

CompositeOverlap composite_overlap(const ObservablePair &pair_b, const ObservablePair &pair_c);

}  // namespace steer
