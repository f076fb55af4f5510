#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "steer/criteria.hpp"
#include "steer/error.hpp"
#include "steer/state.hpp"

// Finite local-hidden-state models. Each branch is a weighted product of pre-determined
// local states; realizing a model yields the density operator whose statistics it explains.
// Any criterion violation on a realized model is an implementation bug.
namespace steer {

/// Fully pre-determined branch: rho_A (x) rho_B (x) rho_C.
struct LhsBranch {
    double weight;
    DensityOperator a;
    DensityOperator b;
    DensityOperator c;
};

struct LhsModel {
    std::vector<LhsBranch> branches;
};

/// Hybrid branch: one pre-determined party (`local`) and an arbitrary, possibly entangled,
/// state of the remaining two parties (`rest`, in A-B-C order).
struct HybridBranch {
    double weight;
    DensityOperator local;
    DensityOperator rest;
};

/// Family A: rho_A (x) rho_BC. Family B: rho_B (x) rho_AC. Family C: rho_C (x) rho_AB.
/// Weights across all three families sum to one.
struct HybridLhsModel {
    std::vector<HybridBranch> family_a;
    std::vector<HybridBranch> family_b;
    std::vector<HybridBranch> family_c;
};

struct TwoToOneBranch {
    double weight;
    DensityOperator ab;
    DensityOperator c;
};

/// Charlie's state is pre-determined per branch. With `product_ab` every `ab` factorizes and
/// the model is nonsteerable from Alice and Bob; otherwise Alice and Bob may share quantum
/// correlations (the third non-GMS family).
struct TwoToOneLhsModel {
    std::vector<TwoToOneBranch> branches;
    bool product_ab = true;
};

inline constexpr double kWeightTolerance = 1e-9;

DensityOperator realize(const LhsModel &model);
DensityOperator realize(const HybridLhsModel &model);
DensityOperator realize(const TwoToOneLhsModel &model);

struct SamplingOptions {
    std::size_t branch_count = 4;
    std::vector<std::size_t> dims = {2, 2, 2};
};

// Model i is drawn from an mt19937_64 seeded with seed_seq{seed, i}. Local states are pure
// (normalized complex Gaussian vector) or mixed (G G^dagger / tr for complex Gaussian G) with
// equal probability; weights are flat on the simplex (normalized exponential variates).
std::vector<LhsModel> sample_lhs(std::size_t count, const SamplingOptions &options, std::uint64_t seed);
std::vector<HybridLhsModel> sample_hybrid(std::size_t count, const SamplingOptions &options, std::uint64_t seed);
std::vector<TwoToOneLhsModel> sample_two_to_one(std::size_t count, const SamplingOptions &options,
                                                std::uint64_t seed);

/// Thrown by verify_no_violation; carries the failing check and the model as JSON.
class OracleFailure : public Error {
  public:
    OracleFailure(std::string check, double margin, std::string model_json);

    const std::string &check() const noexcept { return check_; }
    double margin() const noexcept { return margin_; }
    const std::string &model_json() const noexcept { return model_json_; }

  private:
    std::string check_;
    double margin_;
    std::string model_json_;
};

struct VerificationReport {
    std::size_t checks = 0;
    double min_margin = 0.0;  // smallest lhs - bound over all checks
    std::string tightest_check;
};

/// Margin below which a check counts as violated.
inline constexpr double kOracleSlack = 1e-9;

// LhsModel: every one-to-two and two-to-one bound plus the branch-weighted bounds
//   H(O_m|O_A) >= sum q H_l(O_m) for m = B, C, BC, and H(O_C|O_A,O_B), H(O_C|O_B), H(O_B|O_A,O_C).
// HybridLhsModel: the GMS bounds of S1, A and Tsum plus the branch-weighted non-GMS bounds.
// TwoToOneLhsModel: every two-to-one bound plus H(O_C|O_A,O_B), H(O_C|O_m) >= sum q H_l(O_C);
//   product models are fully separable and also face every one-to-two bound.
VerificationReport verify_no_violation(const LhsModel &model, const TripartiteObservables &obs);
VerificationReport verify_no_violation(const HybridLhsModel &model, const TripartiteObservables &obs);
VerificationReport verify_no_violation(const TwoToOneLhsModel &model, const TripartiteObservables &obs);

std::string to_json(const LhsModel &model);
std::string to_json(const HybridLhsModel &model);
std::string to_json(const TwoToOneLhsModel &model);

}  // namespace steer
