#include "steer/lhs.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "json_detail.hpp"
#include "steer/distributions.hpp"
#include "steer/entropy.hpp"

namespace steer {

using nlohmann::json;

namespace {

constexpr std::size_t A = 0, B = 1, C = 2;
constexpr std::array<const char *, 2> kSettingNames = {"X", "Z"};

void check_weights(const std::vector<double> &weights) {
    if (weights.empty()) throw Error(ErrorCode::BadWeights, "model has no branches");
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) throw Error(ErrorCode::BadWeights, "branch weights must be nonnegative");
        total += w;
    }
    if (std::abs(total - 1.0) > kWeightTolerance) {
        std::ostringstream msg;
        msg << "branch weights sum to " << total;
        throw Error(ErrorCode::BadWeights, msg.str());
    }
}

/// Accumulates weighted three-party terms into one operator, checking every term's layout.
class Mixture {
  public:
    void add(double weight, const DensityOperator &term) {
        if (!layout_) {
            layout_ = term.layout();
            sum_ = Matrix::Zero(term.matrix().rows(), term.matrix().cols());
        } else if (!(term.layout() == *layout_)) {
            throw Error(ErrorCode::DimensionMismatch, "branches act on different layouts");
        }
        if (term.layout().party_count() != 3) {
            throw Error(ErrorCode::BadArity, "model branches must describe three parties");
        }
        sum_ += weight * term.matrix();
    }

    DensityOperator finish() const { return DensityOperator(sum_, *layout_); }

  private:
    std::optional<PartyLayout> layout_;
    Matrix sum_;
};

DensityOperator product(const DensityOperator &x, const DensityOperator &y) {
    const std::array<DensityOperator, 2> factors = {x, y};
    return tensor_product(std::span<const DensityOperator>(factors));
}

DensityOperator product(const DensityOperator &x, const DensityOperator &y, const DensityOperator &z) {
    const std::array<DensityOperator, 3> factors = {x, y, z};
    return tensor_product(std::span<const DensityOperator>(factors));
}

// ---- sampling ----

using Rng = std::mt19937_64;

Rng model_rng(std::uint64_t seed, std::size_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return Rng(seq);
}

Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng &rng) {
    std::normal_distribution<double> normal;
    Matrix g(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(i, j) = Complex(re, im);
        }
    }
    return g;
}

DensityOperator random_state(const PartyLayout &layout, Rng &rng) {
    const auto n = static_cast<Eigen::Index>(layout.total_dim());
    std::bernoulli_distribution coin(0.5);
    if (coin(rng)) {
        Vector v = gaussian_matrix(n, 1, rng).col(0);
        v.normalize();
        return DensityOperator(v * v.adjoint(), layout);
    }
    const Matrix g = gaussian_matrix(n, n, rng);
    Matrix m = g * g.adjoint();
    m /= m.trace().real();
    // Restore exact Hermiticity after the scaling.
    m = 0.5 * (m + m.adjoint()).eval();
    return DensityOperator(std::move(m), layout);
}

std::vector<double> simplex_weights(std::size_t n, Rng &rng) {
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> w(n);
    double total = 0.0;
    for (double &x : w) {
        x = expo(rng);
        total += x;
    }
    for (double &x : w) x /= total;
    return w;
}

void check_sampling(std::size_t count, const SamplingOptions &options) {
    if (count == 0) throw Error(ErrorCode::DomainError, "sample count must be >= 1");
    if (options.branch_count == 0) throw Error(ErrorCode::DomainError, "branch count must be >= 1");
    if (options.dims.size() != 3) throw Error(ErrorCode::BadArity, "models are tripartite");
}

// ---- verification ----

double local_entropy(const DensityOperator &state, std::initializer_list<Observable> obs) {
    return shannon_entropy(joint_distribution(state, obs));
}

class CheckLog {
  public:
    void check(const std::string &name, double lhs, double bound) {
        const double margin = lhs - bound;
        ++report_.checks;
        if (report_.checks == 1 || margin < report_.min_margin) {
            report_.min_margin = margin;
            report_.tightest_check = name;
        }
    }

    void check_reports(const std::vector<CriterionReport> &reports, bool steering, bool gms) {
        for (const auto &r : reports) {
            if (steering && r.steering_bound) check(std::string(to_string(r.id)) + " steering", r.lhs, *r.steering_bound);
            if (gms && r.gms_bound) check(std::string(to_string(r.id)) + " gms", r.lhs, *r.gms_bound);
        }
    }

    template <class Model>
    VerificationReport finish(const Model &model) const {
        if (report_.checks > 0 && report_.min_margin < -kOracleSlack) {
            throw OracleFailure(report_.tightest_check, report_.min_margin, to_json(model));
        }
        return report_;
    }

  private:
    VerificationReport report_;
};

std::array<Observable, 3> setting(const TripartiteObservables &obs, std::size_t s) {
    return {obs.a.setting(s), obs.b.setting(s), obs.c.setting(s)};
}

json branch_json(double weight, std::initializer_list<std::pair<const char *, const DensityOperator *>> parts) {
    json j = {{"weight", weight}};
    for (const auto &[key, state] : parts) j[key] = detail::to_json(*state);
    return j;
}

json hybrid_family_json(const std::vector<HybridBranch> &family, const char *local_key, const char *rest_key) {
    json out = json::array();
    for (const auto &b : family) out.push_back(branch_json(b.weight, {{local_key, &b.local}, {rest_key, &b.rest}}));
    return out;
}

}  // namespace

OracleFailure::OracleFailure(std::string check, double margin, std::string model_json)
    : Error(ErrorCode::OracleFailure,
            [&] {
                std::ostringstream msg;
                msg << "local-hidden-state model violates '" << check << "' by " << -margin << " bits";
                return msg.str();
            }()),
      check_(std::move(check)),
      margin_(margin),
      model_json_(std::move(model_json)) {}

DensityOperator realize(const LhsModel &model) {
    std::vector<double> weights;
    for (const auto &b : model.branches) weights.push_back(b.weight);
    check_weights(weights);
    Mixture mix;
    for (const auto &b : model.branches) mix.add(b.weight, product(b.a, b.b, b.c));
    return mix.finish();
}

DensityOperator realize(const HybridLhsModel &model) {
    std::vector<double> weights;
    for (const auto *family : {&model.family_a, &model.family_b, &model.family_c}) {
        for (const auto &b : *family) weights.push_back(b.weight);
    }
    check_weights(weights);

    static constexpr std::array<std::size_t, 3> kBFirstToAbc = {1, 0, 2};
    Mixture mix;
    for (const auto &b : model.family_a) mix.add(b.weight, product(b.local, b.rest));
    for (const auto &b : model.family_b) mix.add(b.weight, permute_parties(product(b.local, b.rest), kBFirstToAbc));
    for (const auto &b : model.family_c) mix.add(b.weight, product(b.rest, b.local));
    return mix.finish();
}

DensityOperator realize(const TwoToOneLhsModel &model) {
    std::vector<double> weights;
    for (const auto &b : model.branches) weights.push_back(b.weight);
    check_weights(weights);
    Mixture mix;
    for (const auto &b : model.branches) mix.add(b.weight, product(b.ab, b.c));
    return mix.finish();
}

std::vector<LhsModel> sample_lhs(std::size_t count, const SamplingOptions &options, std::uint64_t seed) {
    check_sampling(count, options);
    const PartyLayout la({options.dims[0]}), lb({options.dims[1]}), lc({options.dims[2]});
    std::vector<LhsModel> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Rng rng = model_rng(seed, i);
        const auto w = simplex_weights(options.branch_count, rng);
        LhsModel model;
        for (double weight : w) {
            DensityOperator a = random_state(la, rng);
            DensityOperator b = random_state(lb, rng);
            DensityOperator c = random_state(lc, rng);
            model.branches.push_back({weight, std::move(a), std::move(b), std::move(c)});
        }
        out.push_back(std::move(model));
    }
    return out;
}

std::vector<HybridLhsModel> sample_hybrid(std::size_t count, const SamplingOptions &options, std::uint64_t seed) {
    check_sampling(count, options);
    const auto &d = options.dims;
    const PartyLayout la({d[0]}), lb({d[1]}), lc({d[2]});
    const PartyLayout lbc({d[1], d[2]}), lac({d[0], d[2]}), lab({d[0], d[1]});
    std::vector<HybridLhsModel> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Rng rng = model_rng(seed, i);
        const auto w = simplex_weights(3 * options.branch_count, rng);
        HybridLhsModel model;
        for (std::size_t k = 0; k < options.branch_count; ++k) {
            DensityOperator local = random_state(la, rng);
            DensityOperator rest = random_state(lbc, rng);
            model.family_a.push_back({w[k], std::move(local), std::move(rest)});
        }
        for (std::size_t k = 0; k < options.branch_count; ++k) {
            DensityOperator local = random_state(lb, rng);
            DensityOperator rest = random_state(lac, rng);
            model.family_b.push_back({w[options.branch_count + k], std::move(local), std::move(rest)});
        }
        for (std::size_t k = 0; k < options.branch_count; ++k) {
            DensityOperator local = random_state(lc, rng);
            DensityOperator rest = random_state(lab, rng);
            model.family_c.push_back({w[2 * options.branch_count + k], std::move(local), std::move(rest)});
        }
        out.push_back(std::move(model));
    }
    return out;
}

std::vector<TwoToOneLhsModel> sample_two_to_one(std::size_t count, const SamplingOptions &options,
                                                std::uint64_t seed) {
    check_sampling(count, options);
    const auto &d = options.dims;
    const PartyLayout la({d[0]}), lb({d[1]}), lc({d[2]}), lab({d[0], d[1]});
    std::vector<TwoToOneLhsModel> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Rng rng = model_rng(seed, i);
        TwoToOneLhsModel model;
        model.product_ab = std::bernoulli_distribution(0.5)(rng);
        const auto w = simplex_weights(options.branch_count, rng);
        for (double weight : w) {
            DensityOperator ab = model.product_ab ? product(random_state(la, rng), random_state(lb, rng))
                                                  : random_state(lab, rng);
            DensityOperator c = random_state(lc, rng);
            model.branches.push_back({weight, std::move(ab), std::move(c)});
        }
        out.push_back(std::move(model));
    }
    return out;
}

VerificationReport verify_no_violation(const LhsModel &model, const TripartiteObservables &obs) {
    const DensityOperator rho = realize(model);
    CheckLog log;
    log.check_reports(evaluate_one_to_two(rho, obs), true, true);
    log.check_reports(evaluate_two_to_one(rho, obs), true, true);

    for (std::size_t s = 0; s < 2; ++s) {
        const auto o = setting(obs, s);
        const JointDistribution dist = joint_distribution(rho, o);
        double hb = 0.0, hc = 0.0;
        for (const auto &br : model.branches) {
            hb += br.weight * local_entropy(br.b, {o[B]});
            hc += br.weight * local_entropy(br.c, {o[C]});
        }
        const std::string tag = std::string(kSettingNames[s]) + ": ";
        log.check(tag + "H(B|A) >= sum q H_l(B)", conditional_entropy(dist, {B}, {A}), hb);
        log.check(tag + "H(C|A) >= sum q H_l(C)", conditional_entropy(dist, {C}, {A}), hc);
        log.check(tag + "H(BC|A) >= sum q H_l(BC)", conditional_entropy(dist, {B, C}, {A}), hb + hc);
        log.check(tag + "H(B|A,C) >= sum q H_l(B)", conditional_entropy(dist, {B}, {A, C}), hb);
        log.check(tag + "H(C|A,B) >= sum q H_l(C)", conditional_entropy(dist, {C}, {A, B}), hc);
        log.check(tag + "H(C|B) >= sum q H_l(C)", conditional_entropy(dist, {C}, {B}), hc);
    }
    return log.finish(model);
}

VerificationReport verify_no_violation(const HybridLhsModel &model, const TripartiteObservables &obs) {
    const DensityOperator rho = realize(model);
    CheckLog log;
    const auto one_to_two = evaluate_one_to_two(rho, obs);
    for (CriterionId id : {CriterionId::OneToTwoS1, CriterionId::OneToTwoA}) {
        const auto &r = find_report(one_to_two, id);
        log.check(std::string(to_string(id)) + " gms", r.lhs, *r.gms_bound);
    }
    const auto two_to_one = evaluate_two_to_one(rho, obs);
    const auto &tsum = find_report(two_to_one, CriterionId::TwoToOneTsum);
    log.check("Tsum gms", tsum.lhs, *tsum.gms_bound);

    for (std::size_t s = 0; s < 2; ++s) {
        const auto o = setting(obs, s);
        const JointDistribution dist = joint_distribution(rho, o);
        double bc_fa = 0.0, b_fa = 0.0, c_fa = 0.0;  // family A: rho_A (x) rho_BC
        double b_fb = 0.0, c_fb = 0.0;               // family B: rho_B (x) rho_AC
        double c_fc = 0.0;                           // family C: rho_C (x) rho_AB
        for (const auto &br : model.family_a) {
            bc_fa += br.weight * local_entropy(br.rest, {o[B], o[C]});
            b_fa += br.weight * local_entropy(partial_trace(br.rest, {0}), {o[B]});
            c_fa += br.weight * local_entropy(partial_trace(br.rest, {1}), {o[C]});
        }
        for (const auto &br : model.family_b) {
            b_fb += br.weight * local_entropy(br.local, {o[B]});
            c_fb += br.weight * local_entropy(partial_trace(br.rest, {1}), {o[C]});
        }
        for (const auto &br : model.family_c) c_fc += br.weight * local_entropy(br.local, {o[C]});

        const std::string tag = std::string(kSettingNames[s]) + ": ";
        log.check(tag + "H(BC|A) >= non-GMS branch sum", conditional_entropy(dist, {B, C}, {A}),
                  bc_fa + b_fb + c_fc);
        log.check(tag + "H(B|A) >= non-GMS branch sum", conditional_entropy(dist, {B}, {A}), b_fa + b_fb);
        log.check(tag + "H(C|A) >= non-GMS branch sum", conditional_entropy(dist, {C}, {A}), c_fa + c_fc);
        log.check(tag + "H(C|B) >= non-GMS branch sum", conditional_entropy(dist, {C}, {B}), c_fb + c_fc);
        log.check(tag + "H(C|A,B) >= family C sum", conditional_entropy(dist, {C}, {A, B}), c_fc);
        log.check(tag + "H(B|A,C) >= family B sum", conditional_entropy(dist, {B}, {A, C}), b_fb);
    }
    return log.finish(model);
}

VerificationReport verify_no_violation(const TwoToOneLhsModel &model, const TripartiteObservables &obs) {
    const DensityOperator rho = realize(model);
    CheckLog log;
    log.check_reports(evaluate_two_to_one(rho, obs), true, true);
    if (model.product_ab) log.check_reports(evaluate_one_to_two(rho, obs), true, true);

    for (std::size_t s = 0; s < 2; ++s) {
        const auto o = setting(obs, s);
        const JointDistribution dist = joint_distribution(rho, o);
        double hc = 0.0;
        for (const auto &br : model.branches) hc += br.weight * local_entropy(br.c, {o[C]});
        const std::string tag = std::string(kSettingNames[s]) + ": ";
        log.check(tag + "H(C|A,B) >= sum q H_l(C)", conditional_entropy(dist, {C}, {A, B}), hc);
        log.check(tag + "H(C|A) >= sum q H_l(C)", conditional_entropy(dist, {C}, {A}), hc);
        log.check(tag + "H(C|B) >= sum q H_l(C)", conditional_entropy(dist, {C}, {B}), hc);
    }
    return log.finish(model);
}

std::string to_json(const LhsModel &model) {
    json branches = json::array();
    for (const auto &b : model.branches) {
        branches.push_back(branch_json(b.weight, {{"a", &b.a}, {"b", &b.b}, {"c", &b.c}}));
    }
    return json{{"kind", "lhs"}, {"branches", branches}}.dump();
}

std::string to_json(const HybridLhsModel &model) {
    return json{{"kind", "hybrid"},
                {"family_a", hybrid_family_json(model.family_a, "a", "bc")},
                {"family_b", hybrid_family_json(model.family_b, "b", "ac")},
                {"family_c", hybrid_family_json(model.family_c, "c", "ab")}}
        .dump();
}

std::string to_json(const TwoToOneLhsModel &model) {
    json branches = json::array();
    for (const auto &b : model.branches) branches.push_back(branch_json(b.weight, {{"ab", &b.ab}, {"c", &b.c}}));
    return json{{"kind", "two-to-one"}, {"product_ab", model.product_ab}, {"branches", branches}}.dump();
}

}  // namespace steer
