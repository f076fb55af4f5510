#include "steer/io.hpp"

#include <fstream>
#include <sstream>

#include "json_detail.hpp"
#include "steer/error.hpp"

namespace steer {

using nlohmann::json;

namespace detail {

namespace {

Complex parse_complex(const json &entry) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number()) {
        throw Error(ErrorCode::ParseError, "complex entries must be [re, im] number pairs");
    }
    return {entry[0].get<double>(), entry[1].get<double>()};
}

std::vector<Complex> parse_complex_list(const json &list) {
    if (!list.is_array()) throw Error(ErrorCode::ParseError, "expected a list of [re, im] pairs");
    std::vector<Complex> out;
    out.reserve(list.size());
    for (const auto &entry : list) out.push_back(parse_complex(entry));
    return out;
}

}  // namespace

json complex_list(const Complex *data, std::size_t n) {
    json out = json::array();
    for (std::size_t i = 0; i < n; ++i) out.push_back({data[i].real(), data[i].imag()});
    return out;
}

json to_json(const PureState &state) {
    const Vector &v = state.amplitudes();
    return {{"dims", state.layout().dims()},
            {"kind", "pure"},
            {"data", complex_list(v.data(), static_cast<std::size_t>(v.size()))}};
}

json to_json(const DensityOperator &state) {
    // Eigen is column-major by default; the file format is row-major.
    const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm = state.matrix();
    return {{"dims", state.layout().dims()},
            {"kind", "density"},
            {"data", complex_list(rm.data(), static_cast<std::size_t>(rm.size()))}};
}

json to_json(const Observable &observable) {
    json basis = json::array();
    for (Eigen::Index k = 0; k < observable.basis().cols(); ++k) {
        const Vector col = observable.basis().col(k);
        basis.push_back(complex_list(col.data(), static_cast<std::size_t>(col.size())));
    }
    return {{"d", observable.dim()}, {"basis", basis}};
}

StateValue state_from_json(const json &j) {
    if (!j.is_object() || !j.contains("dims") || !j.contains("kind") || !j.contains("data")) {
        throw Error(ErrorCode::ParseError, "state JSON needs \"dims\", \"kind\" and \"data\"");
    }
    std::vector<std::size_t> dims;
    const json &jdims = j.at("dims");
    if (!jdims.is_array()) throw Error(ErrorCode::ParseError, "\"dims\" must be a list of positive integers");
    for (const json &d : jdims) {
        if (!d.is_number_unsigned()) throw Error(ErrorCode::ParseError, "\"dims\" must be a list of positive integers");
        dims.push_back(d.get<std::size_t>());
    }
    PartyLayout layout(std::move(dims));
    const std::string kind = j.at("kind").is_string() ? j.at("kind").get<std::string>() : "";
    const std::vector<Complex> data = parse_complex_list(j.at("data"));
    const auto n = static_cast<Eigen::Index>(layout.total_dim());

    if (kind == "pure") {
        if (static_cast<Eigen::Index>(data.size()) != n) {
            throw Error(ErrorCode::DimensionMismatch, "pure state data length must equal the total dimension");
        }
        return PureState(Eigen::Map<const Vector>(data.data(), n), std::move(layout));
    }
    if (kind == "density") {
        if (static_cast<Eigen::Index>(data.size()) != n * n) {
            throw Error(ErrorCode::DimensionMismatch, "density data length must equal dimension squared");
        }
        Matrix m(n, n);
        for (Eigen::Index r = 0; r < n; ++r) {
            for (Eigen::Index c = 0; c < n; ++c) m(r, c) = data[static_cast<std::size_t>(r * n + c)];
        }
        return DensityOperator(std::move(m), std::move(layout));
    }
    throw Error(ErrorCode::ParseError, "\"kind\" must be \"pure\" or \"density\"");
}

Observable observable_from_json(const json &j, std::size_t expected_dim) {
    if (j.is_string()) return builtin_observable(j.get<std::string>(), expected_dim);
    if (!j.is_object() || !j.contains("d") || !j.contains("basis") || !j.at("d").is_number_unsigned()) {
        throw Error(ErrorCode::ParseError, "observable JSON needs \"d\" and \"basis\"");
    }
    const auto d = j.at("d").get<std::size_t>();
    if (expected_dim != 0 && d != expected_dim) {
        throw Error(ErrorCode::DimensionMismatch, "observable dimension does not match the party");
    }
    const json &basis = j.at("basis");
    if (!basis.is_array() || basis.size() != d) {
        throw Error(ErrorCode::ParseError, "\"basis\" must hold exactly d vectors");
    }
    const auto n = static_cast<Eigen::Index>(d);
    Matrix m(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const auto vec = parse_complex_list(basis[static_cast<std::size_t>(k)]);
        if (vec.size() != d) throw Error(ErrorCode::ParseError, "basis vectors must have length d");
        for (Eigen::Index i = 0; i < n; ++i) m(i, k) = vec[static_cast<std::size_t>(i)];
    }
    return Observable(std::move(m));
}

}  // namespace detail

namespace {

json parse_text(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
}

std::string read_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

StateValue parse_state_json(std::string_view text) { return detail::state_from_json(parse_text(text)); }

std::string state_to_json(const StateValue &state) {
    return std::visit([](const auto &s) { return detail::to_json(s).dump(); }, state);
}

StateValue load_state_file(const std::filesystem::path &path) { return parse_state_json(read_file(path)); }

void save_state_file(const std::filesystem::path &path, const StateValue &state) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::ParseError, "cannot write '" + path.string() + "'");
    out << state_to_json(state) << '\n';
}

DensityOperator as_density(const StateValue &state) {
    if (const auto *pure = std::get_if<PureState>(&state)) return pure->projector();
    return std::get<DensityOperator>(state);
}

Observable parse_observable_json(std::string_view text) {
    return detail::observable_from_json(parse_text(text), 0);
}

std::string observable_to_json(const Observable &observable) { return detail::to_json(observable).dump(); }

std::vector<ObservablePair> parse_observable_pairs_json(std::string_view text, const PartyLayout &layout) {
    const json j = parse_text(text);
    if (!j.is_object()) throw Error(ErrorCode::ParseError, "observable set must be a JSON object");
    std::vector<ObservablePair> pairs;
    for (std::size_t p = 0; p < layout.party_count(); ++p) {
        const std::string key(1, PartyLayout::party_name(p));
        if (!j.contains(key) || !j.at(key).contains("first") || !j.at(key).contains("second")) {
            throw Error(ErrorCode::ParseError, "observable set needs \"first\" and \"second\" for party " + key);
        }
        pairs.emplace_back(detail::observable_from_json(j.at(key).at("first"), layout.dim(p)),
                           detail::observable_from_json(j.at(key).at("second"), layout.dim(p)));
    }
    return pairs;
}

}  // namespace steer
