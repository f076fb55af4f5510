#pragma once

#include <nlohmann/json.hpp>

#include "steer/observables.hpp"
#include "steer/state.hpp"

namespace steer::detail {

nlohmann::json complex_list(const Complex *data, std::size_t n);
nlohmann::json to_json(const PureState &state);
nlohmann::json to_json(const DensityOperator &state);
nlohmann::json to_json(const Observable &observable);
StateValue state_from_json(const nlohmann::json &j);
Observable observable_from_json(const nlohmann::json &j, std::size_t expected_dim);

}  // namespace steer::detail
