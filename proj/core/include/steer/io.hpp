#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "steer/observables.hpp"
#include "steer/state.hpp"

// State files:      {"dims":[2,2,2], "kind":"pure"|"density", "data":[[re,im],...]}
//                   "pure" data is the amplitude list, "density" data the row-major matrix.
// Observable files: {"d":2, "basis":[[[re,im],...],...]}, vector k is outcome k.
// Observable sets:  {"A":{"first":<obs>,"second":<obs>}, "B":{...}, "C":{...}} where <obs> is
//                   an observable object or a built-in name ("pauliX","pauliZ","clock","shift").
namespace steer {

StateValue parse_state_json(std::string_view text);
std::string state_to_json(const StateValue &state);
StateValue load_state_file(const std::filesystem::path &path);
void save_state_file(const std::filesystem::path &path, const StateValue &state);

DensityOperator as_density(const StateValue &state);

Observable parse_observable_json(std::string_view text);
std::string observable_to_json(const Observable &observable);

/// One pair per party of `layout`, in party order.
std::vector<ObservablePair> parse_observable_pairs_json(std::string_view text, const PartyLayout &layout);

}  // namespace steer
