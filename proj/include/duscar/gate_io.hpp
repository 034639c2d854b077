#pragma once

#include <json.hpp>

#include "duscar/dugate.hpp"

namespace duscar {

/// Complex matrices are nested [row][col] arrays of [re, im] pairs.
nlohmann::json op_to_json(const Op& m);
Op op_from_json(const nlohmann::json& j);

/// {"d", "form", "seed", "generators": {"f_plus", "f_minus", "g_plus", "g_minus", "h": [...]}}.
/// The gate matrix itself is not stored; loading rebuilds it from the generators.
nlohmann::json gate_to_json(const DuGate& g);
DuGate gate_from_json(const nlohmann::json& j);

}  // namespace duscar
