#pragma once

#include <json.hpp>

#include "tzcl/diffpoly.hpp"

namespace tzcl {

/// One record per term: {"coeff": [re, im, s2, is2], "exp_u": "q", "powers": {"u0": 2, ...}}.
nlohmann::json to_json(const DiffPoly& p);
DiffPoly poly_from_json(const nlohmann::json& j);

}  // namespace tzcl
