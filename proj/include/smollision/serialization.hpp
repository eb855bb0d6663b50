// JSON (de)serialization. Matrices are stored as {"dim": d, "re": [[..]],
// "im": [[..]]} with row-major nested arrays; CQ states as {"p": [..],
// "blocks": [matrix..]}. Doubles round-trip bit-exactly through the shortest
// decimal representation.

#pragma once

#include "smollision/states.hpp"

#include <json.hpp>

#include <string>

namespace smollision {

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

nlohmann::json hermitian_to_json(const HermitianOperator& h);
HermitianOperator hermitian_from_json(const nlohmann::json& j);

nlohmann::json cq_to_json(const CQState& s);
CQState cq_from_json(const nlohmann::json& j);

nlohmann::json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace smollision
