#pragma once

#include <string>

#include <json.hpp>

#include "wigner/recovery.hpp"
#include "wigner/xset.hpp"

namespace wigner {

// JSON conventions: a complex scalar is [re, im]; a Hermitian matrix is a
// row-major nested array of complex scalars; a Frame stores its columns
// column-major. OperatorMap matrices are row-major real arrays in the
// canonical Hermitian basis ordering.

nlohmann::json complex_to_json(const std::complex<double>& z);
std::complex<double> complex_from_json(const nlohmann::json& j);

nlohmann::json matrix_to_json(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd matrix_from_json(const nlohmann::json& j);

nlohmann::json hermitian_to_json(const HermitianOperator& a);
HermitianOperator hermitian_from_json(const nlohmann::json& j);

nlohmann::json frame_to_json(const Frame& f);
Frame frame_from_json(const nlohmann::json& j);

nlohmann::json operator_map_to_json(const OperatorMap& map);
OperatorMap operator_map_from_json(const nlohmann::json& j);

nlohmann::json semilinear_to_json(const SemilinearMap& u);
SemilinearMap semilinear_from_json(const nlohmann::json& j);

nlohmann::json condition_report_to_json(const ConditionReport& report);
ConditionReport condition_report_from_json(const nlohmann::json& j);

nlohmann::json classification_to_json(const Classification& c);
Classification classification_from_json(const nlohmann::json& j);

nlohmann::json xset_sample_to_json(const XSetSample& s);
XSetSample xset_sample_from_json(const nlohmann::json& j);

nlohmann::json geodesic_to_json(const std::vector<Frame>& vertices);

// File helpers; ParseError on malformed content.
nlohmann::json load_json(const std::string& path);
void save_json(const std::string& path, const nlohmann::json& j);

}  // namespace wigner
