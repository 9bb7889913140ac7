#include "wigner/serialize.hpp"

#include <fstream>

namespace wigner {

using nlohmann::json;

namespace {

json require_field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) {
        throw ParseError(std::string("missing field '") + key + "'");
    }
    return j.at(key);
}

double require_number(const json& j) {
    if (!j.is_number()) throw ParseError("expected a number");
    return j.get<double>();
}

int require_int(const json& j) {
    if (!j.is_number_integer()) throw ParseError("expected an integer");
    return j.get<int>();
}

}  // namespace

json complex_to_json(const std::complex<double>& z) {
    return json::array({z.real(), z.imag()});
}

std::complex<double> complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) {
        throw ParseError("complex scalar must be a two-element array [re, im]");
    }
    return {require_number(j[0]), require_number(j[1])};
}

json matrix_to_json(const Eigen::MatrixXcd& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXcd matrix_from_json(const json& j) {
    if (!j.is_array()) throw ParseError("matrix must be an array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    if (rows == 0) return Eigen::MatrixXcd(0, 0);
    if (!j[0].is_array()) throw ParseError("matrix rows must be arrays");
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    Eigen::MatrixXcd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        if (!j[r].is_array() || static_cast<Eigen::Index>(j[r].size()) != cols) {
            throw ParseError("matrix rows have inconsistent lengths");
        }
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(j[r][c]);
    }
    return m;
}

json hermitian_to_json(const HermitianOperator& a) { return matrix_to_json(a.mat()); }

HermitianOperator hermitian_from_json(const json& j) {
    try {
        return HermitianOperator(matrix_from_json(j));
    } catch (const NonHermitianInput& e) {
        throw ParseError(std::string("hermitian matrix: ") + e.what());
    } catch (const DimensionMismatch& e) {
        throw ParseError(std::string("hermitian matrix: ") + e.what());
    }
}

json frame_to_json(const Frame& f) {
    json columns = json::array();
    for (int c = 0; c < f.rank(); ++c) {
        json column = json::array();
        for (int r = 0; r < f.ambient_dim(); ++r) {
            column.push_back(complex_to_json(f.columns()(r, c)));
        }
        columns.push_back(std::move(column));
    }
    return json{{"ambient_dim", f.ambient_dim()}, {"rank", f.rank()}, {"columns", columns}};
}

Frame frame_from_json(const json& j) {
    const int n = require_int(require_field(j, "ambient_dim"));
    const int k = require_int(require_field(j, "rank"));
    const json cols = require_field(j, "columns");
    if (!cols.is_array() || static_cast<int>(cols.size()) != k) {
        throw ParseError("frame: column count differs from rank");
    }
    Eigen::MatrixXcd m(n, k);
    for (int c = 0; c < k; ++c) {
        if (!cols[c].is_array() || static_cast<int>(cols[c].size()) != n) {
            throw ParseError("frame: column length differs from ambient_dim");
        }
        for (int r = 0; r < n; ++r) m(r, c) = complex_from_json(cols[c][r]);
    }
    try {
        return Frame(std::move(m));
    } catch (const Error& e) {
        throw ParseError(std::string("frame: ") + e.what());
    }
}

json operator_map_to_json(const OperatorMap& map) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < map.matrix.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < map.matrix.cols(); ++c) row.push_back(map.matrix(r, c));
        rows.push_back(std::move(row));
    }
    json j{{"n", map.n}, {"n_prime", map.n_prime}, {"matrix", rows}};
    j["k"] = map.k ? json(*map.k) : json(nullptr);
    j["m"] = map.m ? json(*map.m) : json(nullptr);
    return j;
}

OperatorMap operator_map_from_json(const json& j) {
    OperatorMap map;
    map.n = require_int(require_field(j, "n"));
    map.n_prime = require_int(require_field(j, "n_prime"));
    if (map.n < 1 || map.n_prime < 1) throw ParseError("operator map: dims must be positive");
    if (j.contains("k") && !j.at("k").is_null()) map.k = require_int(j.at("k"));
    if (j.contains("m") && !j.at("m").is_null()) map.m = require_int(j.at("m"));
    const json rows = require_field(j, "matrix");
    const Eigen::Index expect_rows = static_cast<Eigen::Index>(map.n_prime) * map.n_prime;
    const Eigen::Index expect_cols = static_cast<Eigen::Index>(map.n) * map.n;
    if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != expect_rows) {
        throw ParseError("operator map: matrix row count differs from n_prime^2");
    }
    map.matrix.resize(expect_rows, expect_cols);
    for (Eigen::Index r = 0; r < expect_rows; ++r) {
        if (!rows[r].is_array() || static_cast<Eigen::Index>(rows[r].size()) != expect_cols) {
            throw ParseError("operator map: matrix column count differs from n^2");
        }
        for (Eigen::Index c = 0; c < expect_cols; ++c) {
            map.matrix(r, c) = require_number(rows[r][c]);
        }
    }
    return map;
}

json semilinear_to_json(const SemilinearMap& u) {
    return json{{"matrix", matrix_to_json(u.matrix)}, {"sigma", sigma_name(u.sigma)}};
}

SemilinearMap semilinear_from_json(const json& j) {
    const std::string sigma = require_field(j, "sigma").get<std::string>();
    Sigma s;
    if (sigma == "id") {
        s = Sigma::Identity;
    } else if (sigma == "conj") {
        s = Sigma::Conjugation;
    } else {
        throw ParseError("semilinear map: sigma must be 'id' or 'conj'");
    }
    try {
        return SemilinearMap(matrix_from_json(require_field(j, "matrix")), s);
    } catch (const NotAnIsometry& e) {
        throw ParseError(std::string("semilinear map: ") + e.what());
    }
}

json condition_report_to_json(const ConditionReport& report) {
    json witnesses = json::array();
    for (const auto& w : report.witnesses) {
        json inputs = json::array();
        for (const auto& a : w.inputs) inputs.push_back(hermitian_to_json(a));
        witnesses.push_back(json{{"inputs", inputs}, {"detail", w.detail}});
    }
    json j{{"condition", condition_name(report.condition)},
           {"samples", report.samples},
           {"passed", report.passed},
           {"witnesses", witnesses}};
    j["inferred_m"] = report.inferred_m ? json(*report.inferred_m) : json(nullptr);
    return j;
}

ConditionReport condition_report_from_json(const json& j) {
    ConditionReport report;
    const std::string name = require_field(j, "condition").get<std::string>();
    if (name == "L1") {
        report.condition = Condition::L1;
    } else if (name == "L2") {
        report.condition = Condition::L2;
    } else if (name == "L3") {
        report.condition = Condition::L3;
    } else {
        throw ParseError("condition report: unknown condition");
    }
    report.samples = require_int(require_field(j, "samples"));
    report.passed = require_field(j, "passed").get<bool>();
    if (j.contains("inferred_m") && !j.at("inferred_m").is_null()) {
        report.inferred_m = require_int(j.at("inferred_m"));
    }
    for (const auto& w : require_field(j, "witnesses")) {
        ConditionWitness witness;
        witness.detail = require_field(w, "detail").get<std::string>();
        for (const auto& in : require_field(w, "inputs")) {
            witness.inputs.push_back(hermitian_from_json(in));
        }
        report.witnesses.push_back(std::move(witness));
    }
    return report;
}

json classification_to_json(const Classification& c) {
    json j{{"tag", classification_tag_name(c.tag)}, {"residual", c.residual}};
    j["U"] = c.u ? semilinear_to_json(*c.u) : json(nullptr);
    j["W"] = c.w ? frame_to_json(*c.w) : json(nullptr);
    json reports = json::array();
    for (const auto& r : c.reports) reports.push_back(condition_report_to_json(r));
    j["reports"] = std::move(reports);
    j["k"] = c.k;
    j["m"] = c.m ? json(*c.m) : json(nullptr);
    if (!c.reason.empty()) j["reason"] = c.reason;
    if (!c.notes.empty()) j["notes"] = c.notes;
    return j;
}

Classification classification_from_json(const json& j) {
    Classification c;
    const std::string tag = require_field(j, "tag").get<std::string>();
    if (tag == "IsometryInduced") {
        c.tag = ClassificationTag::IsometryInduced;
    } else if (tag == "OrthoComplementCase") {
        c.tag = ClassificationTag::OrthoComplementCase;
    } else if (tag == "WAugmented") {
        c.tag = ClassificationTag::WAugmented;
    } else if (tag == "Rejected") {
        c.tag = ClassificationTag::Rejected;
    } else {
        throw ParseError("classification: unknown tag");
    }
    c.residual = require_number(require_field(j, "residual"));
    if (j.contains("U") && !j.at("U").is_null()) c.u = semilinear_from_json(j.at("U"));
    if (j.contains("W") && !j.at("W").is_null()) c.w = frame_from_json(j.at("W"));
    for (const auto& r : require_field(j, "reports")) {
        c.reports.push_back(condition_report_from_json(r));
    }
    if (j.contains("k")) c.k = require_int(j.at("k"));
    if (j.contains("m") && !j.at("m").is_null()) c.m = require_int(j.at("m"));
    if (j.contains("reason")) c.reason = j.at("reason").get<std::string>();
    if (j.contains("notes")) {
        for (const auto& note : j.at("notes")) c.notes.push_back(note.get<std::string>());
    }
    return c;
}

json xset_sample_to_json(const XSetSample& s) {
    json points = json::array();
    for (const auto& p : s.points) points.push_back(frame_to_json(p));
    return json{{"X", frame_to_json(s.x)},
                {"Y", frame_to_json(s.y)},
                {"points", points},
                {"seed", s.seed}};
}

XSetSample xset_sample_from_json(const json& j) {
    XSetSample s{frame_from_json(require_field(j, "X")),
                 frame_from_json(require_field(j, "Y")),
                 {},
                 require_field(j, "seed").get<std::uint64_t>()};
    for (const auto& p : require_field(j, "points")) s.points.push_back(frame_from_json(p));
    return s;
}

json geodesic_to_json(const std::vector<Frame>& vertices) {
    json out = json::array();
    for (const auto& v : vertices) out.push_back(frame_to_json(v));
    return out;
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("could not open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON in '") + path + "': " + e.what());
    }
}

void save_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw Error("could not write '" + path + "'");
    out << j.dump(2) << "\n";
}

}  // namespace wigner
