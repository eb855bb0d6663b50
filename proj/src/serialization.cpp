#include "smollision/serialization.hpp"

#include <fstream>

namespace smollision {

nlohmann::json matrix_to_json(const Matrix& m) {
    nlohmann::json re = nlohmann::json::array();
    nlohmann::json im = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row_re = nlohmann::json::array();
        nlohmann::json row_im = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row_re.push_back(m(i, j).real());
            row_im.push_back(m(i, j).imag());
        }
        re.push_back(row_re);
        im.push_back(row_im);
    }
    return {{"dim", m.rows()}, {"re", re}, {"im", im}};
}

Matrix matrix_from_json(const nlohmann::json& j) {
    if (!j.contains("dim") || !j.contains("re")) {
        throw InvalidInput("matrix json needs 'dim' and 're' fields");
    }
    const int d = j.at("dim").get<int>();
    if (d <= 0) throw InvalidInput("matrix json: dim must be positive");
    Matrix m(d, d);
    const auto& re = j.at("re");
    const bool has_im = j.contains("im") && !j.at("im").is_null();
    if (static_cast<int>(re.size()) != d) throw InvalidInput("matrix json: 're' shape mismatch");
    for (int i = 0; i < d; ++i) {
        if (static_cast<int>(re.at(i).size()) != d) {
            throw InvalidInput("matrix json: 're' shape mismatch");
        }
        for (int jj = 0; jj < d; ++jj) {
            const double a = re.at(i).at(jj).get<double>();
            const double b = has_im ? j.at("im").at(i).at(jj).get<double>() : 0.0;
            m(i, jj) = Complex(a, b);
        }
    }
    return m;
}

nlohmann::json hermitian_to_json(const HermitianOperator& h) {
    return matrix_to_json(h.mat());
}

HermitianOperator hermitian_from_json(const nlohmann::json& j) {
    return HermitianOperator(matrix_from_json(j));
}

nlohmann::json cq_to_json(const CQState& s) {
    nlohmann::json blocks = nlohmann::json::array();
    for (const auto& b : s.blocks) blocks.push_back(hermitian_to_json(b));
    return {{"p", s.p}, {"blocks", blocks}};
}

CQState cq_from_json(const nlohmann::json& j) {
    if (!j.contains("p") || !j.contains("blocks")) {
        throw InvalidInput("cq json needs 'p' and 'blocks' fields");
    }
    std::vector<double> p = j.at("p").get<std::vector<double>>();
    std::vector<HermitianOperator> blocks;
    for (const auto& bj : j.at("blocks")) {
        blocks.push_back(hermitian_from_json(bj));
    }
    return CQState(std::move(p), std::move(blocks));
}

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open file: " + path);
    nlohmann::json j;
    in >> j;
    return j;
}

void save_json_file(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write file: " + path);
    out << j.dump(2) << "\n";
}

}  // namespace smollision
