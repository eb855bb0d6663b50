#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "smollision/serialization.hpp"
#include "smollision/states.hpp"

#include <cstdio>
#include <fstream>
#include <string>

using namespace smollision;

TEST_CASE("matrix json round trip is bit exact") {
    const Matrix m = sample_hermitian(4, 3).mat() * (1.0 / 3.0);
    const Matrix back = matrix_from_json(matrix_to_json(m));
    REQUIRE(back.rows() == m.rows());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            CHECK(back(i, j).real() == m(i, j).real());
            CHECK(back(i, j).imag() == m(i, j).imag());
        }

    // Through text, not just through the DOM.
    const std::string text = matrix_to_json(m).dump();
    const Matrix back2 = matrix_from_json(nlohmann::json::parse(text));
    CHECK((back2 - m).norm() == 0.0);
}

TEST_CASE("hermitian json round trip and shape validation") {
    const HermitianOperator h = sample_hermitian(3, 8);
    const HermitianOperator back = hermitian_from_json(hermitian_to_json(h));
    CHECK((back.mat() - h.mat()).norm() == 0.0);

    nlohmann::json j = hermitian_to_json(h);
    j["re"][0].erase(2);  // ragged row
    CHECK_THROWS_AS(hermitian_from_json(j), InvalidInput);
    nlohmann::json missing = hermitian_to_json(h);
    missing.erase("dim");
    CHECK_THROWS_AS(hermitian_from_json(missing), InvalidInput);
}

TEST_CASE("cq state json round trip") {
    const CQState cq = sample_cq(3, 2, 19);
    const CQState back = cq_from_json(cq_to_json(cq));
    REQUIRE(back.classical_dim() == 3);
    for (int x = 0; x < 3; ++x) {
        CHECK(back.p[x] == cq.p[x]);
        CHECK((back.blocks[x].mat() - cq.blocks[x].mat()).norm() == 0.0);
    }
}

TEST_CASE("file io and parse failure location") {
    const std::string path = "serialization_roundtrip.json";
    save_json_file(path, cq_to_json(sample_cq(2, 2, 5)));
    const nlohmann::json j = load_json_file(path);
    CHECK_NOTHROW(cq_from_json(j));
    std::remove(path.c_str());

    const std::string bad = "serialization_bad.json";
    {
        std::ofstream out(bad);
        out << "{\"p\": [0.5, 0.5,";  // truncated mid-array
    }
    bool threw = false;
    try {
        load_json_file(bad);
    } catch (const std::exception& e) {
        threw = true;
        // nlohmann reports the byte offset of the failure; the CLI surfaces it.
        CHECK(std::string(e.what()).find("parse") != std::string::npos);
    }
    CHECK(threw);
    std::remove(bad.c_str());

    CHECK_THROWS(load_json_file("definitely_missing_file.json"));
}
