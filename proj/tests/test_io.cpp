#include <doctest.h>

#include <random>

#include "qlbm/errors.hpp"
#include "qlbm/io.hpp"

using namespace qlbm;

TEST_CASE("window files parse and serialize") {
    const std::string text = "# focal pair\n"
                             "lattice d2q4\n"
                             "extent 1\n"
                             "0 0 0\n"
                             "0 0 2  # second direction\n"
                             "-1 0 3\n";
    const WindowFile file = parse_window_file(text);
    CHECK(file.lattice == "d2q4");
    CHECK(file.extent == 1);
    CHECK_FALSE(file.grid.has_value());
    REQUIRE(file.entries.size() == 3);

    const VicinityLayout layout = enumerate_vicinity(build_descriptor("D2Q4"), 1);
    const WindowBits bits = window_bits_from_file(file, layout);
    CHECK(bits[layout.qubit({0, 0}, 0)] == 1);
    CHECK(bits[layout.qubit({0, 0}, 2)] == 1);
    CHECK(bits[layout.qubit({-1, 0}, 3)] == 1);
    CHECK(std::count(bits.begin(), bits.end(), 1) == 3);
}

TEST_CASE("window file round trip through serialize and parse") {
    std::mt19937_64 rng(71);
    const VicinityLayout layout = enumerate_vicinity(build_descriptor("D2Q4"), 2);
    WindowFile file;
    file.lattice = "D2Q4";
    file.extent = 2;
    for (const auto& offset : layout.offsets())
        for (int j = 0; j < 4; ++j)
            if (rng() & 1) file.entries.push_back({offset, j});

    const std::string text = serialize_window_file(file);
    const WindowFile parsed = parse_window_file(text);
    CHECK(window_bits_from_file(parsed, layout) == window_bits_from_file(file, layout));
    // Serialization is canonical: a second round trip is byte-identical.
    CHECK(serialize_window_file(parsed) == text);
}

TEST_CASE("grid files build occupancy fields") {
    const std::string text = "lattice d1q2\n"
                             "grid 4\n"
                             "1 0\n"
                             "1 1\n"
                             "2 0\n"
                             "3 0\n";
    const OccupancyField field = field_from_file(parse_window_file(text));
    CHECK(field.local_pattern(0) == 0b00);
    CHECK(field.local_pattern(1) == 0b11);
    CHECK(field.local_pattern(2) == 0b10);
    CHECK(field.local_pattern(3) == 0b10);
}

TEST_CASE("window file errors") {
    CHECK_THROWS_AS(parse_window_file("extent 1\n"), ParseError);
    CHECK_THROWS_AS(parse_window_file("lattice d2q4\n"), ParseError);
    CHECK_THROWS_AS(parse_window_file("lattice d2q9\nextent 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_window_file("lattice d2q4\nextent 1\n0 0\n"), ParseError);
    CHECK_THROWS_AS(parse_window_file("lattice d2q4\nextent 1\n0 x 0\n"), ParseError);
    CHECK_THROWS_AS(parse_window_file("lattice d1q2\ngrid 0\n"), ParseError);

    const VicinityLayout layout = enumerate_vicinity(build_descriptor("D2Q4"), 1);
    // Direction out of range and offsets beyond the vicinity are rejected.
    CHECK_THROWS_AS(window_bits_from_file(parse_window_file("lattice d2q4\nextent 1\n0 0 4\n"),
                                          layout),
                    ParseError);
    CHECK_THROWS_AS(window_bits_from_file(parse_window_file("lattice d2q4\nextent 1\n1 1 0\n"),
                                          layout),
                    ParseError);
    CHECK_THROWS_AS(field_from_file(parse_window_file("lattice d1q2\ngrid 4\n4 0\n")),
                    ParseError);
    CHECK_THROWS_AS(load_window_file("/nonexistent/path.win"), IoError);
}

TEST_CASE("canonical json round trips byte-identically") {
    nlohmann::json j;
    j["zeta"] = 0.5;
    j["alpha"] = 1.0 / 3.0;
    j["counts"] = {1, 2, 3};
    j["nested"] = {{"flag", true}, {"text", "a\nb\"c\\d"}, {"nothing", nullptr}};
    j["tiny"] = 1e-300;
    j["big"] = 1.0000000000000002;

    const std::string once = canonical_json(j);
    const std::string twice = canonical_json(nlohmann::json::parse(once));
    CHECK(once == twice);
    // Keys come out sorted.
    CHECK(once.find("\"alpha\"") < once.find("\"big\""));
    CHECK(once.find("\"big\"") < once.find("\"counts\""));
}

TEST_CASE("gram report serialization carries the headline values") {
    const GramReport report = gram_check(cbs_nogo_instance());
    const nlohmann::json j = to_json(report);
    CHECK(j["realizable"] == false);
    REQUIRE(j["violations"].size() == 1);
    CHECK(j["violations"][0]["inner_in"][0].get<double>() == 0.0);
    CHECK(j["violations"][0]["inner_out"][0].get<double>() == 0.5);
    const std::string dumped = canonical_json(j);
    CHECK(canonical_json(nlohmann::json::parse(dumped)) == dumped);
}
