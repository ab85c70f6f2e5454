#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <string>

#include "rcrt/serialization.hpp"

using namespace rcrt;

TEST_CASE("decimal rendering") {
    CHECK(rational_decimal(Rat(100, 103)) == "0.970873786407");
    CHECK(rational_decimal(Rat(1, 4)) == "0.25");
    CHECK(rational_decimal(Rat(6)) == "6");
    CHECK(rational_decimal(Rat(-7, 2)) == "-3.5");
    CHECK(rational_decimal(Rat(136, 7)) == "19.428571428571");
    CHECK(rational_decimal(Rat(0)) == "0");
    CHECK(rational_decimal(Rat(1, 4), 0) == "0");
    CHECK(rational_decimal(Rat(1, 3), 4) == "0.3333");
}

TEST_CASE("rational parsing") {
    CHECK(parse_rational("3/4") == Rat(3, 4));
    CHECK(parse_rational("  42 ") == Rat(42));
    CHECK(parse_rational("3.25") == Rat(13, 4));
    CHECK(parse_rational("-0.5") == Rat(-1, 2));
    CHECK(parse_rational(".5") == Rat(1, 2));
    CHECK(parse_rational("+7") == Rat(7));
    CHECK(parse_rational("-12/8") == Rat(-3, 2));
    CHECK(parse_rational("10000") == Rat(10000));

    CHECK_THROWS_AS(parse_rational(""), DomainError);
    CHECK_THROWS_AS(parse_rational("   "), DomainError);
    CHECK_THROWS_AS(parse_rational("abc"), DomainError);
    CHECK_THROWS_AS(parse_rational("1e3"), DomainError);
    CHECK_THROWS_AS(parse_rational("5/0"), DomainError);
    CHECK_THROWS_AS(parse_rational("1.2.3"), DomainError);
}

TEST_CASE("flat design round trip") {
    auto set = design_flat(3, Rat(10000), Rat(100));
    std::string js = design_to_json(set);
    CHECK(js.find("\"rcrt-design/1\"") != std::string::npos);
    CHECK(js.find("\"flat\"") != std::string::npos);
    auto back = design_from_json(js);
    REQUIRE(std::holds_alternative<ModuliSet>(back));
    CHECK(std::get<ModuliSet>(back) == set);

    auto heavy = design_flat_heuristic(6, Rat(1000000));
    auto again = design_from_json(design_to_json(heavy));
    CHECK(std::get<ModuliSet>(again) == heavy);
}

TEST_CASE("layered design round trip") {
    auto d = design_layered(Rat(15), 2, Rat(120));
    std::string js = design_to_json(d);
    CHECK(js.find("\"layered\"") != std::string::npos);
    auto back = design_from_json(js);
    REQUIRE(std::holds_alternative<LayeredDesign>(back));
    CHECK(std::get<LayeredDesign>(back) == d);

    // Seedless pair survives with its metadata still absent.
    auto bare = layered_from_pair(Int(5), Int(17), Rat(8));
    auto b2 = design_from_json(design_to_json(bare));
    CHECK(std::get<LayeredDesign>(b2) == bare);
    CHECK_FALSE(std::get<LayeredDesign>(b2).d.has_value());

    // K = 0 degenerate form.
    auto k0 = design_layered(Rat(15), 0, Rat(120));
    CHECK(std::get<LayeredDesign>(design_from_json(design_to_json(k0))) == k0);

    // Deep design with a stored rho.
    auto deep = design_layered(Rat(15), 10, Rat(120));
    CHECK(std::get<LayeredDesign>(design_from_json(design_to_json(deep))) == deep);
}

TEST_CASE("file round trip") {
    auto d = design_layered(Rat(250), 6);
    const std::string path = "/tmp/rcrt_test_design.json";
    save_design(d, path);
    auto back = load_design(path);
    CHECK(std::get<LayeredDesign>(back) == d);
    std::remove(path.c_str());

    CHECK_THROWS_AS(load_design("/tmp/rcrt_no_such_file.json"), DomainError);
    CHECK_THROWS_AS(save_design(d, "/tmp/no_such_dir_rcrt/x.json"), DomainError);
}

TEST_CASE("malformed documents") {
    CHECK_THROWS_AS(design_from_json("not json at all"), DomainError);
    CHECK_THROWS_AS(design_from_json("{}"), DomainError);
    CHECK_THROWS_AS(design_from_json(R"({"version":"rcrt-design/2","kind":"flat"})"),
                    DomainError);
    CHECK_THROWS_AS(design_from_json(R"({"version":"rcrt-design/1","kind":"mystery"})"),
                    DomainError);

    // A tampered field must not slip through the consistency check.
    auto d = design_layered(Rat(15), 2, Rat(120));
    std::string js = design_to_json(d);
    auto pos = js.find("\"K\": 2");
    REQUIRE(pos != std::string::npos);
    std::string bad = js;
    bad.replace(pos, 6, "\"K\": 3");
    CHECK_THROWS_AS(design_from_json(bad), DomainError);

    auto flat = design_flat(3, Rat(5));
    std::string fj = design_to_json(flat);
    auto fpos = fj.find("\"2\"");
    REQUIRE(fpos != std::string::npos);
    std::string fbad = fj;
    fbad.replace(fpos, 3, "\"4\"");  // gammas {4,3,5}: not ascending/coprime
    CHECK_THROWS_AS(design_from_json(fbad), DomainError);
}
