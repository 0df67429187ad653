#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <stdexcept>

#include "surfcode/gf.hpp"

using surfcode::gf::Element;
using surfcode::gf::Field;

TEST_CASE("fixed moduli") {
    CHECK(Field::get(3, 1).modulus() == std::vector<int>{0, 1});
    CHECK(Field::get(2, 2).modulus() == std::vector<int>{1, 1, 1});   // t^2+t+1
    CHECK(Field::get(2, 3).modulus() == std::vector<int>{1, 1, 0, 1});  // t^3+t+1
    CHECK(Field::get(3, 2).modulus() == std::vector<int>{1, 0, 1});   // t^2+1
    CHECK(Field::get(3, 2).size() == 9);
    CHECK(&Field::get(5, 1) == &Field::get(5, 1));
}

TEST_CASE("construction errors") {
    CHECK_THROWS_AS(Field::get(4, 1), std::invalid_argument);
    CHECK_THROWS_AS(Field::get(6, 1), std::invalid_argument);
    CHECK_THROWS_AS(Field::get(2, 0), std::invalid_argument);
    CHECK_THROWS_AS(Field::get(2, 7), std::invalid_argument);  // 128 > 64
    CHECK_THROWS_AS(Field::get(5, 3), std::invalid_argument);  // 125 > 64
}

TEST_CASE("prime field arithmetic") {
    const Field& f3 = Field::get(3, 1);
    CHECK(f3.add(2, 2) == 1);
    const Field& f5 = Field::get(5, 1);
    CHECK(f5.inv(2) == 3);
    CHECK(f5.mul(2, 3) == 1);
    CHECK_THROWS_AS(f5.inv(0), std::domain_error);
}

TEST_CASE("F4 inverse forced by modulus") {
    const Field& f4 = Field::get(2, 2);
    // index 2 is t, index 3 is t+1; t*(t+1) = t^2+t = 1 under t^2+t+1
    CHECK(f4.mul(2, 3) == 1);
    CHECK(f4.inv(2) == 3);
    CHECK(f4.to_string(2) == "t");
    CHECK(f4.to_string(3) == "t+1");
    CHECK(f4.parse("t+1") == 3);
    CHECK(f4.parse("t") == 2);
}

TEST_CASE("element enumeration is index order") {
    const Field& f4 = Field::get(2, 2);
    auto els = f4.elements();
    REQUIRE(els.size() == 4);
    CHECK(els[0].index() == 0);
    CHECK(els[1].index() == 1);
    CHECK(els[2].str() == "t");
    CHECK(els[3].str() == "t+1");
    const Field& f9 = Field::get(3, 2);
    CHECK(f9.elements().size() == 9);
    CHECK(f9.elements().front().is_zero());
}

TEST_CASE("field axioms hold exactly") {
    for (auto [p, e] : {std::pair{2, 1}, {3, 1}, {5, 1}, {2, 2}, {3, 2}, {2, 4}, {7, 1}}) {
        const Field& f = Field::get(p, e);
        const int q = f.size();
        uint64_t s = 12345;
        auto rnd = [&]() {
            s = s * 6364136223846793005ULL + 1442695040888963407ULL;
            return static_cast<uint8_t>((s >> 33) % q);
        };
        for (int trial = 0; trial < 200; ++trial) {
            const uint8_t x = rnd(), y = rnd(), z = rnd();
            CHECK(f.add(x, y) == f.add(y, x));
            CHECK(f.mul(x, y) == f.mul(y, x));
            CHECK(f.add(f.add(x, y), z) == f.add(x, f.add(y, z)));
            CHECK(f.mul(f.mul(x, y), z) == f.mul(x, f.mul(y, z)));
            CHECK(f.mul(x, f.add(y, z)) == f.add(f.mul(x, y), f.mul(x, z)));
            CHECK(f.sub(x, x) == 0);
            if (x) CHECK(f.mul(x, f.inv(x)) == 1);
        }
    }
}

TEST_CASE("multiplicative order divides q-1, exhaustive for q <= 16") {
    for (auto [p, e] : {std::pair{2, 1}, {3, 1}, {5, 1}, {7, 1}, {11, 1}, {13, 1},
                        {2, 2}, {2, 3}, {2, 4}, {3, 2}}) {
        const Field& f = Field::get(p, e);
        for (int x = 1; x < f.size(); ++x)
            CHECK(f.pow(static_cast<uint8_t>(x), f.size() - 1) == 1);
    }
}

TEST_CASE("elements are distinct and stable") {
    const Field& f = Field::get(2, 3);
    std::set<uint8_t> seen;
    for (const Element& x : f.elements()) seen.insert(x.index());
    CHECK(seen.size() == 8);
}

TEST_CASE("mixed-field operands rejected") {
    Element a = Field::get(3, 1)(1);
    Element b = Field::get(5, 1)(1);
    CHECK_THROWS_AS(a + b, std::invalid_argument);
}

TEST_CASE("element operators") {
    const Field& f = Field::get(3, 2);
    for (int i = 1; i < f.size(); ++i) {
        Element x = f(i);
        CHECK((x * x.inverse()).index() == 1);
        CHECK((x + (-x)).is_zero());
        CHECK(x.pow(8).index() == 1);
    }
}
