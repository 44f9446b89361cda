#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "starmod/rational.hpp"

using namespace starmod;

TEST_CASE("rational arithmetic is exact") {
    Rational a = rational_from_string("3/4");
    Rational b = rational_from_string("1/6");
    CHECK(rational_to_string(a + b) == "11/12");
    CHECK(rational_to_string(Rational(a - b)) == "7/12");
    CHECK(rational_from_string("-2/4") == rational_from_string("-1/2"));
    CHECK(rational_is_integer(rational_from_string("8/4")));
    CHECK_THROWS_AS(rational_from_string("1/0"), ParseError);
    CHECK_THROWS_AS(rational_from_string("x"), ParseError);
}

TEST_CASE("gaussian rational field operations") {
    GaussianRational i = GaussianRational::i();
    CHECK(i * i == GaussianRational(-1));
    GaussianRational z(Rational(1, 2), Rational(-1, 3));
    CHECK(z.conj().im() == Rational(1, 3));
    CHECK(z.conj().conj() == z);
    CHECK(z * z.conj() == GaussianRational(Rational(1, 4) + Rational(1, 9)));
    CHECK(z / z == GaussianRational(1));
    CHECK((z - z).is_zero());
    CHECK(GaussianRational(3).is_integer());
    CHECK_FALSE(GaussianRational(Rational(1, 2)).is_integer());
    CHECK_FALSE(i.is_real());
    CHECK_THROWS_AS(z / GaussianRational(0), Error);
}

TEST_CASE("gaussian rational wire format") {
    CHECK(GaussianRational(0).to_string() == "0");
    CHECK(GaussianRational::of(3, 2).to_string() == "3/2");
    CHECK(GaussianRational(Rational(0), Rational(-1, 4)).to_string() == "-1/4 i");
    CHECK(GaussianRational(Rational(1, 2), Rational(1, 3)).to_string() == "1/2+1/3 i");
    CHECK(GaussianRational(Rational(1, 2), Rational(-1, 3)).to_string() == "1/2-1/3 i");

    auto roundtrip = [](const GaussianRational& c) {
        return GaussianRational::from_string(c.to_string()) == c;
    };
    CHECK(roundtrip(GaussianRational(0)));
    CHECK(roundtrip(GaussianRational::i()));
    CHECK(roundtrip(GaussianRational(Rational(-7, 3), Rational(22, 7))));
    CHECK(roundtrip(GaussianRational(Rational(5), Rational(-1))));

    CHECK(GaussianRational::from_string("i") == GaussianRational::i());
    CHECK(GaussianRational::from_string("-i") == -GaussianRational::i());
    CHECK(GaussianRational::from_string("3/2") == GaussianRational::of(3, 2));
    CHECK(GaussianRational::from_string("-1/4 i") ==
          GaussianRational(Rational(0), Rational(-1, 4)));
    CHECK(GaussianRational::from_string("1/2+1/3 i") ==
          GaussianRational(Rational(1, 2), Rational(1, 3)));
    CHECK_THROWS_AS(GaussianRational::from_string(""), ParseError);
    CHECK_THROWS_AS(GaussianRational::from_string("1+2"), ParseError);
}
