#include <string>

#include "doctest.h"
#include "thnorm/bound.hpp"
#include "thnorm/error.hpp"

using namespace thnorm;

namespace {

// Independent reference values (50 significant digits, computed with mpmath).
const std::string k45over11pi3 = "0.13193809540854336484536294281685145333525910242150";
const std::string k3over2pi2 = "0.15198177546350665716581919481459145835653816200837";
const std::string kPi = "3.1415926535897932384626433832795028841971693993751";

}  // namespace

TEST_SUITE("bound") {
  TEST_CASE("three factors, unit volume") {
    const BoundResult r = compute_bound(3, Rational(11, 45), parse_volume("1"));
    CHECK(r.symbolic == "45/(11*pi^3)");
    CHECK(!r.exact);
    CHECK(r.decimal == "0.131938095408543364845362942817");
    CHECK(compute_bound(3, Rational(11, 45), parse_volume("1"), 12).decimal == "0.131938095409");
        CHECK(compute_bound(3, Rational(11, 45), parse_volume("1"), 49).decimal == k45over11pi3.substr(0, 51));
  }

  TEST_CASE("two factors") {
    CHECK(compute_bound(2, Rational(2, 3), parse_volume("1"), 30).decimal == "0.151981775463506657165819194815");
    const std::string long_form = compute_bound(2, Rational(2, 3), parse_volume("1"), 49).decimal;
    CHECK(long_form.substr(0, 50) == k3over2pi2.substr(0, 50));
    CHECK(long_form.back() == '4');  // reference continues ...0837
    const BoundResult exact = compute_bound(2, Rational(2, 3), parse_volume("pi^2"));
    REQUIRE(exact.exact);
    CHECK(*exact.exact == Rational(3, 2));
    CHECK(exact.symbolic == "3/2");
  }

  TEST_CASE("pi cancels exactly") {
    const BoundResult r = compute_bound(3, Rational(11, 45), parse_volume("pi^3"));
    REQUIRE(r.exact);
    CHECK(r.exact->to_string() == "45/11");
    CHECK(r.symbolic == "45/11");
    CHECK(r.decimal.rfind("4.0909090909", 0) == 0);
  }

  TEST_CASE("pi constant and half-even rounding") {
    CHECK(pi_multiple_decimal(Rational(1), 1, 49) == kPi.substr(0, 50));
    CHECK(pi_multiple_decimal(Rational(1, 8), 0, 2) == "0.12");
    CHECK(pi_multiple_decimal(Rational(3, 8), 0, 2) == "0.38");
    CHECK(pi_multiple_decimal(Rational(5, 2), 0, 1) == "2");
    CHECK(pi_multiple_decimal(Rational(7, 2), 0, 1) == "4");
    CHECK(pi_multiple_decimal(Rational(123456), 0, 3) == "1.23e5");
  }

  TEST_CASE("volume parsing") {
    const Volume v = parse_volume("2*pi^3");
    CHECK(v.coefficient == Rational(2));
    CHECK(v.pi_power == 3);
    CHECK(parse_volume("pi").pi_power == 1);
    CHECK(parse_volume(" 0.75 ").coefficient == Rational(3, 4));
    CHECK(parse_volume("3/2*pi^2").coefficient == Rational(3, 2));
    CHECK(to_string(parse_volume("1/2*pi^2")) == "pi^2/2");
    CHECK_THROWS_AS(parse_volume("0"), ValidationError);
    CHECK_THROWS_AS(parse_volume("-1"), ValidationError);
    CHECK_THROWS_AS(parse_volume("pi^x"), ParseError);
    CHECK_THROWS_AS(parse_volume("2pi"), ParseError);
    CHECK_THROWS_AS(parse_volume(""), ParseError);
    CHECK_THROWS_AS(parse_volume("1.2.3"), ParseError);
  }

  TEST_CASE("symbolic forms") {
    CHECK(compute_bound(3, Rational(11, 45), parse_volume("pi")).symbolic == "45/(11*pi^2)");
    CHECK(compute_bound(1, Rational(1), parse_volume("pi^3")).symbolic == "pi^2");
    CHECK(compute_bound(1, Rational(1, 3), parse_volume("pi^2")).symbolic == "3*pi");
  }

  TEST_CASE("surface products") {
    const int genera[] = {2, 3, 2};
    const BoundResult r = surface_bound(Rational(11, 45), genera);
    REQUIRE(r.exact);
    CHECK(*r.exact == Rational(45 * 4 * 8 * 4, 11));
    CHECK(r.product_form == "45/11 * 4*8*4");
    const int bad[] = {1};
    CHECK_THROWS_AS(surface_bound(Rational(1), bad), ValidationError);
  }

  TEST_CASE("established norms") {
    CHECK(known_norm(3) == Rational(11, 45));
    CHECK(known_norm(2) == Rational(2, 3));
    CHECK(known_norm(1) == Rational(1));
    CHECK(!known_norm(4));
  }

  TEST_CASE("invalid inputs") {
    CHECK_THROWS_AS(compute_bound(3, Rational(0), parse_volume("1")), ValidationError);
    CHECK_THROWS_AS(compute_bound(3, Rational(11, 45), parse_volume("1"), 0), ValidationError);
  }
}
