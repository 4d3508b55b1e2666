#include "doctest.h"
#include "thnorm/config.hpp"
#include "thnorm/error.hpp"
#include "thnorm/random.hpp"
#include "thnorm/search.hpp"

using namespace thnorm;

namespace {

int parse_error_line(std::string_view text) {
  try {
    parse_config(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST_SUITE("config") {
  TEST_CASE("regular heptagon by angles and by ranks") {
    const char* by_angles =
        "# three factors\n"
        "n 3\n"
        "angles 1 0 1/7 2/7 3/7 4/7 5/7 6/7\n"
        "angles 2 0 2/7 4/7 6/7 1/7 3/7 5/7\n"
        "angles 3 0 3/7 6/7 2/7 5/7 1/7 4/7\n";
    const Configuration a = parse_config(by_angles);
    CHECK(a.angles().has_value());
    CHECK(a.to_string() == "1,2,3,4,5,6,7|1,3,5,7,2,4,6|1,4,7,3,6,2,5");
    CHECK(theta_direct(a) == Rational(11, 45));

    const Configuration b = parse_config(
        "n 3\n"
        "ranks 1 1 2 3 4 5 6 7   # comment after data\n"
        "ranks 2 1 3 5 7 2 4 6\n"
        "\n"
        "ranks 3 1 4 7 3 6 2 5\n");
    CHECK(!b.angles().has_value());
    CHECK(a == b);
  }

  TEST_CASE("repeated point gives zero") {
    const Configuration c = parse_config(
        "n 2\n"
        "ranks 1 1 1 2 3 4\n"
        "ranks 2 1 1 3 2 4\n");
    CHECK(theta_direct(c) == Rational(0));
  }

  TEST_CASE("errors carry line numbers") {
    CHECK(parse_error_line("n 2\nranks 1 1 2 3 4 5\nbogus 1\n") == 3);
    CHECK(parse_error_line("n 2\nranks 1 1 2 3 4 5\n") > 0);
    CHECK(parse_error_line("n x\n") == 1);
    CHECK(parse_error_line("n 1\nranks 1 1 2\n") == 2);
    CHECK(parse_error_line("n 1\nangles 1 0 1/2 1\n") == 2);
    CHECK(parse_error_line("n 1\nranks 2 1 2 3\n") > 0);
    CHECK(parse_error_line("n 1\nranks 1 1 2 3\nranks 1 1 2 3\n") == 3);
    CHECK(parse_error_line("") == 0);
  }

  TEST_CASE("ranks must agree with angles") {
    CHECK_THROWS_AS(parse_config("n 1\nangles 1 0 1/3 2/3\nranks 1 1 3 2\n"), ValidationError);
    CHECK_NOTHROW(parse_config("n 1\nangles 1 0 1/3 2/3\nranks 1 1 2 3\n"));
  }

  TEST_CASE("format round-trips") {
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
      const int n = 1 + trial % 3;
      const int m = 2 * n + 1;
      std::vector<RankVector> factors;
      for (int k = 0; k < n; ++k) factors.push_back(rng.weak_order(m, trial % 2 ? 2 : 0));
      const Configuration cfg(factors);
      const Configuration back = parse_config(format_config(cfg));
      CHECK(back == cfg);
      CHECK(theta_direct(back) == theta_direct(cfg));
    }
    const Configuration reg = regular_configuration(2);
    const Configuration back = parse_config(format_config(reg));
    CHECK(back == reg);
    CHECK(back.angles() == reg.angles());
  }
}
