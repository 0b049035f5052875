#include <doctest.h>

#include "tat/rational.hpp"

using namespace tat;

TEST_CASE("parse round trip") {
  auto r = parse_rat("7/9");
  REQUIRE(r);
  CHECK(*r == Rat(7, 9));
  CHECK(rat_str(*r) == "7/9");
  CHECK(rat_str(*parse_rat("14/18")) == "7/9");
  CHECK(rat_str(*parse_rat("3")) == "3");
  CHECK(rat_str(*parse_rat("-5/10")) == "-1/2");
  CHECK(rat_str(Rat(0)) == "0");
}

TEST_CASE("parse rejects junk") {
  CHECK(!parse_rat(""));
  CHECK(!parse_rat("/3"));
  CHECK(!parse_rat("3/"));
  CHECK(!parse_rat("3/0"));
  CHECK(!parse_rat("1.5"));
  CHECK(!parse_rat("2/3x"));
  CHECK(!parse_rat("x"));
  CHECK(!parse_rat("--2"));
  CHECK(!parse_rat("2/-3"));
}

TEST_CASE("floor and mod") {
  CHECK(rfloor(Rat(7, 2)) == 3);
  CHECK(rfloor(Rat(-7, 2)) == -4);
  CHECK(rfloor(Rat(4)) == 4);
  CHECK(rfloor(Rat(-4)) == -4);
  CHECK(rmod(Rat(7, 2), Rat(1)) == Rat(1, 2));
  CHECK(rmod(Rat(-1, 4), Rat(1)) == Rat(3, 4));
  CHECK(rmod(Rat(5, 3), Rat(5, 3)) == 0);
  CHECK(rmod(Rat(17, 6), Rat(1, 2)) == Rat(1, 3));
  CHECK(divides(Rat(1, 18), Rat(2, 18)));
  CHECK(!divides(Rat(1, 18), Rat(1, 36)));
}

TEST_CASE("no overflow on wide denominators") {
  // lcm(1..24)-scale denominators exceed int64 cross products; exercise them.
  Rat acc = 0;
  for (int q = 1; q <= 24; ++q) acc += Rat(1, q);
  Rat twice = acc * 2;
  CHECK(twice / 2 == acc);
  CHECK(rmod(acc * Rat(1000003), acc) == 0);
}
