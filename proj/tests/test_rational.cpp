#include <catch2/catch_amalgamated.hpp>

#include "ksim/rational.hpp"

using ksim::Int;
using ksim::Rat;

TEST_CASE("parse and canonical printing") {
  CHECK(Rat::parse("3/2").str() == "3/2");
  CHECK(Rat::parse("-3/2").str() == "-3/2");
  CHECK(Rat::parse("3/-2").str() == "-3/2");  // sign moves to the numerator
  CHECK(Rat::parse("4/2").str() == "2");      // reduced, no "/1"
  CHECK(Rat::parse("0/7").str() == "0");
  CHECK(Rat::parse("-0").str() == "0");
  CHECK(Rat::parse("  12  ").str() == "12");
  CHECK(Rat::parse("6/4") == Rat(3, 2));
}

TEST_CASE("parse rejects malformed input") {
  for (const char* bad : {"", "x", "1/", "/2", "1/2/3", "1.5", "2e3", "%"}) {
    try {
      Rat::parse(bad);
      FAIL("accepted '" << bad << "'");
    } catch (const ksim::error& e) {
      CHECK(e.kind() == ksim::errk::parse_error);
    }
  }
}

TEST_CASE("arithmetic and ordering") {
  Rat a(1, 2), b(1, 3);
  CHECK((a + b).str() == "5/6");
  CHECK((a - b).str() == "1/6");
  CHECK((a * b).str() == "1/6");
  CHECK((a / b).str() == "3/2");
  CHECK(a > b);
  CHECK(Rat(-1, 2) < Rat(0));
  CHECK(Rat(2, 4) == Rat(1, 2));
  CHECK(Rat(7).abs() == Rat(7));
  CHECK(Rat(-7, 3).abs() == Rat(7, 3));
  CHECK(Rat(-5).sign() == -1);
  CHECK(Rat(0).sign() == 0);
}

TEST_CASE("division by zero is reported") {
  try {
    Rat x = Rat(1) / Rat(0);
    (void)x;
    FAIL("divided by zero");
  } catch (const ksim::error& e) {
    CHECK(e.kind() == ksim::errk::division_by_zero);
  }
  CHECK_THROWS_AS(Rat(1, 0), ksim::error);
}

TEST_CASE("square detection and square roots") {
  CHECK(Rat(9, 4).is_square());
  CHECK(Rat(9, 4).sqrt() == Rat(3, 2));
  CHECK(Rat(0).is_square());
  CHECK(Rat(0).sqrt() == Rat(0));
  CHECK_FALSE(Rat(2).is_square());
  CHECK_FALSE(Rat(-4).is_square());
  CHECK_FALSE(Rat(9, 8).is_square());
  try {
    Rat(2).sqrt();
    FAIL("sqrt of 2 returned");
  } catch (const ksim::error& e) {
    CHECK(e.kind() == ksim::errk::precondition_failed);
  }
}

TEST_CASE("factor handles certified ranges") {
  auto f = ksim::factor(Int(360));
  REQUIRE(f.size() == 3);
  CHECK(f[0] == std::pair<Int, int>{Int(2), 3});
  CHECK(f[1] == std::pair<Int, int>{Int(3), 2});
  CHECK(f[2] == std::pair<Int, int>{Int(5), 1});

  // a prime cofactor above the trial bound but below bound^2 is certified prime
  Int big_prime("1000003");
  auto g = ksim::factor(Int(2) * big_prime);
  REQUIRE(g.size() == 2);
  CHECK(g[1].first == big_prime);

  // beyond bound^2 the cofactor could be composite; must refuse, not guess
  Int huge = big_prime * Int("1000033");  // composite with no factor <= the trial bound
  try {
    ksim::factor(huge);
    FAIL("factored an uncertifiable cofactor");
  } catch (const ksim::error& e) {
    CHECK(e.kind() == ksim::errk::factorization_limit);
  }
}

TEST_CASE("squarefree parts") {
  CHECK(ksim::squarefree_part(Rat(12)) == Int(3));
  CHECK(ksim::squarefree_part(Rat(-12)) == Int(-3));
  CHECK(ksim::squarefree_part(Rat(1)) == Int(1));
  CHECK(ksim::squarefree_part(Rat(1, 2)) == Int(2));   // 1/2 ~ 2 mod squares
  CHECK(ksim::squarefree_part(Rat(-9, 4)) == Int(-1));
  CHECK(ksim::squarefree_part(Rat(8, 27)) == Int(6));  // 8*27 = 2^3*3^3 ~ 6

  auto [d0, scale] = ksim::squarefree_decompose(12);
  CHECK(d0 == 3);
  CHECK(scale == 2);
  auto [e0, escale] = ksim::squarefree_decompose(2);
  CHECK(e0 == 2);
  CHECK(escale == 1);
}

TEST_CASE("fnv1a64 matches the reference vectors") {
  CHECK(ksim::fnv1a64("") == 0xcbf29ce484222325ull);
  CHECK(ksim::fnv1a64("a") == 0xaf63dc4c8601ec8cull);
  CHECK(ksim::fnv1a64("foobar") == 0x85944171f73967e8ull);
  CHECK(ksim::hex64(0xcbf29ce484222325ull) == "cbf29ce484222325");
  CHECK(ksim::hex64(0) == "0000000000000000");
}
