#include <catch2/catch_amalgamated.hpp>

#include "ksim/quadspace.hpp"

using ksim::MatQ;
using ksim::QuadSpace;
using ksim::Rat;

TEST_CASE("construction validates the gram matrix") {
  MatQ rect(2, 3);
  CHECK_THROWS_AS(QuadSpace(rect), ksim::error);

  MatQ asym{{Rat(1), Rat(1)}, {Rat(0), Rat(1)}};
  try {
    QuadSpace q(asym);
    FAIL("accepted an asymmetric gram matrix");
  } catch (const ksim::error& e) {
    CHECK(e.kind() == ksim::errk::not_symmetric);
  }

  MatQ sing{{Rat(1), Rat(2)}, {Rat(2), Rat(4)}};
  try {
    QuadSpace q(sing);
    FAIL("accepted a degenerate form");
  } catch (const ksim::error& e) {
    CHECK(e.kind() == ksim::errk::degenerate_form);
  }
}

TEST_CASE("diagonalize returns a congruent diagonal form") {
  MatQ u{{Rat(0), Rat(1)}, {Rat(1), Rat(0)}};  // hyperbolic plane
  QuadSpace q(u, "U");
  auto d = ksim::diagonalize(q);
  REQUIRE((int)d.diag.size() == 2);
  MatQ dm(2, 2);
  dm.at(0, 0) = d.diag[0];
  dm.at(1, 1) = d.diag[1];
  CHECK(d.base_change.transpose() * q.gram * d.base_change == dm);
  CHECK((d.diag[0] * d.diag[1]).sign() == -1);  // indefinite, det class -1
  CHECK(ksim::signature(q) == std::pair<int, int>{1, 1});
}

TEST_CASE("diagonalize fixes an already diagonal form") {
  QuadSpace q = ksim::diagonal_space({Rat(1), Rat(-1), Rat(-2)});
  auto d = ksim::diagonalize(q);
  CHECK(d.diag == std::vector<Rat>{Rat(1), Rat(-1), Rat(-2)});
  CHECK(d.base_change == MatQ::identity(3));
  CHECK(ksim::is_diagonal(q.gram));
}

TEST_CASE("diagonalize handles a zero diagonal entry mid-matrix") {
  // block diag(1) + U forces the off-diagonal sweep
  MatQ g(3, 3);
  g.at(0, 0) = Rat(1);
  g.at(1, 2) = Rat(1);
  g.at(2, 1) = Rat(1);
  QuadSpace q(g);
  auto d = ksim::diagonalize(q);
  MatQ dm(3, 3);
  for (int i = 0; i < 3; ++i) dm.at(i, i) = d.diag[i];
  CHECK(d.base_change.transpose() * q.gram * d.base_change == dm);
  CHECK(ksim::signature(q) == std::pair<int, int>{2, 1});
}

TEST_CASE("signature of definite and mixed forms") {
  CHECK(ksim::signature(ksim::diagonal_space({Rat(2), Rat(3, 5)})) ==
        std::pair<int, int>{2, 0});
  CHECK(ksim::signature(ksim::diagonal_space({Rat(-1), Rat(-7)})) ==
        std::pair<int, int>{0, 2});
  CHECK(ksim::signature(ksim::diagonal_space({Rat(1), Rat(-1), Rat(1), Rat(-1)})) ==
        std::pair<int, int>{2, 2});
}

TEST_CASE("rescale and orthogonal sums") {
  QuadSpace q = ksim::diagonal_space({Rat(1), Rat(-2)});
  QuadSpace r = ksim::rescale(q, Rat(-3));
  CHECK(r.gram.at(0, 0) == Rat(-3));
  CHECK(r.gram.at(1, 1) == Rat(6));
  CHECK_THROWS_AS(ksim::rescale(q, Rat(0)), ksim::error);

  QuadSpace s = ksim::orthogonal_sum(q, r);
  CHECK(s.dim == 4);
  CHECK(s.gram.at(0, 0) == Rat(1));
  CHECK(s.gram.at(2, 2) == Rat(-3));
  CHECK(s.gram.at(0, 2) == Rat(0));
  CHECK(ksim::signature(s) == std::pair<int, int>{2, 2});
}

TEST_CASE("same_form compares entries, not labels") {
  QuadSpace a = ksim::diagonal_space({Rat(1), Rat(-1)}, "one");
  QuadSpace b = ksim::diagonal_space({Rat(1), Rat(-1)}, "two");
  QuadSpace c = ksim::diagonal_space({Rat(1), Rat(-2)});
  CHECK(ksim::same_form(a, b));
  CHECK_FALSE(ksim::same_form(a, c));
}
