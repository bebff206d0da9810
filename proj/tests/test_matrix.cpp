#include <catch2/catch_amalgamated.hpp>

#include "ksim/matrix.hpp"

using ksim::Mat;
using ksim::MatQ;
using ksim::QuadExt;
using ksim::Rat;

TEST_CASE("basic algebra") {
  MatQ a{{Rat(1), Rat(2)}, {Rat(3), Rat(4)}};
  MatQ b{{Rat(0), Rat(1)}, {Rat(1), Rat(0)}};
  CHECK(a * MatQ::identity(2) == a);
  CHECK((a * b) == MatQ{{Rat(2), Rat(1)}, {Rat(4), Rat(3)}});
  CHECK(a.transpose() == MatQ{{Rat(1), Rat(3)}, {Rat(2), Rat(4)}});
  CHECK((a + a) == Rat(2) * a);
  CHECK(a.det() == Rat(-2));
  CHECK(MatQ::identity(3).det() == Rat(1));
}

TEST_CASE("inverse") {
  MatQ a{{Rat(1), Rat(2)}, {Rat(3), Rat(4)}};
  auto inv = a.inverse();
  REQUIRE(inv.has_value());
  CHECK(*inv * a == MatQ::identity(2));
  CHECK(a * *inv == MatQ::identity(2));
  CHECK((*inv).at(0, 0) == Rat(-2));
  CHECK((*inv).at(0, 1) == Rat(1));
  CHECK((*inv).at(1, 0) == Rat(3, 2));
  CHECK((*inv).at(1, 1) == Rat(-1, 2));

  MatQ s{{Rat(1), Rat(2)}, {Rat(2), Rat(4)}};
  CHECK_FALSE(s.inverse().has_value());
  CHECK(s.det().is_zero());
}

TEST_CASE("kernel") {
  MatQ s{{Rat(1), Rat(2)}, {Rat(2), Rat(4)}};
  MatQ k = s.kernel();
  REQUIRE(k.cols() == 1);
  CHECK((s * k).is_zero());
  CHECK_FALSE(k.is_zero());

  CHECK(MatQ::identity(3).kernel().cols() == 0);

  // rank-1 projector on dim 3 has a 2-dimensional kernel
  MatQ p(3, 3);
  p.at(0, 0) = Rat(1);
  CHECK(p.kernel().cols() == 2);
}

TEST_CASE("symmetry probe") {
  MatQ sym{{Rat(2), Rat(-1)}, {Rat(-1), Rat(2)}};
  CHECK_FALSE(sym.first_asymmetry().has_value());
  MatQ asym{{Rat(2), Rat(-1)}, {Rat(1), Rat(2)}};
  auto ij = asym.first_asymmetry();
  REQUIRE(ij.has_value());
  CHECK(*ij == std::pair<int, int>{0, 1});
}

TEST_CASE("quadratic extension arithmetic") {
  QuadExt r2 = QuadExt::sqrt_of(2);
  CHECK(r2 * r2 == QuadExt(2));
  CHECK((r2 + r2) == QuadExt(2) * r2);
  CHECK(r2.conj() == -r2);
  CHECK(r2 * r2.inv() == QuadExt(1));
  CHECK((QuadExt(1) + r2) * (QuadExt(1) - r2) == QuadExt(-1));
  CHECK(ksim::sign_of(QuadExt(1) - r2) == -1);   // 1 - sqrt(2) < 0
  CHECK(ksim::sign_of(QuadExt(3) - r2) == 1);
  CHECK(ksim::is_zero_val(r2 - r2));

  QuadExt half_root(2, Rat(0), Rat(1, 2));  // sqrt(2)/2
  CHECK(half_root * half_root == QuadExt(Rat(1, 2)));
}

TEST_CASE("lifted matrices keep exact eigen relations") {
  // M = [[0,2],[1,0]] squares to 2*Id; over Q(sqrt 2) the kernel of M - sqrt(2)
  // is one-dimensional
  MatQ m{{Rat(0), Rat(2)}, {Rat(1), Rat(0)}};
  Mat<QuadExt> a = ksim::lift(m);
  QuadExt r2 = QuadExt::sqrt_of(2);
  Mat<QuadExt> shifted = a;
  for (int i = 0; i < 2; ++i) shifted.at(i, i) -= r2;
  Mat<QuadExt> k = shifted.kernel();
  REQUIRE(k.cols() == 1);
  CHECK((shifted * k).is_zero());
}
