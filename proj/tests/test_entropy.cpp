#include <doctest.h>

#include <mpfr.h>

#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "printers.hpp"
#include "tsallis/entropy.hpp"
#include "tsallis/errors.hpp"

using namespace tsallis;

namespace {

StochasticVector vec(const char* text) { return StochasticVector::parse(text); }
Alpha alpha(long n, long d = 1) { return Alpha(Rational(n, d)); }

double relative(const Real& a, const Real& b) { return ((a - b).abs() / b.abs()).to_double(); }

}  // namespace

TEST_CASE("alpha") {
  CHECK(alpha(3).is_exact_integer());
  CHECK(*alpha(3).integer() == 3);
  CHECK_FALSE(alpha(3, 2).is_exact_integer());
  CHECK(Alpha::parse("1.5").exact() == Rational(3, 2));
  CHECK_THROWS_AS(Alpha(Rational(0)), DomainError);
  CHECK_THROWS_AS(Alpha(Rational(-1, 2)), DomainError);
}

TEST_CASE("pow_alpha") {
  CHECK(pow_alpha(Rational(1, 2), alpha(3)).exact() == Rational(1, 8));
  CHECK(pow_alpha(Rational(0), alpha(1, 2)).exact() == Rational(0));
  CHECK(pow_alpha(Rational(1), alpha(1, 3)).exact() == Rational(1));

  // sqrt(1/2) through MPFR's square root at higher precision.
  const auto value = pow_alpha(Rational(1, 2), alpha(1, 2));
  CHECK_FALSE(value.is_exact());
  Real oracle(Rational(1, 2), 256);
  mpfr_sqrt(oracle.get(), oracle.get(), MPFR_RNDN);
  CHECK(relative(value.approx(), oracle) <= std::ldexp(1.0, 1 - 128));
  CHECK(value.to_double() == doctest::Approx(0.7071067811865476).epsilon(1e-15));

  SUBCASE("honours the requested precision") {
    const auto low = pow_alpha(Rational(1, 3), alpha(1, 3), 64);
    Real cube(Rational(1, 3), 256);
    mpfr_cbrt(cube.get(), cube.get(), MPFR_RNDN);
    CHECK(low.precision() == 64);
    CHECK(relative(low.approx(), cube) <= std::ldexp(1.0, 1 - 64));
  }
}

TEST_CASE("tsallis") {
  CHECK(tsallis::tsallis(vec("1"), alpha(3)).exact() == Rational(0));
  CHECK(tsallis::tsallis(vec("1"), alpha(1, 2)).is_zero_within(0));
  CHECK(tsallis::tsallis(vec("1/2,1/2"), alpha(2)).exact() == Rational(1, 2));
  CHECK(tsallis::tsallis(vec("1/4,1/4,1/4,1/4"), alpha(2)).exact() == Rational(3, 4));
  CHECK_THROWS_AS(tsallis::tsallis(vec("1/2,1/2"), alpha(1)), AlphaIsOne);

  oracle::VectorSource source(3);
  for (int i = 0; i < 200; ++i) {
    const auto v = source.next(6, 30);
    CHECK(tsallis::tsallis(v, alpha(4)).exact() == oracle::tsallis_integer(v, 4));
    const double approx = tsallis::tsallis(v, alpha(3, 2)).to_double();
    CHECK(approx == doctest::Approx(static_cast<double>(oracle::tsallis_ld(v, 1.5L))).epsilon(1e-14));
  }
}

TEST_CASE("shannon") {
  CHECK(shannon(vec("1")).exact() == Rational(0));
  CHECK(shannon(vec("1,0")).exact() == Rational(0));
  Real ln2(256);
  mpfr_const_log2(ln2.get(), MPFR_RNDN);
  const auto h = shannon(vec("1/2,1/2"));
  CHECK(relative(h.approx(), ln2) < 1e-35);
  CHECK(h.to_double() == doctest::Approx(0.6931471805599453).epsilon(1e-15));

  oracle::VectorSource source(5);
  for (int i = 0; i < 100; ++i) {
    const auto v = source.next(5, 20);
    CHECK(shannon(v).sign() >= 0);
    CHECK(shannon(v).to_double() == doctest::Approx(static_cast<double>(oracle::shannon_ld(v))).epsilon(1e-14));
  }
}

TEST_CASE("closed_form") {
  CHECK(closed_form(vec("1/4,3/4"), alpha(3), Rational(3, 8)).exact() == Rational(9, 32));
  CHECK(oracle::tsallis_integer(vec("1/4,3/4"), 3) == Rational(9, 32));
  CHECK(closed_form(vec("1/2,1/2"), alpha(2), Rational(1, 2)).exact() == Rational(1, 2));
  const auto ln2 = shannon(vec("1/2,1/2"));
  CHECK((closed_form(vec("1/2,1/2"), alpha(1), ln2) - ln2).is_zero_within(1e-30));
  CHECK(default_normalization(alpha(3)).exact() == Rational(3, 8));
}

TEST_CASE("normalization links") {
  oracle::VectorSource source(17);
  for (int i = 0; i < 300; ++i) {
    const auto v = source.next(6, 30);
    for (long k : {3L, 5L}) {
      const Alpha a = alpha(k);
      CHECK(closed_form(v, a, tsallis::tsallis(StochasticVector::uniform(2), a)) == tsallis::tsallis(v, a));
    }
    for (const Alpha& a : {alpha(1, 2), alpha(3, 2), alpha(7, 3)}) {
      const auto lhs = closed_form(v, a, tsallis::tsallis(StochasticVector::uniform(2), a));
      const auto rhs = tsallis::tsallis(v, a);
      const double scale = std::max(1e-300, std::abs(rhs.to_double()));
      CHECK(std::abs((lhs - rhs).to_double()) / scale <= 1e-12);
    }
    CHECK(closed_form(v, alpha(2), Rational(1, 2)) == tsallis::tsallis(v, alpha(2)));
    CHECK((closed_form(v, alpha(1), shannon(vec("1/2,1/2"))) - shannon(v)).is_zero_within(1e-12));
  }
}

TEST_CASE("uniform entropy increases with n") {
  for (const Alpha& a : {alpha(2), alpha(3), alpha(1, 2), alpha(5, 2)}) {
    EntropyValue previous = tsallis::tsallis(StochasticVector::uniform(1), a);
    for (std::size_t n = 2; n <= 64; ++n) {
      const auto current = tsallis::tsallis(StochasticVector::uniform(n), a);
      CHECK(current > previous);
      previous = current;
    }
  }
}

TEST_CASE("tsallis and shannon are permutation invariant") {
  oracle::VectorSource source(23);
  for (int i = 0; i < 100; ++i) {
    const auto v = source.next(5, 12);
    std::vector<std::size_t> perm(v.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::rotate(perm.begin(), perm.begin() + static_cast<long>(perm.size() / 2), perm.end());
    const auto w = permute(v, perm);
    CHECK(tsallis::tsallis(w, alpha(3)) == tsallis::tsallis(v, alpha(3)));
    CHECK((tsallis::tsallis(w, alpha(1, 2)) - tsallis::tsallis(v, alpha(1, 2))).is_zero_within(1e-30));
    CHECK((shannon(w) - shannon(v)).is_zero_within(1e-30));
  }
}

TEST_CASE("tabulated and perturbed functionals") {
  const auto base = tsallis_functional(alpha(2));
  const auto plain = make_tabulated({}, base);
  CHECK(plain(vec("1/3,2/3")) == base(vec("1/3,2/3")));

  EntropyTable table;
  table.emplace(vec("1/3,2/3"), EntropyValue(Rational(0)));
  const auto tab = make_tabulated(table, base);
  CHECK(tab(vec("1/3,2/3")).exact() == Rational(0));
  CHECK(tab(vec("2/3,1/3")).exact() == Rational(4, 9));

  const auto bumped = perturb(base, vec("1/2,1/2"), Rational(1, 1000));
  CHECK(bumped(vec("1/2,1/2")).exact() == Rational(501, 1000));
  CHECK(bumped(vec("1/4,3/4")) == base(vec("1/4,3/4")));
  const auto same = perturb(base, vec("1/2,1/2"), Rational(0));
  CHECK(same(vec("1/2,1/2")) == base(vec("1/2,1/2")));
}

TEST_CASE("table files") {
  const auto table = parse_table(
      "# comment\n"
      "1/2, 1/2 ; 1/2\n"
      "\n"
      "1/3,2/3 ; 0.25\n");
  REQUIRE(table.size() == 2);
  CHECK(table.at(vec("1/2,1/2")).exact() == Rational(1, 2));
  CHECK_FALSE(table.at(vec("1/3,2/3")).is_exact());
  CHECK(table.at(vec("1/3,2/3")).to_double() == 0.25);
  CHECK_THROWS_AS(parse_table("1/2,1/2 1/2\n"), ParseError);
  try {
    (void)parse_table("1/2,1/2 ; 0\n1/2,1/3 ; 1\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    const std::string what = e.what();
    CHECK(what.find("line 2") != std::string::npos);
    CHECK(what.find("5/6") != std::string::npos);
  }
}

TEST_CASE("value formatting") {
  CHECK(EntropyValue(Rational(5, 8)).to_string() == "5/8");
  CHECK(shannon(vec("1/2,1/2")).to_string() == "~0.693147180559945");
}
