#include <doctest.h>

#include <random>

#include "purfit/errors.hpp"
#include "purfit/tables.hpp"
#include "support/fixtures.hpp"

using namespace purfit;
using purfit::testing::t1;
using purfit::testing::t1_schema;

namespace {

JointTable uniform8() {
  return JointTable(t1_schema(), std::vector<double>(8, 0.125));
}

}  // namespace

TEST_CASE("schema rejects malformed declarations") {
  CHECK_THROWS_AS(Schema({"Y", {"only"}}, {{"S", {"a", "b"}}}, {{"X", {"u", "v"}}}),
                  ArgumentError);
  CHECK_THROWS_AS(Schema({"Y", {"0", "0"}}, {{"S", {"a", "b"}}}, {{"X", {"u", "v"}}}),
                  ArgumentError);
  CHECK_THROWS_AS(Schema({"Y", {"0", "1"}}, {{"Y", {"a", "b"}}}, {{"X", {"u", "v"}}}),
                  ArgumentError);
}

TEST_CASE("flat enumeration follows row-major declaration order") {
  auto schema = t1_schema();
  CHECK(schema->cell_count() == 8);
  const std::vector<std::string> first = {"0", "a", "u"};
  const std::vector<std::string> last = {"1", "b", "v"};
  const std::vector<std::string> mid = {"0", "b", "u"};
  CHECK(schema->index_of(first) == 0);
  CHECK(schema->index_of(last) == 7);
  CHECK(schema->index_of(mid) == 2);
  const std::vector<std::string> bogus = {"0", "c", "u"};
  CHECK_THROWS_AS(schema->index_of(bogus), ArgumentError);
}

TEST_CASE("enumeration round-trips on every cell") {
  auto schemas = {t1_schema(),
                  Schema::make({"Y", {"lo", "mid", "hi"}},
                               {{"G", {"m", "f"}}, {"R", {"w", "b", "h"}}},
                               {{"A", {"y", "o"}}, {"E", {"d", "s", "u"}}})};
  for (const auto& schema : schemas) {
    for (std::size_t a = 0; a < schema->cell_count(); ++a) {
      auto profile = schema->profile_of(a);
      CHECK(schema->index_of(profile) == a);
    }
  }
}

TEST_CASE("marginalize sums agreeing joint cells") {
  auto u = uniform8();
  MarginalTable y = marginalize(u, u.schema()->response_subset());
  CHECK(y[0] == doctest::Approx(0.5));
  CHECK(y[1] == doctest::Approx(0.5));

  MarginalTable ys = marginalize(u, u.schema()->parity_subset());
  for (std::size_t m = 0; m < 4; ++m) CHECK(ys[m] == doctest::Approx(0.25));

  MarginalTable t1_ys = marginalize(t1(), t1_schema()->parity_subset());
  CHECK(t1_ys[0] == doctest::Approx(0.1));  // (y=0, a)
  CHECK(t1_ys[1] == doctest::Approx(0.4));  // (y=0, b)
  CHECK(t1_ys[2] == doctest::Approx(0.4));  // (y=1, a)
  CHECK(t1_ys[3] == doctest::Approx(0.1));  // (y=1, b)

  CHECK_THROWS_AS(marginalize(u, std::vector<std::size_t>{}), ArgumentError);
  CHECK_THROWS_AS(marginalize(u, std::vector<std::size_t>{9}), ArgumentError);
}

TEST_CASE("marginalization is consistent under composition and conserves mass") {
  std::mt19937_64 gen(42);
  auto schema = Schema::make({"Y", {"0", "1"}}, {{"S", {"a", "b", "c"}}},
                             {{"X", {"u", "v"}}, {"W", {"p", "q", "r"}}});
  for (int trial = 0; trial < 20; ++trial) {
    JointTable t = purfit::testing::random_positive_table(schema, gen, 0.0);
    MarginalTable ab = marginalize(t, std::vector<std::size_t>{0, 1});
    MarginalTable direct = marginalize(t, std::vector<std::size_t>{0});

    // Re-marginalize (Y,S) down to Y through the marginal's own layout.
    std::vector<double> rolled(2, 0.0);
    for (std::size_t m = 0; m < ab.size(); ++m) rolled[ab.layout().decode(m)[0]] += ab[m];
    for (std::size_t y = 0; y < 2; ++y)
      CHECK(std::abs(rolled[y] - direct[y]) <= 1e-14);

    CHECK(std::abs(ab.mass() - 1.0) <= 1e-14);
    CHECK(std::abs(direct.mass() - 1.0) <= 1e-14);
  }
}

TEST_CASE("conditional slices normalize and flag zero-mass groups") {
  auto u = uniform8();
  ConditionalTable c = conditional(u, u.schema()->response_subset(),
                                   u.schema()->protected_subset());
  for (std::size_t s = 0; s < 2; ++s) {
    CHECK(c.defined(s));
    CHECK(c.value(0, s) == doctest::Approx(0.5));
    CHECK(c.value(1, s) == doctest::Approx(0.5));
  }

  ConditionalTable ct = conditional(t1(), t1_schema()->response_subset(),
                                    t1_schema()->protected_subset());
  CHECK(ct.value(1, 0) == doctest::Approx(0.8));  // p(y=1 | s=a)

  // Zero-mass slice: all mass on s=a.
  JointTable lop(t1_schema(), {0.25, 0.25, 0.0, 0.0, 0.25, 0.25, 0.0, 0.0});
  ConditionalTable cz = conditional(lop, lop.schema()->response_subset(),
                                    lop.schema()->protected_subset());
  CHECK(cz.defined(0));
  CHECK_FALSE(cz.defined(1));
  CHECK(cz.undefined_slices() == 1);

  CHECK_THROWS_AS(conditional(u, {0, 1}, {1, 2}), ArgumentError);
}

TEST_CASE("conditional times given-marginal reconstructs the joint marginal") {
  std::mt19937_64 gen(7);
  auto schema = t1_schema();
  for (int trial = 0; trial < 20; ++trial) {
    JointTable t = purfit::testing::random_positive_table(schema, gen, 0.0);
    ConditionalTable c = conditional(t, schema->response_subset(), schema->protected_subset());
    MarginalTable s = marginalize(t, schema->protected_subset());
    MarginalTable ys = marginalize(t, schema->parity_subset());
    for (std::size_t g = 0; g < s.size(); ++g) {
      if (s[g] <= 0.0) continue;
      for (std::size_t y = 0; y < 2; ++y)
        CHECK(std::abs(c.value(y, g) * s[g] - ys[y * 2 + g]) <= 1e-12);
    }
  }
}

TEST_CASE("normalize divides counts by the total") {
  auto schema = t1_schema();
  JointTable point = normalize(CountTable(schema, {1, 0, 0, 0, 0, 0, 0, 0}));
  CHECK(point[0] == doctest::Approx(1.0));
  for (std::size_t a = 1; a < 8; ++a) CHECK(point[a] == 0.0);

  JointTable flat = normalize(CountTable(schema, std::vector<std::uint64_t>(8, 5)));
  for (std::size_t a = 0; a < 8; ++a) CHECK(flat[a] == doctest::Approx(0.125));

  JointTable ratios = normalize(CountTable(schema, {2, 1, 1, 0, 0, 0, 0, 0}));
  CHECK(ratios[0] == doctest::Approx(0.5));
  CHECK(ratios[1] == doctest::Approx(0.25));
  CHECK(ratios[2] == doctest::Approx(0.25));
  CHECK(ratios[3] == 0.0);

  CHECK_THROWS_AS(normalize(CountTable(schema, std::vector<std::uint64_t>(8, 0))),
                  ArgumentError);
}

TEST_CASE("joint table validates mass and sign") {
  auto schema = t1_schema();
  CHECK_THROWS_AS(JointTable(schema, std::vector<double>(8, 0.2)), ArgumentError);
  std::vector<double> negative(8, 0.125);
  negative[0] = -0.125;
  negative[1] = 0.375;
  CHECK_THROWS_AS(JointTable(schema, negative), ArgumentError);
}
