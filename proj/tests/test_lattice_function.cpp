#include <gtest/gtest.h>
#include <gmock/gmock.h>

#include <random>

#include "radonlab/lattice_function.hpp"

using namespace radonlab;
using ::testing::HasSubstr;

namespace {

LatticeFunction random_function(std::size_t dim, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> c(-1000000, 1000000);
  std::normal_distribution<double> g;
  LatticeFunction f(dim);
  for (int i = 0; i < 40; ++i) {
    Site x(dim);
    for (auto& v : x) v = c(rng);
    f.add(x, Complex(g(rng) * 1e3, g(rng) * 1e-7));
  }
  return f;
}

std::string parse_error(const std::string& text) {
  try {
    from_text(text);
  } catch (const PreconditionError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(LatticeFunction, PrunesZerosAndAccumulates) {
  LatticeFunction f(2);
  f.add({1, 2}, Complex(1.5, 0));
  f.add({1, 2}, Complex(-1.5, 0));
  EXPECT_EQ(f.size(), 0u);
  f.set({0, 0}, Complex(2, 1));
  f.set({3, -1}, 0.0);
  EXPECT_EQ(f.size(), 1u);
  EXPECT_EQ(f.at({0, 0}), Complex(2, 1));
  EXPECT_EQ(f.at({9, 9}), Complex(0.0));
  EXPECT_EQ(LatticeFunction::delta(3).sum(), Complex(1.0));
}

TEST(LatticeFunction, Norms) {
  LatticeFunction f(1);
  f.set({0}, Complex(3, 4));
  f.set({5}, Complex(-1, 0));
  EXPECT_DOUBLE_EQ(f.lp_norm(1.0), 6.0);
  EXPECT_DOUBLE_EQ(f.lp_norm(2.0), std::sqrt(26.0));
  EXPECT_DOUBLE_EQ(f.lp_norm(INFINITY), 5.0);
  EXPECT_EQ(f.radius(), (std::vector<std::int64_t>{5}));
  EXPECT_EQ(f.scaled(Complex(0, 2)).at({5}), Complex(0, -2));
}

TEST(LatticeFunctionText, ExactFormatAndOrder) {
  LatticeFunction f(2);
  f.set({1, -2}, Complex(0.5, -0.0));
  f.set({-3, 7}, Complex(1.0 / 3, 2));
  EXPECT_EQ(to_text(f), "-3 7 0.33333333333333331 2\n1 -2 0.5 0\n");
}

TEST(LatticeFunctionText, RoundTripIsExact) {
  std::mt19937_64 rng(41);
  for (std::size_t d = 1; d <= 3; ++d) {
    const auto f = random_function(d, rng);
    const auto text = to_text(f);
    const auto g = from_text(text);
    EXPECT_EQ(g, f);
    EXPECT_EQ(to_text(g), text);
    EXPECT_EQ(lattice_function_from_json(to_json(f)), f);
    EXPECT_EQ(to_json(f).dump(), to_json(g).dump());
  }
}

TEST(LatticeFunctionText, CommentsBlankLinesAndExplicitDim) {
  const auto f = from_text("# header\n\n  0 0 1 0\n# more\n1 1 0.25 -0.5\n");
  EXPECT_EQ(f.dim(), 2u);
  EXPECT_EQ(f.size(), 2u);
  EXPECT_EQ(f.at({1, 1}), Complex(0.25, -0.5));
  EXPECT_EQ(from_text("", 4).dim(), 4u);
}

TEST(LatticeFunctionText, ErrorsCarryLineNumbers) {
  EXPECT_THAT(parse_error("0 1 0\n1 2\n"), HasSubstr("line 2"));
  EXPECT_THAT(parse_error("0 1 0\n1 2 3 4\n"), HasSubstr("line 2: dimension mismatch"));
  EXPECT_THAT(parse_error("# c\n0.5 1 0\n"), HasSubstr("line 2: malformed"));
  EXPECT_THAT(parse_error("0 x 0\n"), HasSubstr("line 1: malformed"));
  EXPECT_THROW(lattice_function_from_json(nlohmann::json::parse(R"({"dim": 2, "entries": [[1, 0, 0]]})")),
               PreconditionError);
}

TEST(TorusFunction, IndexingAndPeriodization) {
  TorusFunction t({3, 4});
  EXPECT_EQ(t.size(), 12u);
  const Site a = {-1, 5};
  EXPECT_EQ(t.index(a), 2u * 4 + 1);
  EXPECT_EQ(t.site(t.index(a)), (Site{2, 1}));
  LatticeFunction f(2);
  f.set({0, 0}, 1.0);
  f.set({3, 4}, 2.0);
  f.set({1, -1}, Complex(0, 1));
  const auto p = TorusFunction::periodize(f, {3, 4});
  EXPECT_EQ(p.at(Site{0, 0}), Complex(3.0));
  EXPECT_EQ(p.at(Site{1, 3}), Complex(0, 1));
  EXPECT_THROW(TorusFunction({3, 0}), PreconditionError);
  EXPECT_THROW(TorusFunction::periodize(f, {3}), PreconditionError);
  for (std::size_t i = 0; i < p.size(); ++i) EXPECT_EQ(p.index(p.site(i)), i);
}
