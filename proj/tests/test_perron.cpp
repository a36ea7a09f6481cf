#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "subdyn/subdyn.hpp"

using namespace subdyn;

namespace {

IntMatrix mat(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  IntMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    Eigen::Index c = 0;
    for (auto x : row) m(r, c++) = x;
    ++r;
  }
  return m;
}

const double lam13 = (1.0 + std::sqrt(13.0)) / 2.0;
const double tau = (1.0 + std::sqrt(5.0)) / 2.0;

}  // namespace

TEST(Matrix, Examples) {
  EXPECT_EQ(substitution_matrix(builtin::sqrt13()).counts, mat({{1, 1}, {3, 0}}));
  EXPECT_EQ(substitution_matrix(builtin::thue_morse()).counts, mat({{1, 1}, {1, 1}}));
  EXPECT_EQ(substitution_matrix(Substitution::finite({"a"}, {"a"})).counts, mat({{1}}));
}

TEST(Matrix, ColumnSumsAreImageLengths) {
  auto rho = builtin::rho_infty(10);
  auto m = substitution_matrix(rho);
  for (Eigen::Index j = 0; j < m.counts.cols(); ++j)
    EXPECT_EQ(m.counts.col(j).sum(), static_cast<std::int64_t>(rho.image_length(m.letters[static_cast<std::size_t>(j)])));
}

TEST(Matrix, TorusAlphabetIsDomainError) {
  EXPECT_THROW(substitution_matrix(builtin::rho_alpha(builtin::parse_torus_parameter("1/2"))), DomainError);
}

TEST(Primitivity, Examples) {
  auto p = is_primitive(mat({{1, 1}, {3, 0}}));
  EXPECT_TRUE(p.primitive);
  EXPECT_EQ(p.power, 2);
  EXPECT_FALSE(is_primitive(mat({{1, 0}, {0, 1}})).primitive);
  EXPECT_EQ(is_primitive(mat({{1, 1}, {1, 1}})).power, 1);
}

TEST(Primitivity, WielandtExtremalMatrixNeedsFullBound) {
  // Wielandt's matrix of size d is primitive with exponent exactly (d-1)^2 + 1.
  const int d = 5;
  IntMatrix w = IntMatrix::Zero(d, d);
  for (int i = 0; i + 1 < d; ++i) w(i, i + 1) = 1;
  w(d - 1, 0) = 1;
  w(d - 1, 1) = 1;
  auto p = is_primitive(w);
  EXPECT_TRUE(p.primitive);
  EXPECT_EQ(p.power, (d - 1) * (d - 1) + 1);
}

TEST(Perron, SqrtThirteen) {
  auto pf = perron_data(mat({{1, 1}, {3, 0}}));
  EXPECT_NEAR(pf.lambda, lam13, 1e-12);
  EXPECT_NEAR(pf.length[0], lam13, 1e-12);
  EXPECT_NEAR(pf.length[1], 1.0, 1e-15);
  EXPECT_NEAR(pf.frequency[0], (lam13 - 1) / 3, 1e-12);
  EXPECT_NEAR(pf.frequency[1], (4 - lam13) / 3, 1e-12);
}

TEST(Perron, FibonacciAndThueMorse) {
  EXPECT_NEAR(perron_data(mat({{1, 1}, {1, 0}})).lambda, tau, 1e-12);
  auto tm = perron_data(mat({{1, 1}, {1, 1}}));
  EXPECT_NEAR(tm.lambda, 2.0, 1e-12);
  EXPECT_NEAR(tm.frequency[0], 0.5, 1e-12);
  EXPECT_NEAR(tm.frequency[1], 0.5, 1e-12);
}

TEST(Perron, NonPrimitiveIsPreconditionError) {
  EXPECT_THROW(perron_data(mat({{1, 0}, {0, 1}})), PreconditionError);
  EXPECT_THROW(pv_classify(mat({{1, 0}, {0, 1}})), PreconditionError);
}

TEST(Perron, FirstEntryNormalisation) {
  auto pf = perron_data(mat({{1, 1}, {3, 0}}), LengthNormalization::first_entry);
  EXPECT_NEAR(pf.length[0], 1.0, 1e-15);
  EXPECT_NEAR(pf.length[1], 1.0 / lam13, 1e-12);
}

TEST(Perron, EigenEquationsAndPowerIterationAgree) {
  for (const auto& m : {mat({{1, 1}, {3, 0}}), mat({{1, 1}, {1, 0}}), mat({{1, 1}, {1, 1}}),
                        mat({{0, 1, 1}, {1, 0, 2}, {2, 1, 0}}), substitution_matrix(builtin::rho_infty(12)).counts}) {
    auto pf = perron_data(m);
    Eigen::MatrixXd a = m.cast<double>();
    EXPECT_LT((a * pf.frequency - pf.lambda * pf.frequency).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LT((pf.length.transpose() * a - pf.lambda * pf.length.transpose()).cwiseAbs().maxCoeff(), 1e-10 * pf.length.maxCoeff());
    EXPECT_NEAR(pf.frequency.sum(), 1.0, 1e-14);
    auto pi = power_iteration(m);
    ASSERT_TRUE(pi.converged);
    EXPECT_NEAR(pi.lambda, pf.lambda, 1e-9);
    EXPECT_LT((pi.vector - pf.frequency).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(Pv, Examples) {
  auto a = pv_classify(mat({{1, 1}, {3, 0}}));
  EXPECT_EQ(a.pv, PvClass::non_pisot);
  EXPECT_NEAR(a.second_modulus, (std::sqrt(13.0) - 1) / 2, 1e-12);
  auto f = pv_classify(mat({{1, 1}, {1, 0}}));
  EXPECT_EQ(f.pv, PvClass::pisot);
  EXPECT_NEAR(f.second_modulus, tau - 1, 1e-12);
  auto c = pv_classify(mat({{2}}));
  EXPECT_EQ(c.pv, PvClass::pisot);
  EXPECT_EQ(c.second_modulus, 0.0);
}

TEST(Pv, UnitModulusIsIndeterminate) {
  // eigenvalues 3 and -1
  auto r = pv_classify(mat({{1, 2}, {2, 1}}));
  EXPECT_EQ(r.pv, PvClass::indeterminate);
}

TEST(Pv, PermutationInvariance) {
  for (const auto& m : {mat({{1, 1}, {3, 0}}), mat({{0, 1, 1}, {1, 0, 2}, {2, 1, 0}})}) {
    Eigen::Index d = m.rows();
    std::vector<int> perm(static_cast<std::size_t>(d));
    std::iota(perm.begin(), perm.end(), 0);
    auto base = pv_classify(m);
    do {
      IntMatrix p = IntMatrix::Zero(d, d);
      for (Eigen::Index i = 0; i < d; ++i) p(i, perm[static_cast<std::size_t>(i)]) = 1;
      IntMatrix q = p * m * p.transpose();
      auto r = pv_classify(q);
      EXPECT_EQ(r.pv, base.pv);
      EXPECT_NEAR(r.second_modulus, base.second_modulus, 1e-10);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TEST(Perron, LambdaOfPowers) {
  for (const auto& rho : {builtin::sqrt13(), builtin::fibonacci(), builtin::thue_morse()}) {
    double lam = perron_data(substitution_matrix(rho).counts).lambda;
    for (int k = 1; k <= 4; ++k)
      EXPECT_NEAR(perron_data(substitution_matrix(power(rho, k)).counts).lambda, std::pow(lam, k), 1e-9);
  }
}

TEST(Perron, FrequenciesMatchLetterCounts) {
  for (const auto& rho : {builtin::sqrt13(), builtin::fibonacci(), builtin::thue_morse()}) {
    auto pf = perron_data(substitution_matrix(rho).counts);
    Word w{FiniteLabel{0}};
    while (w.size() < 100000) w = subdyn::apply(rho, w);
    double na = 0;
    for (const auto& l : w) na += std::get<FiniteLabel>(l).id == 0;
    EXPECT_NEAR(na / static_cast<double>(w.size()), pf.frequency[0], 1e-2);
  }
}

TEST(Density, Examples) {
  EXPECT_DOUBLE_EQ(tile_density(Eigen::Vector2d(0.5, 0.5), Eigen::Vector2d(1, 1)), 1.0);
  EXPECT_NEAR(tile_density(Eigen::Vector2d(tau - 1, 2 - tau), Eigen::Vector2d(tau, 1)), 1.0 / (3 - tau), 1e-12);
}

TEST(Density, MatchesAverageGapOfSupertile) {
  struct Case {
    Substitution rho;
    int n;
  };
  for (auto& [rho, n] : {Case{builtin::fibonacci(), 15}, Case{builtin::sqrt13(), 10}}) {
    auto pf = perron_data(substitution_matrix(rho).counts);
    auto t = inflate_tiling(rho, pf, rho.alphabet().word("a"), n);
    double avg_gap = t.total_length() / static_cast<double>(t.tiles.size());
    EXPECT_NEAR(tile_density(pf.frequency, pf.length), 1.0 / avg_gap, 1e-3);
  }
}

TEST(LengthEigen, Examples) {
  auto rho = builtin::sqrt13();
  LengthFunction L = [](const Letter& l) { return std::get<FiniteLabel>(l).id == 0 ? lam13 : 1.0; };
  EXPECT_TRUE(check_length_eigen(rho, L, lam13, {FiniteLabel{0}, FiniteLabel{1}}, 1e-12));
  EXPECT_FALSE(check_length_eigen(rho, L, lam13 + 1e-3, {FiniteLabel{0}, FiniteLabel{1}}, 1e-9));
  LengthFunction one = [](const Letter&) { return 1.0; };
  EXPECT_TRUE(check_length_eigen(builtin::thue_morse(), one, 2.0, {FiniteLabel{0}, FiniteLabel{1}}, 1e-15));
  LengthFunction Linf = [](const Letter& l) { return 2.0 - std::ldexp(1.0, -static_cast<int>(std::get<CompactNat>(l).value)); };
  std::vector<Letter> sample;
  for (std::uint64_t n = 0; n <= 20; ++n) sample.push_back(CompactNat::at(n));
  EXPECT_TRUE(check_length_eigen(builtin::rho_infty(64), Linf, 2.5, sample, 1e-9));
}
