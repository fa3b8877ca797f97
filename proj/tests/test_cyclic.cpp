#include "common.hpp"

using namespace dsfrob;

namespace {

Mat qmat(std::vector<std::vector<Q>> rows) { return rows; }

} // namespace

TEST(Cyclic, FrozenGramMatrices)
{
	// values from an independent sympy computation
	struct Row
	{
		char t;
		int r;
		Mat A;
	};
	for (auto &row : std::vector<Row>{
	         {'A', 1, qmat({{2}})},
	         {'A', 2, qmat({{0, 3}, {3, 0}})},
	         {'B', 2, qmat({{0, 4}, {4, 0}})},
	         {'A', 3, qmat({{0, 0, 4}, {0, make_q(2, 3), 0}, {4, 0, 0}})},
	         {'G', 2, qmat({{0, 6}, {6, 0}})}})
	{
		LieAlgebra g = build_chevalley(row.t, row.r);
		CyclicData cd = opposite_cartan_basis(g, normalized_basis(g));
		EXPECT_EQ(cd.A, row.A) << g.label();
	}
}

class Cyc : public ::testing::TestWithParam<dsfrob::testing::Alg>
{
};

TEST_P(Cyc, OppositeCartan)
{
	auto [t, r] = GetParam();
	LieAlgebra g = build_chevalley(t, r);
	NormalizedBasis nb = normalized_basis(g);
	CyclicData cd = opposite_cartan_basis(g, nb);
	size_t kd = 0;
	EXPECT_TRUE(regular_semisimple(g, cd.y1, &kd));
	EXPECT_EQ(int(kd), r);
	for (int i = 0; i < r; ++i)
	{
		EXPECT_TRUE(is_zero(g.bracket(cd.y1, cd.y[i])));
		for (int j = 0; j < r; ++j)
			EXPECT_TRUE(is_zero(g.bracket(cd.y[i], cd.y[j])));
		// u_i pairs to 1 with X^i_{-eta_i}
		EXPECT_EQ(g.pair(cd.u[i], nb.x(i, -nb.eta[i])), 1);
	}
	EXPECT_NE(det(cd.A), 0);
	// y1 = e + a is the first basis element of the opposite Cartan part
	EXPECT_EQ(cd.A[0][r - 1], nb.kappa + 1);
}

TEST_P(Cyc, GoldIdentity)
{
	auto [t, r] = GetParam();
	LieAlgebra g = build_chevalley(t, r);
	NormalizedBasis nb = normalized_basis(g);
	CyclicData cd = opposite_cartan_basis(g, nb);
	for (int i = 0; i < r; ++i)
		for (int j = 0; j < r; ++j)
			EXPECT_EQ(gold_lhs(g, nb, cd.a, i, j) / (nb.sigma[i] * nb.sigma[j]), cd.A[i][j]) << i << " " << j;
}

INSTANTIATE_TEST_SUITE_P(TestAlgebras, Cyc, ::testing::ValuesIn(dsfrob::testing::kTestAlgebras),
                         dsfrob::testing::alg_name);

TEST(CyclicExtra, NilpotentIsNotRegularSemisimple)
{
	LieAlgebra g = build_chevalley('A', 2);
	EXPECT_FALSE(regular_semisimple(g, g.triple.e));
	EXPECT_FALSE(regular_semisimple(g, Vec(g.n, Q(0))));
}
