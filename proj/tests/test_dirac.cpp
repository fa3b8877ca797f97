#include "common.hpp"

#include <random>

using namespace dsfrob;
using dsfrob::testing::pipeline;
using dsfrob::testing::zp;

TEST(Dirac, BareissInverseSmall)
{
	ZMat M = zmatrix(2, 2);
	M[0][0] = zp("z1", 2);
	M[0][1] = ZPoly(1);
	M[1][0] = ZPoly(-1);
	M[1][1] = ZPoly();
	auto [adj, d] = bareiss_inverse(M);
	EXPECT_EQ(d * d, ZPoly(1)); // determinant is a unit
	ZMat P = zmul(M, adj);
	EXPECT_EQ(P[0][0], d);
	EXPECT_TRUE(P[0][1].is_zero());
	EXPECT_TRUE(P[1][0].is_zero());
	EXPECT_EQ(P[1][1], d);
}

TEST(Dirac, BareissRejectsSingular)
{
	ZMat M = zmatrix(2, 2);
	M[0][0] = zp("z1", 1);
	M[0][1] = zp("z1^2", 1);
	M[1][0] = ZPoly(1);
	M[1][1] = zp("z1", 1);
	EXPECT_THROW(bareiss_inverse(M), SingularBlock);
	EXPECT_TRUE(zdet(M).is_zero());
}

TEST(Dirac, ZdetMatchesRationalDet)
{
	std::mt19937 rng(41);
	std::uniform_int_distribution<int> num(-4, 4);
	for (int t = 0; t < 30; ++t)
	{
		int n = 1 + t % 5;
		Mat A = zeros(n, n);
		ZMat Z = zmatrix(n, n);
		for (int i = 0; i < n; ++i)
			for (int j = 0; j < n; ++j)
			{
				A[i][j] = num(rng);
				Z[i][j] = ZPoly(A[i][j]);
			}
		EXPECT_EQ(zdet(Z), ZPoly(det(A)));
	}
}

TEST(Dirac, ZdetPolynomial)
{
	ZMat M = zmatrix(3, 3);
	M[0][2] = ZPoly(2);
	M[1][1] = zp("z1", 2);
	M[2][0] = ZPoly(3);
	M[2][2] = zp("z2^2", 2);
	EXPECT_EQ(zdet(M), zp("-6*z1", 2));
}

class Dir : public ::testing::TestWithParam<dsfrob::testing::Alg>
{
};

TEST_P(Dir, MatchesLeibnitzRoute)
{
	auto [t, r] = GetParam();
	const Pipeline &p = pipeline(t, r);
	EXPECT_TRUE(p.dirac.polynomial);
	EXPECT_EQ(p.dirac.g2, p.data.lt.g2);
	for (auto &row : p.dirac.F2)
		for (auto &e : row)
			EXPECT_TRUE(e.is_zero());
}

TEST_P(Dir, RestrictedInverseDegrees)
{
	auto [t, r] = GetParam();
	const Pipeline &p = pipeline(t, r);
	const DiracResult &d = p.dirac;
	EXPECT_TRUE(d.degrees_ok);
	int m = int(d.K.size());
	auto w = [&](int v) { return 2 * p.nb.eta[v] + 2; };
	for (int a = 0; a < m; ++a)
		for (int b = 0; b < m; ++b)
		{
			long deg = 0;
			if (d.K[a][b].is_zero())
				continue;
			ASSERT_TRUE(d.K[a][b].homogeneous(w, deg));
			EXPECT_EQ(deg, d.order[r + a].mu + d.order[r + b].mu - 2);
		}
}

TEST_P(Dir, OrderCoversBasis)
{
	auto [t, r] = GetParam();
	const Pipeline &p = pipeline(t, r);
	auto order = dirac_order(p.nb);
	ASSERT_EQ(int(order.size()), p.g.n);
	std::set<std::pair<int, int>> seen;
	for (auto &o : order)
	{
		EXPECT_EQ(o.mu, 2 * o.I);
		seen.insert({o.i, o.I});
	}
	EXPECT_EQ(int(seen.size()), p.g.n);
	for (int i = 0; i < r; ++i)
		EXPECT_EQ(order[i].I, -p.nb.eta[i]);
}

INSTANTIATE_TEST_SUITE_P(TestAlgebras, Dir, ::testing::ValuesIn(dsfrob::testing::kTestAlgebras),
                         dsfrob::testing::alg_name);

TEST(DiracExtra, RepeatedExponent)
{
	LieAlgebra g = build_chevalley('D', 4);
	NormalizedBasis nb = normalized_basis(g);
	DiracResult d = dirac_reduce(g, nb);
	EXPECT_TRUE(d.polynomial);
	EXPECT_TRUE(d.degrees_ok);
}
