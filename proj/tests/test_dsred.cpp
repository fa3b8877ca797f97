#include "common.hpp"

using namespace dsfrob;
using dsfrob::testing::qp;

TEST(DsRed, A2GeneratorsFrozen)
{
	// independent sympy gauge fixing
	LieAlgebra g = build_chevalley('A', 2);
	NormalizedBasis nb = normalized_basis(g);
	GaugeFixResult gf = gauge_fix(g, nb);
	ASSERT_EQ(gf.z.size(), 2u);
	EXPECT_EQ(gf.z[0], qp("3*q2_0^2 + q1_0^2 + q1_1 - q1_0_x", nb.eta));
	EXPECT_EQ(gf.z[1], qp("-4*q2_0^3 + 4*q1_0^2*q2_0 - 2*q1_1*q2_0 - q1_0_x*q2_0 + 4*q1_0*q2_1 - 3*q1_0*q2_0_x + "
	                      "q2_2 - q2_1_x + 1/2*q2_0_xx",
	                      nb.eta));
}

TEST(DsRed, FirstGeneratorFrozen)
{
	struct Row
	{
		char t;
		int r;
		std::string z1;
	};
	for (auto &row : std::vector<Row>{{'A', 1, "q1_0^2 + q1_1 - q1_0_x"},
	                                  {'B', 2, "100*q2_0^2 + q1_0^2 + q1_1 - q1_0_x"},
	                                  {'A', 3, "100*q3_0^2 + 45*q2_0^2 + q1_0^2 + q1_1 - q1_0_x"},
	                                  {'G', 2, "5292*q2_0^2 + q1_0^2 + q1_1 - q1_0_x"}})
	{
		LieAlgebra g = build_chevalley(row.t, row.r);
		NormalizedBasis nb = normalized_basis(g);
		EXPECT_EQ(gauge_fix(g, nb).z[0], qp(row.z1, nb.eta)) << g.label();
	}
}

class DsRedP : public ::testing::TestWithParam<dsfrob::testing::Alg>
{
};

TEST_P(DsRedP, Quasihomogeneous)
{
	auto [t, r] = GetParam();
	LieAlgebra g = build_chevalley(t, r);
	NormalizedBasis nb = normalized_basis(g);
	GaugeFixResult gf = gauge_fix(g, nb);
	for (int i = 0; i < r; ++i)
	{
		long d = 0;
		ASSERT_TRUE(quasihomogeneous(gf.z[i], d)) << i;
		EXPECT_EQ(d, 2 * nb.eta[i] + 2);
		// z^i = q_i^{eta_i} + (terms in lower coordinates)
		EXPECT_EQ(gf.z[i].coeff({{Jet{i, nb.eta[i], 0}, 1}}), 1);
	}
}

TEST_P(DsRedP, GaugeInvariance)
{
	auto [t, r] = GetParam();
	LieAlgebra g = build_chevalley(t, r);
	NormalizedBasis nb = normalized_basis(g);
	GaugeFixResult gf = gauge_fix(g, nb);
	EXPECT_EQ(gauge_invariance_passes(g, nb, gf, 20, 1234), 20);
}

TEST_P(DsRedP, GaugeActionComposes)
{
	// acting with s and then with -s returns the connection
	auto [t, r] = GetParam();
	LieAlgebra g = build_chevalley(t, r);
	NormalizedBasis nb = normalized_basis(g);
	PVec b = generic_q(g, nb);
	for (int K = 0; K < g.n; ++K)
		b[K] += DiffPolynomial(g.triple.e[K]);
	PVec s(g.n), ms(g.n);
	axpy(s, jet(0, 0), nb.x(r - 1, -1));
	axpy(ms, -jet(0, 0), nb.x(r - 1, -1));
	PVec back = gauge_action(g, ms, gauge_action(g, s, b));
	for (int K = 0; K < g.n; ++K)
		EXPECT_EQ(back[K], b[K]);
}

INSTANTIATE_TEST_SUITE_P(TestAlgebras, DsRedP, ::testing::ValuesIn(dsfrob::testing::kTestAlgebras),
                         dsfrob::testing::alg_name);

TEST(DsRedExtra, TamperedGeneratorFailsInvariance)
{
	LieAlgebra g = build_chevalley('A', 2);
	NormalizedBasis nb = normalized_basis(g);
	GaugeFixResult gf = gauge_fix(g, nb);
	gf.z[0] += jet(0, 0, 1);
	EXPECT_LT(gauge_invariance_passes(g, nb, gf, 20, 99), 20);
}
