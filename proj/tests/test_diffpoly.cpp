#include "common.hpp"

#include <random>

using namespace dsfrob;

namespace {

DiffPolynomial random_dp(std::mt19937 &rng, int terms)
{
	std::uniform_int_distribution<int> i(0, 1), I(0, 2), m(0, 2), e(1, 2), num(-6, 6), k(1, 3);
	DiffPolynomial p;
	for (int t = 0; t < terms; ++t)
	{
		DiffPolynomial mono(Q(num(rng)));
		int f = k(rng);
		for (int s = 0; s < f; ++s)
			mono *= jet(i(rng), I(rng), m(rng)).pow(e(rng));
		p += mono;
	}
	return p;
}

} // namespace

TEST(DiffPoly, TotalDerivativeIsDerivation)
{
	std::mt19937 rng(17);
	for (int t = 0; t < 40; ++t)
	{
		DiffPolynomial a = random_dp(rng, 3), b = random_dp(rng, 3);
		EXPECT_EQ(total_x_derivative(a * b), total_x_derivative(a) * b + a * total_x_derivative(b));
		EXPECT_EQ(total_x_derivative(a + b), total_x_derivative(a) + total_x_derivative(b));
		EXPECT_EQ(dx(a, 2), total_x_derivative(total_x_derivative(a)));
	}
}

TEST(DiffPoly, TotalDerivativeFrozen)
{
	std::vector<int> eta{1, 2};
	DiffPolynomial p = dsfrob::testing::qp("q1_0^2*q2_1 + q2_0_x", eta);
	EXPECT_EQ(total_x_derivative(p), dsfrob::testing::qp("2*q1_0*q1_0_x*q2_1 + q1_0^2*q2_1_x + q2_0_xx", eta));
	EXPECT_EQ(str(total_x_derivative(p)), "q1_0^2*q2_1_x + 2*q1_0*q1_0_x*q2_1 + q2_0_xx");
	EXPECT_TRUE(total_x_derivative(DiffPolynomial(Q(5))).is_zero());
}

TEST(DiffPoly, DegreeGrowsByTwo)
{
	std::mt19937 rng(23);
	for (int t = 0; t < 40; ++t)
	{
		DiffPolynomial a = random_dp(rng, 1);
		long d = 0, d2 = 0;
		if (a.is_zero() || a.is_constant())
			continue;
		ASSERT_TRUE(quasihomogeneous(a, d));
		DiffPolynomial ax = total_x_derivative(a);
		ASSERT_TRUE(quasihomogeneous(ax, d2));
		EXPECT_EQ(d2, d + 2);
	}
}

TEST(DiffPoly, PartialDerivative)
{
	DiffPolynomial p = jet(0, 1).pow(3) * jet(1, 0, 2);
	EXPECT_EQ(partial_derivative(p, Jet{0, 1, 0}), Q(3) * jet(0, 1).pow(2) * jet(1, 0, 2));
	EXPECT_TRUE(partial_derivative(p, Jet{0, 1, 1}).is_zero());
}

TEST(DiffPoly, GradedInsertion)
{
	DeltaSeries s;
	// c(x) delta^{(s)}: eps power = derivative count + s - 1
	add_graded(s, 1, jet(0, 1));
	add_graded(s, 0, jet(0, 1, 1));
	add_graded(s, 3, DiffPolynomial(Q(1)));
	add_graded(s, 0, jet(0, 1));
	EXPECT_EQ(s.at(0, 1), jet(0, 1));
	EXPECT_EQ(s.at(0, 0), jet(0, 1, 1));
	EXPECT_EQ(s.at(2, 3), DiffPolynomial(Q(1)));
	EXPECT_EQ(s.at(-1, 0), jet(0, 1));
	EXPECT_EQ(s.delta(0), jet(0, 1, 1) + jet(0, 1));
}

TEST(DiffPoly, LeibnitzRuleVirasoroBase)
{
	// base {u(x), u(y)} = u_x delta + 2 u delta' + delta'''
	BaseBracketTable t;
	t.r = 1;
	t.eta = {1};
	t.entries[{0, 1, 0, 1}] = {{0, jet(0, 1, 1)}, {1, Q(2) * jet(0, 1)}, {3, DiffPolynomial(Q(1))}};
	auto lk = t.lookup();
	DeltaSeries uu = leibnitz_bracket(jet(0, 1), jet(0, 1), lk, identity_slice);
	EXPECT_EQ(uu.delta(1), Q(2) * jet(0, 1));
	EXPECT_EQ(uu.delta(0), jet(0, 1, 1));
	DeltaSeries u2 = leibnitz_bracket(jet(0, 1), jet(0, 1).pow(2), lk, identity_slice);
	// {u(x), u^2(y)} = 2 u(y) {u(x), u(y)}, with u(y) expanded at x
	DiffPolynomial u = jet(0, 1), ux = jet(0, 1, 1), uxx = jet(0, 1, 2), uxxx = jet(0, 1, 3);
	EXPECT_EQ(u2.delta(3), Q(2) * u);
	EXPECT_EQ(u2.delta(2), Q(6) * ux);
	EXPECT_EQ(u2.delta(1), Q(4) * u * u + Q(6) * uxx);
	EXPECT_EQ(u2.delta(0), Q(6) * u * ux + Q(2) * uxxx);
}
