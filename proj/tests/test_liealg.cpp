#include "common.hpp"

#include <filesystem>
#include <fstream>

using namespace dsfrob;

namespace {

void expect_jacobi_and_invariance(const LieAlgebra &g)
{
	int n = g.n;
	for (int I = 0; I < n; ++I)
		for (int J = 0; J < n; ++J)
		{
			Vec xy = g.bracket(g.unit(I), g.unit(J));
			for (int K = 0; K < n; ++K)
			{
				Vec s = g.bracket(xy, g.unit(K)) + g.bracket(g.bracket(g.unit(J), g.unit(K)), g.unit(I)) +
				        g.bracket(g.bracket(g.unit(K), g.unit(I)), g.unit(J));
				ASSERT_TRUE(is_zero(s)) << g.label() << " " << I << " " << J << " " << K;
				ASSERT_EQ(g.pair(xy, g.unit(K)), g.pair(g.unit(I), g.bracket(g.unit(J), g.unit(K))));
			}
		}
}

} // namespace

class LieAlg : public ::testing::TestWithParam<dsfrob::testing::Alg>
{
};

TEST_P(LieAlg, JacobiAndInvariantForm)
{
	auto [t, r] = GetParam();
	expect_jacobi_and_invariance(build_chevalley(t, r));
}

TEST_P(LieAlg, BackendsAgree)
{
	auto [t, r] = GetParam();
	LieAlgebra a = build_chevalley(t, r), b = build_matrix(t, r);
	EXPECT_EQ(a.constants(), b.constants());
	EXPECT_EQ(a.form, b.form);
}

TEST_P(LieAlg, TripleAndNormalization)
{
	auto [t, r] = GetParam();
	LieAlgebra g = build_chevalley(t, r);
	const Triple &tr = g.triple;
	EXPECT_EQ(g.bracket(tr.h, tr.e), Q(2) * tr.e);
	EXPECT_EQ(g.bracket(tr.h, tr.f), Q(-2) * tr.f);
	EXPECT_EQ(g.bracket(tr.e, tr.f), tr.h);
	EXPECT_EQ(g.pair(tr.e, tr.f), 1);
}

INSTANTIATE_TEST_SUITE_P(TestAlgebras, LieAlg, ::testing::ValuesIn(dsfrob::testing::kTestAlgebras),
                         dsfrob::testing::alg_name);

TEST(LieAlgExtra, ExponentsAndDimension)
{
	struct Row
	{
		char t;
		int r, n;
		std::vector<int> eta;
	};
	for (auto &row : std::vector<Row>{{'A', 1, 3, {1}},
	                                  {'A', 2, 8, {1, 2}},
	                                  {'B', 2, 10, {1, 3}},
	                                  {'A', 3, 15, {1, 2, 3}},
	                                  {'G', 2, 14, {1, 5}},
	                                  {'D', 4, 28, {1, 3, 3, 5}},
	                                  {'C', 3, 21, {1, 3, 5}}})
	{
		LieAlgebra g = build_chevalley(row.t, row.r);
		EXPECT_EQ(g.n, row.n) << g.label();
		EXPECT_EQ(g.exponents, row.eta) << g.label();
		EXPECT_EQ(g.kappa, row.eta.back());
	}
}

TEST(LieAlgExtra, JacobiLargerTypes)
{
	expect_jacobi_and_invariance(build_chevalley('D', 4));
	expect_jacobi_and_invariance(build_chevalley('C', 3));
}

TEST(LieAlgExtra, RejectsUnsupportedInput)
{
	EXPECT_THROW(build_lie_algebra('E', 9), UnsupportedType);
	EXPECT_THROW(build_lie_algebra('X', 2), UnsupportedType);
	EXPECT_THROW(build_lie_algebra('A', 0), UnsupportedType);
	EXPECT_THROW(build_lie_algebra('B', 5), RankBound);
	EXPECT_THROW(build_lie_algebra('A', 2, "lattice"), UnsupportedType);
	EXPECT_THROW(build_lie_algebra('F', 4, "matrix"), UnsupportedType);
}

TEST(LieAlgExtra, CacheRoundTripAndCorruption)
{
	namespace fs = std::filesystem;
	fs::path dir = fs::temp_directory_path() / ("dsfrob_cache_test_" + std::to_string(::getpid()));
	fs::remove_all(dir);
	LieAlgebra fresh = build_lie_algebra('B', 2, "chevalley", 4, dir.string());
	fs::path file = dir / (cache_key('B', 2, "chevalley") + ".txt");
	ASSERT_TRUE(fs::exists(file));
	LieAlgebra cached = build_lie_algebra('B', 2, "chevalley", 4, dir.string());
	EXPECT_EQ(cached.constants(), fresh.constants());

	std::vector<std::tuple<int, int, int, Q>> tab;
	std::string text = serialize_constants(fresh);
	EXPECT_TRUE(parse_constants(text, cache_key('B', 2, "chevalley"), tab));
	EXPECT_FALSE(parse_constants(text, cache_key('B', 2, "matrix"), tab));
	std::string bad = text;
	bad[bad.find('\n') + 1] = bad[bad.find('\n') + 1] == '1' ? '2' : '1';
	EXPECT_FALSE(parse_constants(bad, cache_key('B', 2, "chevalley"), tab));

	// a corrupted file is ignored and rebuilt
	{
		std::ofstream out(file);
		out << bad;
	}
	LieAlgebra rebuilt = build_lie_algebra('B', 2, "chevalley", 4, dir.string());
	EXPECT_EQ(rebuilt.constants(), fresh.constants());
	fs::remove_all(dir);
}
