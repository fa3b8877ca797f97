#include "common.hpp"

using namespace dsfrob;
using dsfrob::testing::pipeline;

namespace {

std::string report_text(char t, int r, SerializeOptions so = {})
{
	const Pipeline &p = pipeline(t, r);
	return dump(to_json(p.data, p.checks, so));
}

int failures(const std::vector<Check> &cs, const std::string &name, bool &named)
{
	int bad = 0;
	named = false;
	for (auto &c : cs)
		if (!c.ok)
		{
			++bad;
			named |= c.name == name;
		}
	return bad;
}

} // namespace

class Rep : public ::testing::TestWithParam<dsfrob::testing::Alg>
{
};

TEST_P(Rep, AllChecksPass)
{
	auto [t, r] = GetParam();
	for (auto &c : pipeline(t, r).checks)
		EXPECT_TRUE(c.ok) << c.name << " " << c.detail;
}

TEST_P(Rep, RoundTrip)
{
	auto [t, r] = GetParam();
	for (bool uf : {false, true})
	{
		SerializeOptions so;
		so.unity_first = uf;
		std::string text = report_text(t, r, so);
		ParsedReport pr = from_json(Json::parse(text));
		EXPECT_EQ(pr.unity_first, uf);
		EXPECT_EQ(pr.data.F, pipeline(t, r).data.F);
		EXPECT_EQ(pr.data.R, pipeline(t, r).data.R);
		EXPECT_EQ(dump(to_json(pr.data, pr.stored_checks, so)), text);
		bool named = false;
		EXPECT_EQ(failures(data_checks(pr.data), "", named), 0);
		EXPECT_TRUE(presentation_check(pr).ok);
	}
}

TEST_P(Rep, Deterministic)
{
	auto [t, r] = GetParam();
	PipelineOptions opt;
	opt.use_cache = false;
	opt.jobs = 3;
	Pipeline p = run_pipeline(t, r, opt);
	EXPECT_EQ(dump(to_json(p.data, p.checks)), report_text(t, r));
}

INSTANTIATE_TEST_SUITE_P(TestAlgebras, Rep, ::testing::ValuesIn(dsfrob::testing::kTestAlgebras),
                         dsfrob::testing::alg_name);

TEST(Report, MatrixBackendAgrees)
{
	Json a = Json::parse(report_text('B', 2));
	const Pipeline &p = pipeline('B', 2, "matrix");
	Json b = to_json(p.data, p.checks);
	EXPECT_EQ(b["algebra"]["backend"], "matrix");
	b["algebra"]["backend"] = "chevalley";
	EXPECT_EQ(a, b);
}

TEST(Report, TamperedG1IsNamed)
{
	Json j = Json::parse(report_text('A', 2));
	j["leading_terms"]["g1"][0][1] = "4";
	j["leading_terms"]["g1"][1][0] = "4";
	ParsedReport pr = from_json(j);
	bool named = false;
	EXPECT_GT(failures(data_checks(pr.data), "g1.det_identity", named), 0);
	EXPECT_TRUE(named);
}

TEST(Report, TamperedPresentationIsNamed)
{
	Json j = Json::parse(report_text('A', 2));
	j["frobenius"]["tau"] = "t1";
	EXPECT_FALSE(presentation_check(from_json(j)).ok);
}

TEST(Report, MalformedInputs)
{
	Json j = Json::parse(report_text('A', 1));
	Json bad = j;
	bad["schema"] = "other";
	EXPECT_THROW(from_json(bad), FormatError);
	bad = j;
	bad["schema_version"] = 2;
	EXPECT_THROW(from_json(bad), FormatError);
	bad = j;
	bad.erase("flat");
	EXPECT_THROW(from_json(bad), FormatError);
	bad = j;
	bad["z"][0] = "q1_0^^2";
	EXPECT_THROW(from_json(bad), FormatError);
	bad = j;
	bad["A"][0][0] = "1/0";
	EXPECT_THROW(from_json(bad), FormatError);
}

TEST(Report, ParsePolyErrors)
{
	auto zv = indexed_var('z', 2);
	EXPECT_THROW(parse_poly<int>("", zv), FormatError);
	EXPECT_THROW(parse_poly<int>("+z1", zv), FormatError);
	EXPECT_THROW(parse_poly<int>("z1 z2", zv), FormatError);
	EXPECT_THROW(parse_poly<int>("z3", zv), FormatError);
	EXPECT_THROW(parse_poly<int>("0*z1", zv), FormatError);
	EXPECT_THROW(parse_poly<int>("z1^0", zv), FormatError);
	EXPECT_TRUE(parse_poly<int>("0", zv).is_zero());
	EXPECT_EQ(parse_poly<int>("-z1 + 1/2*z2^2", zv), ZPoly::var(1, 2) * make_q(1, 2) - ZPoly::var(0));
}

TEST(Report, Latex)
{
	ParsedReport pr = from_json(Json::parse(report_text('A', 1)));
	std::string tex = latex_report(pr);
	EXPECT_NE(tex.find("F = \\frac{1}{12} t_1^3\n"), std::string::npos);
	EXPECT_NE(tex.find("\\eta = \\begin{pmatrix} 2 \\end{pmatrix}"), std::string::npos);
	EXPECT_EQ(latex_tpoly(ZPoly()), "0");
	EXPECT_EQ(latex_tpoly(ZPoly::var(9, 12) * make_q(-3, 4)), "-\\frac{3}{4} t_{10}^{12}");
}

TEST(Report, TimingsOnlyOnRequest)
{
	EXPECT_FALSE(Json::parse(report_text('A', 1)).contains("timings"));
	SerializeOptions so;
	so.timings = true;
	EXPECT_TRUE(Json::parse(report_text('A', 1, so)).contains("timings"));
}
