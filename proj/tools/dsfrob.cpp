// dsfrob: compute / verify / latex for the Frobenius structure on the principal slice
#include "dsfrob/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

using namespace dsfrob;

namespace {

enum Exit
{
	kOk = 0,
	kInvariant = 1,
	kUsage = 2
};

bool env_on(const char *name)
{
	const char *v = std::getenv(name);
	return v && *v && std::string(v) != "0";
}

int report_checks(const std::vector<Check> &checks, std::ostream &os, bool all)
{
	int bad = 0;
	for (auto &c : checks)
	{
		if (!c.ok)
			++bad;
		if (all || !c.ok)
			os << (c.ok ? "ok    " : "FAIL  ") << c.name << (c.ok || c.detail.empty() ? "" : "  (" + c.detail + ")")
			   << "\n";
	}
	return bad;
}

ParsedReport load(const std::string &path)
{
	std::ifstream in(path);
	if (!in)
		throw FormatError("cannot open " + path);
	std::stringstream ss;
	ss << in.rdbuf();
	Json j;
	try
	{
		j = Json::parse(ss.str());
	}
	catch (const nlohmann::json::exception &e)
	{
		throw FormatError(std::string("malformed JSON: ") + e.what());
	}
	return from_json(j);
}

int cmd_compute(const std::string &type, int rank, const std::string &out, bool latex, const std::string &backend,
                bool unity_first, int jobs, int bound)
{
	if (type.size() != 1)
		throw UnsupportedType("type must be one letter A..G");
	PipelineOptions opt;
	opt.backend = backend;
	opt.jobs = jobs;
	opt.rank_bound = bound;
	Pipeline p = run_pipeline(type[0], rank, opt);

	SerializeOptions so;
	so.unity_first = unity_first;
	so.timings = env_on("DSFROB_REPORT_TIMINGS");
	std::string text = dump(to_json(p.data, p.checks, so));
	if (out.empty())
		std::cout << text;
	else
	{
		std::ofstream f(out, std::ios::binary);
		if (!f)
			throw FormatError("cannot write " + out);
		f << text;
	}
	if (latex)
	{
		Json j = Json::parse(text);
		std::cout << latex_report(from_json(j));
	}
	if (env_on("DSFROB_TIMINGS"))
		for (auto &[n, s] : p.data.timings)
			std::cerr << "time " << n << " " << s << "s\n";
	return report_checks(p.checks, std::cerr, false) ? kInvariant : kOk;
}

int cmd_verify(const std::string &path)
{
	ParsedReport pr = load(path);
	std::vector<Check> checks = data_checks(pr.data);
	checks.push_back(presentation_check(pr));
	std::set<std::string> rerun;
	for (auto &c : checks)
		rerun.insert(c.name);
	// certificates that need the Lie algebra are taken from the report as stored
	for (auto &c : pr.stored_checks)
		if (!rerun.count(c.name))
			checks.push_back({c.name, c.ok, "stored"});
	int bad = report_checks(checks, std::cout, true);
	return bad ? kInvariant : kOk;
}

int cmd_latex(const std::string &path)
{
	std::cout << latex_report(load(path));
	return kOk;
}

} // namespace

int main(int argc, char **argv)
{
	CLI::App app{"Frobenius manifolds from Drinfeld-Sokolov reduction, exact arithmetic"};
	app.require_subcommand(1);

	auto *compute = app.add_subcommand("compute", "run the pipeline for a simple Lie algebra");
	std::string type, out, backend = "chevalley";
	int rank = 0, jobs = 1, bound = 4;
	bool latex = false, unity_first = false;
	compute->add_option("TYPE", type, "A, B, C, D, E, F or G")->required();
	compute->add_option("RANK", rank, "rank")->required();
	compute->add_option("--out", out, "write the JSON report here (default: stdout)");
	compute->add_flag("--latex", latex, "print the prepotential and metrics as LaTeX");
	compute->add_option("--backend", backend, "structure constants backend")
	    ->check(CLI::IsMember({"chevalley", "matrix"}));
	compute->add_flag("--relabel-unity-first", unity_first, "report t^r as t^1");
	compute->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1, 256));
	compute->add_option("--rank-bound", bound, "largest accepted rank")->check(CLI::Range(1, 8));

	auto *verify = app.add_subcommand("verify", "re-check a report without recomputing");
	std::string vpath;
	verify->add_option("FILE", vpath, "report")->required();

	auto *tex = app.add_subcommand("latex", "render a report as LaTeX");
	std::string lpath;
	tex->add_option("FILE", lpath, "report")->required();

	try
	{
		app.parse(argc, argv);
	}
	catch (const CLI::Success &e)
	{
		return app.exit(e);
	}
	catch (const CLI::ParseError &e)
	{
		app.exit(e);
		return kUsage;
	}

	try
	{
		if (*compute)
			return cmd_compute(type, rank, out, latex, backend, unity_first, jobs, bound);
		if (*verify)
			return cmd_verify(vpath);
		if (*tex)
			return cmd_latex(lpath);
	}
	catch (const UnsupportedType &e)
	{
		std::cerr << e.what() << "\n";
		return kUsage;
	}
	catch (const RankBound &e)
	{
		std::cerr << e.what() << "\n";
		return kUsage;
	}
	catch (const FormatError &e)
	{
		std::cerr << e.what() << "\n";
		return kUsage;
	}
	catch (const Error &e)
	{
		// a pipeline stage could not establish its invariant
		std::cerr << "FAIL  " << e.kind << ": " << e.what() << "\n";
		return kInvariant;
	}
	return kUsage;
}
