#pragma once

#include "pipeline.hpp"

#include <json.hpp>

#include <cctype>
#include <cstdlib>

namespace dsfrob {

using Json = nlohmann::ordered_json;

inline const char *kReportSchema = "dsfrob-report";
inline const int kReportVersion = 1;

// ---- canonical polynomial text back into polynomials

template <class V, class Resolve> Poly<V> parse_poly(const std::string &s, Resolve resolve)
{
	using P = Poly<V>;
	size_t i = 0;
	auto fail = [&](const std::string &why) -> void {
		throw FormatError("cannot parse polynomial '" + s + "': " + why);
	};
	auto skip = [&] {
		while (i < s.size() && s[i] == ' ')
			++i;
	};
	auto digits = [&] {
		size_t b = i;
		while (i < s.size() && std::isdigit((unsigned char)s[i]))
			++i;
		if (b == i)
			fail("digits expected");
		return s.substr(b, i - b);
	};
	P out;
	skip();
	if (s.substr(i) == "0")
		return out;
	bool first = true;
	while (true)
	{
		skip();
		if (i >= s.size())
		{
			if (first)
				fail("empty");
			break;
		}
		Q sign = 1;
		if (s[i] == '-' || s[i] == '+')
		{
			if (s[i] == '+' && first)
				fail("leading '+'");
			sign = s[i] == '-' ? -1 : 1;
			++i;
			skip();
		}
		else if (!first)
			fail("missing operator");
		first = false;
		Q coef = sign;
		typename P::Mono mono;
		std::map<V, int> fac;
		bool factor = true;
		while (factor)
		{
			if (i < s.size() && std::isdigit((unsigned char)s[i]))
			{
				std::string num = digits();
				if (i < s.size() && s[i] == '/')
				{
					++i;
					num += "/" + digits();
				}
				Q c = parse_q(num);
				if (c == 0)
					fail("zero coefficient");
				coef *= c;
			}
			else if (i < s.size() && std::isalpha((unsigned char)s[i]))
			{
				size_t b = i;
				while (i < s.size() && (std::isalnum((unsigned char)s[i]) || s[i] == '_'))
					++i;
				V v = resolve(s.substr(b, i - b));
				int e = 1;
				if (i < s.size() && s[i] == '^')
				{
					++i;
					e = std::stoi(digits());
					if (e <= 0)
						fail("bad exponent");
				}
				fac[v] += e;
			}
			else
				fail("factor expected");
			if (i < s.size() && s[i] == '*')
				++i;
			else
				factor = false;
		}
		for (auto &[v, e] : fac)
			mono.emplace_back(v, e);
		out.add_term(mono, coef);
	}
	return out;
}

inline int parse_index(const std::string &s, size_t &pos)
{
	size_t b = pos;
	while (pos < s.size() && std::isdigit((unsigned char)s[pos]))
		++pos;
	if (b == pos || pos - b > 6)
		throw FormatError("bad index in '" + s + "'");
	return std::stoi(s.substr(b, pos - b));
}

// "x<k>" -> k-1
inline auto indexed_var(char prefix, int r)
{
	return [prefix, r](const std::string &name) {
		size_t pos = 1;
		if (name.empty() || name[0] != prefix)
			throw FormatError("unknown variable " + name);
		int k = parse_index(name, pos);
		if (pos != name.size() || k < 1 || k > r)
			throw FormatError("unknown variable " + name);
		return k - 1;
	};
}

inline int parse_x_suffix(const std::string &name, size_t pos)
{
	if (pos == name.size())
		return 0;
	if (name[pos] != '_')
		throw FormatError("unknown variable " + name);
	int m = 0;
	for (++pos; pos < name.size(); ++pos, ++m)
		if (name[pos] != 'x')
			throw FormatError("unknown variable " + name);
	if (m == 0)
		throw FormatError("unknown variable " + name);
	return m;
}

// q<i>_<I>[_x..]
inline auto qjet_var(const std::vector<int> &eta)
{
	return [eta](const std::string &name) {
		size_t pos = 1;
		if (name.empty() || name[0] != 'q')
			throw FormatError("unknown variable " + name);
		int i = parse_index(name, pos);
		if (pos >= name.size() || name[pos] != '_')
			throw FormatError("unknown variable " + name);
		++pos;
		int I = parse_index(name, pos);
		if (i < 1 || i > int(eta.size()) || I > eta[i - 1])
			throw FormatError("unknown variable " + name);
		return Jet{i - 1, I, parse_x_suffix(name, pos)};
	};
}

// z<i>[_x..] as a slice jet
inline auto zjet_var(const std::vector<int> &eta)
{
	return [eta](const std::string &name) {
		size_t pos = 1;
		if (name.empty() || name[0] != 'z')
			throw FormatError("unknown variable " + name);
		int i = parse_index(name, pos);
		if (i < 1 || i > int(eta.size()))
			throw FormatError("unknown variable " + name);
		return Jet{i - 1, eta[i - 1], parse_x_suffix(name, pos)};
	};
}

// ---- LaTeX

inline std::string latex_q(const Q &a)
{
	if (a.get_den() == 1)
		return a.get_num().get_str();
	return "\\frac{" + a.get_num().get_str() + "}{" + a.get_den().get_str() + "}";
}

template <class V, class N> std::string latex_poly(const Poly<V> &p, N name)
{
	if (p.is_zero())
		return "0";
	std::string out;
	bool first = true;
	const auto &t = p.terms();
	for (auto it = t.rbegin(); it != t.rend(); ++it)
	{
		const Q &c = it->second;
		Q a = abs(c);
		if (first)
			out += c < 0 ? "-" : "";
		else
			out += c < 0 ? " - " : " + ";
		first = false;
		std::string body;
		if (a != 1 || it->first.empty())
			body = latex_q(a);
		for (auto &[v, e] : it->first)
		{
			if (!body.empty())
				body += " ";
			body += name(v);
			if (e != 1)
				body += e < 10 ? "^" + std::to_string(e) : "^{" + std::to_string(e) + "}";
		}
		out += body;
	}
	return out;
}

inline std::string latex_tpoly(const ZPoly &p)
{
	return latex_poly(p, [](int v) {
		std::string k = std::to_string(v + 1);
		return k.size() == 1 ? "t_" + k : "t_{" + k + "}";
	});
}

template <class M, class F> std::string latex_matrix(const M &m, F cell)
{
	std::string out = "\\begin{pmatrix} ";
	for (size_t i = 0; i < m.size(); ++i)
	{
		if (i)
			out += " \\\\ ";
		for (size_t j = 0; j < m[i].size(); ++j)
		{
			if (j)
				out += " & ";
			out += cell(m[i][j]);
		}
	}
	return out + " \\end{pmatrix}";
}

// ---- JSON

inline Json qmat_json(const Mat &m)
{
	Json a = Json::array();
	for (auto &row : m)
	{
		Json r = Json::array();
		for (auto &x : row)
			r.push_back(q_str(x));
		a.push_back(r);
	}
	return a;
}

inline Json zmat_json(const ZMat &m, const std::function<std::string(const ZPoly &)> &f = str_z)
{
	Json a = Json::array();
	for (auto &row : m)
	{
		Json r = Json::array();
		for (auto &p : row)
			r.push_back(f(p));
		a.push_back(r);
	}
	return a;
}

inline Json ztensor_json(const ZTensor &t, const std::function<std::string(const ZPoly &)> &f = str_z)
{
	Json a = Json::array();
	for (auto &m : t)
		a.push_back(zmat_json(m, f));
	return a;
}

struct SerializeOptions
{
	bool unity_first = false;
	bool timings = false;
};

inline Json to_json(const ReportData &d, const std::vector<Check> &checks, const SerializeOptions &so = {})
{
	int r = int(d.eta.size());
	Json j;
	j["schema"] = kReportSchema;
	j["schema_version"] = kReportVersion;
	j["algebra"] = {{"type", std::string(1, d.type)}, {"rank", d.rank}, {"dim", d.dim}, {"backend", d.backend}};
	j["exponents"] = d.eta;
	j["kappa"] = d.kappa;
	Json sig = Json::array();
	for (auto &s : d.sigma)
		sig.push_back(q_str(s));
	j["sigma"] = sig;
	j["A"] = qmat_json(d.A);
	Json z = Json::array();
	for (auto &p : d.z)
		z.push_back(str(p));
	j["z"] = z;

	Json row = Json::array();
	for (auto &ds : d.virasoro)
	{
		Json terms = Json::array();
		for (auto &[ks, p] : ds.c)
			terms.push_back({{"eps", ks.first}, {"delta", ks.second}, {"coef", str_zjet(p)}});
		row.push_back(terms);
	}
	j["brackets"] = {{"virasoro_row", row}};
	j["leading_terms"] = {{"F1", zmat_json(d.lt.F1)},       {"F2", zmat_json(d.lt.F2)},
	                      {"g1", zmat_json(d.lt.g1)},       {"g2", zmat_json(d.lt.g2)},
	                      {"Gamma1", ztensor_json(d.lt.G1)}, {"Gamma2", ztensor_json(d.lt.G2)}};
	j["dirac"] = {{"g2", zmat_json(d.dirac_g2)}, {"F2", zmat_json(d.dirac_F2)}};
	Json tz = Json::array();
	for (auto &p : d.t_of_z)
		tz.push_back(str_z(p));
	j["flat"] = {{"t_of_z", tz},
	             {"eta", qmat_json(d.eta_up)},
	             {"g2_t", zmat_json(d.g2t, str_t)},
	             {"Gamma2_t", ztensor_json(d.G2t, str_t)}};

	// labeling only affects the presentation of the Frobenius data
	auto lab = [&](int i) { return so.unity_first ? r - 1 - i : i; };
	Json eu = Json::array(), deg = Json::array();
	for (int k = 0; k < r; ++k)
	{
		int i = lab(k);
		eu.push_back(str_t(ZPoly::var(k) * d.degrees[i]));
		deg.push_back(q_str(d.degrees[i]));
	}
	ZPoly F = so.unity_first ? relabel_unity_first(d.F, r) : d.F;
	Mat Rl = d.R;
	if (so.unity_first)
		for (int a = 0; a < r; ++a)
			for (int b = 0; b < r; ++b)
				Rl[a][b] = d.R[lab(a)][lab(b)];
	j["frobenius"] = {{"labeling", so.unity_first ? "unity-first" : "unity-last"},
	                  {"euler", eu},
	                  {"unity", t_name(lab(r - 1))},
	                  {"tau", str_t(ZPoly::var(lab(0)) * (Q(1) / Q(d.kappa + 1)))},
	                  {"R", qmat_json(Rl)},
	                  {"degrees", deg},
	                  {"charge", q_str(d.charge)},
	                  {"prepotential", str_t(F)}};
	Json cs = Json::array();
	for (auto &c : checks)
		cs.push_back({{"name", c.name}, {"ok", c.ok}});
	j["checks"] = cs;
	if (so.timings)
	{
		Json t = Json::object();
		for (auto &[n, s] : d.timings)
			t[n] = s;
		j["timings"] = t;
	}
	return j;
}

inline std::string dump(const Json &j) { return j.dump(2) + "\n"; }

// ---- reading a report back

inline const Json &need(const Json &j, const char *key)
{
	if (!j.is_object() || !j.contains(key))
		throw FormatError(std::string("missing field ") + key);
	return j.at(key);
}

inline std::string need_str(const Json &j)
{
	if (!j.is_string())
		throw FormatError("string expected");
	return j.get<std::string>();
}

inline Q json_q(const Json &j)
{
	try
	{
		return parse_q(need_str(j));
	}
	catch (const std::invalid_argument &e)
	{
		throw FormatError(e.what());
	}
}

inline Mat json_qmat(const Json &j, int rows, int cols)
{
	if (!j.is_array() || int(j.size()) != rows)
		throw FormatError("matrix shape");
	Mat m;
	for (auto &row : j)
	{
		if (!row.is_array() || int(row.size()) != cols)
			throw FormatError("matrix shape");
		Vec v;
		for (auto &x : row)
			v.push_back(json_q(x));
		m.push_back(v);
	}
	return m;
}

template <class Resolve> ZMat json_zmat(const Json &j, int r, Resolve res)
{
	if (!j.is_array() || int(j.size()) != r)
		throw FormatError("matrix shape");
	ZMat m;
	for (auto &row : j)
	{
		if (!row.is_array() || int(row.size()) != r)
			throw FormatError("matrix shape");
		std::vector<ZPoly> v;
		for (auto &x : row)
			v.push_back(parse_poly<int>(need_str(x), res));
		m.push_back(v);
	}
	return m;
}

template <class Resolve> ZTensor json_ztensor(const Json &j, int r, Resolve res)
{
	if (!j.is_array() || int(j.size()) != r)
		throw FormatError("tensor shape");
	ZTensor t;
	for (auto &m : j)
		t.push_back(json_zmat(m, r, res));
	return t;
}

struct ParsedReport
{
	ReportData data;
	std::vector<Check> stored_checks;
	bool unity_first = false;
	std::vector<std::string> euler, degrees_text;
	std::string unity, tau, prepotential_text;
};

inline ParsedReport from_json(const Json &j)
{
	ParsedReport pr;
	ReportData &d = pr.data;
	try
	{
		if (need_str(need(j, "schema")) != kReportSchema)
			throw FormatError("unknown schema");
		if (!need(j, "schema_version").is_number_integer() || need(j, "schema_version").get<int>() != kReportVersion)
			throw FormatError("unsupported schema version");
		const Json &alg = need(j, "algebra");
		std::string ty = need_str(need(alg, "type"));
		if (ty.size() != 1)
			throw FormatError("bad algebra type");
		d.type = ty[0];
		d.rank = need(alg, "rank").get<int>();
		d.dim = need(alg, "dim").get<int>();
		d.backend = need_str(need(alg, "backend"));
		d.eta = need(j, "exponents").get<std::vector<int>>();
		d.kappa = need(j, "kappa").get<int>();
		int r = int(d.eta.size());
		if (r < 1 || r != d.rank)
			throw FormatError("exponents do not match the rank");
		for (auto &s : need(j, "sigma"))
			d.sigma.push_back(json_q(s));
		d.A = json_qmat(need(j, "A"), r, r);
		auto qv = qjet_var(d.eta);
		for (auto &s : need(j, "z"))
			d.z.push_back(parse_poly<Jet>(need_str(s), qv));

		auto zj = zjet_var(d.eta);
		for (auto &terms : need(need(j, "brackets"), "virasoro_row"))
		{
			DeltaSeries ds;
			for (auto &t : terms)
				ds.add(need(t, "eps").get<int>(), need(t, "delta").get<int>(),
				       parse_poly<Jet>(need_str(need(t, "coef")), zj));
			d.virasoro.push_back(ds);
		}

		auto zv = indexed_var('z', r);
		auto tv = indexed_var('t', r);
		const Json &lt = need(j, "leading_terms");
		d.lt.r = r;
		d.lt.F1 = json_zmat(need(lt, "F1"), r, zv);
		d.lt.F2 = json_zmat(need(lt, "F2"), r, zv);
		d.lt.g1 = json_zmat(need(lt, "g1"), r, zv);
		d.lt.g2 = json_zmat(need(lt, "g2"), r, zv);
		d.lt.G1 = json_ztensor(need(lt, "Gamma1"), r, zv);
		d.lt.G2 = json_ztensor(need(lt, "Gamma2"), r, zv);
		const Json &dr = need(j, "dirac");
		d.dirac_g2 = json_zmat(need(dr, "g2"), r, zv);
		d.dirac_F2 = json_zmat(need(dr, "F2"), r, zv);
		const Json &fl = need(j, "flat");
		for (auto &s : need(fl, "t_of_z"))
			d.t_of_z.push_back(parse_poly<int>(need_str(s), zv));
		d.eta_up = json_qmat(need(fl, "eta"), r, r);
		d.g2t = json_zmat(need(fl, "g2_t"), r, tv);
		d.G2t = json_ztensor(need(fl, "Gamma2_t"), r, tv);

		const Json &fr = need(j, "frobenius");
		std::string lab = need_str(need(fr, "labeling"));
		if (lab != "unity-first" && lab != "unity-last")
			throw FormatError("unknown labeling");
		pr.unity_first = lab == "unity-first";
		for (auto &s : need(fr, "euler"))
			pr.euler.push_back(need_str(s));
		for (auto &s : need(fr, "degrees"))
		{
			pr.degrees_text.push_back(need_str(s));
			d.degrees.push_back(json_q(s));
		}
		if (int(d.degrees.size()) != r)
			throw FormatError("degrees shape");
		if (pr.unity_first)
			std::reverse(d.degrees.begin(), d.degrees.end());
		pr.unity = need_str(need(fr, "unity"));
		pr.tau = need_str(need(fr, "tau"));
		d.R = json_qmat(need(fr, "R"), r, r);
		if (pr.unity_first)
		{
			Mat R = d.R;
			for (int a = 0; a < r; ++a)
				for (int b = 0; b < r; ++b)
					d.R[a][b] = R[r - 1 - a][r - 1 - b];
		}
		d.charge = json_q(need(fr, "charge"));
		pr.prepotential_text = need_str(need(fr, "prepotential"));
		d.F = parse_poly<int>(pr.prepotential_text, tv);
		if (pr.unity_first)
			d.F = relabel_unity_first(d.F, r);

		for (auto &c : need(j, "checks"))
			pr.stored_checks.push_back({need_str(need(c, "name")), need(c, "ok").get<bool>(), ""});
	}
	catch (const nlohmann::json::exception &e)
	{
		throw FormatError(e.what());
	}
	catch (const std::invalid_argument &e)
	{
		throw FormatError(e.what());
	}
	catch (const std::out_of_range &e)
	{
		throw FormatError(e.what());
	}
	return pr;
}

// presentation fields must agree with what the data implies
inline Check presentation_check(const ParsedReport &pr)
{
	const ReportData &d = pr.data;
	SerializeOptions so;
	so.unity_first = pr.unity_first;
	Json j = to_json(d, {}, so);
	const Json &fr = j["frobenius"];
	bool ok = fr["euler"].get<std::vector<std::string>>() == pr.euler &&
	          fr["degrees"].get<std::vector<std::string>>() == pr.degrees_text && fr["unity"] == pr.unity &&
	          fr["tau"] == pr.tau;
	return {"frobenius.presentation", ok, "Euler field, unity and tau agree with the exponents"};
}

inline std::string latex_report(const ParsedReport &pr)
{
	const ReportData &d = pr.data;
	int r = int(d.eta.size());
	ZPoly F = pr.unity_first ? relabel_unity_first(d.F, r) : d.F;
	std::string out = "F = " + latex_tpoly(F) + "\n";
	out += "\\eta = " + latex_matrix(d.eta_up, [](const Q &q) { return latex_q(q); }) + "\n";
	out += "g_2(t) = " + latex_matrix(d.g2t, [](const ZPoly &p) { return latex_tpoly(p); }) + "\n";
	return out;
}

} // namespace dsfrob
