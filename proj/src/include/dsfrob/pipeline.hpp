#pragma once

#include "dirac.hpp"
#include "frobenius.hpp"

#include <chrono>

namespace dsfrob {

struct PipelineOptions
{
	std::string backend = "chevalley";
	int jobs = 1;
	int rank_bound = 4;
	std::string cache_dir; // empty: default_cache_dir()
	bool use_cache = true;
};

// everything a report carries; checks on it need no Lie algebra
struct ReportData
{
	char type = 'A';
	int rank = 0, dim = 0;
	std::string backend;
	std::vector<int> eta;
	int kappa = 0;
	std::vector<Q> sigma;
	Mat A;
	std::vector<DiffPolynomial> z;
	std::vector<DeltaSeries> virasoro; // {z^1, z^j}_2 on the slice
	LeadingTerms lt;
	ZMat dirac_g2, dirac_F2;
	std::vector<ZPoly> t_of_z;
	Mat eta_up;
	ZMat g2t;
	ZTensor G2t;
	std::vector<Q> degrees;
	Q charge;
	Mat R;
	ZPoly F; // unity = t^r labeling
	std::vector<Check> stored;   // compute-only certificates
	std::vector<std::pair<std::string, double>> timings;
};

inline int zweight(const std::vector<int> &eta, int v) { return 2 * eta.at(v) + 2; }

inline bool zmat_zero(const ZMat &m)
{
	for (auto &row : m)
		for (auto &p : row)
			if (!p.is_zero())
				return false;
	return true;
}

inline DiffPolynomial zjet_poly(const std::vector<int> &eta, int i, int m = 0) { return jet(i, eta[i], m); }

inline bool virasoro_exact(const ReportData &d, int j, bool literal_central)
{
	if (j >= int(d.virasoro.size()))
		return false;
	const DeltaSeries &s = d.virasoro[j];
	DeltaSeries want;
	if (j == 0)
	{
		want.add(0, 0, zjet_poly(d.eta, 0, 1));
		want.add(0, 1, zjet_poly(d.eta, 0) * Q(2));
		if (literal_central)
			want.add(2, 3, DiffPolynomial(1));
		else
		{
			// central part must be a nonzero constant multiple of delta'''
			DiffPolynomial c = s.at(2, 3);
			if (c.is_zero() || !c.is_constant())
				return false;
			want.add(2, 3, c);
		}
	}
	else
	{
		want.add(0, 0, zjet_poly(d.eta, j, 1) * Q(d.eta[j]));
		want.add(0, 1, zjet_poly(d.eta, j) * Q(d.eta[j] + 1));
	}
	return s == want;
}

inline Q virasoro_central(const ReportData &d)
{
	if (d.virasoro.empty())
		return 0;
	return d.virasoro[0].at(2, 3).constant();
}

// all invariants that can be checked from serialized data alone
inline std::vector<Check> data_checks(const ReportData &d, int jobs = 1)
{
	std::vector<Check> out;
	int r = int(d.eta.size());
	auto add = [&](std::string name, bool ok, std::string detail) { out.push_back({name, ok, detail}); };
	const LeadingTerms &lt = d.lt;

	add("reduction.dispersionless_limit", zmat_zero(lt.F1) && zmat_zero(lt.F2), "F1 = F2 = 0");

	bool anti = true;
	for (int i = 0; i < r; ++i)
		for (int j = 0; j < r; ++j)
		{
			int s = d.eta[i] + d.eta[j];
			const ZPoly &p = lt.g1[i][j];
			if (s < d.kappa + 1 && !p.is_zero())
				anti = false;
			if (s == d.kappa + 1 && !p.is_constant())
				anti = false;
		}
	add("g1.lower_antidiagonal", anti, "g1^{ij} = 0 above the antidiagonal, constant on it");

	bool det_ok = false;
	try
	{
		det_ok = zdet(lt.g1) == ZPoly(det(d.A));
	}
	catch (const Error &)
	{
	}
	add("g1.det_identity", det_ok, "det g1 = det A");

	bool diffrel = true;
	for (int i = 0; i < r; ++i)
		for (int j = 0; j < r; ++j)
			if (lt.g2[i][j].diff(r - 1) != lt.g1[i][j])
				diffrel = false;
	add("g2.differential_relation", diffrel, "d g2 / d z^r = g1");

	bool vir = true;
	for (int j = 0; j < r; ++j)
		vir = vir && virasoro_exact(d, j, false);
	add("brackets.virasoro_row", vir, "{z1, zj}_2 Virasoro row, central term constant");

	bool zgr = int(d.z.size()) == r;
	for (int i = 0; zgr && i < r; ++i)
	{
		long deg = 0;
		zgr = !d.z[i].is_zero() && quasihomogeneous(d.z[i], deg) && deg == 2 * d.eta[i] + 2;
	}
	add("grading.z", zgr, "deg z^i = 2 eta_i + 2");

	bool g2gr = true, g1gr = true;
	auto w = [&](int v) { return zweight(d.eta, v); };
	for (int i = 0; i < r; ++i)
		for (int j = 0; j < r; ++j)
		{
			long deg = 0;
			if (!lt.g2[i][j].is_zero() && (!lt.g2[i][j].homogeneous(w, deg) || deg != 2 * d.eta[i] + 2 * d.eta[j]))
				g2gr = false;
			if (!lt.g1[i][j].is_zero() &&
			    (!lt.g1[i][j].homogeneous(w, deg) || deg != 2 * d.eta[i] + 2 * d.eta[j] - 2 * d.kappa - 2))
				g1gr = false;
		}
	add("grading.g2", g2gr, "deg g2^{ij} = 2 eta_i + 2 eta_j");
	add("grading.g1", g1gr, "deg g1^{ij} = 2 eta_i + 2 eta_j - 2 kappa - 2");

	add("dirac.matches_leibnitz", d.dirac_g2 == lt.g2, "g2 (Dirac) = g2 (Leibnitz)");
	add("dirac.ultralocal_zero", zmat_zero(d.dirac_F2), "F2 (Dirac) = 0");

	// flat coordinates and everything downstream
	FlatPencil fp;
	bool flat = false;
	std::string why = "change map reproduces eta and the transformed pencil";
	try
	{
		fp = complete_flat(d.t_of_z, lt.g1, d.eta, d.kappa);
		transform_pencil(fp, lt.g2, lt.G2);
		flat = fp.eta_up == d.eta_up && fp.g2t == d.g2t && fp.G2t == d.G2t;
	}
	catch (const Error &e)
	{
		why = e.what();
	}
	add("flat.change_map", flat, why);
	bool deta = flat && det(fp.eta_up) == det(d.A);
	add("flat.det_eta", deta, "det eta = det A");

	const char *pencil_names[] = {"pencil.unity_euler_bracket", "pencil.euler_g2",      "pencil.unity_g2",
	                              "pencil.unity_g1",            "pencil.regularity",    "pencil.g2_first_row",
	                              "pencil.gamma2_first_row",    "pencil.eta_antidiagonal"};
	const char *frob_names[] = {"frobenius.metric_from_potential", "frobenius.wdvv", "frobenius.euler_potential",
	                            "frobenius.potential_polynomial"};
	if (!flat)
	{
		for (auto n : pencil_names)
			add(n, false, "no flat coordinates");
		add("frobenius.degrees_charge", false, "no flat coordinates");
		add("frobenius.potential_matches", false, "no flat coordinates");
		for (auto n : frob_names)
			add(n, false, "no flat coordinates");
		return out;
	}
	for (auto &c : verify_pencil_axioms(fp))
		out.push_back(c);

	bool dc = fp.charge == d.charge && fp.degrees == d.degrees && fp.R == d.R && !d.degrees.empty() &&
	          d.degrees.back() == 1;
	for (auto &q : d.degrees)
		dc = dc && q > 0 && q <= 1;
	add("frobenius.degrees_charge", dc, "d_i = (eta_i+1)/(kappa+1), d = (kappa-1)/(kappa+1)");

	bool pm = false;
	std::string pwhy = "potential reconstructed from g2(t) equals the reported one";
	try
	{
		pm = potential(fp) == d.F;
	}
	catch (const Error &e)
	{
		pwhy = e.what();
	}
	add("frobenius.potential_matches", pm, pwhy);
	for (auto &c : verify_wdvv(d.F, fp, jobs))
		out.push_back(c);
	return out;
}

struct Pipeline
{
	LieAlgebra g;
	NormalizedBasis nb;
	CyclicData cd;
	GaugeFixResult gf;
	std::vector<std::vector<DeltaSeries>> red1, red2;
	DiracResult dirac;
	FlatPencil fp;
	ReportData data;
	std::vector<Check> checks; // data checks followed by compute-only ones

	bool ok() const
	{
		for (auto &c : checks)
			if (!c.ok)
				return false;
		return true;
	}
};

// compute-only certificates
inline std::vector<Check> structure_checks(const Pipeline &p)
{
	std::vector<Check> out;
	const LieAlgebra &g = p.g;
	const NormalizedBasis &nb = p.nb;
	int n = g.n;

	// sparse ad e_I applied to v
	auto adu = [&](int I, const Vec &v) {
		Vec r(n, Q(0));
		for (int K = 0; K < n; ++K)
			if (v[K] != 0)
				for (auto &[L, c] : g.sc[I * n + K])
					r[L] += c * v[K];
		return r;
	};
	auto unit_br = [&](int I, int J) {
		Vec r(n, Q(0));
		for (auto &[L, c] : g.sc[I * n + J])
			r[L] += c;
		return r;
	};
	bool jac = true, inv = true;
	for (int I = 0; I < n; ++I)
		for (int J = 0; J < n; ++J)
			for (int K = 0; K < n; ++K)
			{
				Q lhs = 0, rhs = 0;
				for (auto &[L, c] : g.sc[I * n + J])
					lhs += c * g.form[L][K];
				for (auto &[L, c] : g.sc[J * n + K])
					rhs += c * g.form[I][L];
				if (lhs != rhs)
					inv = false;
				if (I < J || J < K)
					continue;
				Vec s = adu(I, unit_br(J, K)) + adu(J, unit_br(K, I)) + adu(K, unit_br(I, J));
				if (!is_zero(s))
					jac = false;
			}
	out.push_back({"liealg.jacobi", jac, "Jacobi identity on basis triples"});
	out.push_back({"liealg.form_invariant", inv, "<[x,y],z> = <x,[y,z]>"});

	bool pr = true;
	for (int i = 0; i < nb.r; ++i)
		for (int I = -nb.eta[i]; I <= nb.eta[i]; ++I)
		{
			if (g.pair(nb.x(i, I), nb.x(i, -I)) != nb.norm(i, I))
				pr = false;
			for (int j = 0; j < nb.r; ++j)
				if (j != i && nb.eta[j] >= std::abs(I) && g.pair(nb.x(i, I), nb.x(j, -I)) != 0)
					pr = false;
		}
	out.push_back({"sl2basis.pairing", pr, "<X^i_I, X^j_-I> = delta_ij (-1)^{eta-I} binom(2eta, eta-I) sigma_i"});

	out.push_back({"cyclic.regular_semisimple", regular_semisimple(g, p.cd.y1), "e + a regular semisimple"});
	bool gold = true;
	for (int i = 0; i < nb.r; ++i)
		for (int j = 0; j < nb.r; ++j)
			if (gold_lhs(g, nb, p.cd.a, i, j) / (nb.sigma[i] * nb.sigma[j]) != p.cd.A[i][j])
				gold = false;
	out.push_back({"cyclic.gold_identity", gold, "Gold identity, covariant form"});

	out.push_back({"dirac.inverse_polynomial", p.dirac.polynomial, "restricted inverse is polynomial"});
	out.push_back({"dirac.inverse_degrees", p.dirac.polynomial && p.dirac.degrees_ok,
	               "deg K_{ba} = mu_a + mu_b - 2"});
	return out;
}

inline Pipeline run_pipeline(char type, int rank, const PipelineOptions &opt = {})
{
	Pipeline p;
	ReportData &d = p.data;
	using clock = std::chrono::steady_clock;
	auto t0 = clock::now();
	auto lap = [&](const char *name) {
		auto t1 = clock::now();
		d.timings.emplace_back(name, std::chrono::duration<double>(t1 - t0).count());
		t0 = t1;
	};

	std::string cache = opt.use_cache ? (opt.cache_dir.empty() ? default_cache_dir() : opt.cache_dir) : "";
	p.g = build_lie_algebra(type, rank, opt.backend, opt.rank_bound, cache);
	lap("liealg");
	p.nb = normalized_basis(p.g);
	lap("sl2basis");
	p.cd = opposite_cartan_basis(p.g, p.nb);
	lap("cyclic");
	p.gf = gauge_fix(p.g, p.nb);
	lap("dsred");
	auto [P1, P2] = base_tables(p.g, p.nb, p.cd);
	p.red1 = reduce(p.gf, P1, opt.jobs);
	p.red2 = reduce(p.gf, P2, opt.jobs);
	d.lt = leading_terms(p.red1, p.red2, p.nb.eta);
	lap("brackets");
	p.dirac = dirac_reduce(p.g, p.nb);
	lap("dirac");
	p.fp = flat_coordinates(d.lt.g1, p.nb.eta, p.nb.kappa);
	transform_pencil(p.fp, d.lt.g2, d.lt.G2);
	d.F = potential(p.fp);
	lap("frobenius");

	d.type = p.g.type;
	d.rank = p.g.rank;
	d.dim = p.g.n;
	d.backend = p.g.backend;
	d.eta = p.nb.eta;
	d.kappa = p.nb.kappa;
	d.sigma = p.nb.sigma;
	d.A = p.cd.A;
	d.z = p.gf.z;
	for (int j = 0; j < p.nb.r; ++j)
		d.virasoro.push_back(p.red2[0][j]);
	d.dirac_g2 = p.dirac.g2;
	d.dirac_F2 = p.dirac.F2;
	d.t_of_z = p.fp.t_of_z;
	d.eta_up = p.fp.eta_up;
	d.g2t = p.fp.g2t;
	d.G2t = p.fp.G2t;
	d.degrees = p.fp.degrees;
	d.charge = p.fp.charge;
	d.R = p.fp.R;

	d.stored = structure_checks(p);
	p.checks = data_checks(d, opt.jobs);
	lap("checks");
	p.checks.insert(p.checks.end(), d.stored.begin(), d.stored.end());
	return p;
}

} // namespace dsfrob
