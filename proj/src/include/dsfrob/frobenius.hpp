#pragma once

#include "brackets.hpp"
#include "parallel.hpp"

namespace dsfrob {

struct Check
{
	std::string name;
	bool ok = false;
	std::string detail;
};

struct FlatPencil
{
	int r = 0, kappa = 0;
	std::vector<int> eta;
	std::vector<ZPoly> t_of_z; // t^i(z) = z^i + T^i
	std::vector<ZPoly> z_of_t;
	Mat eta_up;                // eta^{ij} = g1^{ij}(t)
	ZMat g1t, g2t;
	ZTensor G2t;
	std::vector<Q> degrees;    // d_i
	Q charge;
	std::vector<ZPoly> E;      // Euler field components in t
	int unity = 0;             // e = d/dt^{unity}
	Q tau_coeff;               // tau = tau_coeff * t^1
	Mat R;
};

inline ZMat zmul(const ZMat &a, const ZMat &b)
{
	int n = int(a.size()), m = int(b[0].size()), k = int(b.size());
	ZMat c = zmatrix(n, m);
	for (int i = 0; i < n; ++i)
		for (int l = 0; l < k; ++l)
		{
			if (a[i][l].is_zero())
				continue;
			for (int j = 0; j < m; ++j)
				if (!b[l][j].is_zero())
					c[i][j] += a[i][l] * b[l][j];
		}
	return c;
}

inline ZMat ztranspose(const ZMat &a)
{
	ZMat t = zmatrix(int(a[0].size()), int(a.size()));
	for (size_t i = 0; i < a.size(); ++i)
		for (size_t j = 0; j < a[0].size(); ++j)
			t[j][i] = a[i][j];
	return t;
}

// Jacobian d t^i / d z^a
inline ZMat jacobian(const std::vector<ZPoly> &f, int r)
{
	ZMat J = zmatrix(int(f.size()), r);
	for (size_t i = 0; i < f.size(); ++i)
		for (int a = 0; a < r; ++a)
			J[i][a] = f[i].diff(a);
	return J;
}

inline ZPoly compose(const ZPoly &p, const std::vector<ZPoly> &sub)
{
	return p.subs<int>([&](int v) { return sub.at(v); });
}

// exponent vectors of total weight w in variables vars
inline void weighted_monomials(const std::vector<int> &vars, const std::vector<int> &wt, int w, size_t k,
                               ZPoly::Mono &cur, std::vector<ZPoly::Mono> &out)
{
	if (w == 0)
	{
		out.push_back(cur);
		return;
	}
	if (k == vars.size())
		return;
	int v = vars[k];
	for (int e = 0; e * wt[v] <= w; ++e)
	{
		if (e)
			cur.emplace_back(v, e);
		weighted_monomials(vars, wt, w - e * wt[v], k + 1, cur, out);
		if (e)
			cur.pop_back();
	}
}

inline std::vector<int> z_weights(const std::vector<int> &eta)
{
	std::vector<int> w;
	for (int e : eta)
		w.push_back(2 * e + 2);
	return w;
}

// split p (variables < U are coordinates, >= U unknowns) into coordinate monomial -> coefficient
inline std::map<ZPoly::Mono, ZPoly> split_unknowns(const ZPoly &p, int U)
{
	std::map<ZPoly::Mono, ZPoly> out;
	for (auto &[m, c] : p.terms())
	{
		ZPoly::Mono zm, um;
		for (auto &f : m)
			(f.first < U ? zm : um).push_back(f);
		out[zm].add_term(um, c);
	}
	return out;
}

inline int unknown_degree(const ZPoly &p)
{
	int d = 0;
	for (auto &[m, c] : p.terms())
		d = std::max(d, ZPoly::total(m));
	return d;
}

// inverse map, eta and the Euler/unity data for a given triangular change t(z)
inline FlatPencil complete_flat(const std::vector<ZPoly> &t, const ZMat &g1, const std::vector<int> &eta, int kappa)
{
	FlatPencil fp;
	int r = int(eta.size());
	fp.r = r;
	fp.eta = eta;
	fp.kappa = kappa;
	if (int(t.size()) != r)
		throw AnsatzExhausted("change map has the wrong size");
	auto wt = z_weights(eta);
	for (int i = 0; i < r; ++i)
	{
		ZPoly Ti = t[i] - ZPoly::var(i);
		long deg = 0;
		for (int v : Ti.vars())
			if (v >= i)
				throw AnsatzExhausted("change map is not triangular");
		if (!Ti.homogeneous([&](int v) { return wt.at(v); }, deg) || (!Ti.is_zero() && deg != wt[i]))
			throw AnsatzExhausted("change map is not quasihomogeneous");
	}
	fp.t_of_z = t;
	fp.z_of_t.assign(r, ZPoly());
	for (int i = 0; i < r; ++i)
	{
		ZPoly Ti = t[i] - ZPoly::var(i);
		fp.z_of_t[i] = ZPoly::var(i) - compose(Ti, fp.z_of_t);
	}
	for (int i = 0; i < r; ++i)
		if (compose(t[i], fp.z_of_t) != ZPoly::var(i))
			throw AnsatzExhausted("triangular inversion failed");
	ZMat J = jacobian(t, r);
	ZMat G = zmul(zmul(J, g1), ztranspose(J));
	fp.eta_up = zeros(r, r);
	fp.g1t = zmatrix(r, r);
	for (int i = 0; i < r; ++i)
		for (int j = 0; j < r; ++j)
		{
			if (!G[i][j].is_constant())
				throw AnsatzExhausted("g1 is not constant in the computed coordinates");
			fp.eta_up[i][j] = G[i][j].constant();
			fp.g1t[i][j] = G[i][j];
		}

	for (int e : eta)
		fp.degrees.push_back(Q(e + 1) / Q(kappa + 1));
	fp.charge = Q(kappa - 1) / Q(kappa + 1);
	fp.unity = r - 1;
	fp.tau_coeff = Q(1) / Q(kappa + 1);
	fp.E.assign(r, ZPoly());
	for (int i = 0; i < r; ++i)
		fp.E[i] = ZPoly::var(i) * fp.degrees[i];
	return fp;
}

// triangular flat coordinates for g1 by undetermined coefficients
inline FlatPencil flat_coordinates(const ZMat &g1, const std::vector<int> &eta, int kappa)
{
	int r = int(eta.size());
	auto wt = z_weights(eta);
	const int U = 1 << 20;

	std::vector<ZPoly> t(r);
	int nu = 0;
	for (int i = 0; i < r; ++i)
	{
		t[i] = ZPoly::var(i);
		std::vector<int> prior;
		for (int j = 0; j < i; ++j)
			prior.push_back(j);
		std::vector<ZPoly::Mono> ms;
		ZPoly::Mono cur;
		weighted_monomials(prior, wt, wt[i], 0, cur, ms);
		for (auto &m : ms)
			t[i] += ZPoly::mono(ZPoly::mono_mul(m, {{U + nu++, 1}}), 1);
	}

	for (int round = 0;; ++round)
	{
		ZMat J = jacobian(t, r);
		ZMat G = zmul(zmul(J, g1), ztranspose(J));
		std::vector<ZPoly> eqs;
		for (int i = 0; i < r; ++i)
			for (int j = i; j < r; ++j)
				for (auto &[zm, c] : split_unknowns(G[i][j], U))
					if (!zm.empty() && !c.is_zero())
						eqs.push_back(c);
		if (eqs.empty())
			break;
		// unknown ids present
		std::map<int, int> col;
		for (auto &e : eqs)
			if (unknown_degree(e) <= 1)
				for (int v : e.vars())
					col.emplace(v, 0);
		if (col.empty())
			throw AnsatzExhausted("flat coordinate system has no linear equations left");
		std::vector<int> ids;
		for (auto &kv : col)
		{
			kv.second = int(ids.size());
			ids.push_back(kv.first);
		}
		int nc = int(ids.size());
		Mat A;
		for (auto &e : eqs)
		{
			if (unknown_degree(e) > 1)
				continue;
			Vec row(nc + 1, Q(0));
			for (auto &[m, c] : e.terms())
				if (m.empty())
					row[nc] = -c;
				else
					row[col.at(m[0].first)] = c;
			A.push_back(row);
		}
		auto piv = rref(A);
		std::map<int, ZPoly> sol;
		for (size_t k = 0; k < piv.size(); ++k)
		{
			int p = piv[k];
			if (p == nc)
				throw AnsatzExhausted("flat coordinate system is inconsistent");
			ZPoly v(A[k][nc]);
			for (int c2 = 0; c2 < nc; ++c2)
				if (c2 != p && A[k][c2] != 0)
					v -= ZPoly::var(ids[c2]) * A[k][c2];
			sol[ids[p]] = v;
		}
		if (sol.empty())
			throw AnsatzExhausted("flat coordinate elimination stalled");
		for (auto &ti : t)
			ti = ti.subs<int>([&](int v) {
				auto it = sol.find(v);
				return it == sol.end() ? ZPoly::var(v) : it->second;
			});
		if (round > 4 * r + 8)
			throw AnsatzExhausted("flat coordinate elimination does not terminate");
	}
	// unconstrained coefficients are set to zero
	for (auto &ti : t)
		ti = ti.restrict_to([&](int v) { return v < U; });
	return complete_flat(t, g1, eta, kappa);
}

inline void transform_pencil(FlatPencil &fp, const ZMat &g2, const ZTensor &G2)
{
	int r = fp.r;
	ZMat J = jacobian(fp.t_of_z, r);
	ZMat g2z = zmul(zmul(J, g2), ztranspose(J));
	fp.g2t = zmatrix(r, r);
	for (int i = 0; i < r; ++i)
		for (int j = 0; j < r; ++j)
			fp.g2t[i][j] = compose(g2z[i][j], fp.z_of_t);

	// dz^c/dt^k
	ZMat Zt = jacobian(fp.z_of_t, r);
	fp.G2t.assign(r, std::vector<std::vector<ZPoly>>(r, std::vector<ZPoly>(r)));
	for (int i = 0; i < r; ++i)
		for (int j = 0; j < r; ++j)
		{
			std::vector<ZPoly> hat(r);
			for (int c = 0; c < r; ++c)
			{
				ZPoly s;
				for (int a = 0; a < r; ++a)
				{
					if (J[i][a].is_zero())
						continue;
					for (int b = 0; b < r; ++b)
					{
						ZPoly hjcb = J[j][b].diff(c);
						if (!hjcb.is_zero() && !g2[a][b].is_zero())
							s += J[i][a] * hjcb * g2[a][b];
						if (!J[j][b].is_zero() && !G2[a][b][c].is_zero())
							s += J[i][a] * J[j][b] * G2[a][b][c];
					}
				}
				hat[c] = compose(s, fp.z_of_t);
			}
			for (int k = 0; k < r; ++k)
			{
				ZPoly s;
				for (int c = 0; c < r; ++c)
					if (!hat[c].is_zero() && !Zt[c][k].is_zero())
						s += hat[c] * Zt[c][k];
				fp.G2t[i][j][k] = s;
			}
		}

	// R = (d-1)/2 + dE
	fp.R = zeros(r, r);
	for (int i = 0; i < r; ++i)
		for (int j = 0; j < r; ++j)
		{
			ZPoly dE = fp.E[i].diff(j);
			if (!dE.is_constant())
				throw AxiomFailure("Euler field is not linear");
			fp.R[i][j] = dE.constant() + (i == j ? (fp.charge - 1) / 2 : Q(0));
		}
}

// (L_X g)^{ij} = X^k d_k g^{ij} - d_k X^i g^{kj} - d_k X^j g^{ik}
inline ZMat lie_derivative(const std::vector<ZPoly> &X, const ZMat &g)
{
	int r = int(g.size());
	ZMat out = zmatrix(r, r);
	for (int i = 0; i < r; ++i)
		for (int j = 0; j < r; ++j)
		{
			ZPoly s;
			for (int k = 0; k < r; ++k)
			{
				if (!X[k].is_zero())
					s += X[k] * g[i][j].diff(k);
				ZPoly a = X[i].diff(k), b = X[j].diff(k);
				if (!a.is_zero())
					s -= a * g[k][j];
				if (!b.is_zero())
					s -= b * g[i][k];
			}
			out[i][j] = s;
		}
	return out;
}

inline std::vector<ZPoly> vf_bracket(const std::vector<ZPoly> &X, const std::vector<ZPoly> &Y)
{
	int r = int(X.size());
	std::vector<ZPoly> out(r);
	for (int i = 0; i < r; ++i)
		for (int k = 0; k < r; ++k)
			out[i] += X[k] * Y[i].diff(k) - Y[k] * X[i].diff(k);
	return out;
}

inline std::vector<ZPoly> unity_field(const FlatPencil &fp)
{
	std::vector<ZPoly> e(fp.r);
	e[fp.unity] = ZPoly(1);
	return e;
}

inline std::vector<Check> verify_pencil_axioms(const FlatPencil &fp)
{
	std::vector<Check> out;
	int r = fp.r;
	auto e = unity_field(fp);
	out.push_back({"pencil.unity_euler_bracket", vf_bracket(e, fp.E) == e, "[e,E] = e"});

	ZMat scaled = fp.g2t;
	for (auto &row : scaled)
		for (auto &p : row)
			p *= fp.charge - 1;
	out.push_back({"pencil.euler_g2", lie_derivative(fp.E, fp.g2t) == scaled, "L_E g2 = (d-1) g2"});
	out.push_back({"pencil.unity_g2", lie_derivative(e, fp.g2t) == fp.g1t, "L_e g2 = g1"});
	out.push_back({"pencil.unity_g1", lie_derivative(e, fp.g1t) == zmatrix(r, r), "L_e g1 = 0"});

	bool diag = true;
	for (int i = 0; i < r; ++i)
		for (int j = 0; j < r; ++j)
			if (fp.R[i][j] != (i == j ? Q(fp.eta[i]) / Q(fp.kappa + 1) : Q(0)))
				diag = false;
	out.push_back({"pencil.regularity", diag && det(fp.R) != 0, "R = diag(eta_i/(kappa+1))"});

	bool row1 = true, gam1 = true;
	for (int j = 0; j < r; ++j)
	{
		if (fp.g2t[0][j] != ZPoly::var(j) * Q(fp.eta[j] + 1))
			row1 = false;
		for (int k = 0; k < r; ++k)
			if (fp.G2t[0][j][k] != ZPoly(j == k ? Q(fp.eta[j]) : Q(0)))
				gam1 = false;
	}
	out.push_back({"pencil.g2_first_row", row1, "g2^{1j}(t) = (eta_j+1) t^j"});
	out.push_back({"pencil.gamma2_first_row", gam1, "Gamma2^{1j}_k(t) = eta_j delta^j_k"});

	// flat metric: constant, lower antidiagonal pattern preserved
	bool anti = true;
	for (int i = 0; i < r; ++i)
		for (int j = 0; j < r; ++j)
		{
			int s = fp.eta[i] + fp.eta[j];
			if ((s != fp.kappa + 1) && fp.eta_up[i][j] != 0)
				anti = false;
		}
	out.push_back({"pencil.eta_antidiagonal", anti && det(fp.eta_up) != 0, "eta constant, antidiagonal, nondegenerate"});
	return out;
}

// weighted hessian reconstruction of the prepotential
inline ZPoly potential(const FlatPencil &fp)
{
	int r = fp.r;
	auto inv = inverse(fp.eta_up);
	if (!inv)
		throw IntegrabilityFailure("eta is degenerate");
	const Mat &el = *inv;
	ZMat G = zmatrix(r, r);
	for (int a = 0; a < r; ++a)
		for (int b = 0; b < r; ++b)
		{
			Q den = Q(fp.eta[a] + fp.eta[b]) / Q(fp.kappa + 1);
			if (den <= 0)
				throw IntegrabilityFailure("nonpositive degree denominator");
			G[a][b] = fp.g2t[a][b] / den;
		}
	ZMat H = zmatrix(r, r);
	for (int i = 0; i < r; ++i)
		for (int j = 0; j < r; ++j)
			for (int a = 0; a < r; ++a)
				for (int b = 0; b < r; ++b)
					if (el[i][a] != 0 && el[j][b] != 0 && !G[a][b].is_zero())
						H[i][j] += G[a][b] * (el[i][a] * el[j][b]);
	for (int i = 0; i < r; ++i)
		for (int j = 0; j < r; ++j)
		{
			if (H[i][j] != H[j][i])
				throw IntegrabilityFailure("hessian candidate is not symmetric");
			for (int k = 0; k < r; ++k)
				if (H[i][j].diff(k) != H[k][j].diff(i))
					throw IntegrabilityFailure("mixed partials of the hessian candidate disagree");
		}
	ZPoly q;
	for (int i = 0; i < r; ++i)
		for (int j = 0; j < r; ++j)
			if (!H[i][j].is_zero())
				q += H[i][j] * ZPoly::var(i) * ZPoly::var(j);
	ZPoly F;
	for (auto &[m, c] : q.terms())
	{
		int k = ZPoly::total(m);
		F.add_term(m, c / Q(k * (k - 1)));
	}
	for (int i = 0; i < r; ++i)
		for (int j = 0; j < r; ++j)
			if (F.diff(i).diff(j) != H[i][j])
				throw IntegrabilityFailure("prepotential hessian mismatch");
	return F;
}

struct FrobeniusResult
{
	ZPoly F;
	std::vector<Q> degrees;
	Q charge;
	std::vector<Check> checks;
};

inline std::vector<Check> verify_wdvv(const ZPoly &F, const FlatPencil &fp, int jobs = 1)
{
	int r = fp.r;
	std::vector<Check> out;
	auto inv = inverse(fp.eta_up);
	bool metric = bool(inv);
	if (metric)
		for (int i = 0; i < r; ++i)
			for (int j = 0; j < r; ++j)
				if (F.diff(fp.unity).diff(i).diff(j) != ZPoly((*inv)[i][j]))
					metric = false;
	out.push_back({"frobenius.metric_from_potential", metric, "d_r d_i d_j F = eta^{-1}_{ij}"});

	// c[a][b][c] third derivatives
	std::vector<std::vector<std::vector<ZPoly>>> c3(r, std::vector<std::vector<ZPoly>>(r, std::vector<ZPoly>(r)));
	for (int a = 0; a < r; ++a)
		for (int b = 0; b < r; ++b)
			for (int c = 0; c < r; ++c)
				c3[a][b][c] = F.diff(a).diff(b).diff(c);
	// products P[a][b][c][d] = c_{ab l} eta^{lm} c_{m c d}
	std::vector<char> bad(r * r * r * r, 0);
	parallel_for(r * r, jobs, [&](int ab) {
		int a = ab / r, b = ab % r;
		for (int c = 0; c < r; ++c)
			for (int d = 0; d < r; ++d)
			{
				ZPoly lhs, rhs;
				for (int l = 0; l < r; ++l)
					for (int m = 0; m < r; ++m)
					{
						const Q &e = fp.eta_up[l][m];
						if (e == 0)
							continue;
						if (!c3[a][b][l].is_zero() && !c3[m][c][d].is_zero())
							lhs += c3[a][b][l] * c3[m][c][d] * e;
						if (!c3[a][c][l].is_zero() && !c3[m][b][d].is_zero())
							rhs += c3[a][c][l] * c3[m][b][d] * e;
					}
				if (lhs != rhs)
					bad[((a * r + b) * r + c) * r + d] = 1;
			}
	});
	bool wdvv = std::find(bad.begin(), bad.end(), 1) == bad.end();
	out.push_back({"frobenius.wdvv", wdvv, "associativity for all index quadruples"});

	ZPoly eu;
	for (int i = 0; i < r; ++i)
		eu += ZPoly::var(i) * F.diff(i) * fp.degrees[i];
	out.push_back({"frobenius.euler_potential", eu == F * (3 - fp.charge), "E F = (3-d) F"});

	bool poly_ok = !F.is_zero();
	for (auto &[m, c] : F.terms())
		if (ZPoly::total(m) < 3)
			poly_ok = false;
	out.push_back({"frobenius.potential_polynomial", poly_ok, "nonzero, no terms below cubic"});
	return out;
}

// t^i -> t^{r+1-i}, used only when serializing
inline ZPoly relabel_unity_first(const ZPoly &p, int r)
{
	return p.subs<int>([r](int v) { return ZPoly::var(r - 1 - v); });
}

} // namespace dsfrob
