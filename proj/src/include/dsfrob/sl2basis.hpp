#pragma once

#include "liealg.hpp"

namespace dsfrob {

struct NormalizedBasis
{
	int r = 0;
	int kappa = 0;
	std::vector<int> eta;          // per module, ascending
	std::vector<std::vector<Vec>> X; // X[i][I + eta[i]]
	std::vector<Q> sigma;          // <X_eta, X_-eta> per module
	std::vector<std::vector<Vec>> dual; // coord along X^i_I is dot(m, dual[i][I+eta])

	const Vec &x(int i, int I) const { return X[i][I + eta[i]]; }
	const Vec &d(int i, int I) const { return dual[i][I + eta[i]]; }

	// <X^i_I, X^i_{-I}> = (-1)^{eta-I} binom(2 eta, eta-I) sigma_i
	Q norm(int i, int I) const
	{
		int k = eta[i] - I;
		return ((k & 1) ? -1 : 1) * binom(2 * eta[i], k) * sigma[i];
	}
};

// basis of ker ad f, grouped by degree, lowest (most negative) degree last
inline std::vector<Vec> lowest_weight_vectors(const LieAlgebra &g)
{
	const Vec &f = g.triple.f;
	std::map<int, std::vector<int>, std::greater<int>> by_deg;
	for (int I = 0; I < g.n; ++I)
		by_deg[g.deg[I]].push_back(I);
	std::vector<Vec> out;
	for (auto &[d, idx] : by_deg)
	{
		if (d >= 0)
			continue;
		Mat M = zeros(g.n, idx.size());
		for (size_t c = 0; c < idx.size(); ++c)
		{
			Vec col = g.bracket(f, g.unit(idx[c]));
			for (int K = 0; K < g.n; ++K)
				M[K][c] = col[K];
		}
		auto ns = nullspace(M, idx.size());
		std::vector<Vec> here;
		for (auto &v : ns)
		{
			Vec full(g.n, Q(0));
			for (size_t c = 0; c < idx.size(); ++c)
				full[idx[c]] = v[c];
			here.push_back(full);
		}
		std::sort(here.begin(), here.end());
		for (auto &v : here)
			out.push_back(v);
	}
	if (int(out.size()) != g.rank)
		throw DimensionMismatch("ker ad f has dimension " + std::to_string(out.size()) + ", expected " +
		                        std::to_string(g.rank));
	return out;
}

inline int degree_of(const LieAlgebra &g, const Vec &v)
{
	int d = 1;
	for (int I = 0; I < g.n; ++I)
		if (v[I] != 0)
		{
			if (d != 1 && d != g.deg[I])
				throw OddDegree("vector is not homogeneous");
			d = g.deg[I];
		}
	return d;
}

inline std::vector<Vec> ladder(const LieAlgebra &g, const Vec &low, int eta)
{
	std::vector<Vec> raw;
	Vec cur = low;
	for (int p = 0; p <= 2 * eta; ++p)
	{
		raw.push_back(cur);
		cur = (Q(1) / Q(p + 1)) * g.bracket(g.triple.e, cur);
	}
	return raw;
}

inline NormalizedBasis normalize_basis(const LieAlgebra &g, std::vector<Vec> lows)
{
	NormalizedBasis nb;
	nb.r = int(lows.size());
	for (auto &v : lows)
	{
		int d = degree_of(g, v);
		if (d % 2)
			throw OddDegree("odd degree lowest vector");
		nb.eta.push_back(-d / 2);
	}
	// Gram-Schmidt inside each repeated exponent, pairing the top of one ladder with the other's bottom
	for (int i = 0; i < nb.r; ++i)
		for (int j = 0; j < i; ++j)
		{
			if (nb.eta[j] != nb.eta[i])
				continue;
			int eta = nb.eta[i];
			Vec topj = ladder(g, lows[j], eta).back();
			Q bjj = g.pair(topj, lows[j]);
			if (bjj == 0)
				throw NormalizationFailure("isotropic lowest vector in a repeated exponent");
			Q bij = g.pair(topj, lows[i]);
			lows[i] = lows[i] - (bij / bjj) * lows[j];
		}
	for (int i = 0; i < nb.r; ++i)
	{
		int eta = nb.eta[i];
		auto raw = ladder(g, lows[i], eta);
		Q s_raw = g.pair(raw.back(), raw.front());
		if (s_raw == 0)
			throw NormalizationFailure("degenerate pairing in module " + std::to_string(i + 1));
		Z cls = squarefree_class(s_raw);
		Q c = exact_sqrt(Q(cls) / s_raw);
		const Vec &lo = raw.front();
		for (auto &x : lo)
			if (x != 0)
			{
				if (x < 0)
					c = -c;
				break;
			}
		for (auto &v : raw)
			v = c * v;
		nb.sigma.push_back(Q(cls));
		nb.X.push_back(raw);
	}
	nb.kappa = nb.eta.back();
	for (int i = 0; i < nb.r; ++i)
	{
		std::vector<Vec> du;
		for (int I = -nb.eta[i]; I <= nb.eta[i]; ++I)
		{
			Vec w(g.n, Q(0));
			const Vec &xm = nb.x(i, -I);
			for (int K = 0; K < g.n; ++K)
				for (auto &[J, b] : g.form_rows[K])
					if (xm[J] != 0)
						w[K] += b * xm[J];
			du.push_back((1 / nb.norm(i, I)) * w);
		}
		nb.dual.push_back(du);
	}
	return nb;
}

inline NormalizedBasis normalized_basis(const LieAlgebra &g) { return normalize_basis(g, lowest_weight_vectors(g)); }

// columns are the X^i_I in module order
inline Mat basis_matrix(const NormalizedBasis &nb)
{
	size_t n = nb.X[0][0].size();
	Mat m = zeros(n, 0);
	for (auto &mod : nb.X)
		for (auto &v : mod)
			for (size_t K = 0; K < n; ++K)
				m[K].push_back(v[K]);
	return m;
}

} // namespace dsfrob
