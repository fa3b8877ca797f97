#pragma once

#include "brackets.hpp"

namespace dsfrob {

// basis element X^i_I with its dual functional X^i_{-I} / norm
struct DiracIndex
{
	int i = 0, I = 0;
	int mu = 0; // ad h eigenvalue, 2I
};

// slice directions X^i_{-eta_i} first, then the constraints: negative part,
// the degree 0 part, the positive part mirrored
inline std::vector<DiracIndex> dirac_order(const NormalizedBasis &nb)
{
	std::vector<DiracIndex> out, neg;
	for (int i = 0; i < nb.r; ++i)
		out.push_back({i, -nb.eta[i], -2 * nb.eta[i]});
	for (int i = 0; i < nb.r; ++i)
		for (int I = -nb.eta[i] + 1; I < 0; ++I)
			neg.push_back({i, I, 2 * I});
	out.insert(out.end(), neg.begin(), neg.end());
	for (int i = 0; i < nb.r; ++i)
		out.push_back({i, 0, 0});
	for (int k = int(neg.size()) - 1; k >= 0; --k)
		out.push_back({neg[k].i, -neg[k].I, -neg[k].mu});
	for (int i = 0; i < nb.r; ++i)
		out.push_back({i, nb.eta[i], 2 * nb.eta[i]});
	return out;
}

// fraction-free Gauss-Jordan; returns (adj, d) with M adj = d I
inline std::pair<ZMat, ZPoly> bareiss_inverse(const ZMat &M)
{
	int m = int(M.size());
	ZMat A(m, std::vector<ZPoly>(2 * m));
	for (int i = 0; i < m; ++i)
	{
		for (int j = 0; j < m; ++j)
			A[i][j] = M[i][j];
		A[i][m + i] = ZPoly(1);
	}
	ZPoly prev(1);
	for (int k = 0; k < m; ++k)
	{
		int p = -1;
		for (int i = k; i < m; ++i)
			if (!A[i][k].is_zero() && (p < 0 || (A[i][k].is_constant() && !A[p][k].is_constant())))
				p = i;
		if (p < 0)
			throw SingularBlock("constraint block is singular");
		std::swap(A[k], A[p]);
		for (int i = 0; i < m; ++i)
		{
			if (i == k)
				continue;
			for (int j = 0; j < 2 * m; ++j)
			{
				if (j == k)
					continue;
				ZPoly num = A[k][k] * A[i][j] - A[i][k] * A[k][j];
				if (!num.divide_exact(prev, A[i][j]))
					throw SingularBlock("inexact division in fraction-free elimination");
			}
			A[i][k] = ZPoly();
		}
		prev = A[k][k];
	}
	ZMat adj(m, std::vector<ZPoly>(m));
	for (int i = 0; i < m; ++i)
		for (int j = 0; j < m; ++j)
			adj[i][j] = A[i][m + j];
	for (int i = 0; i < m; ++i)
		for (int j = 0; j < m; ++j)
		{
			ZPoly s;
			for (int k = 0; k < m; ++k)
				if (!M[i][k].is_zero() && !adj[k][j].is_zero())
					s += M[i][k] * adj[k][j];
			if (s != (i == j ? prev : ZPoly()))
				throw SingularBlock("inverse check failed");
		}
	return {adj, prev};
}

// fraction-free determinant over Q[z]
inline ZPoly zdet(ZMat A)
{
	int m = int(A.size());
	ZPoly prev(1), sign(1);
	for (int k = 0; k < m; ++k)
	{
		int p = k;
		while (p < m && A[p][k].is_zero())
			++p;
		if (p == m)
			return ZPoly();
		if (p != k)
		{
			std::swap(A[k], A[p]);
			sign = -sign;
		}
		for (int i = k + 1; i < m; ++i)
		{
			for (int j = k + 1; j < m; ++j)
			{
				ZPoly num = A[k][k] * A[i][j] - A[i][k] * A[k][j];
				if (!num.divide_exact(prev, A[i][j]))
					throw SingularBlock("inexact division in determinant");
			}
			A[i][k] = ZPoly();
		}
		prev = A[k][k];
	}
	return m ? sign * A[m - 1][m - 1] : ZPoly(1);
}

struct DiracResult
{
	int r = 0;
	std::vector<DiracIndex> order;
	ZMat Ft, gt; // full matrices in the Dirac order
	ZMat K;      // inverse of the constraint block
	bool polynomial = true;
	bool degrees_ok = true;
	ZMat g2, F2;
};

inline DiracResult dirac_reduce(const LieAlgebra &g, const NormalizedBasis &nb)
{
	DiracResult res;
	int r = nb.r, n = g.n;
	res.r = r;
	res.order = dirac_order(nb);
	if (int(res.order.size()) != n)
		throw DimensionMismatch("Dirac basis size differs from dim g");

	std::vector<Vec> dual(n);
	for (int k = 0; k < n; ++k)
	{
		auto &o = res.order[k];
		dual[k] = (1 / nb.norm(o.i, -o.I)) * nb.x(o.i, -o.I);
	}
	// point e + sum z^i X^i_{-eta_i}
	std::vector<ZPoly> pt(n);
	for (int K = 0; K < n; ++K)
		pt[K] = ZPoly(g.triple.e[K]);
	for (int i = 0; i < r; ++i)
	{
		const Vec &x = nb.x(i, -nb.eta[i]);
		for (int K = 0; K < n; ++K)
			if (x[K] != 0)
				pt[K] += ZPoly::var(i) * x[K];
	}
	res.Ft = zmatrix(n, n);
	res.gt = zmatrix(n, n);
	for (int a = 0; a < n; ++a)
		for (int b = 0; b < n; ++b)
		{
			res.gt[a][b] = ZPoly(g.pair(dual[a], dual[b]));
			res.Ft[a][b] = g.pair(pt, g.bracket(dual[a], dual[b]));
		}

	int m = n - r;
	ZMat Fa = zmatrix(m, m);
	for (int a = 0; a < m; ++a)
		for (int b = 0; b < m; ++b)
			Fa[a][b] = res.Ft[r + a][r + b];
	auto [adj, d] = bareiss_inverse(Fa);
	res.K = zmatrix(m, m);
	for (int a = 0; a < m; ++a)
		for (int b = 0; b < m; ++b)
			if (!adj[a][b].divide_exact(d, res.K[a][b]))
				res.polynomial = false;

	auto zw = [&](int v) { return 2 * nb.eta[v] + 2; };
	for (int a = 0; a < m && res.polynomial; ++a)
		for (int b = 0; b < m; ++b)
		{
			long deg = 0;
			const ZPoly &k = res.K[a][b];
			if (k.is_zero())
				continue;
			if (!k.homogeneous(zw, deg) || deg != res.order[r + a].mu + res.order[r + b].mu - 2)
				res.degrees_ok = false;
		}

	// T = K F~^{alpha j}, S = F~^{i alpha} K
	ZMat T = zmatrix(m, r), S = zmatrix(r, m);
	for (int a = 0; a < m; ++a)
		for (int j = 0; j < r; ++j)
			for (int b = 0; b < m; ++b)
				if (!res.K[a][b].is_zero() && !res.Ft[r + b][j].is_zero())
					T[a][j] += res.K[a][b] * res.Ft[r + b][j];
	for (int i = 0; i < r; ++i)
		for (int a = 0; a < m; ++a)
			for (int b = 0; b < m; ++b)
				if (!res.Ft[i][r + b].is_zero() && !res.K[b][a].is_zero())
					S[i][a] += res.Ft[i][r + b] * res.K[b][a];

	res.g2 = zmatrix(r, r);
	res.F2 = zmatrix(r, r);
	for (int i = 0; i < r; ++i)
		for (int j = 0; j < r; ++j)
		{
			ZPoly gv = res.gt[i][j], fv = res.Ft[i][j];
			for (int b = 0; b < m; ++b)
			{
				if (!res.gt[i][r + b].is_zero())
					gv -= res.gt[i][r + b] * T[b][j];
				if (!S[i][b].is_zero())
				{
					gv -= S[i][b] * res.gt[r + b][j];
					fv -= S[i][b] * res.Ft[r + b][j];
					for (int c = 0; c < m; ++c)
						if (!res.gt[r + b][r + c].is_zero())
							gv += S[i][b] * res.gt[r + b][r + c] * T[c][j];
				}
			}
			res.g2[i][j] = gv;
			res.F2[i][j] = fv;
		}
	return res;
}

} // namespace dsfrob
