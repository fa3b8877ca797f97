#pragma once

#include "sl2basis.hpp"

namespace dsfrob {

struct CyclicData
{
	Vec a, y1;
	std::vector<Vec> u, v, y; // y_i = v_i + u_i, u_i = X^i_{eta_i} / sigma_i
	Mat A;                    // <y_i, y_j>
};

inline std::pair<Vec, Vec> cyclic_element(const LieAlgebra &g, const NormalizedBasis &nb)
{
	Vec a = nb.x(nb.r - 1, -nb.kappa);
	return {a, g.triple.e + a};
}

// kernel dimension and squarefree minimal polynomial of ad y1
inline bool regular_semisimple(const LieAlgebra &g, const Vec &y1, size_t *kernel_dim = nullptr)
{
	Mat M = g.ad(y1);
	size_t kd = g.n - rank(M);
	if (kernel_dim)
		*kernel_dim = kd;
	if (kd != size_t(g.rank))
		return false;
	UPoly p = charpoly(M);
	UPoly sq = upoly_div(p, upoly_gcd(p, upoly_deriv(p)));
	Mat z = upoly_eval(sq, M);
	for (auto &row : z)
		if (!is_zero(row))
			return false;
	return true;
}

inline CyclicData opposite_cartan_basis(const LieAlgebra &g, const NormalizedBasis &nb)
{
	CyclicData cd;
	std::tie(cd.a, cd.y1) = cyclic_element(g, nb);
	if (!regular_semisimple(g, cd.y1))
		throw NotRegularSemisimple("ad(e + a) is not regular semisimple");
	int r = nb.r, kap = nb.kappa;
	for (int i = 0; i < r; ++i)
	{
		Vec u = (1 / nb.sigma[i]) * nb.x(i, nb.eta[i]);
		int dv = 2 * nb.eta[i] - 2 * (kap + 1);
		std::vector<int> idx;
		for (int I = 0; I < g.n; ++I)
			if (g.deg[I] == dv)
				idx.push_back(I);
		Vec rhs = Q(-1) * g.bracket(cd.a, u);
		Mat M = zeros(g.n, idx.size());
		for (size_t c = 0; c < idx.size(); ++c)
		{
			Vec col = g.bracket(g.triple.e, g.unit(idx[c]));
			for (int K = 0; K < g.n; ++K)
				M[K][c] = col[K];
		}
		auto sol = solve(M, rhs);
		if (!sol)
			throw AnsatzUnsolvable("no v_" + std::to_string(i + 1));
		Vec v(g.n, Q(0));
		for (size_t c = 0; c < idx.size(); ++c)
			v[idx[c]] = (*sol)[c];
		Vec y = v + u;
		if (!is_zero(g.bracket(cd.y1, y)))
			throw AnsatzUnsolvable("y_" + std::to_string(i + 1) + " does not commute with y1");
		cd.u.push_back(u);
		cd.v.push_back(v);
		cd.y.push_back(y);
	}
	cd.A = zeros(r, r);
	for (int i = 0; i < r; ++i)
		for (int j = 0; j < r; ++j)
			cd.A[i][j] = g.pair(cd.y[i], cd.y[j]);
	return cd;
}

// left side of the Gold identity, before the normalization factor 1/(sigma_i sigma_j)
inline Q gold_lhs(const LieAlgebra &g, const NormalizedBasis &nb, const Vec &a, int i, int j)
{
	int ei = nb.eta[i], ej = nb.eta[j];
	return g.pair(g.bracket(a, nb.x(i, ei)), nb.x(j, ej - 1)) / Q(2 * ej) +
	       g.pair(g.bracket(a, nb.x(j, ej)), nb.x(i, ei - 1)) / Q(2 * ei);
}

} // namespace dsfrob
