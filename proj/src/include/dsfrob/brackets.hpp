#pragma once

#include "dsred.hpp"
#include "parallel.hpp"

namespace dsfrob {

// polynomials in the slice coordinates z^1..z^r (0-based indices)
using ZPoly = Poly<int>;
using ZMat = std::vector<std::vector<ZPoly>>;
using ZTensor = std::vector<std::vector<std::vector<ZPoly>>>; // [i][j][k]

inline ZMat zmatrix(int a, int b) { return ZMat(a, std::vector<ZPoly>(b)); }

inline std::string z_name(int i) { return "z" + std::to_string(i + 1); }
inline std::string t_name(int i) { return "t" + std::to_string(i + 1); }

// names for slice jets (i, eta_i, m) as z-jets
inline std::string zjet_name(const Jet &j)
{
	std::string s = z_name(j.i);
	if (j.m)
		s += "_" + std::string(j.m, 'x');
	return s;
}

struct BaseBracketTable
{
	int r = 0;
	std::vector<int> eta;
	// entries[(ia, Ia, ib, Ib)] = {q_a(x), q_b(y)}
	std::map<std::tuple<int, int, int, int>, BaseEntry> entries;
	BaseEntry none;

	const BaseEntry &at(int ia, int Ia, int ib, int Ib) const
	{
		auto it = entries.find({ia, Ia, ib, Ib});
		return it == entries.end() ? none : it->second;
	}
	BaseLookup lookup() const
	{
		return [this](int ia, int Ia, int ib, int Ib) -> const BaseEntry & { return at(ia, Ia, ib, Ib); };
	}
};

// gradient of the coordinate q_i^I
inline Vec coordinate_gradient(const NormalizedBasis &nb, int i, int I) { return (1 / nb.norm(i, I)) * nb.x(i, I); }

// P1: <a, [v, u]> delta.  P2: <u, v> delta' + <e + q, [v, u]> delta
inline std::pair<BaseBracketTable, BaseBracketTable> base_tables(const LieAlgebra &g, const NormalizedBasis &nb,
                                                                 const CyclicData &cd)
{
	BaseBracketTable P1, P2;
	P1.r = P2.r = nb.r;
	P1.eta = P2.eta = nb.eta;
	PVec b = generic_q(g, nb);
	for (int K = 0; K < g.n; ++K)
		b[K] += DiffPolynomial(g.triple.e[K]);
	for (int ia = 0; ia < nb.r; ++ia)
		for (int Ia = 0; Ia <= nb.eta[ia]; ++Ia)
			for (int ib = 0; ib < nb.r; ++ib)
				for (int Ib = 0; Ib <= nb.eta[ib]; ++Ib)
				{
					Vec ua = coordinate_gradient(nb, ia, Ia), ub = coordinate_gradient(nb, ib, Ib);
					Vec vu = g.bracket(ub, ua);
					Q c1 = g.pair(cd.a, vu);
					if (c1 != 0)
						P1.entries[{ia, Ia, ib, Ib}][0] = DiffPolynomial(c1);
					BaseEntry e2;
					DiffPolynomial c0 = g.pair(b, vu);
					if (!c0.is_zero())
						e2[0] = c0;
					Q c2 = g.pair(ua, ub);
					if (c2 != 0)
						e2[1] = DiffPolynomial(c2);
					if (!e2.empty())
						P2.entries[{ia, Ia, ib, Ib}] = e2;
				}
	return {P1, P2};
}

inline SliceMap slice_map(const std::vector<int> &eta)
{
	return [eta](const DiffPolynomial &p) { return p.restrict_to([&](const Jet &j) { return j.I == eta[j.i]; }); };
}

// reduced brackets {z^i(x), z^j(y)} on the slice
inline std::vector<std::vector<DeltaSeries>> reduce(const GaugeFixResult &gf, const BaseBracketTable &table,
                                                     int jobs = 1)
{
	int r = table.r;
	std::vector<std::vector<DeltaSeries>> out(r, std::vector<DeltaSeries>(r));
	auto sl = slice_map(table.eta);
	auto lk = table.lookup();
	for (auto &z : gf.z)
		for (auto &v : z.vars())
			if (v.I > table.eta[v.i])
				throw NotInvariant("generator uses a coordinate outside the Borel part");
	parallel_for(r * r, jobs, [&](int k) {
		int i = k / r, j = k % r;
		out[i][j] = leibnitz_bracket(gf.z[i], gf.z[j], lk, sl);
		for (auto &[ks, p] : out[i][j].c)
			for (auto &v : p.vars())
				if (v.I != table.eta[v.i])
					throw NotInvariant("coefficient not expressible on the slice");
	});
	return out;
}

// slice DiffPolynomial without derivatives -> polynomial in z
inline ZPoly to_zpoly(const DiffPolynomial &p)
{
	return p.subs<int>([](const Jet &j) {
		if (j.m != 0)
			throw NotInvariant("unexpected derivative in a leading term");
		return ZPoly::var(j.i);
	});
}

struct LeadingTerms
{
	int r = 0;
	ZMat F1, F2, g1, g2;
	ZTensor G1, G2; // Gamma^{ij}_k
};

inline void extract(const std::vector<std::vector<DeltaSeries>> &red, const std::vector<int> &eta, ZMat &F, ZMat &gm,
                    ZTensor &G)
{
	int r = int(red.size());
	F.assign(r, std::vector<ZPoly>(r));
	gm = F;
	G.assign(r, std::vector<std::vector<ZPoly>>(r, std::vector<ZPoly>(r)));
	for (int i = 0; i < r; ++i)
		for (int j = 0; j < r; ++j)
		{
			F[i][j] = to_zpoly(red[i][j].at(-1, 0));
			gm[i][j] = to_zpoly(red[i][j].at(0, 1));
			DiffPolynomial c = red[i][j].at(0, 0);
			for (int k = 0; k < r; ++k)
			{
				Jet zx{k, eta[k], 1};
				G[i][j][k] = to_zpoly(c.diff(zx));
			}
		}
}

inline LeadingTerms leading_terms(const std::vector<std::vector<DeltaSeries>> &red1,
                                  const std::vector<std::vector<DeltaSeries>> &red2, const std::vector<int> &eta,
                                  bool require_limit = true)
{
	LeadingTerms lt;
	lt.r = int(red1.size());
	extract(red1, eta, lt.F1, lt.g1, lt.G1);
	extract(red2, eta, lt.F2, lt.g2, lt.G2);
	if (require_limit)
		for (int i = 0; i < lt.r; ++i)
			for (int j = 0; j < lt.r; ++j)
				if (!lt.F1[i][j].is_zero() || !lt.F2[i][j].is_zero())
					throw NoDispersionlessLimit("ultralocal part of {z" + std::to_string(i + 1) + ", z" +
					                            std::to_string(j + 1) + "} is nonzero");
	return lt;
}

inline std::string str_z(const ZPoly &p) { return p.str(z_name); }
inline std::string str_t(const ZPoly &p) { return p.str(t_name); }
inline std::string str_zjet(const DiffPolynomial &p) { return p.str(zjet_name); }

} // namespace dsfrob
