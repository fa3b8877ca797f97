#pragma once

#include "errors.hpp"
#include "linalg.hpp"
#include "poly.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <unistd.h>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

namespace dsfrob {

using Root = std::vector<int>;

inline void check_type(char type, int rank, int bound)
{
	bool ok = false;
	switch (type)
	{
	case 'A': ok = rank >= 1; break;
	case 'B': ok = rank >= 2; break;
	case 'C': ok = rank >= 2; break;
	case 'D': ok = rank >= 4; break;
	case 'E': ok = rank >= 6 && rank <= 8; break;
	case 'F': ok = rank == 4; break;
	case 'G': ok = rank == 2; break;
	default: break;
	}
	if (!ok)
		throw UnsupportedType(std::string(1, type) + std::to_string(rank) + " is not a simple type");
	if (rank > bound)
		throw RankBound("rank " + std::to_string(rank) + " exceeds bound " + std::to_string(bound));
}

struct RootSystem
{
	char type = 'A';
	int rank = 0;
	std::vector<std::vector<long>> B; // (alpha_i, alpha_j)
	std::vector<Root> pos;            // positive roots, by height
	std::map<Root, int> index;        // root -> position in pos

	long ip(const Root &a, const Root &b) const
	{
		long s = 0;
		for (int i = 0; i < rank; ++i)
			if (a[i])
				for (int j = 0; j < rank; ++j)
					s += long(a[i]) * b[j] * B[i][j];
		return s;
	}
	// <a, alpha_i^vee>
	int pairing(const Root &a, int i) const
	{
		long s = 0;
		for (int j = 0; j < rank; ++j)
			s += a[j] * B[j][i];
		return int(2 * s / B[i][i]);
	}
	static int height(const Root &a)
	{
		int h = 0;
		for (int x : a)
			h += x;
		return h;
	}
	bool is_root(const Root &a) const
	{
		Root b = a;
		if (height(a) < 0)
			for (auto &x : b)
				x = -x;
		return index.count(b) > 0;
	}
	Root simple(int i) const
	{
		Root a(rank, 0);
		a[i] = 1;
		return a;
	}
};

inline Root operator+(Root a, const Root &b)
{
	for (size_t i = 0; i < a.size(); ++i)
		a[i] += b[i];
	return a;
}
inline Root operator-(Root a, const Root &b)
{
	for (size_t i = 0; i < a.size(); ++i)
		a[i] -= b[i];
	return a;
}
inline Root operator-(Root a)
{
	for (auto &x : a)
		x = -x;
	return a;
}

inline RootSystem make_root_system(char type, int r)
{
	RootSystem rs;
	rs.type = type;
	rs.rank = r;
	auto &B = rs.B;
	B.assign(r, std::vector<long>(r, 0));
	auto edge = [&](int i, int j, long v) { B[i][j] = B[j][i] = v; };
	switch (type)
	{
	case 'A':
		for (int i = 0; i < r; ++i)
			B[i][i] = 2;
		for (int i = 0; i + 1 < r; ++i)
			edge(i, i + 1, -1);
		break;
	case 'B':
		for (int i = 0; i < r; ++i)
			B[i][i] = i + 1 < r ? 2 : 1;
		for (int i = 0; i + 1 < r; ++i)
			edge(i, i + 1, -1);
		break;
	case 'C':
		for (int i = 0; i < r; ++i)
			B[i][i] = i + 1 < r ? 2 : 4;
		for (int i = 0; i + 2 < r; ++i)
			edge(i, i + 1, -1);
		edge(r - 2, r - 1, -2);
		break;
	case 'D':
		for (int i = 0; i < r; ++i)
			B[i][i] = 2;
		for (int i = 0; i + 2 < r; ++i)
			edge(i, i + 1, -1);
		edge(r - 3, r - 1, -1);
		break;
	case 'E':
		for (int i = 0; i < r; ++i)
			B[i][i] = 2;
		edge(0, 2, -1);
		edge(1, 3, -1);
		for (int i = 2; i + 1 < r; ++i)
			edge(i, i + 1, -1);
		break;
	case 'F':
		B[0][0] = B[1][1] = 4;
		B[2][2] = B[3][3] = 2;
		edge(0, 1, -2);
		edge(1, 2, -2);
		edge(2, 3, -1);
		break;
	case 'G':
		B[0][0] = 2;
		B[1][1] = 6;
		edge(0, 1, -3);
		break;
	default: throw UnsupportedType(std::string(1, type));
	}

	// grow positive roots by height using root strings
	std::vector<std::vector<Root>> layers(1);
	for (int i = 0; i < r; ++i)
		layers[0].push_back(rs.simple(i));
	std::map<Root, int> known;
	for (auto &a : layers[0])
		known[a] = 1;
	while (!layers.back().empty())
	{
		std::vector<Root> next;
		for (auto &b : layers.back())
			for (int i = 0; i < r; ++i)
			{
				Root si = rs.simple(i);
				if (b == si)
					continue;
				int p = 0;
				for (Root c = b - si; known.count(c); c = c - si)
					++p;
				int q = p - rs.pairing(b, i);
				Root c = b + si;
				if (q > 0 && !known.count(c))
				{
					known[c] = 1;
					next.push_back(c);
				}
			}
		std::sort(next.begin(), next.end(), std::greater<Root>());
		layers.push_back(next);
	}
	for (auto &l : layers)
		for (auto &a : l)
		{
			rs.index[a] = int(rs.pos.size());
			rs.pos.push_back(a);
		}
	return rs;
}

// exponents from the height partition: m_k = #roots(height k) - #roots(height k+1)
inline std::vector<int> exponents_from_roots(const RootSystem &rs)
{
	std::map<int, int> cnt;
	int maxh = 0;
	for (auto &a : rs.pos)
	{
		int h = RootSystem::height(a);
		cnt[h]++;
		maxh = std::max(maxh, h);
	}
	std::vector<int> ex;
	for (int k = 1; k <= maxh; ++k)
		for (int m = cnt[k] - cnt[k + 1]; m > 0; --m)
			ex.push_back(k);
	return ex;
}

// structure constants N_{a,b} via extraspecial pairs with positive sign
class ChevalleySigns
{
  public:
	explicit ChevalleySigns(const RootSystem &rs) : rs_(rs)
	{
		for (auto &xi : rs.pos)
		{
			if (RootSystem::height(xi) == 1)
				continue;
			int e1 = -1;
			for (size_t a = 0; a < rs.pos.size(); ++a)
			{
				Root d = xi - rs.pos[a];
				if (RootSystem::height(d) > 0 && rs.index.count(d))
				{
					e1 = int(a);
					break;
				}
			}
			const Root a1 = rs.pos[e1], b1 = xi - a1;
			Q n1 = Q(p_of(a1, b1) + 1);
			set(a1, b1, n1);
			for (size_t a = e1 + 1; a < rs.pos.size(); ++a)
			{
				const Root &al = rs.pos[a];
				Root be = xi - al;
				if (RootSystem::height(be) <= 0 || !rs.index.count(be))
					continue;
				if (rs.index.at(be) < int(a))
					continue; // handled as the transpose
				Q s = 0;
				Root t1 = be - a1;
				if (rs.is_root(t1))
					s += N(be, -a1) * N(al, -b1) / Q(rs.ip(t1, t1));
				Root t2 = al - a1;
				if (rs.is_root(t2))
					s += N(-a1, al) * N(be, -b1) / Q(rs.ip(t2, t2));
				set(al, be, Q(rs.ip(xi, xi)) / n1 * s);
			}
		}
	}

	// any a, b with a+b a root
	Q N(const Root &a, const Root &b) const
	{
		int ha = RootSystem::height(a), hb = RootSystem::height(b);
		if (ha > 0 && hb > 0)
		{
			auto it = tab_.find({a, b});
			if (it == tab_.end())
				throw SolveFailure("missing N for positive pair");
			return it->second;
		}
		if (ha < 0 && hb < 0)
			return -N(-a, -b);
		if (ha < 0)
			return -N(b, a);
		Root g = -(a + b);
		if (RootSystem::height(a + b) > 0)
			return Q(rs_.ip(g, g)) / Q(rs_.ip(a, a)) * -N(-b, -g);
		return Q(rs_.ip(g, g)) / Q(rs_.ip(b, b)) * N(g, a);
	}

	int p_of(const Root &a, const Root &b) const
	{
		int p = 0;
		for (Root c = b - a; rs_.is_root(c); c = c - a)
			++p;
		return p;
	}

  private:
	void set(const Root &a, const Root &b, const Q &v)
	{
		tab_[{a, b}] = v;
		tab_[{b, a}] = -v;
	}
	const RootSystem &rs_;
	std::map<std::pair<Root, Root>, Q> tab_;
};

struct Triple
{
	Vec e, h, f;
};

struct LieAlgebra
{
	char type = 'A';
	int rank = 0;
	std::string backend = "chevalley";
	int n = 0;
	RootSystem rs;
	std::vector<int> deg; // ad h eigenvalue of each basis vector (h = principal)
	std::vector<std::string> names;
	// sc[I*n+J] = list of (K, c^K_{IJ})
	std::vector<std::vector<std::pair<int, Q>>> sc;
	Mat form;
	std::vector<std::vector<std::pair<int, Q>>> form_rows; // sparse view of form
	std::vector<int> exponents;
	int kappa = 0;
	Triple triple;
	Mat change_of_basis; // to the ad h eigenbasis (identity for both backends)

	int P() const { return int(rs.pos.size()); }
	int idx_neg(int p) const { return P() - 1 - p; }
	int idx_h(int i) const { return P() + i; }
	int idx_pos(int p) const { return P() + rank + p; }
	int idx_root(const Root &a) const
	{
		if (RootSystem::height(a) > 0)
			return idx_pos(rs.index.at(a));
		return idx_neg(rs.index.at(-a));
	}

	Vec unit(int I) const
	{
		Vec v(n, Q(0));
		v[I] = 1;
		return v;
	}

	Vec bracket(const Vec &x, const Vec &y) const
	{
		Vec r(n, Q(0));
		for (int I = 0; I < n; ++I)
		{
			if (x[I] == 0)
				continue;
			for (int J = 0; J < n; ++J)
			{
				if (y[J] == 0)
					continue;
				Q xy = x[I] * y[J];
				for (auto &[K, c] : sc[I * n + J])
					r[K] += c * xy;
			}
		}
		return r;
	}

	template <class V> std::vector<Poly<V>> bracket(const std::vector<Poly<V>> &x, const std::vector<Poly<V>> &y) const
	{
		std::vector<Poly<V>> r(n);
		for (int I = 0; I < n; ++I)
		{
			if (x[I].is_zero())
				continue;
			for (int J = 0; J < n; ++J)
			{
				if (y[J].is_zero() || sc[I * n + J].empty())
					continue;
				Poly<V> xy = x[I] * y[J];
				for (auto &[K, c] : sc[I * n + J])
					r[K] += xy * c;
			}
		}
		return r;
	}

	Q pair(const Vec &x, const Vec &y) const
	{
		Q s = 0;
		for (int I = 0; I < n; ++I)
		{
			if (x[I] == 0)
				continue;
			for (auto &[J, b] : form_rows[I])
				if (y[J] != 0)
					s += x[I] * b * y[J];
		}
		return s;
	}

	template <class V> Poly<V> pair(const std::vector<Poly<V>> &x, const Vec &y) const
	{
		Poly<V> s;
		for (int I = 0; I < n; ++I)
		{
			if (x[I].is_zero())
				continue;
			Q w = 0;
			for (auto &[J, b] : form_rows[I])
				w += b * y[J];
			if (w != 0)
				s += x[I] * w;
		}
		return s;
	}

	// matrix of ad x acting on coordinate columns
	Mat ad(const Vec &x) const
	{
		Mat m = zeros(n, n);
		for (int J = 0; J < n; ++J)
		{
			Vec c = bracket(x, unit(J));
			for (int K = 0; K < n; ++K)
				m[K][J] = c[K];
		}
		return m;
	}

	// all nonzero constants (I, J, K, c), sorted
	std::vector<std::tuple<int, int, int, Q>> constants() const
	{
		std::vector<std::tuple<int, int, int, Q>> out;
		for (int I = 0; I < n; ++I)
			for (int J = 0; J < n; ++J)
				for (auto &[K, c] : sc[I * n + J])
					out.emplace_back(I, J, K, c);
		std::sort(out.begin(), out.end(), [](auto &a, auto &b) {
			return std::tie(std::get<0>(a), std::get<1>(a), std::get<2>(a)) <
			       std::tie(std::get<0>(b), std::get<1>(b), std::get<2>(b));
		});
		return out;
	}

	std::string label() const { return std::string(1, type) + std::to_string(rank); }
};

namespace detail {

inline void add_sc(LieAlgebra &g, int I, int J, int K, const Q &c)
{
	if (c == 0)
		return;
	auto &v = g.sc[I * g.n + J];
	for (auto &kc : v)
		if (kc.first == K)
		{
			kc.second += c;
			return;
		}
	v.emplace_back(K, c);
}

inline void setup_basis(LieAlgebra &g)
{
	int P = g.P(), r = g.rank;
	g.n = 2 * P + r;
	g.names.assign(g.n, "");
	g.deg.assign(g.n, 0);
	for (int p = 0; p < P; ++p)
	{
		std::string coords;
		for (int x : g.rs.pos[p])
			coords += std::to_string(x);
		g.names[g.idx_neg(p)] = "f" + coords;
		g.names[g.idx_pos(p)] = "e" + coords;
		g.deg[g.idx_neg(p)] = -2 * RootSystem::height(g.rs.pos[p]);
		g.deg[g.idx_pos(p)] = 2 * RootSystem::height(g.rs.pos[p]);
	}
	for (int i = 0; i < r; ++i)
		g.names[g.idx_h(i)] = "h" + std::to_string(i + 1);
	g.sc.assign(size_t(g.n) * g.n, {});
}

// coroot of a in the basis of simple coroots
inline Vec coroot(const RootSystem &rs, const Root &a)
{
	Vec c(rs.rank, Q(0));
	Q aa = Q(rs.ip(a, a));
	for (int i = 0; i < rs.rank; ++i)
		c[i] = Q(a[i]) * Q(rs.B[i][i]) / aa;
	return c;
}

inline void finish(LieAlgebra &g)
{
	const auto &rs = g.rs;
	int r = g.rank, n = g.n;
	// unnormalized invariant form
	Mat B = zeros(n, n);
	for (int i = 0; i < r; ++i)
		for (int j = 0; j < r; ++j)
			B[g.idx_h(i)][g.idx_h(j)] = Q(4 * rs.B[i][j]) / Q(rs.B[i][i] * rs.B[j][j]);
	for (int p = 0; p < g.P(); ++p)
	{
		Q v = Q(2) / Q(rs.ip(rs.pos[p], rs.pos[p]));
		B[g.idx_pos(p)][g.idx_neg(p)] = v;
		B[g.idx_neg(p)][g.idx_pos(p)] = v;
	}

	// principal triple: h = sum c_i h_i with alpha_j(h) = 2
	Mat M = zeros(r, r);
	for (int j = 0; j < r; ++j)
		for (int i = 0; i < r; ++i)
			M[j][i] = rs.pairing(rs.simple(j), i);
	auto c = solve(M, Vec(r, Q(2)));
	if (!c || rank(M) < size_t(r))
		throw SolveFailure("singular system for the principal h");
	Triple t{Vec(n, Q(0)), Vec(n, Q(0)), Vec(n, Q(0))};
	for (int i = 0; i < r; ++i)
	{
		t.e[g.idx_pos(i)] = 1;
		t.h[g.idx_h(i)] = (*c)[i];
		t.f[g.idx_neg(i)] = (*c)[i];
	}
	g.triple = t;

	Q ef = 0;
	for (int I = 0; I < n; ++I)
		for (int J = 0; J < n; ++J)
			ef += t.e[I] * B[I][J] * t.f[J];
	for (auto &row : B)
		for (auto &x : row)
			x /= ef;
	g.form = B;
	g.form_rows.assign(n, {});
	for (int I = 0; I < n; ++I)
		for (int J = 0; J < n; ++J)
			if (B[I][J] != 0)
				g.form_rows[I].emplace_back(J, B[I][J]);

	g.exponents = exponents_from_roots(rs);
	g.kappa = g.exponents.back();
	g.change_of_basis = identity(n);
}

} // namespace detail

inline LieAlgebra build_chevalley(char type, int rank)
{
	LieAlgebra g;
	g.type = type;
	g.rank = rank;
	g.backend = "chevalley";
	g.rs = make_root_system(type, rank);
	detail::setup_basis(g);
	const auto &rs = g.rs;
	ChevalleySigns ns(rs);
	std::vector<Root> roots;
	for (auto &a : rs.pos)
	{
		roots.push_back(a);
		roots.push_back(-a);
	}
	for (auto &a : roots)
	{
		int Ia = g.idx_root(a);
		for (int i = 0; i < rank; ++i)
		{
			Q v = rs.pairing(a, i);
			detail::add_sc(g, g.idx_h(i), Ia, Ia, v);
			detail::add_sc(g, Ia, g.idx_h(i), Ia, -v);
		}
		for (auto &b : roots)
		{
			int Ib = g.idx_root(b);
			Root s = a + b;
			if (RootSystem::height(s) == 0 && s == Root(rank, 0))
			{
				Vec cr = detail::coroot(rs, a);
				for (int i = 0; i < rank; ++i)
					detail::add_sc(g, Ia, Ib, g.idx_h(i), cr[i]);
			}
			else if (rs.is_root(s))
				detail::add_sc(g, Ia, Ib, g.idx_root(s), ns.N(a, b));
		}
	}
	detail::finish(g);
	return g;
}

// matrices of a faithful representation, one Chevalley generator pair per simple root
namespace detail {

using MatQ = Mat;

inline MatQ mat_e(int N, int i, int j)
{
	MatQ m = zeros(N, N);
	m[i][j] = 1;
	return m;
}
inline MatQ mcomm(const MatQ &a, const MatQ &b)
{
	MatQ ab = mul(a, b), ba = mul(b, a);
	for (size_t i = 0; i < ab.size(); ++i)
		for (size_t j = 0; j < ab.size(); ++j)
			ab[i][j] -= ba[i][j];
	return ab;
}
inline MatQ mscale(MatQ a, const Q &c)
{
	for (auto &row : a)
		for (auto &x : row)
			x *= c;
	return a;
}
inline MatQ madd(MatQ a, const MatQ &b)
{
	for (size_t i = 0; i < a.size(); ++i)
		for (size_t j = 0; j < a.size(); ++j)
			a[i][j] += b[i][j];
	return a;
}
inline bool mzero(const MatQ &a)
{
	for (auto &row : a)
		if (!is_zero(row))
			return false;
	return true;
}

// projection onto the algebra preserving the form J: X - J^{-1} X^T J
inline MatQ classical_proj(const MatQ &X, const MatQ &J, const MatQ &Jinv)
{
	MatQ t = mul(Jinv, mul(transpose(X), J));
	MatQ r = X;
	for (size_t i = 0; i < r.size(); ++i)
		for (size_t j = 0; j < r.size(); ++j)
			r[i][j] -= t[i][j];
	// keep entries small
	Q mx = 0;
	for (auto &row : r)
		for (auto &x : row)
			if (abs(x) > mx)
				mx = abs(x);
	return mscale(r, 1 / mx);
}

inline void generators(char type, int r, std::vector<MatQ> &E, std::vector<MatQ> &F)
{
	E.clear(), F.clear();
	if (type == 'A')
	{
		int N = r + 1;
		for (int i = 0; i < r; ++i)
		{
			E.push_back(mat_e(N, i, i + 1));
			F.push_back(mat_e(N, i + 1, i));
		}
		return;
	}
	if (type == 'G')
	{
		int N = 7;
		MatQ E1 = madd(madd(mat_e(N, 0, 1), mat_e(N, 5, 6)), madd(mat_e(N, 3, 4), mscale(mat_e(N, 2, 3), 2)));
		MatQ F1 = madd(madd(mat_e(N, 1, 0), mat_e(N, 6, 5)), madd(mscale(mat_e(N, 4, 3), 2), mat_e(N, 3, 2)));
		MatQ E2 = madd(mat_e(N, 1, 2), mscale(mat_e(N, 4, 5), -1));
		MatQ F2 = madd(mat_e(N, 2, 1), mscale(mat_e(N, 5, 4), -1));
		E = {E1, E2};
		F = {F1, F2};
		return;
	}
	int N = type == 'B' ? 2 * r + 1 : 2 * r;
	MatQ J = zeros(N, N);
	for (int i = 0; i < N; ++i)
		J[i][N - 1 - i] = (type == 'C' && i >= r) ? -1 : 1;
	MatQ Jinv = *inverse(J);
	auto pr = [&](int i, int j) { return classical_proj(mat_e(N, i, j), J, Jinv); };
	std::vector<std::pair<int, int>> pos;
	for (int i = 0; i + 1 < r; ++i)
		pos.emplace_back(i, i + 1);
	if (type == 'B')
		pos.emplace_back(r - 1, r);
	else if (type == 'C')
		pos.emplace_back(r - 1, r);
	else if (type == 'D')
		pos.emplace_back(r - 2, r);
	else
		throw UnsupportedType(std::string(1, type) + " has no matrix backend");
	for (auto [i, j] : pos)
	{
		E.push_back(pr(i, j));
		F.push_back(pr(j, i));
	}
}

} // namespace detail

inline LieAlgebra build_matrix(char type, int rank)
{
	using namespace detail;
	if (type == 'E' || type == 'F')
		throw UnsupportedType(std::string(1, type) + " has no matrix backend");
	LieAlgebra g;
	g.type = type;
	g.rank = rank;
	g.backend = "matrix";
	g.rs = make_root_system(type, rank);
	setup_basis(g);
	const auto &rs = g.rs;
	std::vector<MatQ> E, F;
	generators(type, rank, E, F);
	// normalize F_i so that [[E_i,F_i],E_i] = 2 E_i
	for (int i = 0; i < rank; ++i)
	{
		MatQ h = mcomm(E[i], F[i]), he = mcomm(h, E[i]);
		Q lam = 0;
		for (size_t a = 0; a < he.size() && lam == 0; ++a)
			for (size_t b = 0; b < he.size(); ++b)
				if (E[i][a][b] != 0)
				{
					lam = he[a][b] / E[i][a][b];
					break;
				}
		if (lam == 0)
			throw SolveFailure("degenerate generator pair");
		F[i] = mscale(F[i], Q(2) / lam);
	}
	std::vector<MatQ> basis(g.n);
	for (int i = 0; i < rank; ++i)
	{
		basis[g.idx_pos(i)] = E[i];
		basis[g.idx_neg(i)] = F[i];
		basis[g.idx_h(i)] = mcomm(E[i], F[i]);
	}
	// Chevalley relations
	for (int i = 0; i < rank; ++i)
		for (int j = 0; j < rank; ++j)
		{
			MatQ c = mcomm(E[i], F[j]);
			if (i != j && !mzero(c))
				throw SolveFailure("generators violate [e_i,f_j] = 0");
			MatQ he = mcomm(basis[g.idx_h(i)], E[j]);
			if (he != mscale(E[j], Q(rs.pairing(rs.simple(j), i))))
				throw SolveFailure("generators violate the Cartan relations");
		}
	ChevalleySigns ns(rs);
	for (size_t p = rank; p < rs.pos.size(); ++p)
	{
		const Root &xi = rs.pos[p];
		int e1 = -1;
		for (size_t a = 0; a < rs.pos.size(); ++a)
		{
			Root d = xi - rs.pos[a];
			if (RootSystem::height(d) > 0 && rs.index.count(d))
			{
				e1 = int(a);
				break;
			}
		}
		Root a1 = rs.pos[e1], b1 = xi - a1;
		Q c = Q(ns.p_of(a1, b1) + 1);
		basis[g.idx_pos(p)] = mscale(mcomm(basis[g.idx_root(a1)], basis[g.idx_root(b1)]), 1 / c);
		basis[g.idx_neg(p)] = mscale(mcomm(basis[g.idx_root(-a1)], basis[g.idx_root(-b1)]), -1 / c);
	}
	// coordinates through a set of pivot entries
	int N = int(E[0].size());
	Mat rows = zeros(g.n, N * N);
	for (int I = 0; I < g.n; ++I)
		for (int a = 0; a < N; ++a)
			for (int b = 0; b < N; ++b)
				rows[I][a * N + b] = basis[I][a][b];
	Mat red = rows;
	auto piv = rref(red);
	if (int(piv.size()) != g.n)
		throw SolveFailure("matrix basis is not independent");
	Mat S = zeros(g.n, g.n);
	for (int k = 0; k < g.n; ++k)
		for (int I = 0; I < g.n; ++I)
			S[k][I] = rows[I][piv[k]];
	Mat Sinv = *inverse(S);
	for (int I = 0; I < g.n; ++I)
		for (int J = 0; J < g.n; ++J)
		{
			MatQ c = mcomm(basis[I], basis[J]);
			if (mzero(c))
				continue;
			Vec v(g.n);
			for (int k = 0; k < g.n; ++k)
				v[k] = c[piv[k] / N][piv[k] % N];
			Vec x = mul(Sinv, v);
			MatQ back = zeros(N, N);
			for (int K = 0; K < g.n; ++K)
				if (x[K] != 0)
					back = madd(back, mscale(basis[K], x[K]));
			if (back != c)
				throw SolveFailure("bracket leaves the matrix span");
			for (int K = 0; K < g.n; ++K)
				add_sc(g, I, J, K, x[K]);
		}
	finish(g);
	// trace form replaces the root-theoretic one, rescaled to <e,f> = 1
	Mat T = zeros(g.n, g.n);
	for (int I = 0; I < g.n; ++I)
		for (int J = 0; J < g.n; ++J)
		{
			MatQ p = mul(basis[I], basis[J]);
			for (int a = 0; a < N; ++a)
				T[I][J] += p[a][a];
		}
	Q ef = 0;
	for (int I = 0; I < g.n; ++I)
		for (int J = 0; J < g.n; ++J)
			ef += g.triple.e[I] * T[I][J] * g.triple.f[J];
	for (auto &row : T)
		for (auto &x : row)
			x /= ef;
	g.form = T;
	g.form_rows.assign(g.n, {});
	for (int I = 0; I < g.n; ++I)
		for (int J = 0; J < g.n; ++J)
			if (T[I][J] != 0)
				g.form_rows[I].emplace_back(J, T[I][J]);
	return g;
}

// ---- structure constant cache ----

inline const char *kCacheFormat = "dsfrob-sc-v1";

inline std::string cache_key(char type, int rank, const std::string &backend)
{
	return std::string(kCacheFormat) + "-" + std::string(1, type) + std::to_string(rank) + "-" + backend;
}

inline std::string fnv1a(const std::string &s)
{
	unsigned long long h = 1469598103934665603ull;
	for (unsigned char c : s)
	{
		h ^= c;
		h *= 1099511628211ull;
	}
	std::ostringstream os;
	os << std::hex << h;
	return os.str();
}

inline std::string serialize_constants(const LieAlgebra &g)
{
	std::ostringstream body;
	for (auto &[I, J, K, c] : g.constants())
		body << I << " " << J << " " << K << " " << q_str(c) << "\n";
	return "# " + cache_key(g.type, g.rank, g.backend) + "\n" + body.str() + "# fnv1a " + fnv1a(body.str()) + "\n";
}

// false when the text is not an intact table for this key
inline bool parse_constants(const std::string &text, const std::string &key,
                            std::vector<std::tuple<int, int, int, Q>> &out)
{
	std::istringstream is(text);
	std::string line, body;
	if (!std::getline(is, line) || line != "# " + key)
		return false;
	out.clear();
	bool sealed = false;
	while (std::getline(is, line))
	{
		if (line.rfind("# fnv1a ", 0) == 0)
		{
			sealed = line.substr(8) == fnv1a(body);
			break;
		}
		body += line + "\n";
		std::istringstream ls(line);
		int I, J, K;
		std::string c;
		if (!(ls >> I >> J >> K >> c))
			return false;
		try
		{
			out.emplace_back(I, J, K, parse_q(c));
		}
		catch (...)
		{
			return false;
		}
	}
	return sealed && std::is_sorted(out.begin(), out.end(), [](auto &a, auto &b) {
		return std::tie(std::get<0>(a), std::get<1>(a), std::get<2>(a)) <
		       std::tie(std::get<0>(b), std::get<1>(b), std::get<2>(b));
	});
}

inline LieAlgebra from_constants(char type, int rank, const std::string &backend,
                                 const std::vector<std::tuple<int, int, int, Q>> &tab)
{
	LieAlgebra g;
	g.type = type;
	g.rank = rank;
	g.backend = backend;
	g.rs = make_root_system(type, rank);
	detail::setup_basis(g);
	for (auto &[I, J, K, c] : tab)
	{
		if (I < 0 || J < 0 || K < 0 || I >= g.n || J >= g.n || K >= g.n)
			throw FormatError("structure constant index out of range");
		detail::add_sc(g, I, J, K, c);
	}
	// both backends share the same normalized invariant form
	detail::finish(g);
	return g;
}

inline std::string default_cache_dir()
{
	if (const char *d = std::getenv("DSFROB_CACHE_DIR"))
		return d; // empty disables caching
	if (const char *x = std::getenv("XDG_CACHE_HOME"); x && *x)
		return std::string(x) + "/dsfrob";
	if (const char *h = std::getenv("HOME"); h && *h)
		return std::string(h) + "/.cache/dsfrob";
	return "";
}

inline LieAlgebra build_lie_algebra(char type, int rank, const std::string &backend = "chevalley",
                                    int bound = 4, const std::string &cache_dir = "")
{
	check_type(type, rank, bound);
	if (backend != "chevalley" && backend != "matrix")
		throw UnsupportedType("backend " + backend);
	if (backend == "matrix" && (type == 'E' || type == 'F'))
		throw UnsupportedType(std::string(1, type) + " has no matrix backend");
	std::string key = cache_key(type, rank, backend);
	std::string path = cache_dir.empty() ? "" : cache_dir + "/" + key + ".txt";
	if (!path.empty())
	{
		std::ifstream in(path);
		std::vector<std::tuple<int, int, int, Q>> tab;
		if (in)
		{
			std::stringstream ss;
			ss << in.rdbuf();
			if (parse_constants(ss.str(), key, tab))
			{
				try
				{
					return from_constants(type, rank, backend, tab);
				}
				catch (const Error &)
				{
				}
			}
		}
	}
	LieAlgebra g = backend == "chevalley" ? build_chevalley(type, rank) : build_matrix(type, rank);
	if (!path.empty())
	{
		std::error_code ec;
		std::filesystem::create_directories(cache_dir, ec);
		std::string tmp = path + ".tmp" + std::to_string(::getpid());
		{
			std::ofstream out(tmp);
			if (out)
				out << serialize_constants(g);
		}
		std::filesystem::rename(tmp, path, ec);
		if (ec)
			std::filesystem::remove(tmp, ec);
	}
	return g;
}

} // namespace dsfrob
