#pragma once

#include "cyclic.hpp"
#include "diffpoly.hpp"

#include <random>

namespace dsfrob {

using PVec = std::vector<DiffPolynomial>;

struct GaugeFixResult
{
	std::vector<DiffPolynomial> z;                 // z^i
	std::map<std::pair<int, int>, DiffPolynomial> s; // (i, J) -> s_i^J, coefficient of X^i_{-J}
};

inline PVec to_pvec(const Vec &v)
{
	PVec p(v.size());
	for (size_t K = 0; K < v.size(); ++K)
		p[K] = DiffPolynomial(v[K]);
	return p;
}

inline void axpy(PVec &y, const DiffPolynomial &a, const Vec &x)
{
	if (a.is_zero())
		return;
	for (size_t K = 0; K < x.size(); ++K)
		if (x[K] != 0)
			y[K] += a * x[K];
}

inline bool pvec_zero(const PVec &v)
{
	for (auto &p : v)
		if (!p.is_zero())
			return false;
	return true;
}

inline DiffPolynomial coord(const PVec &m, const NormalizedBasis &nb, int i, int I)
{
	DiffPolynomial r;
	const Vec &d = nb.d(i, I);
	for (size_t K = 0; K < m.size(); ++K)
		if (d[K] != 0 && !m[K].is_zero())
			r += m[K] * d[K];
	return r;
}

// q(x) = sum q_i^I X^i_{-I}, I = 0..eta_i
inline PVec generic_q(const LieAlgebra &g, const NormalizedBasis &nb)
{
	PVec q(g.n);
	for (int i = 0; i < nb.r; ++i)
		for (int I = 0; I <= nb.eta[i]; ++I)
			axpy(q, jet(i, I), nb.x(i, -I));
	return q;
}

// exp(ad s)(b) - sum_{k>=1} (ad s)^{k-1}(s_x)/k!, s nilpotent; D is d/dx on coefficients
template <class P, class D>
std::vector<P> gauge_action_with(const LieAlgebra &g, const std::vector<P> &s, const std::vector<P> &b, D deriv)
{
	auto zero = [](const std::vector<P> &v) {
		for (auto &p : v)
			if (!p.is_zero())
				return false;
		return true;
	};
	std::vector<P> out = b, term = b;
	for (int k = 1;; ++k)
	{
		term = g.bracket(s, term);
		if (zero(term))
			break;
		for (auto &p : term)
			p *= Q(1) / Q(k);
		for (int K = 0; K < g.n; ++K)
			out[K] += term[K];
	}
	std::vector<P> sx(g.n);
	for (int K = 0; K < g.n; ++K)
		sx[K] = deriv(s[K]);
	term = sx;
	Q fact = 1;
	for (int k = 1; !zero(term); ++k)
	{
		fact *= k;
		for (int K = 0; K < g.n; ++K)
			if (!term[K].is_zero())
				out[K] -= term[K] * (1 / fact);
		term = g.bracket(s, term);
	}
	return out;
}

inline PVec gauge_action(const LieAlgebra &g, const PVec &s, const PVec &b)
{
	return gauge_action_with(g, s, b, [](const DiffPolynomial &p) { return total_x_derivative(p); });
}

inline GaugeFixResult gauge_fix(const LieAlgebra &g, const NormalizedBasis &nb)
{
	GaugeFixResult res;
	res.z.assign(nb.r, DiffPolynomial());
	PVec b = generic_q(g, nb);
	for (int K = 0; K < g.n; ++K)
		b[K] += DiffPolynomial(g.triple.e[K]);
	PVec s(g.n);
	for (int J = 0; J <= nb.kappa; ++J)
	{
		PVec W = gauge_action(g, s, b);
		for (int i = 0; i < nb.r; ++i)
		{
			if (nb.eta[i] < J)
				continue;
			DiffPolynomial R = coord(W, nb, i, -J);
			if (nb.eta[i] == J)
				res.z[i] = R;
			else
			{
				DiffPolynomial sij = R * (Q(1) / Q(nb.eta[i] - J));
				res.s[{i, J + 1}] = sij;
				axpy(s, sij, nb.x(i, -(J + 1)));
			}
		}
	}
	// the transformed connection must be e + sum z^i X^i_{-eta_i}
	PVec W = gauge_action(g, s, b);
	PVec target = to_pvec(g.triple.e);
	for (int i = 0; i < nb.r; ++i)
		axpy(target, res.z[i], nb.x(i, -nb.eta[i]));
	for (int K = 0; K < g.n; ++K)
		if (W[K] != target[K])
			throw GradedSolveFailure("gauge transformed connection leaves the slice");
	return res;
}


// polynomials in x, variable 0
using XPoly = Poly<int>;

// one randomized check: q(x) and s(x) polynomial in x, z evaluated at x0 before and after the gauge change
template <class Rng>
bool gauge_invariance_trial(const LieAlgebra &g, const NormalizedBasis &nb, const GaugeFixResult &gf, Rng &rng)
{
	std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
	auto rq = [&]() -> Q { return Q(num(rng)) / Q(den(rng)); };
	auto rpoly = [&](int deg) {
		XPoly p;
		for (int k = 0; k <= deg; ++k)
			p += (k ? XPoly::var(0, k) : XPoly(1)) * rq();
		return p;
	};
	auto dx1 = [](const XPoly &p) { return p.diff(0); };
	Q x0 = rq();

	std::vector<XPoly> b(g.n);
	for (int K = 0; K < g.n; ++K)
		b[K] = XPoly(g.triple.e[K]);
	for (int i = 0; i < nb.r; ++i)
		for (int I = 0; I <= nb.eta[i]; ++I)
		{
			XPoly c = rpoly(2);
			const Vec &x = nb.x(i, -I);
			for (int K = 0; K < g.n; ++K)
				if (x[K] != 0)
					b[K] += c * x[K];
		}
	std::vector<XPoly> s(g.n);
	for (int i = 0; i < nb.r; ++i)
		for (int I = 1; I <= nb.eta[i]; ++I)
		{
			XPoly c = rpoly(2);
			const Vec &x = nb.x(i, -I);
			for (int K = 0; K < g.n; ++K)
				if (x[K] != 0)
					s[K] += c * x[K];
		}
	std::vector<XPoly> b2 = gauge_action_with(g, s, b, dx1);

	// the transformed connection must stay in e + b_-
	for (int K = 0; K < g.n; ++K)
	{
		XPoly rest = b2[K] - XPoly(g.triple.e[K]);
		if (g.deg[K] > 0 && !rest.is_zero())
			return false;
	}
	auto coords = [&](const std::vector<XPoly> &v, int i, int I) {
		XPoly r;
		const Vec &d = nb.d(i, I);
		for (int K = 0; K < g.n; ++K)
			if (d[K] != 0 && !v[K].is_zero())
				r += v[K] * d[K];
		return r;
	};
	auto evalz = [&](const std::vector<XPoly> &v, int i) {
		std::map<Jet, Q> cache;
		return gf.z[i].eval([&](const Jet &j) {
			auto it = cache.find(j);
			if (it != cache.end())
				return it->second;
			XPoly c = coords(v, j.i, -j.I);
			for (int m = 0; m < j.m; ++m)
				c = c.diff(0);
			Q val = c.eval([&](int) { return x0; });
			cache[j] = val;
			return val;
		});
	};
	for (int i = 0; i < nb.r; ++i)
		if (evalz(b, i) != evalz(b2, i))
			return false;
	return true;
}

inline int gauge_invariance_passes(const LieAlgebra &g, const NormalizedBasis &nb, const GaugeFixResult &gf,
                                   int trials, unsigned seed)
{
	std::mt19937 rng(seed);
	int ok = 0;
	for (int t = 0; t < trials; ++t)
		ok += gauge_invariance_trial(g, nb, gf, rng);
	return ok;
}

} // namespace dsfrob
