#pragma once

#include "poly.hpp"

#include <compare>
#include <functional>
#include <map>
#include <string>

namespace dsfrob {

// d_x^m q_i^I, module i is 0-based internally
struct Jet
{
	int i = 0, I = 0, m = 0;
	auto operator<=>(const Jet &) const = default;
};

inline int jet_degree(const Jet &j) { return 2 * j.I + 2 * j.m + 2; }

inline std::string jet_name(const Jet &j)
{
	std::string s = "q" + std::to_string(j.i + 1) + "_" + std::to_string(j.I);
	if (j.m)
		s += "_" + std::string(j.m, 'x');
	return s;
}

using DiffPolynomial = Poly<Jet>;

inline DiffPolynomial jet(int i, int I, int m = 0) { return DiffPolynomial::var(Jet{i, I, m}); }

inline std::string str(const DiffPolynomial &p) { return p.str(jet_name); }

inline DiffPolynomial total_x_derivative(const DiffPolynomial &p)
{
	DiffPolynomial r;
	for (auto &[m, c] : p.terms())
		for (size_t k = 0; k < m.size(); ++k)
		{
			typename DiffPolynomial::Mono rest = m;
			int e = rest[k].second;
			Jet v = rest[k].first;
			if (e == 1)
				rest.erase(rest.begin() + k);
			else
				rest[k].second--;
			v.m++;
			r.add_term(DiffPolynomial::mono_mul(rest, {{v, 1}}), c * e);
		}
	return r;
}

inline DiffPolynomial dx(const DiffPolynomial &p, int k)
{
	DiffPolynomial r = p;
	for (int s = 0; s < k && !r.is_zero(); ++s)
		r = total_x_derivative(r);
	return r;
}

inline DiffPolynomial partial_derivative(const DiffPolynomial &p, const Jet &v) { return p.diff(v); }

inline bool quasihomogeneous(const DiffPolynomial &p, long &deg) { return p.homogeneous(jet_degree, deg); }

// number of x-derivatives carried by a monomial
inline int derivative_count(const DiffPolynomial::Mono &m)
{
	int d = 0;
	for (auto &f : m)
		d += f.first.m * f.second;
	return d;
}

// sum over (k, s) of eps^k h_{k,s}(x) delta^{(s)}(x - y)
struct DeltaSeries
{
	std::map<std::pair<int, int>, DiffPolynomial> c;

	void add(int k, int s, const DiffPolynomial &p)
	{
		if (p.is_zero())
			return;
		auto &slot = c[{k, s}];
		slot += p;
		if (slot.is_zero())
			c.erase({k, s});
	}
	DiffPolynomial at(int k, int s) const
	{
		auto it = c.find({k, s});
		return it == c.end() ? DiffPolynomial() : it->second;
	}
	// coefficient of delta^{(s)} summed over eps powers
	DiffPolynomial delta(int s) const
	{
		DiffPolynomial r;
		for (auto &[ks, p] : c)
			if (ks.second == s)
				r += p;
		return r;
	}
	bool operator==(const DeltaSeries &o) const { return c == o.c; }
	bool empty() const { return c.empty(); }
};

// split c(x) delta^{(s)} by derivative count: eps key = D + s - 1
inline void add_graded(DeltaSeries &out, int s, const DiffPolynomial &p)
{
	for (auto &[m, c] : p.terms())
		out.add(derivative_count(m) + s - 1, s, DiffPolynomial::mono(m, c));
}

// base entry {q_a(x), q_b(y)} = sum_p c_p(x) delta^{(p)}, c_p free of derivatives
using BaseEntry = std::map<int, DiffPolynomial>;
using BaseLookup = std::function<const BaseEntry &(int ia, int Ia, int ib, int Ib)>;
using SliceMap = std::function<DiffPolynomial(const DiffPolynomial &)>;

inline DiffPolynomial identity_slice(const DiffPolynomial &p) { return p; }

// raw expansion: delta order -> coefficient
inline std::map<int, DiffPolynomial> leibnitz_raw(const DiffPolynomial &v, const DiffPolynomial &w,
                                                  const BaseLookup &base, const SliceMap &slice = identity_slice)
{
	std::map<int, DiffPolynomial> out;
	auto jv = v.vars(), jw = w.vars();
	std::map<Jet, DiffPolynomial> pw_cache;
	for (auto &b : jw)
	{
		auto pw = slice(w.diff(b));
		if (!pw.is_zero())
			pw_cache[b] = pw;
	}
	std::map<Jet, std::vector<DiffPolynomial>> dpw;
	auto Dpw = [&](const Jet &b, int j) -> const DiffPolynomial & {
		auto &chain = dpw[b];
		if (chain.empty())
			chain.push_back(pw_cache.at(b));
		while (int(chain.size()) <= j)
			chain.push_back(total_x_derivative(chain.back()));
		return chain[j];
	};
	for (auto &a : jv)
	{
		auto pv = slice(v.diff(a));
		if (pv.is_zero())
			continue;
		int l = a.m;
		std::map<int, DiffPolynomial> acc; // before d_x^l
		for (auto &[b, pwb] : pw_cache)
		{
			const BaseEntry &be = base(a.i, a.I, b.i, b.I);
			int h = b.m;
			for (auto &[p, c0] : be)
			{
				DiffPolynomial c = slice(c0);
				if (c.is_zero())
					continue;
				int P = p + h;
				Q sg = (h & 1) ? -1 : 1;
				for (int j = 0; j <= P; ++j)
					acc[P - j] += Dpw(b, j) * c * (sg * binom(P, j));
			}
		}
		for (auto &[K, gK] : acc)
		{
			if (gK.is_zero())
				continue;
			DiffPolynomial d = gK;
			for (int j = 0; j <= l; ++j)
			{
				if (j)
					d = total_x_derivative(d);
				out[K + l - j] += d * pv * binom(l, j);
			}
		}
	}
	for (auto it = out.begin(); it != out.end();)
		it = it->second.is_zero() ? out.erase(it) : std::next(it);
	return out;
}

inline DeltaSeries leibnitz_bracket(const DiffPolynomial &v, const DiffPolynomial &w, const BaseLookup &base,
                                    const SliceMap &slice = identity_slice)
{
	DeltaSeries ds;
	for (auto &[s, p] : leibnitz_raw(v, w, base, slice))
		add_graded(ds, s, p);
	return ds;
}

// coefficient of delta' for an ultralocal constant base, in closed form
inline DiffPolynomial dispersionless_coefficient(const DiffPolynomial &v, const DiffPolynomial &u,
                                                 const BaseLookup &base, const SliceMap &slice = identity_slice)
{
	DiffPolynomial r;
	for (auto &a : v.vars())
	{
		auto pv = slice(v.diff(a));
		if (pv.is_zero())
			continue;
		for (auto &b : u.vars())
		{
			int l = a.m, h = b.m;
			if (l + h == 0)
				continue;
			const BaseEntry &be = base(a.i, a.I, b.i, b.I);
			auto it = be.find(0);
			if (it == be.end() || it->second.is_zero())
				continue;
			auto pu = slice(u.diff(b));
			if (pu.is_zero())
				continue;
			Q sg = (h & 1) ? -1 : 1;
			r += pv * dx(pu, h + l - 1) * slice(it->second) * (sg * Q(l + h));
		}
	}
	return r;
}

} // namespace dsfrob
