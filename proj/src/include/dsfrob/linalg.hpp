#pragma once

#include "rational.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace dsfrob {

using Vec = std::vector<Q>;
using Mat = std::vector<Vec>;

inline Mat zeros(size_t r, size_t c) { return Mat(r, Vec(c, Q(0))); }
inline Mat identity(size_t n)
{
	Mat m = zeros(n, n);
	for (size_t i = 0; i < n; ++i)
		m[i][i] = 1;
	return m;
}

inline Vec operator+(Vec a, const Vec &b)
{
	for (size_t i = 0; i < a.size(); ++i)
		a[i] += b[i];
	return a;
}
inline Vec operator-(Vec a, const Vec &b)
{
	for (size_t i = 0; i < a.size(); ++i)
		a[i] -= b[i];
	return a;
}
inline Vec operator*(const Q &c, Vec a)
{
	for (auto &x : a)
		x *= c;
	return a;
}
inline bool is_zero(const Vec &v)
{
	for (auto &x : v)
		if (x != 0)
			return false;
	return true;
}
inline Q dot(const Vec &a, const Vec &b)
{
	Q s = 0;
	for (size_t i = 0; i < a.size(); ++i)
		if (a[i] != 0 && b[i] != 0)
			s += a[i] * b[i];
	return s;
}

inline Mat mul(const Mat &a, const Mat &b)
{
	size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
	Mat r = zeros(n, m);
	for (size_t i = 0; i < n; ++i)
		for (size_t l = 0; l < k; ++l)
		{
			if (a[i][l] == 0)
				continue;
			for (size_t j = 0; j < m; ++j)
				if (b[l][j] != 0)
					r[i][j] += a[i][l] * b[l][j];
		}
	return r;
}
inline Vec mul(const Mat &a, const Vec &v)
{
	Vec r(a.size(), Q(0));
	for (size_t i = 0; i < a.size(); ++i)
		r[i] = dot(a[i], v);
	return r;
}
inline Mat transpose(const Mat &a)
{
	if (a.empty())
		return {};
	Mat t = zeros(a[0].size(), a.size());
	for (size_t i = 0; i < a.size(); ++i)
		for (size_t j = 0; j < a[0].size(); ++j)
			t[j][i] = a[i][j];
	return t;
}

// reduced row echelon form in place, returns pivot columns
inline std::vector<size_t> rref(Mat &m)
{
	std::vector<size_t> piv;
	if (m.empty())
		return piv;
	size_t rows = m.size(), cols = m[0].size(), r = 0;
	for (size_t c = 0; c < cols && r < rows; ++c)
	{
		size_t p = r;
		while (p < rows && m[p][c] == 0)
			++p;
		if (p == rows)
			continue;
		std::swap(m[p], m[r]);
		Q inv = 1 / m[r][c];
		for (auto &x : m[r])
			x *= inv;
		for (size_t i = 0; i < rows; ++i)
		{
			if (i == r || m[i][c] == 0)
				continue;
			Q f = m[i][c];
			for (size_t j = c; j < cols; ++j)
				if (m[r][j] != 0)
					m[i][j] -= f * m[r][j];
		}
		piv.push_back(c);
		++r;
	}
	return piv;
}

inline size_t rank(Mat m) { return rref(m).size(); }

// basis of {x : m x = 0}, one vector per free column, in RREF normal form
inline std::vector<Vec> nullspace(Mat m, size_t cols)
{
	if (m.empty())
	{
		std::vector<Vec> out;
		for (size_t c = 0; c < cols; ++c)
		{
			Vec v(cols, Q(0));
			v[c] = 1;
			out.push_back(v);
		}
		return out;
	}
	auto piv = rref(m);
	std::vector<bool> is_piv(cols, false);
	for (auto c : piv)
		is_piv[c] = true;
	std::vector<Vec> out;
	for (size_t f = 0; f < cols; ++f)
	{
		if (is_piv[f])
			continue;
		Vec v(cols, Q(0));
		v[f] = 1;
		for (size_t k = 0; k < piv.size(); ++k)
			v[piv[k]] = -m[k][f];
		out.push_back(v);
	}
	return out;
}

// one solution of m x = b (free variables zero), nullopt if inconsistent
inline std::optional<Vec> solve(const Mat &m, const Vec &b)
{
	size_t rows = m.size();
	size_t cols = rows ? m[0].size() : 0;
	Mat a = m;
	for (size_t i = 0; i < rows; ++i)
		a[i].push_back(b[i]);
	if (rows == 0)
		return Vec(cols, Q(0));
	auto piv = rref(a);
	Vec x(cols, Q(0));
	for (size_t k = 0; k < piv.size(); ++k)
	{
		if (piv[k] == cols)
			return std::nullopt;
		x[piv[k]] = a[k][cols];
	}
	return x;
}

inline std::optional<Mat> inverse(const Mat &m)
{
	size_t n = m.size();
	Mat a = m;
	for (size_t i = 0; i < n; ++i)
	{
		a[i].resize(2 * n, Q(0));
		a[i][n + i] = 1;
	}
	auto piv = rref(a);
	if (piv.size() < n || piv[n - 1] != n - 1)
		return std::nullopt;
	Mat r = zeros(n, n);
	for (size_t i = 0; i < n; ++i)
		for (size_t j = 0; j < n; ++j)
			r[i][j] = a[i][n + j];
	return r;
}

inline Q det(Mat a)
{
	size_t n = a.size();
	Q d = 1;
	for (size_t c = 0; c < n; ++c)
	{
		size_t p = c;
		while (p < n && a[p][c] == 0)
			++p;
		if (p == n)
			return 0;
		if (p != c)
		{
			std::swap(a[p], a[c]);
			d = -d;
		}
		d *= a[c][c];
		for (size_t i = c + 1; i < n; ++i)
		{
			if (a[i][c] == 0)
				continue;
			Q f = a[i][c] / a[c][c];
			for (size_t j = c; j < n; ++j)
				a[i][j] -= f * a[c][j];
		}
	}
	return d;
}

// dense univariate polynomials, coefficient k of x^k
using UPoly = std::vector<Q>;

inline void trim(UPoly &p)
{
	while (!p.empty() && p.back() == 0)
		p.pop_back();
}

inline UPoly upoly_mod(UPoly a, const UPoly &b)
{
	trim(a);
	while (a.size() >= b.size() && !a.empty())
	{
		Q f = a.back() / b.back();
		size_t sh = a.size() - b.size();
		for (size_t i = 0; i < b.size(); ++i)
			a[sh + i] -= f * b[i];
		trim(a);
	}
	return a;
}

inline UPoly upoly_div(UPoly a, const UPoly &b)
{
	trim(a);
	if (a.size() < b.size())
		return {};
	UPoly q(a.size() - b.size() + 1, Q(0));
	while (a.size() >= b.size() && !a.empty())
	{
		Q f = a.back() / b.back();
		size_t sh = a.size() - b.size();
		q[sh] = f;
		for (size_t i = 0; i < b.size(); ++i)
			a[sh + i] -= f * b[i];
		trim(a);
	}
	return q;
}

inline UPoly upoly_gcd(UPoly a, UPoly b)
{
	trim(a), trim(b);
	while (!b.empty())
	{
		UPoly r = upoly_mod(a, b);
		a = std::move(b);
		b = std::move(r);
	}
	if (!a.empty())
	{
		Q lc = a.back();
		for (auto &c : a)
			c /= lc;
	}
	return a;
}

inline UPoly upoly_deriv(const UPoly &p)
{
	UPoly d;
	for (size_t k = 1; k < p.size(); ++k)
		d.push_back(p[k] * Q(long(k)));
	trim(d);
	return d;
}

// characteristic polynomial det(x - M) via Hessenberg-free Faddeev-LeVerrier
inline UPoly charpoly(const Mat &m)
{
	size_t n = m.size();
	UPoly c(n + 1, Q(0));
	c[n] = 1;
	Mat mk = zeros(n, n); // M_0 = 0
	Mat am;
	for (size_t k = 1; k <= n; ++k)
	{
		// M_k = A M_{k-1} + c_{n-k+1} I
		Mat t = mul(m, mk);
		for (size_t i = 0; i < n; ++i)
			t[i][i] += c[n - k + 1];
		mk = std::move(t);
		am = mul(m, mk);
		Q tr = 0;
		for (size_t i = 0; i < n; ++i)
			tr += am[i][i];
		c[n - k] = -tr / Q(long(k));
	}
	return c;
}

inline Mat upoly_eval(const UPoly &p, const Mat &m)
{
	size_t n = m.size();
	Mat r = zeros(n, n);
	for (size_t k = p.size(); k-- > 0;)
	{
		r = mul(r, m);
		for (size_t i = 0; i < n; ++i)
			r[i][i] += p[k];
	}
	return r;
}

} // namespace dsfrob
