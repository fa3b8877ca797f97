#pragma once

#include "rational.hpp"

#include <algorithm>
#include <compare>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace dsfrob {

// sparse multivariate polynomial over Q; V needs a total order
template <class V> class Poly
{
  public:
	using Factor = std::pair<V, int>;
	using Mono = std::vector<Factor>; // sorted by variable, exponents > 0

	struct MonoLess
	{
		bool operator()(const Mono &a, const Mono &b) const
		{
			int da = total(a), db = total(b);
			if (da != db)
				return da < db;
			return a < b;
		}
	};
	using Terms = std::map<Mono, Q, MonoLess>;

	Poly() = default;
	Poly(const Q &c)
	{
		if (c != 0)
			t_[Mono{}] = c;
	}
	Poly(long c) : Poly(Q(c)) {}

	static Poly var(const V &v, int e = 1)
	{
		Poly p;
		p.t_[Mono{{v, e}}] = 1;
		return p;
	}
	static Poly mono(const Mono &m, const Q &c)
	{
		Poly p;
		if (c != 0)
			p.t_[m] = c;
		return p;
	}

	static int total(const Mono &m)
	{
		int d = 0;
		for (auto &f : m)
			d += f.second;
		return d;
	}

	const Terms &terms() const { return t_; }
	bool is_zero() const { return t_.empty(); }
	size_t size() const { return t_.size(); }

	bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.empty()); }
	Q constant() const
	{
		auto it = t_.find(Mono{});
		return it == t_.end() ? Q(0) : it->second;
	}
	Q coeff(const Mono &m) const
	{
		auto it = t_.find(m);
		return it == t_.end() ? Q(0) : it->second;
	}

	void add_term(const Mono &m, const Q &c)
	{
		if (c == 0)
			return;
		auto [it, fresh] = t_.try_emplace(m, c);
		if (!fresh)
		{
			it->second += c;
			if (it->second == 0)
				t_.erase(it);
		}
	}

	Poly &operator+=(const Poly &o)
	{
		for (auto &[m, c] : o.t_)
			add_term(m, c);
		return *this;
	}
	Poly &operator-=(const Poly &o)
	{
		for (auto &[m, c] : o.t_)
			add_term(m, -c);
		return *this;
	}
	Poly &operator*=(const Q &c)
	{
		if (c == 0)
			t_.clear();
		else
			for (auto &kv : t_)
				kv.second *= c;
		return *this;
	}
	Poly operator-() const
	{
		Poly r = *this;
		for (auto &kv : r.t_)
			kv.second = -kv.second;
		return r;
	}
	friend Poly operator+(Poly a, const Poly &b) { return a += b; }
	friend Poly operator-(Poly a, const Poly &b) { return a -= b; }
	friend Poly operator*(Poly a, const Q &c) { return a *= c; }
	friend Poly operator*(const Q &c, Poly a) { return a *= c; }
	friend Poly operator/(Poly a, const Q &c) { return a *= Q(1 / c); }

	static Mono mono_mul(const Mono &a, const Mono &b)
	{
		Mono r;
		r.reserve(a.size() + b.size());
		size_t i = 0, j = 0;
		while (i < a.size() || j < b.size())
		{
			if (j == b.size() || (i < a.size() && a[i].first < b[j].first))
				r.push_back(a[i++]);
			else if (i == a.size() || b[j].first < a[i].first)
				r.push_back(b[j++]);
			else
			{
				r.emplace_back(a[i].first, a[i].second + b[j].second);
				++i, ++j;
			}
		}
		return r;
	}

	friend Poly operator*(const Poly &a, const Poly &b)
	{
		Poly r;
		if (a.is_zero() || b.is_zero())
			return r;
		for (auto &[ma, ca] : a.t_)
			for (auto &[mb, cb] : b.t_)
				r.add_term(mono_mul(ma, mb), ca * cb);
		return r;
	}
	Poly &operator*=(const Poly &o) { return *this = *this * o; }

	Poly pow(int e) const
	{
		Poly r(1), b = *this;
		while (e > 0)
		{
			if (e & 1)
				r *= b;
			e >>= 1;
			if (e)
				b = b * b;
		}
		return r;
	}

	bool operator==(const Poly &o) const { return t_ == o.t_; }
	bool operator!=(const Poly &o) const { return !(t_ == o.t_); }

	Poly diff(const V &v) const
	{
		Poly r;
		for (auto &[m, c] : t_)
			for (size_t k = 0; k < m.size(); ++k)
			{
				if (m[k].first != v)
					continue;
				Mono n = m;
				int e = n[k].second;
				if (e == 1)
					n.erase(n.begin() + k);
				else
					n[k].second--;
				r.add_term(n, c * e);
			}
		return r;
	}

	int degree_in(const V &v) const
	{
		int d = 0;
		for (auto &[m, c] : t_)
			for (auto &f : m)
				if (f.first == v)
					d = std::max(d, f.second);
		return d;
	}

	std::set<V> vars() const
	{
		std::set<V> s;
		for (auto &[m, c] : t_)
			for (auto &f : m)
				s.insert(f.first);
		return s;
	}

	// weighted degree of each monomial; returns false on mixed degrees
	template <class W> bool homogeneous(W weight, long &deg) const
	{
		bool first = true;
		for (auto &[m, c] : t_)
		{
			long d = 0;
			for (auto &f : m)
				d += long(weight(f.first)) * f.second;
			if (first)
				deg = d, first = false;
			else if (d != deg)
				return false;
		}
		return true;
	}

	// substitute every variable by a polynomial (possibly in other variables)
	template <class W, class F> Poly<W> subs(F f) const
	{
		std::map<V, std::vector<Poly<W>>> powers;
		auto power = [&](const V &v, int e) -> const Poly<W> & {
			auto &vec = powers[v];
			if (vec.empty())
				vec.push_back(Poly<W>(1));
			while (int(vec.size()) <= e)
			{
				if (vec.size() == 1)
					vec.push_back(f(v));
				else
					vec.push_back(vec.back() * vec[1]);
			}
			return vec[e];
		};
		Poly<W> r;
		for (auto &[m, c] : t_)
		{
			Poly<W> term(c);
			for (auto &fa : m)
			{
				term = term * power(fa.first, fa.second);
				if (term.is_zero())
					break;
			}
			r += term;
		}
		return r;
	}

	template <class F> Q eval(F f) const
	{
		Q r = 0;
		for (auto &[m, c] : t_)
		{
			Q t = c;
			for (auto &fa : m)
			{
				Q v = f(fa.first);
				for (int k = 0; k < fa.second; ++k)
					t *= v;
			}
			r += t;
		}
		return r;
	}

	// keep only monomials whose variables all satisfy keep(v)
	template <class F> Poly restrict_to(F keep) const
	{
		Poly r;
		for (auto &[m, c] : t_)
		{
			bool ok = true;
			for (auto &fa : m)
				if (!keep(fa.first))
				{
					ok = false;
					break;
				}
			if (ok)
				r.t_.emplace_hint(r.t_.end(), m, c);
		}
		return r;
	}

	// lex order on exponent vectors (a genuine monomial order, used for division)
	static bool lex_less(const Mono &a, const Mono &b)
	{
		size_t i = 0, j = 0;
		while (i < a.size() || j < b.size())
		{
			if (j == b.size())
				return false;
			if (i == a.size())
				return true;
			if (a[i].first < b[j].first)
				return false; // a has the smaller variable with positive exponent
			if (b[j].first < a[i].first)
				return true;
			if (a[i].second != b[j].second)
				return a[i].second < b[j].second;
			++i, ++j;
		}
		return false;
	}

	std::pair<Mono, Q> leading() const
	{
		auto best = t_.begin();
		for (auto it = t_.begin(); it != t_.end(); ++it)
			if (lex_less(best->first, it->first))
				best = it;
		return *best;
	}

	// m / d when d divides m
	static bool mono_div(const Mono &m, const Mono &d, Mono &out)
	{
		out.clear();
		size_t i = 0;
		for (auto &f : d)
		{
			while (i < m.size() && m[i].first < f.first)
				out.push_back(m[i++]);
			if (i == m.size() || f.first < m[i].first || m[i].second < f.second)
				return false;
			if (m[i].second > f.second)
				out.emplace_back(f.first, m[i].second - f.second);
			++i;
		}
		while (i < m.size())
			out.push_back(m[i++]);
		return true;
	}

	// exact quotient this / d, false if d does not divide
	bool divide_exact(const Poly &d, Poly &q) const
	{
		q = Poly();
		if (d.is_zero())
			return false;
		if (d.is_constant())
		{
			q = *this * Q(1 / d.constant());
			return true;
		}
		auto [ld, cd] = d.leading();
		Poly rem = *this;
		while (!rem.is_zero())
		{
			auto [lr, cr] = rem.leading();
			Mono m;
			if (!mono_div(lr, ld, m))
				return false;
			Poly t = mono(m, cr / cd);
			q += t;
			rem -= t * d;
		}
		return true;
	}

	// canonical text: highest graded monomial first, "c*x^e*y"
	template <class N> std::string str(N name) const
	{
		if (t_.empty())
			return "0";
		std::ostringstream os;
		bool first = true;
		for (auto it = t_.rbegin(); it != t_.rend(); ++it)
		{
			const Q &c = it->second;
			const Mono &m = it->first;
			Q a = abs(c);
			if (first)
				os << (c < 0 ? "-" : "");
			else
				os << (c < 0 ? " - " : " + ");
			first = false;
			bool lead = true;
			if (a != 1 || m.empty())
			{
				os << q_short(a);
				lead = false;
			}
			for (auto &fa : m)
			{
				if (!lead)
					os << "*";
				lead = false;
				os << name(fa.first);
				if (fa.second != 1)
					os << "^" << fa.second;
			}
		}
		return os.str();
	}

  private:
	Terms t_;
};

} // namespace dsfrob
