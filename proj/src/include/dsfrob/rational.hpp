#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dsfrob {

using Q = mpq_class;
using Z = mpz_class;

inline Q make_q(long p, long q = 1)
{
	Q r(p, q);
	r.canonicalize();
	return r;
}

// always "p/q", integers as "p/1"
inline std::string q_str(const Q &x)
{
	return x.get_num().get_str() + "/" + x.get_den().get_str();
}

// short form for polynomial text: "3", "-1/2"
inline std::string q_short(const Q &x)
{
	if (x.get_den() == 1)
		return x.get_num().get_str();
	return x.get_num().get_str() + "/" + x.get_den().get_str();
}

inline Q parse_q(const std::string &s)
{
	Q r;
	if (s.empty() || r.set_str(s, 10) != 0)
		throw std::invalid_argument("bad rational '" + s + "'");
	if (r.get_den() == 0)
		throw std::invalid_argument("zero denominator in '" + s + "'");
	r.canonicalize();
	return r;
}

inline Q binom(int n, int k)
{
	if (k < 0 || k > n)
		return 0;
	Z r;
	mpz_bin_uiui(r.get_mpz_t(), n, k);
	return Q(r);
}

inline Q factorial(int n)
{
	Z r;
	mpz_fac_ui(r.get_mpz_t(), n);
	return Q(r);
}

inline bool is_square(const Z &n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()); }

// squarefree integer s with x = s * (rational)^2
inline Z squarefree_class(const Q &x)
{
	if (x == 0)
		throw std::domain_error("squarefree class of zero");
	Z n = x.get_num() * x.get_den();
	int sg = sgn(n);
	n = abs(n);
	Z s = 1;
	for (Z p = 2; p * p <= n; ++p)
	{
		int e = 0;
		while (n % p == 0)
		{
			n /= p;
			++e;
		}
		if (e & 1)
			s *= p;
	}
	s *= n;
	return sg * s;
}

inline Z isqrt(const Z &n)
{
	Z r;
	mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
	return r;
}

// sqrt of a rational that is a perfect square
inline Q exact_sqrt(const Q &x)
{
	if (!is_square(x.get_num()) || !is_square(x.get_den()))
		throw std::domain_error("not a rational square");
	return Q(isqrt(x.get_num()), isqrt(x.get_den()));
}

} // namespace dsfrob
