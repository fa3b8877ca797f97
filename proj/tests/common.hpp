#pragma once

#include "dsfrob/report.hpp"

#include <gtest/gtest.h>

#include <map>

namespace dsfrob::testing {

// no cache: every test builds its algebra from scratch
inline const Pipeline &pipeline(char type, int rank, const std::string &backend = "chevalley")
{
	static std::map<std::string, Pipeline> memo;
	std::string key = std::string(1, type) + std::to_string(rank) + backend;
	auto it = memo.find(key);
	if (it == memo.end())
	{
		PipelineOptions opt;
		opt.backend = backend;
		opt.use_cache = false;
		it = memo.emplace(key, run_pipeline(type, rank, opt)).first;
	}
	return it->second;
}

inline ZPoly zp(const std::string &s, int r) { return parse_poly<int>(s, indexed_var('z', r)); }
inline ZPoly tp(const std::string &s, int r) { return parse_poly<int>(s, indexed_var('t', r)); }
inline DiffPolynomial qp(const std::string &s, const std::vector<int> &eta) { return parse_poly<Jet>(s, qjet_var(eta)); }

struct Alg
{
	char type;
	int rank;
};

inline void PrintTo(const Alg &a, std::ostream *os) { *os << a.type << a.rank; }

inline std::string alg_name(const ::testing::TestParamInfo<Alg> &info)
{
	return std::string(1, info.param.type) + std::to_string(info.param.rank);
}

inline const std::vector<Alg> kTestAlgebras = {{'A', 1}, {'A', 2}, {'B', 2}, {'A', 3}, {'G', 2}};

} // namespace dsfrob::testing
