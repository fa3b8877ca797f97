#pragma once

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace dsfrob {

// run f(0..count-1) on up to `jobs` threads; rethrows the first exception
template <class F> void parallel_for(int count, int jobs, F f)
{
	if (jobs <= 1 || count <= 1)
	{
		for (int k = 0; k < count; ++k)
			f(k);
		return;
	}
	std::atomic<int> next{0};
	std::exception_ptr err;
	std::mutex mu;
	std::vector<std::thread> pool;
	int nt = std::min(jobs, count);
	for (int t = 0; t < nt; ++t)
		pool.emplace_back([&] {
			for (int k; (k = next++) < count;)
			{
				try
				{
					f(k);
				}
				catch (...)
				{
					std::lock_guard<std::mutex> lk(mu);
					if (!err)
						err = std::current_exception();
				}
			}
		});
	for (auto &th : pool)
		th.join();
	if (err)
		std::rethrow_exception(err);
}

} // namespace dsfrob
