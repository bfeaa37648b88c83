#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <optional>
#include <thread>
#include <type_traits>
#include <vector>

namespace spinconsensus::harness
{

/// Evaluates fn(0..count-1) on up to `threads` workers; results come back in index order.
/// The first exception (by index) is rethrown after all workers finish.
template <typename Fn>
[[nodiscard]] auto parallel_map(std::size_t count, int threads, Fn&& fn)
    -> std::vector<std::invoke_result_t<Fn&, std::size_t>>
{
	using Result = std::invoke_result_t<Fn&, std::size_t>;
	std::vector<std::optional<Result>> slots(count);
	std::vector<std::exception_ptr> errors(count);
	std::atomic<std::size_t> next{0};

	auto worker = [&] {
		for(std::size_t k = next++; k < count; k = next++)
		{
			try
			{
				slots[k].emplace(fn(k));
			}
			catch(...)
			{
				errors[k] = std::current_exception();
			}
		}
	};

	const std::size_t n_workers =
	    std::min<std::size_t>(count, static_cast<std::size_t>(threads > 0 ? threads : 1));
	if(n_workers <= 1)
	{
		worker();
	}
	else
	{
		std::vector<std::jthread> pool;
		pool.reserve(n_workers);
		for(std::size_t w = 0; w < n_workers; ++w)
		{
			pool.emplace_back(worker);
		}
	}

	for(const auto& e : errors)
	{
		if(e)
		{
			std::rethrow_exception(e);
		}
	}
	std::vector<Result> out;
	out.reserve(count);
	for(auto& s : slots)
	{
		out.push_back(std::move(*s));
	}
	return out;
}

} // namespace spinconsensus::harness
