#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <span>
#include <thread>
#include <type_traits>
#include <vector>

namespace fracdyn {

// Evaluates fn(member) for every member on up to `workers` threads. Result i
// always belongs to member i, so the output never depends on scheduling.
// If any member throws, the exception of the lowest failing index is
// rethrown after all workers have joined.
template <class Member, class Fn>
auto run_ensemble(std::span<const Member> members, std::size_t workers, Fn&& fn)
    -> std::vector<std::invoke_result_t<Fn&, const Member&>> {
  using Result = std::invoke_result_t<Fn&, const Member&>;
  std::vector<Result> results(members.size());
  std::vector<std::exception_ptr> errors(members.size());
  std::atomic<std::size_t> next{0};

  auto work = [&] {
    for (std::size_t i = next.fetch_add(1); i < members.size(); i = next.fetch_add(1)) {
      try {
        results[i] = fn(members[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  const std::size_t count = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(members.size(), 1));
  if (count == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(count);
    for (std::size_t w = 0; w < count; ++w) pool.emplace_back(work);
  }

  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

}  // namespace fracdyn
