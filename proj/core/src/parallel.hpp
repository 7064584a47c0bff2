#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "mlab/error.hpp"

namespace mlab::detail {

template <typename T>
struct Outcome {
  std::optional<T> value;
  std::string error;
};

/// Runs fn(i) for i in [0, count) on up to `threads` workers. Results keep
/// index order; an mlab::Error thrown for one index is captured in its slot.
template <typename T, typename Fn>
std::vector<Outcome<T>> parallel_map(std::size_t count, unsigned threads, Fn&& fn) {
  std::vector<Outcome<T>> out(count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr fatal;
  std::atomic<bool> has_fatal{false};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        out[i].value.emplace(fn(i));
      } catch (const Error& e) {
        out[i].error = e.what();
      } catch (...) {
        if (!has_fatal.exchange(true)) fatal = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (fatal) std::rethrow_exception(fatal);
  return out;
}

}  // namespace mlab::detail
