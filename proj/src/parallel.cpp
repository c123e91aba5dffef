#include "relay/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <string>

#include <omp.h>

namespace relay {

std::optional<int> parse_thread_count(std::string_view text) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || value < 1) {
    return std::nullopt;
  }
  return value;
}

int configure_threads_from_env() {
  if (const char* raw = std::getenv(std::string(kThreadsEnvVar).c_str())) {
    if (const auto n = parse_thread_count(raw)) set_worker_count(*n);
  }
  return worker_count();
}

void set_worker_count(int workers) {
  if (workers >= 1) omp_set_num_threads(workers);
}

int worker_count() { return omp_get_max_threads(); }

}  // namespace relay
