#pragma once

#include <optional>
#include <string_view>

namespace relay {

inline constexpr std::string_view kThreadsEnvVar = "RELAY_OUTAGE_THREADS";

/// Parses a positive worker count; nullopt for anything else.
std::optional<int> parse_thread_count(std::string_view text);

/// Caps the OpenMP team at RELAY_OUTAGE_THREADS when it holds a positive integer.
/// Results never depend on the count. Returns the worker count now in effect.
int configure_threads_from_env();

void set_worker_count(int workers);
int worker_count();

}  // namespace relay
