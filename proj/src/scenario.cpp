#include "relay/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "relay/error.hpp"

namespace relay {

namespace {

struct Entry {
  std::string value;
  int line = 0;
};

struct Section {
  int line = 0;
  std::map<std::string, Entry, std::less<>> entries;
};

const std::map<std::string, std::set<std::string>, std::less<>>& known_keys() {
  static const std::map<std::string, std::set<std::string>, std::less<>> keys{
      {"scenario", {"name"}},
      {"network", {"mode", "hops", "allow_final_rsi"}},
      {"hop", {"tx_antennas", "rx_antennas", "snr_db", "rsi_snr_db", "rsi_tx_antennas"}},
      {"rates", {"start", "stop", "step"}},
      {"sampling", {"moment_samples", "mc_realizations", "seed"}},
      {"output", {"directory"}},
      {"distribution", {"hop", "pairs", "bin_width", "samples"}},
  };
  return keys;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string_view strip_comment(std::string_view s) {
  const auto pos = s.find_first_of("#;");
  return pos == std::string_view::npos ? s : s.substr(0, pos);
}

// "hop.3" -> "hop", "hop.*" -> "hop", others unchanged.
std::string_view section_kind(std::string_view name) {
  return name.starts_with("hop.") ? std::string_view("hop") : name;
}

class Parser {
 public:
  Parser(std::string_view text, std::string source) : source_(std::move(source)) { tokenize(text); }

  Scenario build() {
    Scenario sc;
    if (const auto* s = find("scenario")) {
      if (const auto* e = entry(*s, "name")) {
        if (e->value.empty()) fail(e->line, "name", "must not be empty");
        sc.name = e->value;
      }
    }
    build_network(sc);
    if (const auto* s = find("rates")) {
      sc.rates.start = get_double(*s, "start", sc.rates.start);
      sc.rates.stop = get_double(*s, "stop", sc.rates.stop);
      sc.rates.step = get_double(*s, "step", sc.rates.step);
      try {
        (void)sc.rates.grid();
      } catch (const Error& err) {
        fail(s->line, "rates", err.what());
      }
    }
    if (const auto* s = find("sampling")) {
      sc.sampling.n_moment_samples = get_count(*s, "moment_samples", sc.sampling.n_moment_samples);
      sc.sampling.n_mc_realizations =
          get_count(*s, "mc_realizations", sc.sampling.n_mc_realizations);
      sc.sampling.seed = get_u64(*s, "seed", sc.sampling.seed);
      if (sc.sampling.n_moment_samples < kMinMomentSamples) {
        fail(line_of(*s, "moment_samples"), "moment_samples",
             fmt::format("must be >= {}", kMinMomentSamples));
      }
      if (sc.sampling.n_mc_realizations < kMinRealizations) {
        fail(line_of(*s, "mc_realizations"), "mc_realizations",
             fmt::format("must be >= {}", kMinRealizations));
      }
    }
    if (const auto* s = find("output")) {
      if (const auto* e = entry(*s, "directory")) {
        if (e->value.empty()) fail(e->line, "directory", "must not be empty");
        sc.output_dir = e->value;
      }
    }
    build_distribution(sc);
    return sc;
  }

 private:
  [[noreturn]] void fail(int line, std::string_view field, const std::string& message) const {
    throw ParseError(source_, line, std::string(field), message);
  }

  void tokenize(std::string_view text) {
    std::string current;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const auto end = std::min(text.find('\n', pos), text.size());
      const std::string_view raw = text.substr(pos, end - pos);
      pos = end + 1;
      ++line_no;
      const std::string_view line = trim(strip_comment(raw));
      if (line.empty()) {
        if (end == text.size()) break;
        continue;
      }

      if (line.front() == '[') {
        if (line.back() != ']') fail(line_no, "", "unterminated section header");
        const std::string name(trim(line.substr(1, line.size() - 2)));
        if (!known_keys().contains(section_kind(name))) {
          fail(line_no, name, "unknown section");
        }
        if (section_kind(name) == "hop" && name != "hop.*") {
          const auto index = std::string_view(name).substr(4);
          int k = 0;
          const auto [ptr, ec] = std::from_chars(index.data(), index.data() + index.size(), k);
          if (ec != std::errc{} || ptr != index.data() + index.size() || k < 1) {
            fail(line_no, name, "hop sections are [hop.*] or [hop.<k>] with k >= 1");
          }
        } else if (name == "hop") {
          fail(line_no, name, "hop sections are [hop.*] or [hop.<k>] with k >= 1");
        }
        if (sections_.contains(name)) fail(line_no, name, "duplicate section");
        sections_[name].line = line_no;
        current = name;
      } else {
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) fail(line_no, "", "expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key.empty()) fail(line_no, "", "missing key before '='");
        if (current.empty()) fail(line_no, key, "key outside of any section");
        if (!known_keys().at(std::string(section_kind(current))).contains(key)) {
          fail(line_no, key, fmt::format("unknown key in [{}]", current));
        }
        auto& entries = sections_[current].entries;
        if (entries.contains(key)) fail(line_no, key, "duplicate key");
        entries.emplace(key, Entry{value, line_no});
      }
      if (end == text.size()) break;
    }
  }

  const Section* find(std::string_view name) const {
    const auto it = sections_.find(std::string(name));
    return it == sections_.end() ? nullptr : &it->second;
  }

  static const Entry* entry(const Section& s, std::string_view key) {
    const auto it = s.entries.find(key);
    return it == s.entries.end() ? nullptr : &it->second;
  }

  static int line_of(const Section& s, std::string_view key) {
    const auto* e = entry(s, key);
    return e != nullptr ? e->line : s.line;
  }

  template <class T>
  T parse_number(const Entry& e, std::string_view key) const {
    T value{};
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (e.value.empty() || ec != std::errc{} || ptr != last) {
      fail(e.line, key, fmt::format("malformed number '{}'", e.value));
    }
    if constexpr (std::is_floating_point_v<T>) {
      if (!std::isfinite(value)) fail(e.line, key, "must be finite");
    }
    return value;
  }

  double get_double(const Section& s, std::string_view key, double fallback) const {
    const auto* e = entry(s, key);
    return e == nullptr ? fallback : parse_number<double>(*e, key);
  }

  std::size_t get_count(const Section& s, std::string_view key, std::size_t fallback) const {
    const auto* e = entry(s, key);
    if (e == nullptr) return fallback;
    if (e->value.starts_with('-')) fail(e->line, key, "must be non-negative");
    return parse_number<std::size_t>(*e, key);
  }

  std::uint64_t get_u64(const Section& s, std::string_view key, std::uint64_t fallback) const {
    const auto* e = entry(s, key);
    if (e == nullptr) return fallback;
    if (e->value.starts_with('-')) fail(e->line, key, "must be non-negative");
    return parse_number<std::uint64_t>(*e, key);
  }

  bool get_bool(const Section& s, std::string_view key, bool fallback) const {
    const auto* e = entry(s, key);
    if (e == nullptr) return fallback;
    if (e->value == "true") return true;
    if (e->value == "false") return false;
    fail(e->line, key, fmt::format("expected true or false, got '{}'", e->value));
  }

  // Looks a hop key up in [hop.<k>] first, then [hop.*].
  const Entry* hop_entry(std::size_t k, std::string_view key) const {
    if (const auto* s = find(fmt::format("hop.{}", k))) {
      if (const auto* e = entry(*s, key)) return e;
    }
    if (const auto* s = find("hop.*")) return entry(*s, key);
    return nullptr;
  }

  int hop_antennas(std::size_t k, std::string_view key, int line_hint) const {
    const auto* e = hop_entry(k, key);
    if (e == nullptr) fail(line_hint, key, fmt::format("missing for hop {}", k));
    const int v = parse_number<int>(*e, key);
    if (v < 1) fail(e->line, key, "antenna count must be >= 1");
    return v;
  }

  void build_network(Scenario& sc) const {
    const auto* net = find("network");
    if (net == nullptr) fail(0, "network", "missing [network] section");

    const auto* mode = entry(*net, "mode");
    if (mode == nullptr) fail(net->line, "mode", "missing");
    if (mode->value == "fd") {
      sc.network.mode = DuplexMode::FullDuplex;
    } else if (mode->value == "hd") {
      sc.network.mode = DuplexMode::HalfDuplex;
    } else {
      fail(mode->line, "mode", fmt::format("expected fd or hd, got '{}'", mode->value));
    }

    const auto* hops_entry = entry(*net, "hops");
    if (hops_entry == nullptr) fail(net->line, "hops", "missing");
    const int n_hops = parse_number<int>(*hops_entry, "hops");
    if (n_hops < 1) fail(hops_entry->line, "hops", "must be >= 1");
    sc.allow_final_rsi = get_bool(*net, "allow_final_rsi", false);

    for (const auto& [name, section] : sections_) {
      if (section_kind(name) != "hop" || name == "hop.*") continue;
      const int k = std::stoi(name.substr(4));
      if (k > n_hops) fail(section.line, name, fmt::format("network has only {} hops", n_hops));
    }

    std::vector<int> tx(n_hops + 1);
    for (int k = 1; k <= n_hops; ++k) tx[k] = hop_antennas(k, "tx_antennas", net->line);

    sc.network.hops.clear();
    for (int k = 1; k <= n_hops; ++k) {
      const int rx = hop_antennas(k, "rx_antennas", net->line);
      const auto* snr = hop_entry(k, "snr_db");
      if (snr == nullptr) fail(net->line, "snr_db", fmt::format("missing for hop {}", k));
      const double snr_db = parse_number<double>(*snr, "snr_db");

      std::optional<double> rsi_db;
      if (const auto* rsi = hop_entry(k, "rsi_snr_db"); rsi != nullptr && rsi->value != "none") {
        rsi_db = parse_number<double>(*rsi, "rsi_snr_db");
      }
      int rsi_tx = k < n_hops ? tx[k + 1] : tx[k];
      if (hop_entry(k, "rsi_tx_antennas") != nullptr) {
        rsi_tx = hop_antennas(k, "rsi_tx_antennas", net->line);
      }
      try {
        sc.network.hops.push_back(HopConfig::from_db(tx[k], rx, snr_db, rsi_db, rsi_tx));
      } catch (const Error& err) {
        fail(snr->line, fmt::format("hop.{}", k), err.what());
      }
    }
    try {
      sc.network.validate(sc.allow_final_rsi);
    } catch (const Error& err) {
      fail(net->line, "network", err.what());
    }
  }

  void build_distribution(Scenario& sc) const {
    const auto* s = find("distribution");
    if (s == nullptr) return;
    auto& d = sc.distribution;
    d.hop = get_count(*s, "hop", d.hop);
    if (d.hop < 1 || d.hop > sc.network.hops.size()) {
      fail(line_of(*s, "hop"), "hop",
           fmt::format("must be in 1..{}", sc.network.hops.size()));
    }
    d.bin_width = get_double(*s, "bin_width", d.bin_width);
    if (!(d.bin_width > 0.0)) fail(line_of(*s, "bin_width"), "bin_width", "must be > 0");
    d.samples = get_count(*s, "samples", d.samples);
    if (d.samples < kMinMomentSamples) {
      fail(line_of(*s, "samples"), "samples", fmt::format("must be >= {}", kMinMomentSamples));
    }
    if (const auto* e = entry(*s, "pairs")) {
      std::stringstream list(e->value);
      for (std::string item; std::getline(list, item, ',');) {
        const std::string_view pair = trim(item);
        const auto colon = pair.find(':');
        if (colon == std::string_view::npos) {
          fail(e->line, "pairs", fmt::format("expected eta:rho, got '{}'", pair));
        }
        const double eta =
            parse_number<double>(Entry{std::string(trim(pair.substr(0, colon))), e->line}, "pairs");
        const double rho =
            parse_number<double>(Entry{std::string(trim(pair.substr(colon + 1))), e->line}, "pairs");
        if (!(eta > 0.0) || !(rho >= 0.0)) fail(e->line, "pairs", "need eta > 0 and rho >= 0");
        d.pairs.push_back({eta, rho});
      }
      if (d.pairs.empty()) fail(e->line, "pairs", "empty list");
    }
  }

  std::string source_;
  std::map<std::string, Section, std::less<>> sections_;
};

}  // namespace

Scenario parse_scenario(std::string_view text, const std::string& source) {
  return Parser(text, source).build();
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), 0, "", "cannot open scenario file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str(), path.string());
}

}  // namespace relay
