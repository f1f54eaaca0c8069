// Command-line front end: runs a (K, N, seed) sweep and writes result files.
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "v2v/config.hpp"
#include "v2v/report.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  v2v::CliOptions opts;
  try {
    opts = v2v::parse_args(args);
  } catch (const v2v::HelpRequested& h) {
    fmt::print("{}", h.what());
    return 0;
  } catch (const v2v::ConfigError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 2;
  }

  try {
    const auto results = v2v::run_sweep(opts, [](const v2v::RunResult& r) {
      for (const auto& s : r.summaries) {
        fmt::print("K={} N={} seed={} {:<8} satisfied={:.2f}% outage={:.3f} p50={} dB\n", r.vue_pairs,
                   r.rbs, r.seed, v2v::to_string(s.scheme), s.satisfaction_pct, s.outage_fraction,
                   v2v::format_double(s.sinr_p50_db));
      }
    });
    v2v::write_sweep(opts.out_dir, opts, results);
    fmt::print("wrote {}\n", opts.out_dir);
  } catch (const v2v::ConfigError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
  return 0;
}
