#pragma once

#include "eclld/special.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <iosfwd>
#include <string>
#include <thread>
#include <vector>

namespace eclld::cli {

struct RunConfig {
  std::string subcommand;
  int family = 1;
  double X = 1e8;
  std::int64_t prime_cutoff = 10000;
  int series_order = -1;  // -1 selects the family default
  double tau_min = 0.2;
  double tau_max = 3.0;
  int tau_steps = 29;
  std::string test_function = "gaussian";
  std::string format = "csv";
  std::string out;
  std::string plot_script;
  int threads = 1;

  std::int64_t pmin = 5;
  std::int64_t pmax = 97;
  int m1_max = 8;
  int weight_max = 22;
  std::string alpha = "0";
  std::string gamma = "0";
  double root_number_mean = 0.0;
  std::int64_t t_param = 1;
  std::string t_list = "1,13,-11,25";
  double height = 10.0;
  double max_height = 30.0;
  std::int64_t x_max = 1000000;
  int ladder_points = 24;
};

inline constexpr int kExitConfig = 2;
inline constexpr int kExitAssertion = 1;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

// 17 significant digits.
std::string format_double(double x);
// "a", "bi", "a+bi", "a-bi"
cplx parse_complex(const std::string& s);
// "a:b" (inclusive) or "a,b,c"
std::vector<std::int64_t> parse_int_list(const std::string& s);

// f(0), ..., f(n-1) in index order on up to `threads` workers; the first exception by index is rethrown.
template <class F>
auto parallel_map(std::size_t n, int threads, F f) -> std::vector<decltype(f(std::size_t{}))> {
  using R = decltype(f(std::size_t{}));
  std::vector<R> out(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i] = f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t w = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, threads)));
  if (w <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t k = 0; k < w; ++k) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace eclld::cli
