#include "eclld/cli.hpp"

#include "eclld/averages.hpp"
#include "eclld/density.hpp"
#include "eclld/hecke.hpp"
#include "eclld/lfunc.hpp"
#include "eclld/primes.hpp"
#include "eclld/ratios.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace eclld::cli {

namespace {

using nlohmann::json;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Family to_family(int f) {
  if (f == 1) return Family::all_curves;
  if (f == 2) return Family::washington;
  throw ConfigError("--family must be 1 or 2");
}

struct Output {
  std::string body;
  std::vector<std::string> failures;
};

void write_text(const std::string& path, const std::string& text, std::ostream& fallback) {
  if (path.empty()) {
    fallback << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot open " + path);
  f << text;
}

std::string csv_line(const std::vector<std::string>& cells) {
  std::string s;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) s += ',';
    s += cells[i];
  }
  return s + '\n';
}

bool want_json(const RunConfig& c) {
  if (c.format == "json") return true;
  if (c.format == "csv") return false;
  throw ConfigError("--format must be csv or json");
}

// ---- verify-averages

struct AverageRow {
  int m1, m2;
  std::int64_t p;
  std::string closed, brute;
  bool equal;
};

std::vector<AverageRow> averages_rows_family1(std::int64_t p, int m1_max, const TraceTable& traces) {
  std::vector<AverageRow> rows;
  for (int m1 = 0; m1 <= m1_max; ++m1)
    for (int m2 = 0; m2 <= 2; ++m2) {
      const AverageValue c = q_star_closed(m1, m2, p, traces), b = q_star_bruteforce(m1, m2, p);
      rows.push_back({m1, m2, p, c.value.str(), b.value.str(), c == b});
    }
  return rows;
}

std::vector<AverageRow> averages_rows_family2(std::int64_t p) {
  const long pl = static_cast<long>(p);
  const Rational first(-(1 + chi4(p)), p);  // times sqrt(p)
  const std::vector<std::tuple<int, int, Surd>> closed{
      {0, 0, Surd(pl, 1, 0)},
      {1, 0, Surd(pl, 0, first)},
      {0, 1, Surd(pl, 0, -first)},
      {0, 2, Surd(pl, 1 - Rational(washington_root_count(p), p), 0)},
  };
  std::vector<AverageRow> rows;
  for (const auto& [m1, m2, v] : closed) {
    const AverageValue b = q_t_bruteforce(m1, m2, p);
    rows.push_back({m1, m2, p, v.str(), b.value.str(), b.value == v});
  }
  return rows;
}

Output cmd_verify_averages(const RunConfig& c) {
  if (c.family == 1 && (c.pmin < 5 || c.pmax > 97 || c.m1_max > 8 || c.m1_max < 0))
    throw ConfigError("family 1 needs 5 <= p <= 97 and 0 <= m1 <= 8");
  if (c.family == 2 && (c.pmin < 3 || c.pmax > 199)) throw ConfigError("family 2 needs 3 <= p <= 199");
  to_family(c.family);
  std::vector<std::int64_t> primes;
  for (int p : primes_up_to(static_cast<int>(c.pmax)))
    if (p >= c.pmin && p != 2) primes.push_back(p);
  std::vector<std::vector<AverageRow>> blocks;
  if (c.family == 1) {
    const TraceTable traces = TraceTable::exact(std::max(12, c.m1_max + 3), c.pmax);
    blocks = parallel_map(primes.size(), c.threads, [&](std::size_t i) { return averages_rows_family1(primes[i], c.m1_max, traces); });
  } else {
    blocks = parallel_map(primes.size(), c.threads, [&](std::size_t i) { return averages_rows_family2(primes[i]); });
  }
  Output o;
  json rows = json::array();
  std::string csv = csv_line({"family", "m1", "m2", "p", "closed", "brute", "equal"});
  for (const auto& block : blocks)
    for (const AverageRow& r : block) {
      if (!r.equal)
        o.failures.push_back("average mismatch at p=" + std::to_string(r.p) + " m1=" + std::to_string(r.m1) + " m2=" + std::to_string(r.m2));
      csv += csv_line({std::to_string(c.family), std::to_string(r.m1), std::to_string(r.m2), std::to_string(r.p), r.closed, r.brute,
                       r.equal ? "true" : "false"});
      rows.push_back({{"family", c.family}, {"m1", r.m1}, {"m2", r.m2}, {"p", r.p}, {"closed", r.closed}, {"brute", r.brute}, {"equal", r.equal}});
    }
  o.body = want_json(c) ? rows.dump(2) + "\n" : csv;
  return o;
}

// ---- traces

struct TraceRow {
  int j;
  std::int64_t p;
  std::string selberg, tau, moments;
  bool agree;
};

Output cmd_traces(const RunConfig& c) {
  if (c.pmax < 2 || c.pmax > 97) throw ConfigError("traces needs 2 <= pmax <= 97");
  if (c.weight_max < 12 || c.weight_max > 22 || c.weight_max % 2) throw ConfigError("--weight-max must be even in [12, 22]");
  const auto tau = tau_oracle(static_cast<int>(c.pmax));
  std::vector<std::pair<int, std::int64_t>> jobs;
  for (int j = 12; j <= c.weight_max; j += 2)
    for (int p : primes_up_to(static_cast<int>(c.pmax))) jobs.emplace_back(j, p);
  const auto rows = parallel_map(jobs.size(), c.threads, [&](std::size_t i) {
    const auto [j, p] = jobs[i];
    TraceRow r{j, p, "", "", "", true};
    const Rational s = trace_hecke_selberg(j, p);
    r.selberg = s.str();
    if (j == 12) {
      r.tau = tau[static_cast<std::size_t>(p)].str();
      r.agree = r.agree && Rational(tau[static_cast<std::size_t>(p)]) == s;
    }
    if (p > 3) {
      const Rational m = trace_from_moments_exact(j, p);
      r.moments = m.str();
      r.agree = r.agree && m == s;
    }
    return r;
  });
  Output o;
  json arr = json::array();
  std::string csv = csv_line({"j", "p", "selberg", "tau", "moments", "agree"});
  for (const TraceRow& r : rows) {
    if (!r.agree) o.failures.push_back("trace oracles disagree at j=" + std::to_string(r.j) + " p=" + std::to_string(r.p));
    csv += csv_line({std::to_string(r.j), std::to_string(r.p), r.selberg, r.tau, r.moments, r.agree ? "true" : "false"});
    json row{{"j", r.j}, {"p", r.p}, {"selberg", r.selberg}, {"agree", r.agree}};
    row["tau"] = r.tau.empty() ? json(nullptr) : json(r.tau);
    row["moments"] = r.moments.empty() ? json(nullptr) : json(r.moments);
    arr.push_back(row);
  }
  o.body = want_json(c) ? arr.dump(2) + "\n" : csv;
  return o;
}

// ---- euler-product

int default_order(const RunConfig& c) {
  if (c.series_order >= 0) return c.series_order;
  return c.family == 1 ? kDefaultSeriesOrder : 0;
}

Output cmd_euler_product(const RunConfig& c) {
  const Family f = to_family(c.family);
  if (c.prime_cutoff < 5 || c.prime_cutoff > 1000000) throw ConfigError("--prime-cutoff must be in [5, 1e6]");
  const ComplexShift shift{parse_complex(c.alpha), parse_complex(c.gamma)};
  shift.validate();
  const int M = default_order(c);
  const EulerProductValue v = A_value(f, shift, c.prime_cutoff, M);
  Output o;
  json j{{"family", c.family},
         {"alpha_re", shift.alpha.real()},
         {"alpha_im", shift.alpha.imag()},
         {"gamma_re", shift.gamma.real()},
         {"gamma_im", shift.gamma.imag()},
         {"value_re", v.value.real()},
         {"value_im", v.value.imag()},
         {"tail_bound", v.tail_bound},
         {"P", v.prime_cutoff},
         {"M", v.series_order}};
  if (want_json(c)) {
    o.body = j.dump(2) + "\n";
  } else {
    o.body = csv_line({"family", "alpha_re", "alpha_im", "gamma_re", "gamma_im", "value_re", "value_im", "tail_bound", "P", "M"}) +
             csv_line({std::to_string(c.family), format_double(shift.alpha.real()), format_double(shift.alpha.imag()),
                       format_double(shift.gamma.real()), format_double(shift.gamma.imag()), format_double(v.value.real()),
                       format_double(v.value.imag()), format_double(v.tail_bound), std::to_string(v.prime_cutoff),
                       std::to_string(v.series_order)});
  }
  return o;
}

// ---- predict-density

std::string gnuplot_script(const DensityCurve& d, int family) {
  std::ostringstream s;
  s << "set title \"family " << family << ", X = " << format_double(d.X) << "\"\n";
  s << "set xlabel \"tau\"\nset ylabel \"scaled density\"\nset key top right\n";
  s << "$density << EOD\n";
  for (std::size_t i = 0; i < d.tau_grid.size(); ++i)
    s << format_double(d.tau_grid[i]) << ' ' << format_double(d.smooth_values[i]) << ' ' << format_double(d.taylor_values[i]) << ' '
      << format_double(d.catalog_values[i]) << '\n';
  s << "EOD\n";
  s << "plot $density using 1:2 with lines lw 2 title \"smooth\", \\\n"
    << "     $density using 1:3 with lines dt 2 title \"taylor\", \\\n"
    << "     $density using 1:4 with lines dt 3 title \"" << to_string(limiting_symmetry(d.family)) << "\"\n";
  return s.str();
}

Output cmd_predict_density(const RunConfig& c) {
  const Family f = to_family(c.family);
  if (!(c.X >= 1e4) || c.X > 1e300) throw ConfigError("--X must be in [1e4, 1e300]");
  if (c.tau_steps < 1 || c.tau_steps > 100000) throw ConfigError("--tau-steps must be in [1, 1e5]");
  if (!(c.tau_min >= 0.0) || !(c.tau_max >= c.tau_min)) throw ConfigError("need 0 <= tau-min <= tau-max");
  if (c.prime_cutoff < 100 || c.prime_cutoff > 1000000) throw ConfigError("--prime-cutoff must be in [100, 1e6]");
  if (c.root_number_mean < -1.0 || c.root_number_mean > 1.0) throw ConfigError("--root-number-mean must be in [-1, 1]");
  const TestFunction tf = parse_test_function(c.test_function);

  DensityOptions opt;
  opt.prime_cutoff = c.prime_cutoff;
  opt.series_order = std::max(0, c.series_order);
  opt.root_number_mean = c.root_number_mean;

  std::vector<double> grid(static_cast<std::size_t>(c.tau_steps));
  for (int i = 0; i < c.tau_steps; ++i)
    grid[static_cast<std::size_t>(i)] =
        c.tau_steps == 1 ? c.tau_min : c.tau_min + (c.tau_max - c.tau_min) * i / static_cast<double>(c.tau_steps - 1);

  const DensityConstants constants = density_constants(f, opt);
  const auto parts = parallel_map(grid.size(), c.threads, [&](std::size_t i) { return scaled_density(f, c.X, {grid[i]}, opt, constants); });
  DensityCurve d = parts.front();
  d.tau_grid.clear();
  d.smooth_values.clear();
  d.taylor_values.clear();
  d.catalog_values.clear();
  for (const DensityCurve& p : parts) {
    d.tau_grid.push_back(p.tau_grid[0]);
    d.smooth_values.push_back(p.smooth_values[0]);
    d.taylor_values.push_back(p.taylor_values[0]);
    d.catalog_values.push_back(p.catalog_values[0]);
  }
  const QuadratureValue pred = predict_one_level(f, c.X, tf, opt);
  const QuadratureValue cat = catalog_one_level(limiting_symmetry(f), tf);

  Output o;
  if (!pred.converged) o.failures.push_back("one-level quadrature did not converge");
  if (!c.plot_script.empty()) write_text(c.plot_script, gnuplot_script(d, c.family), std::cout);
  if (want_json(c)) {
    json rows = json::array();
    for (std::size_t i = 0; i < d.tau_grid.size(); ++i)
      rows.push_back({{"tau", d.tau_grid[i]}, {"smooth", d.smooth_values[i]}, {"taylor", d.taylor_values[i]}, {"catalog", d.catalog_values[i]}});
    json j{{"family", c.family},
           {"X", c.X},
           {"L", d.L},
           {"delta_mass", d.delta_mass},
           {"symmetry", to_string(limiting_symmetry(f))},
           {"test_function", tf.name},
           {"prediction", {{"value", pred.value}, {"err", pred.err}, {"converged", pred.converged}}},
           {"catalog_prediction", cat.value},
           {"constants",
            {{"A_alpha", constants.A_alpha},
             {"A_gamma", constants.A_gamma},
             {"A_alpha_alpha_re", constants.A_alpha_alpha.value.real()},
             {"gamma0", constants.gamma0},
             {"gamma1", constants.gamma1}}},
           {"taylor",
            {{"c0", d.taylor.c0_const},
             {"c_over_L", d.taylor.c_over_L},
             {"c_oscillating", d.taylor.c_oscillating},
             {"c_over_L2", d.taylor.c_over_L2}}},
           {"rows", rows}};
    o.body = j.dump(2) + "\n";
  } else {
    std::string csv = csv_line({"tau", "smooth", "taylor", "catalog", "delta_mass"});
    for (std::size_t i = 0; i < d.tau_grid.size(); ++i)
      csv += csv_line({format_double(d.tau_grid[i]), format_double(d.smooth_values[i]), format_double(d.taylor_values[i]),
                       format_double(d.catalog_values[i]), format_double(d.delta_mass)});
    o.body = csv;
  }
  return o;
}

// ---- zeros

json zero_json(const LSeries& ls, const ZeroList& z, const CentralValues& cv) {
  return {{"t", ls.curve.t},
          {"conductor", static_cast<std::int64_t>(ls.conductor.value)},
          {"conductor_exact", ls.conductor.exact},
          {"conductor_note", ls.conductor.note},
          {"height", z.height},
          {"L", z.L},
          {"central_order", z.central_order},
          {"central_value", cv.value},
          {"central_first_derivative", cv.first},
          {"expected_count", z.expected_count},
          {"count", z.ordinates.size()},
          {"count_warning", z.count_warning},
          {"grid_refinements", z.grid_refinements},
          {"max_residual", z.max_residual},
          {"ordinates", z.ordinates},
          {"scaled", z.scaled}};
}

LSeries checked_lseries(std::int64_t t) {
  if (std::abs(t) > 1000000) throw ConfigError("|t| must be at most 1e6");
  const WashingtonCurve curve{t};
  const Conductor N = verified_conductor(curve);
  if (N.to_double() > 1e6) throw ConfigError("conductor of t=" + std::to_string(t) + " exceeds 1e6");
  return make_lseries(curve, N);
}

Output cmd_zeros(const RunConfig& c, bool scale_given) {
  if (!(c.height > 0.0) || c.height > 30.0) throw ConfigError("--height must be in (0, 30]");
  const LSeries ls = checked_lseries(c.t_param);
  const double L = scale_given ? std::log(std::sqrt(c.X) / (2.0 * std::numbers::pi)) : 0.0;
  if (scale_given && !(L > 0.0)) throw ConfigError("--X too small");
  const ZeroList z = find_zeros(ls, c.height, L);
  const CentralValues cv = central_values(ls);
  Output o;
  if (!ls.conductor.exact) o.failures.push_back("conductor not verified");
  if (z.count_warning) o.failures.push_back("zero count differs from the estimate by more than 2");
  if (z.max_residual > 1e-6) o.failures.push_back("zero residual above 1e-6");
  if (want_json(c)) {
    o.body = zero_json(ls, z, cv).dump(2) + "\n";
  } else {
    std::string csv = csv_line({"t", "conductor", "index", "ordinate", "scaled"});
    const std::string N = ls.conductor.value.str();
    for (int k = 0; k < z.central_order; ++k) csv += csv_line({std::to_string(ls.curve.t), N, "central", "0", "0"});
    for (std::size_t i = 0; i < z.ordinates.size(); ++i)
      csv += csv_line({std::to_string(ls.curve.t), N, std::to_string(i + 1), format_double(z.ordinates[i]), format_double(z.scaled[i])});
    o.body = csv;
  }
  return o;
}

// ---- empirical

Output cmd_empirical(const RunConfig& c, bool scale_given) {
  const auto ts = parse_int_list(c.t_list);
  if (ts.empty() || ts.size() > 2000) throw ConfigError("--t-range must name 1 to 2000 curves");
  if (!(c.max_height > 0.0) || c.max_height > 30.0) throw ConfigError("--max-height must be in (0, 30]");
  const TestFunction tf = parse_test_function(c.test_function);
  struct Candidate {
    std::int64_t t;
    Conductor N;
  };
  const auto cands = parallel_map(ts.size(), c.threads, [&](std::size_t i) { return Candidate{ts[i], verified_conductor(WashingtonCurve{ts[i]})}; });
  std::vector<std::int64_t> kept;
  json skipped = json::array();
  for (const Candidate& k : cands) {
    if (k.N.exact && k.N.to_double() <= 1e6)
      kept.push_back(k.t);
    else
      skipped.push_back({{"t", k.t}, {"conductor", k.N.value.str()}, {"note", k.N.note}});
  }
  if (kept.empty()) throw ConfigError("no curve in range has a verified conductor below 1e6");
  const auto series = parallel_map(kept.size(), c.threads, [&](std::size_t i) { return checked_lseries(kept[i]); });
  double X = c.X;
  if (!scale_given) {
    double s = 0.0;
    for (const LSeries& ls : series) s += std::log(ls.conductor.to_double());
    X = std::exp(s / static_cast<double>(series.size()));
  }
  if (!(std::log(std::sqrt(X) / (2.0 * std::numbers::pi)) > 0.0)) throw ConfigError("--X too small");
  struct Row {
    EmpiricalRow row;
    bool warning;
  };
  const auto rows = parallel_map(series.size(), c.threads, [&](std::size_t i) {
    const EmpiricalResult r = empirical_one_level({series[i]}, tf, X, c.max_height);
    const double L = r.L;
    const ZeroList z = find_zeros(series[i], r.rows[0].height, L);
    return Row{r.rows[0], z.count_warning};
  });
  double avg = 0.0, cavg = 0.0;
  Output o;
  for (const Row& r : rows) {
    avg += r.row.contribution;
    cavg += r.row.central_contribution;
    if (r.warning) o.failures.push_back("zero count warning at t=" + std::to_string(r.row.t));
  }
  avg /= static_cast<double>(rows.size());
  cavg /= static_cast<double>(rows.size());
  if (want_json(c)) {
    json arr = json::array();
    for (const Row& r : rows)
      arr.push_back({{"t", r.row.t},
                     {"conductor", static_cast<std::int64_t>(r.row.conductor)},
                     {"contribution", r.row.contribution},
                     {"central_contribution", r.row.central_contribution},
                     {"height", r.row.height},
                     {"truncated", r.row.truncated}});
    json j{{"X", X}, {"L", std::log(std::sqrt(X) / (2.0 * std::numbers::pi))}, {"test_function", tf.name}, {"curves", arr},
           {"average", avg}, {"central_average", cavg}, {"skipped", skipped}};
    o.body = j.dump(2) + "\n";
  } else {
    std::string csv = csv_line({"curve", "conductor", "contribution", "central_contribution", "height"});
    for (const Row& r : rows)
      csv += csv_line({std::to_string(r.row.t), r.row.conductor.str(), format_double(r.row.contribution),
                       format_double(r.row.central_contribution), format_double(r.row.height)});
    csv += csv_line({"average", "", format_double(avg), format_double(cavg), ""});
    o.body = csv;
  }
  return o;
}

// ---- bsd

Output cmd_bsd(const RunConfig& c) {
  const auto ts = parse_int_list(c.t_list);
  if (ts.empty() || ts.size() > 100) throw ConfigError("--t-range must name 1 to 100 curves");
  if (c.x_max < 1000 || c.x_max > 1000000) throw ConfigError("--x-max must be in [1e3, 1e6]");
  if (c.ladder_points < 3 || c.ladder_points > 200) throw ConfigError("--ladder-points must be in [3, 200]");
  const auto res = parallel_map(ts.size(), c.threads, [&](std::size_t i) { return bsd_decomposition(WashingtonCurve{ts[i]}, c.x_max, c.ladder_points); });
  Output o;
  json arr = json::array();
  std::string csv = csv_line({"t", "x_max", "slope_full", "slope_shifted", "difference", "identity_residual"});
  for (const BsdDecomposition& b : res) {
    if (!(b.identity_residual < 1e-8)) o.failures.push_back("three-factor identity residual above 1e-8 at t=" + std::to_string(b.t));
    const double d = b.slope_full - b.slope_shifted;
    csv += csv_line({std::to_string(b.t), std::to_string(b.x_max), format_double(b.slope_full), format_double(b.slope_shifted),
                     format_double(d), format_double(b.identity_residual)});
    arr.push_back({{"t", b.t},
                   {"x_max", b.x_max},
                   {"slope_full", b.slope_full},
                   {"slope_shifted", b.slope_shifted},
                   {"difference", d},
                   {"identity_residual", b.identity_residual},
                   {"x_ladder", b.x_ladder},
                   {"log_product_full", b.log_product_full},
                   {"log_product_shifted", b.log_product_shifted}});
  }
  o.body = want_json(c) ? arr.dump(2) + "\n" : csv;
  return o;
}

void error_json(std::ostream& err, const std::string& kind, const std::string& message, int code) {
  err << json{{"error", kind}, {"message", message}, {"exit_code", code}}.dump() << '\n';
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

cplx parse_complex(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  auto real = [&](const std::string& v) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(v, &used);
    } catch (const std::logic_error&) {
      used = 0;
    }
    if (v.empty() || used != v.size() || v[0] == ' ') throw ConfigError("cannot parse complex number '" + text + "'");
    return x;
  };
  if (s.empty()) return real(s);
  if (s.back() != 'i') return {real(s), 0.0};
  s.pop_back();
  std::size_t k = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;)
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      k = i;
      break;
    }
  const std::string re = k == std::string::npos ? "" : s.substr(0, k);
  std::string im = k == std::string::npos ? s : s.substr(k);
  if (im.empty() || im == "+" || im == "-") im += "1";
  return {re.empty() ? 0.0 : real(re), real(im)};
}

std::vector<std::int64_t> parse_int_list(const std::string& s) {
  std::vector<std::int64_t> out;
  try {
    const auto colon = s.find(':', 1);
    if (colon != std::string::npos) {
      const std::int64_t a = std::stoll(s.substr(0, colon)), b = std::stoll(s.substr(colon + 1));
      if (b < a || b - a > 100000) throw ConfigError("bad range '" + s + "'");
      for (std::int64_t t = a; t <= b; ++t) out.push_back(t);
      return out;
    }
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (item.find_first_not_of(' ', used) != std::string::npos) throw ConfigError("bad integer '" + item + "'");
    }
  } catch (const std::logic_error&) {
    throw ConfigError("cannot parse integer list '" + s + "'");
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Ratios-conjecture one-level densities for elliptic-curve families", "eclld"};
  app.set_config("--config", "", "key=value configuration file; command-line flags take precedence");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1, 1);
  app.fallthrough();

  app.add_option("--family", c.family, "1: all curves, 2: Washington family")->check(CLI::IsMember({1, 2}));
  auto* x_opt = app.add_option("--X", c.X, "family size parameter");
  app.add_option("--prime-cutoff", c.prime_cutoff, "Euler product cutoff P");
  app.add_option("--order", c.series_order, "Hecke series order M (family 1 default 30; family 2 0 = closed form)");
  app.add_option("--tau-min", c.tau_min);
  app.add_option("--tau-max", c.tau_max);
  app.add_option("--tau-steps", c.tau_steps);
  app.add_option("--test-function", c.test_function, "gaussian, fejer or zero");
  auto* format_opt = app.add_option("--format", c.format, "csv or json (json default for euler-product and zeros)");
  app.add_option("--out", c.out, "output path (default stdout)");
  app.add_option("--plot-script", c.plot_script, "write a gnuplot script for the density curves");
  app.add_option("--threads", c.threads)->check(CLI::Range(1, 256));
  app.add_option("--pmin", c.pmin);
  app.add_option("--pmax", c.pmax);
  app.add_option("--m1-max", c.m1_max);
  app.add_option("--weight-max", c.weight_max);
  app.add_option("--alpha", c.alpha, "complex shift, e.g. 0.1+0.2i");
  app.add_option("--gamma", c.gamma, "complex shift");
  app.add_option("--root-number-mean", c.root_number_mean);
  app.add_option("--t-param", c.t_param, "Washington parameter t");
  app.add_option("--t-range", c.t_list, "a:b or a,b,c");
  app.add_option("--height", c.height, "zero search height");
  app.add_option("--max-height", c.max_height, "cap on the zero search height");
  app.add_option("--x-max", c.x_max, "largest prime in the partial products");
  app.add_option("--ladder-points", c.ladder_points);

  for (const char* name : {"verify-averages", "traces", "euler-product", "predict-density", "zeros", "empirical", "bsd"})
    app.add_subcommand(name);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    error_json(err, "config", e.what(), kExitConfig);
    return kExitConfig;
  }
  c.subcommand = app.get_subcommands().front()->get_name();
  const bool scale_given = x_opt->count() > 0;
  if (format_opt->count() == 0 && (c.subcommand == "euler-product" || c.subcommand == "zeros")) c.format = "json";

  try {
    Output o;
    if (c.subcommand == "verify-averages")
      o = cmd_verify_averages(c);
    else if (c.subcommand == "traces")
      o = cmd_traces(c);
    else if (c.subcommand == "euler-product")
      o = cmd_euler_product(c);
    else if (c.subcommand == "predict-density")
      o = cmd_predict_density(c);
    else if (c.subcommand == "zeros")
      o = cmd_zeros(c, scale_given);
    else if (c.subcommand == "empirical")
      o = cmd_empirical(c, scale_given);
    else
      o = cmd_bsd(c);
    write_text(c.out, o.body, out);
    if (!o.failures.empty()) {
      std::string msg;
      for (const auto& f : o.failures) msg += (msg.empty() ? "" : "; ") + f;
      error_json(err, "assertion", msg, kExitAssertion);
      return kExitAssertion;
    }
    return 0;
  } catch (const ConfigError& e) {
    error_json(err, "config", e.what(), kExitConfig);
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    error_json(err, "config", e.what(), kExitConfig);
    return kExitConfig;
  } catch (const std::domain_error& e) {
    error_json(err, "config", e.what(), kExitConfig);
    return kExitConfig;
  } catch (const std::exception& e) {
    error_json(err, "assertion", e.what(), kExitAssertion);
    return kExitAssertion;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace eclld::cli
