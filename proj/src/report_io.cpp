#include "circderiv/report_io.hpp"

#include <algorithm>
#include <ostream>

#include <json.hpp>

#include "circderiv/text_util.hpp"

namespace circderiv {

namespace {

using nlohmann::json;

bool has_polar_columns(const ExperimentConfig& config) { return config.scheme.kind == SchemeKind::Polar; }

// Numeric values of a successful row, aligned with the columns between
// "prohorov" and "target_bias".
std::vector<double> row_values(const ExperimentConfig& config, const ConvergenceRow& row) {
  std::vector<double> v{row.prohorov_to_target, row.mass_in_disk_r};
  v.insert(v.end(), row.powersum_err.begin(), row.powersum_err.end());
  v.insert(v.end(), {row.char_err_max, row.pairing_zeros_frac, row.pairing_crit_frac,
                     row.pairing_event ? 1.0 : 0.0, row.containment_max_modulus,
                     row.cor5_ratio_abs_sum, row.cor5_abs_ratio_sum});
  if (has_polar_columns(config)) v.insert(v.end(), row.b_m_est_err.begin(), row.b_m_est_err.end());
  v.push_back(row.target_bias);
  return v;
}

std::string sanitize(std::string s) {
  std::replace_if(s.begin(), s.end(), [](char c) { return c == ',' || c == '\n' || c == '\r'; }, ' ');
  return s;
}

}  // namespace

std::vector<std::string> convergence_columns(const ExperimentConfig& config) {
  std::vector<std::string> cols{"n", "seed", "prohorov", "mass_disk"};
  for (unsigned p = 1; p <= config.p_max; ++p) cols.push_back("psum_err_" + std::to_string(p));
  for (const char* c : {"char_err_max", "pair_zeros", "pair_crit", "pair_event", "containment_max",
                        "cor5_abs_mean", "cor5_sum_abs_mean"})
    cols.emplace_back(c);
  if (has_polar_columns(config))
    for (int m = 0; m <= 3; ++m) cols.push_back("bm_err_" + std::to_string(m));
  for (const char* c : {"target_bias", "stream", "error"}) cols.emplace_back(c);
  return cols;
}

void write_convergence_csv(std::ostream& out, const ExperimentConfig& config,
                           std::span<const ConvergenceRow> rows) {
  const auto cols = convergence_columns(config);
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  const std::size_t numeric = cols.size() - 4;  // all but n, seed, stream, error
  for (const auto& row : rows) {
    out << row.n << ',' << row.seed.seed;
    if (row.error) {
      for (std::size_t i = 0; i < numeric; ++i) out << ',';
    } else {
      for (double v : row_values(config, row)) out << ',' << detail::format_real(v);
    }
    out << ',' << row.seed.stream << ',' << (row.error ? sanitize(*row.error) : "") << '\n';
  }
}

std::string convergence_json(const ExperimentConfig& config, std::span<const ConvergenceRow> rows) {
  json cfg{{"law", config.law.to_string()},
           {"scheme", to_string(config.scheme)},
           {"k", config.k},
           {"n", config.n_list},
           {"p_max", config.p_max},
           {"disk_r", config.disk_r},
           {"eps0", config.eps0},
           {"q", config.q},
           {"target_atoms", config.target_atoms},
           {"prohorov_tol", config.prohorov_tol}};
  json seeds = json::array();
  for (const auto& s : config.seeds) seeds.push_back({{"seed", s.seed}, {"stream", s.stream}});
  cfg["seeds"] = seeds;
  if (config.scheme.kind == SchemeKind::SzNagyRandom) cfg["sznagy_cap"] = config.scheme.sznagy_cap;
  json grid = json::array();
  for (const auto& t : config.char_grid) grid.push_back({t[0], t[1]});
  cfg["char_grid"] = grid;

  const auto cols = convergence_columns(config);
  json out_rows = json::array();
  for (const auto& row : rows) {
    json r{{"n", row.n}, {"seed", row.seed.seed}, {"stream", row.seed.stream}};
    if (row.error) {
      r["error"] = *row.error;
    } else {
      const auto values = row_values(config, row);
      for (std::size_t i = 0; i < values.size(); ++i) r[cols[2 + i]] = values[i];
      r["pair_event"] = row.pairing_event;
    }
    out_rows.push_back(std::move(r));
  }
  return json{{"config", cfg}, {"rows", out_rows}}.dump(2) + "\n";
}

void write_points_csv(std::ostream& out, std::span<const cdouble> points) {
  out << "re,im\n";
  for (const auto& z : points) out << detail::format_real(z.real()) << ',' << detail::format_real(z.imag()) << '\n';
}

}  // namespace circderiv
