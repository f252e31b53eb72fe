#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "circderiv/experiments.hpp"

namespace circderiv {

/// Header: n,seed,prohorov,mass_disk,psum_err_1..psum_err_P,char_err_max,
/// pair_zeros,pair_crit,pair_event,containment_max,cor5_abs_mean,
/// cor5_sum_abs_mean,[bm_err_0..bm_err_3 for polar schemes],target_bias,
/// stream,error. Failed rows leave the numeric columns empty.
std::vector<std::string> convergence_columns(const ExperimentConfig& config);

void write_convergence_csv(std::ostream& out, const ExperimentConfig& config,
                           std::span<const ConvergenceRow> rows);

/// {"config": {...}, "rows": [{column: value, ...}, ...]} with the CSV
/// column names as keys.
std::string convergence_json(const ExperimentConfig& config, std::span<const ConvergenceRow> rows);

void write_points_csv(std::ostream& out, std::span<const cdouble> points);

}  // namespace circderiv
