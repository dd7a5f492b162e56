#pragma once

#include <string>
#include <vector>

#include "lrmp/problems.hpp"

namespace lrmp {

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);

/// Self-describing JSON instance file: resolved spec plus all generated data
/// arrays, so a loaded instance solves without re-running the generator.
void write_instance(const Instance& inst, const std::string& path);
Instance read_instance(const std::string& path);

/// CSV with header t,dual_gap,primal_rank,certificate_pass,objective,wall_ms.
void write_run_csv(const RunRecord& record, const std::string& path);
std::vector<IterRow> read_run_csv(const std::string& path);

void write_run_json(const RunRecord& record, const std::string& path);

}  // namespace lrmp
