#include "lrmp/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace lrmp {

using nlohmann::json;

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

namespace {

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const json& rows) {
  const auto nr = static_cast<Eigen::Index>(rows.size());
  if (nr == 0) return Eigen::MatrixXd(0, 0);
  const auto nc = static_cast<Eigen::Index>(rows[0].size());
  Eigen::MatrixXd m(nr, nc);
  for (Eigen::Index i = 0; i < nr; ++i)
    for (Eigen::Index j = 0; j < nc; ++j) m(i, j) = rows[i][j].get<double>();
  return m;
}

json vector_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Eigen::VectorXd vector_from_json(const json& arr) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(arr.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = arr[i].get<double>();
  return v;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

}  // namespace

void write_instance(const Instance& inst, const std::string& path) {
  const InstanceSpec& s = inst.meta;
  json doc;
  doc["format"] = "lrmp-instance";
  doc["version"] = 1;
  doc["spec"] = {
      {"family", family_to_string(s.family)},
      {"n", s.n},
      {"rank_gt", s.rank_gt},
      {"snr", s.snr},
      {"noise", noise_to_string(s.noise_kind)},
      {"lambda", s.lambda},
      {"tau", s.tau},
      {"m", s.m},
      {"op_rank", s.op_rank},
      {"seed", s.seed},
  };
  doc["resample_count"] = inst.resample_count;
  doc["ground_truth"] = matrix_to_json(inst.ground_truth);
  if (inst.observed.size() > 0) doc["observed"] = matrix_to_json(inst.observed);
  if (!inst.op.factors.empty()) {
    json factors = json::array();
    for (const auto& f : inst.op.factors) factors.push_back(matrix_to_json(f));
    doc["op_factors"] = std::move(factors);
  }
  if (inst.rhs.size() > 0) doc["rhs"] = vector_to_json(inst.rhs);
  doc["x1"] = {{"n", inst.x1.n},
               {"weights", vector_to_json(inst.x1.weights)},
               {"vectors", matrix_to_json(inst.x1.vectors)}};
  doc["y1"] = matrix_to_json(inst.y1.payload);

  auto out = open_out(path);
  out << doc.dump(1) << '\n';
}

Instance read_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open instance file: " + path);
  json doc = json::parse(in);
  if (doc.value("format", "") != "lrmp-instance" || doc.value("version", 0) != 1) {
    throw InvalidInput("not a version-1 lrmp instance file: " + path);
  }
  Instance inst;
  const json& s = doc.at("spec");
  inst.meta.family = family_from_string(s.at("family").get<std::string>());
  inst.meta.n = s.at("n").get<int>();
  inst.meta.rank_gt = s.at("rank_gt").get<int>();
  inst.meta.snr = s.at("snr").get<double>();
  inst.meta.noise_kind = noise_from_string(s.at("noise").get<std::string>());
  inst.meta.lambda = s.at("lambda").get<double>();
  inst.meta.tau = s.at("tau").get<double>();
  inst.meta.m = s.at("m").get<int>();
  inst.meta.op_rank = s.at("op_rank").get<int>();
  inst.meta.seed = s.at("seed").get<std::uint64_t>();
  inst.resample_count = doc.value("resample_count", 0);
  inst.ground_truth = matrix_from_json(doc.at("ground_truth"));
  if (doc.contains("observed")) inst.observed = matrix_from_json(doc.at("observed"));
  if (doc.contains("op_factors")) {
    for (const json& f : doc.at("op_factors")) {
      inst.op.factors.push_back(matrix_from_json(f));
    }
  }
  if (doc.contains("rhs")) inst.rhs = vector_from_json(doc.at("rhs"));
  const json& x1 = doc.at("x1");
  inst.x1.n = x1.at("n").get<int>();
  inst.x1.weights = vector_from_json(x1.at("weights"));
  inst.x1.vectors = matrix_from_json(x1.at("vectors"));
  inst.y1.payload = matrix_from_json(doc.at("y1"));
  attach_objective(inst);
  return inst;
}

void write_run_csv(const RunRecord& record, const std::string& path) {
  auto out = open_out(path);
  out << "t,dual_gap,primal_rank,certificate_pass,objective,wall_ms\n";
  for (const IterRow& row : record.rows) {
    out << row.t << ',' << format_double(row.dual_gap) << ',' << row.primal_rank
        << ',' << (row.certificate_pass ? 1 : 0) << ','
        << format_double(row.objective) << ',' << format_double(row.wall_ms)
        << '\n';
  }
  if (!out) throw std::runtime_error("failed writing run csv: " + path);
}

std::vector<IterRow> read_run_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open run csv: " + path);
  std::string line;
  if (!std::getline(in, line) ||
      line != "t,dual_gap,primal_rank,certificate_pass,objective,wall_ms") {
    throw InvalidInput("unexpected run csv header in " + path);
  }
  std::vector<IterRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    IterRow row;
    std::getline(ss, cell, ',');
    row.t = std::stoi(cell);
    std::getline(ss, cell, ',');
    row.dual_gap = std::stod(cell);
    std::getline(ss, cell, ',');
    row.primal_rank = std::stoi(cell);
    std::getline(ss, cell, ',');
    row.certificate_pass = cell == "1";
    std::getline(ss, cell, ',');
    row.objective = std::stod(cell);
    std::getline(ss, cell, ',');
    row.wall_ms = std::stod(cell);
    rows.push_back(row);
  }
  return rows;
}

void write_run_json(const RunRecord& record, const std::string& path) {
  json doc;
  doc["format"] = "lrmp-run";
  doc["version"] = 1;
  json rows = json::array();
  for (const IterRow& row : record.rows) {
    rows.push_back({{"t", row.t},
                    {"dual_gap", row.dual_gap},
                    {"primal_rank", row.primal_rank},
                    {"certificate_pass", row.certificate_pass},
                    {"objective", row.objective},
                    {"wall_ms", row.wall_ms}});
  }
  doc["rows"] = std::move(rows);
  doc["summary"] = {{"best_gap", record.best_gap},
                    {"best_iterate_index", record.best_iterate_index},
                    {"certificate_failures", record.certificate_failures},
                    {"notes", record.notes}};
  auto out = open_out(path);
  out << doc.dump(1) << '\n';
}

}  // namespace lrmp
