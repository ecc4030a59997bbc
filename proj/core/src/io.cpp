#include "nonfloquet/io.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "nonfloquet/errors.hpp"

namespace nonfloquet {

namespace {

using nlohmann::json;

void reject_unknown(const json& object, const std::set<std::string>& allowed, const std::string& where) {
  if (!object.is_object()) throw InvalidInputError(where + ": expected an object");
  for (const auto& item : object.items()) {
    if (!allowed.count(item.key())) throw InvalidInputError(where + ": unknown key '" + item.key() + "'");
  }
}

double number(const json& value, const std::string& what) {
  if (!value.is_number()) throw InvalidInputError(what + ": expected a number");
  return value.get<double>();
}

double number_or(const json& object, const char* key, double fallback, const std::string& where) {
  return object.contains(key) ? number(object.at(key), where + "." + key) : fallback;
}

Complex complex_value(const json& value, const std::string& what) {
  if (value.is_number()) return {value.get<double>(), 0.0};
  if (value.is_array() && value.size() == 2 && value[0].is_number() && value[1].is_number()) {
    return {value[0].get<double>(), value[1].get<double>()};
  }
  throw InvalidInputError(what + ": expected a number or an [re, im] pair");
}

std::size_t count(const json& value, const std::string& what) {
  if (!value.is_number_integer() || value.get<long long>() < 1) {
    throw InvalidInputError(what + ": expected a positive integer");
  }
  return value.get<std::size_t>();
}

ChainVariant parse_variant(const std::string& name) {
  if (name == "non_hermitian") return ChainVariant::non_hermitian;
  if (name == "hermitian_counterpart") return ChainVariant::hermitian_counterpart;
  if (name == "temporal_only_deformed") return ChainVariant::temporal_only_deformed;
  throw ConfigError("model: unknown variant '" + name + "'");
}

BipartiteChainSpec parse_chain(const json& doc) {
  reject_unknown(doc, {"model", "variant", "boundary", "L", "k", "omega", "phase", "params"}, "bipartite_chain");
  BipartiteChainSpec spec;
  if (!doc.contains("variant")) throw InvalidInputError("bipartite_chain: missing 'variant'");
  spec.variant = parse_variant(doc.at("variant").get<std::string>());
  const std::string boundary = doc.value("boundary", std::string("open"));
  if (boundary == "open") {
    spec.boundary = Boundary::open;
  } else if (boundary == "periodic") {
    spec.boundary = Boundary::periodic;
  } else if (boundary == "momentum") {
    spec.momentum = number_or(doc, "k", 0.0, "bipartite_chain");
  } else {
    throw InvalidInputError("bipartite_chain: unknown boundary '" + boundary + "'");
  }
  if (doc.contains("k") && !spec.momentum) throw InvalidInputError("bipartite_chain: 'k' needs boundary momentum");
  if (doc.contains("L")) spec.cells = count(doc.at("L"), "bipartite_chain.L");
  const json params = doc.value("params", json::object());
  reject_unknown(params, {"r1", "r2", "v", "q1", "q2", "t1", "t2", "p", "mu0"}, "bipartite_chain.params");
  const std::string w = "bipartite_chain.params";
  spec.r1 = number_or(params, "r1", 0.0, w);
  spec.r2 = number_or(params, "r2", 0.0, w);
  spec.v = number_or(params, "v", 0.0, w);
  spec.q1 = number_or(params, "q1", 0.0, w);
  spec.q2 = number_or(params, "q2", 0.0, w);
  spec.t1 = number_or(params, "t1", 0.0, w);
  spec.t2 = number_or(params, "t2", 0.0, w);
  spec.p = number_or(params, "p", 0.0, w);
  spec.mu0 = number_or(params, "mu0", 0.0, w);
  return spec;
}

StepQuenchSpec parse_quench(const json& doc) {
  reject_unknown(doc, {"model", "k", "omega", "phase", "params", "steps"}, "step_quench");
  const json params = doc.value("params", json::object());
  reject_unknown(params, {"J", "period", "gamma_z", "ladder_scale"}, "step_quench.params");
  StepQuenchSpec spec;
  if (doc.contains("steps")) {
    if (params.contains("J") || params.contains("period")) {
      throw InvalidInputError("step_quench: give either 'steps' or params J/period, not both");
    }
    if (!doc.at("steps").is_array()) throw InvalidInputError("step_quench.steps: expected an array");
    for (const auto& item : doc.at("steps")) {
      reject_unknown(item, {"duration", "j1", "j2", "bond"}, "step_quench.steps[]");
      QuenchStep step;
      step.duration = number(item.at("duration"), "step_quench.steps[].duration");
      step.j1 = complex_value(item.at("j1"), "step_quench.steps[].j1");
      step.j2 = complex_value(item.at("j2"), "step_quench.steps[].j2");
      if (item.contains("bond")) {
        const auto& b = item.at("bond");
        if (!b.is_array() || b.size() != 2) throw InvalidInputError("step_quench.steps[].bond: expected [x, y]");
        step.bond = {number(b[0], "bond"), number(b[1], "bond")};
      }
      spec.steps.push_back(step);
    }
  } else {
    if (!params.contains("J")) throw InvalidInputError("step_quench: missing params.J or steps");
    spec = StepQuenchSpec::seven_step(number(params.at("J"), "step_quench.params.J"),
                                      number_or(params, "period", 1.0, "step_quench.params"));
  }
  if (params.contains("gamma_z")) spec.gamma_z = complex_value(params.at("gamma_z"), "step_quench.params.gamma_z");
  spec.ladder_scale = number_or(params, "ladder_scale", 1.0, "step_quench.params");
  if (doc.contains("k")) {
    const auto& k = doc.at("k");
    if (!k.is_array() || k.size() != 2) throw InvalidInputError("step_quench.k: expected [kx, ky]");
    spec.k = {number(k[0], "k"), number(k[1], "k")};
  }
  return spec;
}

StarkChainSpec parse_stark(const json& doc) {
  reject_unknown(doc, {"model", "N", "omega", "phase", "params"}, "stark_chain");
  const json params = doc.value("params", json::object());
  reject_unknown(params, {"t_left", "t_right", "alpha"}, "stark_chain.params");
  StarkChainSpec spec;
  if (doc.contains("N")) spec.sites = count(doc.at("N"), "stark_chain.N");
  spec.t_left = number_or(params, "t_left", 1.0, "stark_chain.params");
  spec.t_right = number_or(params, "t_right", 1.0, "stark_chain.params");
  spec.field = number_or(params, "alpha", 0.0, "stark_chain.params");
  return spec;
}

}  // namespace

ModelSpec parse_model_spec(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw InvalidInputError(std::string("model file: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("model")) throw InvalidInputError("model file: missing 'model'");
  ModelSpec spec;
  try {
    const std::string kind = doc.at("model").get<std::string>();
    if (kind == "bipartite_chain") {
      spec.body = parse_chain(doc);
    } else if (kind == "step_quench") {
      spec.body = parse_quench(doc);
    } else if (kind == "stark_chain") {
      spec.body = parse_stark(doc);
    } else {
      throw ConfigError("model file: unknown model '" + kind + "'");
    }
    spec.drive.omega = number_or(doc, "omega", 1.0, "model");
    spec.drive.phase = number_or(doc, "phase", 0.0, "model");
  } catch (const json::exception& e) {
    throw InvalidInputError(std::string("model file: ") + e.what());
  }
  if (auto* quench = std::get_if<StepQuenchSpec>(&spec.body)) {
    // The quench period is set by its steps.
    if (doc.contains("omega")) throw InvalidInputError("step_quench: period comes from the steps, drop 'omega'");
    spec.drive.omega = kTwoPi / quench->period();
  }
  spec.drive.validate();
  std::visit([](const auto& body) { body.validate(); }, spec.body);
  return spec;
}

ModelSpec load_model_spec(const std::string& path) { return parse_model_spec(read_file(path)); }

std::string format_csv(const Table& table) {
  std::string out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out += ',';
    out += table.columns[c];
  }
  out += '\n';
  char buf[64];
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) throw DimensionError("format_csv: row width does not match header");
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      std::snprintf(buf, sizeof buf, "%.16e", row[c]);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

Table parse_csv(const std::string& text) {
  Table table;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw InvalidInputError("parse_csv: empty input");
  {
    std::istringstream header(line);
    std::string cell;
    while (std::getline(header, cell, ',')) table.columns.push_back(cell);
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::size_t start = 0;
    while (start <= line.size()) {
      const std::size_t end = std::min(line.find(',', start), line.size());
      double value = 0.0;
      const auto res = std::from_chars(line.data() + start, line.data() + end, value);
      if (res.ec != std::errc() || res.ptr != line.data() + end) {
        throw InvalidInputError("parse_csv: malformed number");
      }
      row.push_back(value);
      start = end + 1;
    }
    if (row.size() != table.columns.size()) throw InvalidInputError("parse_csv: row width does not match header");
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string format_double_shortest(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  std::filesystem::path temp = target;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidInputError("cannot open '" + temp.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) throw InvalidInputError("write to '" + temp.string() + "' failed");
  }
  std::error_code ec;
  std::filesystem::rename(temp, target, ec);
  if (ec) {
    std::filesystem::remove(temp);
    throw InvalidInputError("cannot move output into '" + path + "': " + ec.message());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInputError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace nonfloquet
