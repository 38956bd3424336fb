#include "gatetrim/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace gatetrim {

namespace {

std::string fmt_double(double v, const char* spec) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

std::string g17(double v) { return fmt_double(v, "%.17g"); }
std::string g15(double v) { return fmt_double(v, "%.15g"); }

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

// Splits "a,b" into exactly two trimmed fields.
std::pair<std::string, std::string> split2(const std::string& line,
                                           const char* what) {
  const auto comma = line.find(',');
  if (comma == std::string::npos ||
      line.find(',', comma + 1) != std::string::npos) {
    throw ParseError(std::string(what) + ": expected two comma-separated " +
                     "fields, got \"" + line + "\"");
  }
  return {trim(line.substr(0, comma)), trim(line.substr(comma + 1))};
}

}  // namespace

double parse_double(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) throw ParseError("empty numeric field");
  std::size_t consumed = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &consumed);
  } catch (const std::exception&) {
    throw ParseError("cannot parse \"" + t + "\" as a real number");
  }
  if (consumed != t.size()) {
    throw ParseError("trailing characters in numeric field \"" + t + "\"");
  }
  return v;
}

std::uint64_t parse_u64(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty() || t[0] == '-') {
    throw ParseError("cannot parse \"" + t + "\" as a nonnegative integer");
  }
  std::size_t consumed = 0;
  std::uint64_t v = 0;
  try {
    v = std::stoull(t, &consumed);
  } catch (const std::exception&) {
    throw ParseError("cannot parse \"" + t + "\" as a nonnegative integer");
  }
  if (consumed != t.size()) {
    throw ParseError("trailing characters in integer field \"" + t + "\"");
  }
  return v;
}

std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    out.push_back(static_cast<std::size_t>(parse_u64(item)));
  }
  if (out.empty()) throw ParseError("empty list field \"" + text + "\"");
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path + " for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open " + path + " for writing");
  out << content;
  if (!out) throw ParseError("write to " + path + " failed");
}

std::string matrix_to_csv(const ComplexMatrix& m) {
  std::string out = std::to_string(m.rows()) + "," + std::to_string(m.cols()) +
                    "\n";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      out += g17(m(r, c).real());
      out += ",";
      out += g17(m(r, c).imag());
      out += "\n";
    }
  }
  return out;
}

ComplexMatrix matrix_from_csv(const std::string& text) {
  std::stringstream ss(text);
  std::string line;
  if (!std::getline(ss, line)) throw ParseError("matrix CSV: empty input");
  const auto [rs, cs] = split2(line, "matrix CSV header");
  const std::size_t rows = static_cast<std::size_t>(parse_u64(rs));
  const std::size_t cols = static_cast<std::size_t>(parse_u64(cs));
  if (rows == 0 || cols == 0) {
    throw ParseError("matrix CSV: dimensions must be positive");
  }
  ComplexMatrix m(rows, cols);
  std::size_t filled = 0;
  while (std::getline(ss, line)) {
    if (trim(line).empty()) continue;
    if (filled >= rows * cols) {
      throw ParseError("matrix CSV: more entries than rows*cols");
    }
    const auto [re, im] = split2(line, "matrix CSV entry");
    m(filled / cols, filled % cols) = cxd(parse_double(re), parse_double(im));
    ++filled;
  }
  if (filled != rows * cols) {
    throw ParseError("matrix CSV: expected " + std::to_string(rows * cols) +
                     " entries, got " + std::to_string(filled));
  }
  return m;
}

void write_matrix_csv(const std::string& path, const ComplexMatrix& m) {
  write_text_file(path, matrix_to_csv(m));
}

ComplexMatrix read_matrix_csv(const std::string& path) {
  return matrix_from_csv(read_text_file(path));
}

std::string circuit_to_json(const Circuit& c) {
  const std::size_t n = qubit_count(c.dim);
  nlohmann::ordered_json root;
  root["dim"] = c.dim;
  root["n_qubits"] = n;
  root["convention"] = "left-to-right-product";
  root["gates"] = nlohmann::ordered_json::array();
  for (const TwoLevelGate& g : c.gates) {
    validate_gate(g);
    nlohmann::ordered_json jg;
    jg["i"] = g.i + 1;
    jg["j"] = g.j + 1;
    jg["block"] = {{{g.block.a.real(), g.block.a.imag()},
                    {g.block.b.real(), g.block.b.imag()}},
                   {{g.block.c.real(), g.block.c.imag()},
                    {g.block.d.real(), g.block.d.imag()}}};
    // Angles describe the block itself when it is unitary, otherwise its
    // polar factor (penalty-mode gates are only nearly unitary).  A
    // singular block has no polar factor, so the derived field is omitted;
    // heavily ridge-shrunk penalty-mode gates can legitimately end there.
    try {
      const Block2 basis = (unitarity_error(g.block) <= 1e-8)
                               ? g.block
                               : nearest_unitary_2x2(g.block);
      const EulerAngles e = euler_decompose(basis, 1e-8);
      jg["euler"] = {{"alpha", e.alpha},
                     {"theta", e.theta},
                     {"phi", e.phi},
                     {"lambda", e.lambda}};
    } catch (const DomainError&) {
    }
    const Transition t = position_to_transition(g.i + 1, g.j + 1, n);
    jg["transition"] = {{"from", t.from}, {"to", t.to}};
    root["gates"].push_back(jg);
  }
  return root.dump(2) + "\n";
}

Circuit circuit_from_json(const std::string& text) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("circuit JSON: ") + e.what());
  }
  try {
    Circuit c;
    c.dim = root.at("dim").get<std::size_t>();
    if (!is_power_of_two(c.dim) || c.dim < 2) {
      throw ParseError("circuit JSON: dim " + std::to_string(c.dim) +
                       " is not a power of two >= 2");
    }
    if (root.contains("convention") &&
        root.at("convention").get<std::string>() != "left-to-right-product") {
      throw ParseError("circuit JSON: unsupported convention");
    }
    for (const auto& jg : root.at("gates")) {
      const std::size_t i1 = jg.at("i").get<std::size_t>();
      const std::size_t j1 = jg.at("j").get<std::size_t>();
      if (!(1 <= i1 && i1 < j1 && j1 <= c.dim)) {
        throw ParseError("circuit JSON: gate position (" + std::to_string(i1) +
                         "," + std::to_string(j1) + ") out of range");
      }
      const auto& b = jg.at("block");
      if (b.size() != 2 || b[0].size() != 2 || b[1].size() != 2) {
        throw ParseError("circuit JSON: block must be 2x2");
      }
      auto entry = [](const nlohmann::json& e) {
        if (e.size() != 2) {
          throw ParseError("circuit JSON: block entry must be [re, im]");
        }
        return cxd(e[0].get<double>(), e[1].get<double>());
      };
      c.gates.push_back(TwoLevelGate{
          c.dim, i1 - 1, j1 - 1,
          Block2{entry(b[0][0]), entry(b[0][1]), entry(b[1][0]),
                 entry(b[1][1])}});
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("circuit JSON: ") + e.what());
  }
}

void write_circuit_json(const std::string& path, const Circuit& c) {
  write_text_file(path, circuit_to_json(c));
}

Circuit read_circuit_json(const std::string& path) {
  return circuit_from_json(read_text_file(path));
}

std::string trace_to_csv(const std::vector<TraceRecord>& trace) {
  std::string out =
      "iteration,working_index,i,j,loss,penalized_objective,grad_norm,"
      "lambda,mu,unitarity_residual_of_gate\n";
  for (const TraceRecord& r : trace) {
    out += std::to_string(r.iteration) + "," + std::to_string(r.working_index) +
           "," + std::to_string(r.i + 1) + "," + std::to_string(r.j + 1) + "," +
           g15(r.loss) + "," + g15(r.penalized_objective) + "," +
           g15(r.grad_norm) + "," + g15(r.lambda) + "," + g15(r.mu) + "," +
           g15(r.unitarity_residual_of_gate) + "\n";
  }
  return out;
}

void write_trace_csv(const std::string& path,
                     const std::vector<TraceRecord>& trace) {
  write_text_file(path, trace_to_csv(trace));
}

std::string heatmap_to_csv(const ComplexMatrix& m) {
  std::string out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) out += ",";
      out += g15(std::abs(m(r, c)));
    }
    out += "\n";
  }
  return out;
}

void write_heatmap_csv(const std::string& path, const ComplexMatrix& m) {
  write_text_file(path, heatmap_to_csv(m));
}

std::map<std::string, std::string> parse_kv_text(const std::string& text) {
  std::map<std::string, std::string> out;
  std::stringstream ss(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError("config line " + std::to_string(lineno) +
                       ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ParseError("config line " + std::to_string(lineno) + ": empty key");
    }
    if (!out.emplace(key, value).second) {
      throw ParseError("config: duplicate key \"" + key + "\"");
    }
  }
  return out;
}

std::map<std::string, std::string> parse_kv_file(const std::string& path) {
  return parse_kv_text(read_text_file(path));
}

bool apply_optimizer_key(OptimizerConfig& cfg, const std::string& key,
                         const std::string& value) {
  if (key == "m_gates") {
    cfg.m_gates = static_cast<std::size_t>(parse_u64(value));
  } else if (key == "lambda0") {
    cfg.lambda0 = parse_double(value);
  } else if (key == "mu0") {
    cfg.mu0 = parse_double(value);
  } else if (key == "s1") {
    cfg.s1 = parse_double(value);
  } else if (key == "s2") {
    cfg.s2 = parse_double(value);
  } else if (key == "grad_threshold") {
    cfg.grad_threshold = parse_double(value);
  } else if (key == "lambda_min") {
    cfg.lambda_min = parse_double(value);
  } else if (key == "lambda_max") {
    cfg.lambda_max = parse_double(value);
  } else if (key == "selection") {
    if (value == "cyclic") {
      cfg.selection = Selection::cyclic;
    } else if (value == "random") {
      cfg.selection = Selection::random;
    } else {
      throw ParseError("selection must be cyclic or random, got \"" + value +
                       "\"");
    }
  } else if (key == "init") {
    if (value == "random_subset") {
      cfg.init = InitStrategy::random_subset;
    } else if (value == "prefix") {
      cfg.init = InitStrategy::prefix;
    } else if (value == "identity") {
      cfg.init = InitStrategy::identity;
    } else {
      throw ParseError("init must be random_subset, prefix or identity, " +
                       std::string("got \"") + value + "\"");
    }
  } else if (key == "unitarize") {
    if (value == "penalty_only") {
      cfg.unitarize = UnitarizeMode::penalty_only;
    } else if (value == "project_each_update") {
      cfg.unitarize = UnitarizeMode::project_each_update;
    } else if (value == "project_at_end") {
      cfg.unitarize = UnitarizeMode::project_at_end;
    } else {
      throw ParseError(
          "unitarize must be penalty_only, project_each_update or "
          "project_at_end, got \"" +
          value + "\"");
    }
  } else if (key == "tol_rel") {
    cfg.tol_rel = parse_double(value);
  } else if (key == "max_sweeps") {
    cfg.max_sweeps = static_cast<std::size_t>(parse_u64(value));
  } else if (key == "seed") {
    cfg.seed = parse_u64(value);
  } else if (key == "unitary_tol") {
    cfg.unitary_tol = parse_double(value);
  } else {
    return false;
  }
  return true;
}

}  // namespace gatetrim
