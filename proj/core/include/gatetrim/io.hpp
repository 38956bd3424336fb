#pragma once

#include <map>
#include <string>
#include <vector>

#include "gatetrim/gates.hpp"
#include "gatetrim/numerics.hpp"
#include "gatetrim/optimizer.hpp"

namespace gatetrim {

// Matrix CSV: first line "rows,cols", then one "re,im" line per entry in
// row-major order, 17 significant digits (lossless double round-trip).
// State vectors use the same format with cols = 1.
std::string matrix_to_csv(const ComplexMatrix& m);
ComplexMatrix matrix_from_csv(const std::string& text);
void write_matrix_csv(const std::string& path, const ComplexMatrix& m);
ComplexMatrix read_matrix_csv(const std::string& path);

// Circuit JSON.  Gate indices are 1-based in the file; blocks are
// [[ [re,im], [re,im] ], [ [re,im], [re,im] ]] row-major; euler holds the
// ZYZ angles of the block (of its unitary polar factor when the block
// itself is not unitary, omitted entirely when the block is singular) and
// transition holds the basis-state labels the position couples.  euler and
// transition are derived fields and are ignored when reading.
std::string circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const std::string& text);
void write_circuit_json(const std::string& path, const Circuit& c);
Circuit read_circuit_json(const std::string& path);

// Trace CSV: header plus one row per TraceRecord, 15 significant digits,
// gate indices and positions 1-based.
std::string trace_to_csv(const std::vector<TraceRecord>& trace);
void write_trace_csv(const std::string& path,
                     const std::vector<TraceRecord>& trace);

// Entry magnitudes as a plain rows x cols real CSV (no header line).
std::string heatmap_to_csv(const ComplexMatrix& m);
void write_heatmap_csv(const std::string& path, const ComplexMatrix& m);

// Flat key=value config text: one pair per line, '#' starts a comment,
// blank lines ignored.  Duplicate keys are a parse error.
std::map<std::string, std::string> parse_kv_text(const std::string& text);
std::map<std::string, std::string> parse_kv_file(const std::string& path);

// Applies one key=value pair onto an OptimizerConfig.  Returns false when
// the key is not an optimizer setting (callers own their other keys);
// throws ParseError on a malformed value.  Recognized keys: m_gates,
// lambda0, mu0, s1, s2, grad_threshold, lambda_min, lambda_max,
// selection, init, unitarize, tol_rel, max_sweeps, seed, unitary_tol.
bool apply_optimizer_key(OptimizerConfig& cfg, const std::string& key,
                         const std::string& value);

// Strict numeric parsing helpers (whole string must consume).
double parse_double(const std::string& text);
std::uint64_t parse_u64(const std::string& text);
std::vector<std::size_t> parse_size_list(const std::string& text);  // "5,10,15"

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace gatetrim
