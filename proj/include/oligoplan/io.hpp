#pragma once

// JSON and CSV encodings of datasets, plans, decomposition reports and
// schedules. Readers validate structure and throw SchemaError on mismatch.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "oligoplan/core.hpp"
#include "oligoplan/pipeline.hpp"
#include "oligoplan/rectcover.hpp"
#include "oligoplan/supersequence.hpp"

namespace oligoplan::io {

using json = nlohmann::json;

class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline const json& field(const json& j, const char* key, json::value_t type) {
  if (!j.is_object() || !j.contains(key))
    throw SchemaError(std::string("missing field \"") + key + "\"");
  const auto& v = j.at(key);
  const bool ok = type == json::value_t::number_float ? v.is_number()
                  : type == json::value_t::number_unsigned
                      ? v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0)
                      : v.type() == type;
  if (!ok) throw SchemaError(std::string("field \"") + key + "\" has the wrong type");
  return v;
}

inline std::size_t count(const json& j, const char* key) {
  return field(j, key, json::value_t::number_unsigned).get<std::size_t>();
}

inline double number(const json& j, const char* key) {
  return field(j, key, json::value_t::number_float).get<double>();
}

inline std::string text(const json& j, const char* key) {
  return field(j, key, json::value_t::string).get<std::string>();
}

}  // namespace detail

// Dataset: {"side_m", "arrays": [["ACGT...", ...], ...], "params", "seed"}

inline json dataset_to_json(const ArraySet& set, const std::optional<DatasetParams>& params = {}) {
  json arrays = json::array();
  for (const auto& a : set.arrays()) {
    json oligos = json::array();
    for (const auto& o : a.oligos()) oligos.push_back(o.bases());
    arrays.push_back(std::move(oligos));
  }
  json out = {{"side_m", set.side()}, {"arrays", std::move(arrays)}};
  if (params) {
    out["params"] = {{"n_genes", params->n_genes},   {"gene_len", params->gene_len},
                     {"oligo_len", params->oligo_len}, {"n_arrays", params->n_arrays},
                     {"side_m", params->side_m}};
    out["seed"] = params->seed;
  }
  return out;
}

inline ArraySet dataset_from_json(const json& j) {
  const auto side = detail::count(j, "side_m");
  const auto& arrays = detail::field(j, "arrays", json::value_t::array);
  if (arrays.empty()) throw SchemaError("no arrays");
  std::vector<ArraySpec> specs;
  for (const auto& a : arrays) {
    if (!a.is_array()) throw SchemaError("each array must be a list of oligo strings");
    std::vector<Oligo> oligos;
    for (const auto& o : a) {
      if (!o.is_string()) throw SchemaError("oligos must be strings");
      try {
        oligos.emplace_back(o.get<std::string>());
      } catch (const InvalidArgument& e) {
        throw SchemaError(e.what());
      }
    }
    try {
      specs.emplace_back(side, std::move(oligos));
    } catch (const InvalidArgument& e) {
      throw SchemaError(e.what());
    }
  }
  return ArraySet(std::move(specs));
}

// Plan: {"sequences": [...], "super", "steps_reduced", "method"}

inline json plan_to_json(const SynthesisPlan& plan) {
  json sequences = json::array();
  for (const auto& s : plan.sequences) sequences.push_back(s.bases);
  return {{"sequences", std::move(sequences)},
          {"super", plan.super},
          {"steps_reduced", plan.steps_reduced},
          {"method", to_string(plan.method)}};
}

inline SynthesisPlan plan_from_json(const json& j) {
  SynthesisPlan plan;
  const auto& sequences = detail::field(j, "sequences", json::value_t::array);
  for (std::size_t i = 0; i < sequences.size(); ++i) {
    if (!sequences[i].is_string()) throw SchemaError("sequences must be strings");
    plan.sequences.push_back({i, sequences[i].get<std::string>()});
  }
  plan.super = detail::text(j, "super");
  plan.steps_reduced = detail::count(j, "steps_reduced");
  try {
    plan.method = parse_plan_method(detail::text(j, "method"));
  } catch (const InvalidArgument& e) {
    throw SchemaError(e.what());
  }
  if (!is_nucleotide_string(plan.super)) throw SchemaError("super holds a symbol outside ACGT");
  for (const auto& s : plan.sequences) {
    if (!is_nucleotide_string(s.bases)) throw SchemaError("sequence holds a symbol outside ACGT");
    if (!is_supersequence(plan.super, s.bases))
      throw SchemaError("super is not a supersequence of array " + std::to_string(s.array_id));
  }
  if (plan.steps_reduced + plan.super.size() != plan.total_sequence_length())
    throw SchemaError("steps_reduced does not match the sequences");
  return plan;
}

// Decomposition report per array:
// {"masks", "shapes", "rectangles", "per_mask", "histogram": {len: count}}

inline json decomposition_to_json(const ArrayDecomposition& d) {
  const auto s = stats(d);
  json histogram = json::object();
  for (const auto& [len, n] : length_histogram(d.shapes)) histogram[std::to_string(len)] = n;
  return {{"masks", d.n_masks},
          {"shapes", d.shapes.distinct_shapes()},
          {"rectangles", d.shapes.total()},
          {"per_mask", s.rects_per_mask},
          {"histogram", std::move(histogram)}};
}

inline ArrayDecomposition decomposition_from_json(const json& j, std::size_t array_id = 0) {
  ArrayDecomposition d;
  d.array_id = array_id;
  d.n_masks = detail::count(j, "masks");
  const auto& histogram = detail::field(j, "histogram", json::value_t::object);
  for (const auto& [key, value] : histogram.items()) {
    if (!value.is_number_unsigned()) throw SchemaError("histogram counts must be non-negative");
    std::size_t len = 0;
    try {
      len = std::stoul(key);
    } catch (const std::exception&) {
      throw SchemaError("histogram keys must be lengths");
    }
    d.shapes.add(len, value.get<std::size_t>());
  }
  if (detail::count(j, "shapes") != d.shapes.distinct_shapes() ||
      detail::count(j, "rectangles") != d.shapes.total())
    throw SchemaError("shape or rectangle totals disagree with the histogram");
  detail::number(j, "per_mask");
  return d;
}

struct TableRow {
  std::string dataset;
  std::size_t array_size = 0;
  std::size_t n_arrays = 0;
  DecompositionMode mode = DecompositionMode::horizontal_only;
  DecompositionStats aggregate;
};

inline std::string format_fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

/// Aggregate decomposition CSV, one row per mode,
/// with the decomposition mode appended.
inline std::string decomposition_csv(const std::vector<TableRow>& rows) {
  std::ostringstream os;
  os << "dataset,array_size,n_arrays,n_masks,n_shapes,n_rectangles,rects_per_mask,mode\n";
  for (const auto& r : rows)
    os << r.dataset << ',' << r.array_size << 'x' << r.array_size << ',' << r.n_arrays << ','
       << format_fixed(r.aggregate.n_masks, 1) << ',' << format_fixed(r.aggregate.n_shapes, 1)
       << ',' << format_fixed(r.aggregate.n_rectangles, 1) << ','
       << format_fixed(r.aggregate.rects_per_mask, 1) << ',' << to_string(r.mode) << '\n';
  return os.str();
}

// Schedule: {"mode", "total_minutes", "r_r", "deposition_cycles", "segments": [...]}

inline json schedule_to_json(const ScheduleReport& r) {
  json segments = json::array();
  for (const auto& s : r.segments)
    segments.push_back(
        {{"array", s.array}, {"stage", to_string(s.stage)}, {"start", s.start}, {"end", s.end}});
  return {{"mode", to_string(r.mode)},
          {"total_minutes", r.total_minutes},
          {"r_r", r.r_r},
          {"deposition_cycles", r.deposition_cycles},
          {"segments", std::move(segments)}};
}

inline ScheduleReport schedule_from_json(const json& j) {
  ScheduleReport r;
  try {
    r.mode = parse_schedule_mode(detail::text(j, "mode"));
    r.total_minutes = detail::number(j, "total_minutes");
    r.r_r = detail::number(j, "r_r");
    r.deposition_cycles = detail::count(j, "deposition_cycles");
    for (const auto& s : detail::field(j, "segments", json::value_t::array)) {
      const auto& a = detail::field(s, "array", json::value_t::number_float);
      if (!a.is_number_integer()) throw SchemaError("segment array must be an integer");
      Segment seg{a.get<long>(), parse_stage(detail::text(s, "stage")), detail::number(s, "start"),
                  detail::number(s, "end")};
      if (seg.end < seg.start) throw SchemaError("segment ends before it starts");
      r.segments.push_back(seg);
    }
  } catch (const InvalidArgument& e) {
    throw SchemaError(e.what());
  }
  if (!(r.r_r > 0) || r.r_r > 1 + 1e-9) throw SchemaError("r_r must lie in (0, 1]");
  return r;
}

inline json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

inline void write_json(const std::filesystem::path& path, const json& j) {
  write_text(path, j.dump(2) + "\n");
}

}  // namespace oligoplan::io
