// oligoplan: dataset generation, synthesis planning, mask generation and
// decomposition, and manufacturing schedules for multiple oligo arrays.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oligoplan/oligoplan.hpp"

namespace fs = std::filesystem;
using namespace oligoplan;

namespace {

/// A failure inside one pipeline stage; the stage name prefixes the message.
struct StageFailure : std::runtime_error {
  StageFailure(const std::string& stage, const std::string& what)
      : std::runtime_error("[" + stage + "] " + what) {}
};

template <typename F>
auto run_stage(const std::string& stage, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const StageFailure&) {
    throw;
  } catch (const std::exception& e) {
    throw StageFailure(stage, e.what());
  }
}

/// Remembers every path written so a failed run can clean up after itself.
class OutputLog {
 public:
  explicit OutputLog(fs::path root) : root_(std::move(root)), existed_(fs::exists(root_)) {}

  void created(const fs::path& p) { paths_.push_back(p); }

  void rollback() noexcept {
    std::error_code ec;
    if (!existed_) {
      fs::remove_all(root_, ec);
      return;
    }
    for (auto it = paths_.rbegin(); it != paths_.rend(); ++it) fs::remove_all(*it, ec);
  }

 private:
  fs::path root_;
  bool existed_;
  std::vector<fs::path> paths_;
};

StageTimes parse_times(const std::string& spec, StageTimes base) {
  if (spec.empty()) return base;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InvalidArgument("times entry without '=': " + item);
    const auto key = item.substr(0, eq);
    double value = 0;
    try {
      value = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw InvalidArgument("times entry is not a number: " + item);
    }
    if (key == "ts") base.t_s = value;
    else if (key == "tm") base.t_m_per_mask = value;
    else if (key == "tdep") base.t_dep = value;
    else if (key == "tdpo") base.t_dpo = value;
    else if (key == "td") {
      // A single per-cycle figure covering deprotection and deposition.
      base.t_dep = 0;
      base.t_dpo = value;
    } else
      throw InvalidArgument("unknown times key: " + key);
  }
  base.validate();
  return base;
}

std::vector<ScheduleMode> parse_modes(const std::vector<std::string>& names) {
  std::vector<ScheduleMode> out;
  for (const auto& n : names) out.push_back(parse_schedule_mode(n));
  return out;
}

std::vector<DecompositionMode> parse_decomp_modes(const std::string& s) {
  if (s == "both") return {DecompositionMode::horizontal_only, DecompositionMode::h_and_v};
  return {parse_decomposition_mode(s)};
}

std::string fixed(double v, int decimals) { return io::format_fixed(v, decimals); }

struct ScheduleOptions {
  std::string times;
  bool overlap = false;
  std::string cost = "per_mask";
  bool single_machines = false;
  std::vector<std::string> modes{"straight", "simple", "smart"};
};

CostModel cost_model(const std::string& name) {
  CostModel cost;
  if (name == "per_mask") cost.mode = MaskCost::per_mask;
  else if (name == "rectangle_library") cost.mode = MaskCost::rectangle_library;
  else throw InvalidArgument("unknown cost model: " + name);
  return cost;
}

StageTimes stage_times(const ScheduleOptions& o) {
  StageTimes t;
  t.overlap_dep_dpo = o.overlap;
  return parse_times(o.times, t);
}

FlowShopConfig flow_config(const ScheduleOptions& o) {
  return o.single_machines ? FlowShopConfig::single_machines() : FlowShopConfig{};
}

ScheduleReport build_schedule(ScheduleMode mode, const std::vector<ArrayJob>& jobs,
                              const SynthesisPlan* plan, const StageTimes& times,
                              FlowShopConfig cfg) {
  switch (mode) {
    case ScheduleMode::straight: return straight_schedule(jobs);
    case ScheduleMode::simple: return simple_streamline(jobs, cfg);
    case ScheduleMode::smart:
      if (!plan) throw InvalidArgument("smart schedule needs a synthesis plan");
      return smart_streamline(*plan, jobs, times, cfg);
  }
  throw InvalidArgument("unknown schedule mode");
}

/// Writes schedule_{mode}.json and gantt_{mode}.svg, validating the JSON.
void write_schedule(const fs::path& out, const ScheduleReport& r, OutputLog& log) {
  const auto json_path = out / ("schedule_" + to_string(r.mode) + ".json");
  const auto svg_path = out / ("gantt_" + to_string(r.mode) + ".svg");
  log.created(json_path);
  io::write_json(json_path, io::schedule_to_json(r));
  log.created(svg_path);
  io::write_text(svg_path, gantt_svg(r));
  io::schedule_from_json(io::read_json(json_path));
}

std::string table1_header() {
  return "dataset,array_size,n_arrays,n_masks,T_s,T_m,T_d,total,simple_streamline,smart_streamline\n";
}

std::string table1_row(const std::string& dataset, std::size_t side, const std::vector<ArrayJob>& jobs,
                       const std::map<ScheduleMode, ScheduleReport>& reports) {
  double p = 0, ts = 0, tm = 0, td = 0;
  for (const auto& j : jobs) {
    p += j.p;
    ts += j.T_s;
    tm += j.T_m;
    td += j.T_d;
  }
  const double k = static_cast<double>(jobs.size());
  auto total = [&](ScheduleMode m) {
    const auto it = reports.find(m);
    return it == reports.end() ? std::string() : fixed(it->second.total_minutes, 1);
  };
  std::ostringstream os;
  os << dataset << ',' << side << 'x' << side << ',' << jobs.size() << ',' << fixed(p / k, 1) << ','
     << fixed(ts / k, 2) << ',' << fixed(tm / k, 1) << ',' << fixed(td / k, 1) << ','
     << total(ScheduleMode::straight) << ',' << total(ScheduleMode::simple) << ','
     << total(ScheduleMode::smart) << '\n';
  return os.str();
}

std::string dataset_label(const fs::path& dataset_path) {
  try {
    const auto j = io::read_json(dataset_path);
    if (j.contains("params")) {
      const auto& p = j.at("params");
      return "N" + std::to_string(p.at("n_genes").get<std::size_t>()) + "K" +
             std::to_string(p.at("gene_len").get<std::size_t>());
    }
  } catch (const std::exception&) {
  }
  return dataset_path.stem().string();
}

// ---------------------------------------------------------------- gen

struct GenOptions {
  DatasetParams params;
  fs::path out = "dataset.json";
};

int cmd_gen(const GenOptions& o) {
  const auto set = generate_dataset(o.params);
  io::write_json(o.out, io::dataset_to_json(set, o.params));
  std::size_t used = 0;
  for (const auto& a : set.arrays()) used += a.size();
  std::cout << "arrays: " << set.size() << ", side: " << set.side() << ", spots used: " << used
            << " of " << set.size() * set[0].spots() << "\n";
  return 0;
}

// ---------------------------------------------------------------- plan

struct PlanOptions {
  fs::path dataset;
  std::string method = "greedy";
  fs::path out = "plan.json";
};

int cmd_plan(const PlanOptions& o) {
  const auto set = io::dataset_from_json(io::read_json(o.dataset));
  const auto plan = make_plan(set, parse_plan_method(o.method));
  io::write_json(o.out, io::plan_to_json(plan));
  std::cout << "s* length " << plan.super.size() << ", sum of |s_i| "
            << plan.total_sequence_length() << ", steps reduced " << plan.steps_reduced << "\n";
  return 0;
}

// ---------------------------------------------------------------- masks

struct MasksOptions {
  fs::path dataset;
  fs::path plan;
  fs::path out = "masks";
  bool merged = false;
};

int cmd_masks(const MasksOptions& o) {
  const auto set = io::dataset_from_json(io::read_json(o.dataset));
  const auto plan = io::plan_from_json(io::read_json(o.plan));
  if (plan.sequences.size() != set.size())
    throw InvalidArgument("plan and dataset disagree on the number of arrays");
  std::size_t written = 0;
  for (std::size_t i = 0; i < set.size(); ++i) {
    const auto masks = o.merged ? generate_masks(set[i], i, plan.super)
                                : generate_masks(set[i], plan.sequences[i]);
    write_mask_set(o.out, masks);
    written += masks.p();
  }
  std::cout << "wrote " << written << " masks to " << o.out.string() << "\n";
  return 0;
}

// ---------------------------------------------------------------- decompose

struct DecomposeOptions {
  fs::path masks = "masks";
  std::string mode = "both";
  std::string dataset_label = "dataset";
  fs::path out = ".";
};

struct DecompositionRun {
  std::vector<io::TableRow> rows;
  io::json doc = io::json::array();
  std::map<DecompositionMode, ShapeInventory> all_shapes;
};

DecompositionRun decompose_sets(const std::vector<MaskSet>& sets, const std::vector<DecompositionMode>& modes,
                                const std::string& label) {
  DecompositionRun run;
  const std::size_t side = sets.empty() || sets[0].masks.empty() ? 0 : sets[0].masks[0].grid.side();
  for (const auto mode : modes) {
    std::vector<ArrayDecomposition> per_array;
    io::json arrays = io::json::array();
    for (const auto& s : sets) {
      per_array.push_back(decompose_mask_set(s, mode));
      arrays.push_back(io::decomposition_to_json(per_array.back()));
      run.all_shapes[mode] += per_array.back().shapes;
    }
    const auto report = stats(per_array);
    run.rows.push_back({label, side, sets.size(), mode, report.aggregate});
    run.doc.push_back({{"mode", to_string(mode)},
                       {"arrays", std::move(arrays)},
                       {"aggregate",
                        {{"masks", report.aggregate.n_masks},
                         {"shapes", report.aggregate.n_shapes},
                         {"rectangles", report.aggregate.n_rectangles},
                         {"per_mask", report.aggregate.rects_per_mask}}}});
  }
  return run;
}

void write_decomposition(const fs::path& out, const DecompositionRun& run, OutputLog& log) {
  log.created(out / "decomp.json");
  io::write_json(out / "decomp.json", run.doc);
  log.created(out / "decomp.csv");
  io::write_text(out / "decomp.csv", io::decomposition_csv(run.rows));
  // Histogram of the last mode computed (H+V when both are requested).
  log.created(out / "histogram.csv");
  io::write_text(out / "histogram.csv", histogram_csv(run.all_shapes.rbegin()->second));

  for (const auto& mode_doc : io::read_json(out / "decomp.json"))
    for (std::size_t i = 0; i < mode_doc.at("arrays").size(); ++i)
      io::decomposition_from_json(mode_doc.at("arrays")[i], i);
}

int cmd_decompose(const DecomposeOptions& o) {
  std::vector<MaskSet> sets;
  for (std::size_t i = 0; fs::is_directory(o.masks / ("array" + std::to_string(i))); ++i)
    sets.push_back(read_mask_set(o.masks, i));
  if (sets.empty()) throw InvalidArgument("no array directories under " + o.masks.string());
  const auto run = decompose_sets(sets, parse_decomp_modes(o.mode), o.dataset_label);
  OutputLog log(o.out);
  try {
    fs::create_directories(o.out);
    write_decomposition(o.out, run, log);
  } catch (...) {
    log.rollback();
    throw;
  }
  std::cout << io::decomposition_csv(run.rows);
  return 0;
}

// ---------------------------------------------------------------- schedule

struct ScheduleCmdOptions {
  fs::path plan;
  fs::path out = ".";
  ScheduleOptions sched;
};

int cmd_schedule(const ScheduleCmdOptions& o) {
  const auto plan = io::plan_from_json(io::read_json(o.plan));
  const auto times = stage_times(o.sched);
  const auto jobs = make_jobs(plan, times, cost_model(o.sched.cost));
  OutputLog log(o.out);
  try {
    fs::create_directories(o.out);
    for (const auto mode : parse_modes(o.sched.modes)) {
      const auto r = build_schedule(mode, jobs, &plan, times, flow_config(o.sched));
      write_schedule(o.out, r, log);
      std::cout << to_string(mode) << ": " << fixed(r.total_minutes, 1) << " min, R_r "
                << fixed(r.r_r, 3) << ", deposition cycles " << r.deposition_cycles << "\n";
    }
  } catch (...) {
    log.rollback();
    throw;
  }
  return 0;
}

// ---------------------------------------------------------------- report

struct ReportOptions {
  fs::path dataset;
  std::string method = "greedy";
  std::string decomp_mode = "both";
  fs::path out = "report";
  ScheduleOptions sched;
  bool report_only = false;
  double masks_per_array = 0;
  std::size_t arrays = 0;
  std::size_t size = 100;
  std::optional<std::size_t> super_length;
  std::string label = "report";
};

int report_only(const ReportOptions& o) {
  if (o.arrays == 0) throw InvalidArgument("--report-only needs --arrays");
  if (!(o.masks_per_array > 0)) throw InvalidArgument("--report-only needs --masks-per-array");
  const auto times = stage_times(o.sched);
  const auto jobs = make_uniform_jobs(o.arrays, o.masks_per_array, times, cost_model(o.sched.cost));

  std::map<ScheduleMode, ScheduleReport> reports;
  for (const auto mode : parse_modes(o.sched.modes)) {
    if (mode == ScheduleMode::smart) {
      if (!o.super_length) continue;  // needs |s*|, which averaged rows lack
      // Batch bound: all masks, then one shared run per base of s*.
      ScheduleReport r{ScheduleMode::smart, 0, 1, *o.super_length, {}};
      const auto& j = jobs.front();
      r.total_minutes = j.T_s + j.T_m + static_cast<double>(*o.super_length) * times.t_d_per_cycle();
      r.segments = {{kMergedRun, Stage::strategy, 0, j.T_s},
                    {kMergedRun, Stage::masks, j.T_s, j.T_s + j.T_m},
                    {kMergedRun, Stage::deposition, j.T_s + j.T_m, r.total_minutes}};
      double straight = 0;
      for (const auto& x : jobs) straight += x.total();
      r.r_r = straight > 0 ? reduction_ratio(r.total_minutes, straight) : 1.0;
      reports[mode] = r;
      continue;
    }
    reports[mode] = build_schedule(mode, jobs, nullptr, times, flow_config(o.sched));
  }

  OutputLog log(o.out);
  try {
    fs::create_directories(o.out);
    for (const auto& [mode, r] : reports) write_schedule(o.out, r, log);
    const auto summary = table1_header() + table1_row(o.label, o.size, jobs, reports);
    log.created(o.out / "summary.csv");
    io::write_text(o.out / "summary.csv", summary);
    std::cout << summary;
  } catch (...) {
    log.rollback();
    throw;
  }
  for (const auto& [mode, r] : reports)
    if (mode != ScheduleMode::straight)
      std::cout << "R_r(" << to_string(mode) << ") = " << fixed(r.r_r, 3) << "\n";
  return 0;
}

int cmd_report(const ReportOptions& o) {
  if (o.report_only) return report_only(o);
  if (o.dataset.empty()) throw InvalidArgument("--dataset is required unless --report-only");

  const auto set = run_stage("dataset", [&] { return io::dataset_from_json(io::read_json(o.dataset)); });
  const auto times = run_stage("schedule", [&] { return stage_times(o.sched); });
  const auto modes = run_stage("schedule", [&] { return parse_modes(o.sched.modes); });
  const auto decomp_modes = run_stage("decompose", [&] { return parse_decomp_modes(o.decomp_mode); });
  const auto cost = run_stage("schedule", [&] { return cost_model(o.sched.cost); });

  OutputLog log(o.out);
  try {
    fs::create_directories(o.out);
    const auto plan = run_stage("plan", [&] {
      auto p = make_plan(set, parse_plan_method(o.method));
      log.created(o.out / "plan.json");
      io::write_json(o.out / "plan.json", io::plan_to_json(p));
      io::plan_from_json(io::read_json(o.out / "plan.json"));
      return p;
    });

    const auto mask_sets = run_stage("masks", [&] {
      std::vector<MaskSet> sets;
      log.created(o.out / "masks");
      for (std::size_t i = 0; i < set.size(); ++i) {
        sets.push_back(generate_masks(set[i], plan.sequences[i]));
        write_mask_set(o.out / "masks", sets.back());
        if (read_mask_set(o.out / "masks", i).p() != sets.back().p())
          throw std::runtime_error("mask files of array " + std::to_string(i) + " did not read back");
      }
      return sets;
    });

    const auto label = dataset_label(o.dataset);
    const auto decomposition = run_stage("decompose", [&] {
      auto run = decompose_sets(mask_sets, decomp_modes, label);
      write_decomposition(o.out, run, log);
      return run;
    });

    std::map<ScheduleMode, ScheduleReport> reports;
    const auto jobs = run_stage("schedule", [&] {
      auto js = make_jobs(plan, times, cost);
      for (const auto mode : modes) {
        reports[mode] = build_schedule(mode, js, &plan, times, flow_config(o.sched));
        write_schedule(o.out, reports[mode], log);
      }
      return js;
    });

    run_stage("summary", [&] {
      const auto summary = table1_header() + table1_row(label, set.side(), jobs, reports);
      log.created(o.out / "summary.csv");
      io::write_text(o.out / "summary.csv", summary);
      std::cout << summary << io::decomposition_csv(decomposition.rows);
      for (const auto& [mode, r] : reports)
        if (mode != ScheduleMode::straight)
          std::cout << "R_r(" << to_string(mode) << ") = " << fixed(r.r_r, 3) << "\n";
      return 0;
    });
  } catch (...) {
    log.rollback();
    throw;
  }
  return 0;
}

// ---------------------------------------------------------------- oracle

struct OracleOptions {
  std::string kind;
  std::vector<std::string> inputs;
};

int cmd_oracle(const OracleOptions& o) {
  if (o.kind == "cover") {
    // Inputs are mask rows of '0'/'1'.
    BitGrid g(o.inputs.size());
    for (std::size_t r = 0; r < o.inputs.size(); ++r) {
      if (o.inputs[r].size() != o.inputs.size()) throw InvalidArgument("mask must be square");
      for (std::size_t c = 0; c < o.inputs.size(); ++c) g.set(r, c, o.inputs[r][c] == '1');
    }
    const auto best = oracles::min_rect_cover(g);
    std::cout << "min_cover " << best.size << " greedy_h "
              << decompose_mask(g, DecompositionMode::horizontal_only).size() << " greedy_hv "
              << decompose_mask(g, DecompositionMode::h_and_v).size() << "\n";
    return 0;
  }
  if (o.kind == "scs") {
    std::cout << "brute " << oracles::brute_scs(o.inputs, 12) << " greedy " << greedy_scs(o.inputs).size();
    if (o.inputs.size() <= 3) std::cout << " exact " << exact_scs_dp(o.inputs).size();
    std::cout << "\n";
    return 0;
  }
  throw InvalidArgument("oracle kind must be 'cover' or 'scs'");
}

void add_schedule_flags(CLI::App* cmd, ScheduleOptions& o) {
  cmd->add_option("--times", o.times,
                  "Stage times as key=value list: ts, tm (per mask), tdep, tdpo, or td (per cycle)");
  cmd->add_flag("--overlap", o.overlap, "Overlap deprotection with deposition in each cycle");
  cmd->add_option("--cost", o.cost, "Mask cost model")
      ->check(CLI::IsMember({"per_mask", "rectangle_library"}));
  cmd->add_flag("--single-machines", o.single_machines,
                "One machine per stage instead of a mask line per array");
  cmd->add_option("--modes", o.modes, "Schedule modes")
      ->delimiter(',')
      ->check(CLI::IsMember({"straight", "simple", "smart"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Plan synthesis, masks and manufacturing schedules for multiple oligo arrays"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random oligo dataset");
  gen_cmd->add_option("--genes", gen.params.n_genes, "Number of genes")->required();
  gen_cmd->add_option("--gene-len", gen.params.gene_len, "Gene length")->required();
  gen_cmd->add_option("--oligo-len", gen.params.oligo_len, "Oligo length");
  gen_cmd->add_option("--arrays", gen.params.n_arrays, "Number of arrays")->required();
  gen_cmd->add_option("--size", gen.params.side_m, "Array side m")->required();
  gen_cmd->add_option("--seed", gen.params.seed, "Random seed")->required();
  gen_cmd->add_option("-o,--out", gen.out, "Output dataset file");

  PlanOptions plan;
  auto* plan_cmd = app.add_subcommand("plan", "Build synthesis sequences and the merged s*");
  plan_cmd->add_option("--dataset", plan.dataset)->required()->check(CLI::ExistingFile);
  plan_cmd->add_option("--method", plan.method)->check(CLI::IsMember({"periodic", "greedy", "exact"}));
  plan_cmd->add_option("-o,--out", plan.out);

  MasksOptions masks;
  auto* masks_cmd = app.add_subcommand("masks", "Write per-cycle exposure masks");
  masks_cmd->add_option("--dataset", masks.dataset)->required()->check(CLI::ExistingFile);
  masks_cmd->add_option("--plan", masks.plan)->required()->check(CLI::ExistingFile);
  masks_cmd->add_option("-o,--out", masks.out);
  masks_cmd->add_flag("--merged", masks.merged, "Drive every array by s* instead of its own sequence");

  DecomposeOptions decomp;
  auto* decomp_cmd = app.add_subcommand("decompose", "Decompose masks into 1xL rectangles");
  decomp_cmd->add_option("--masks", decomp.masks)->check(CLI::ExistingDirectory);
  decomp_cmd->add_option("--mode", decomp.mode)->check(CLI::IsMember({"h", "hv", "both"}));
  decomp_cmd->add_option("--label", decomp.dataset_label, "Dataset name for the CSV");
  decomp_cmd->add_option("-o,--out", decomp.out);

  ScheduleCmdOptions sched;
  auto* sched_cmd = app.add_subcommand("schedule", "Compute manufacturing schedules for a plan");
  sched_cmd->add_option("--plan", sched.plan)->required()->check(CLI::ExistingFile);
  sched_cmd->add_option("-o,--out", sched.out);
  add_schedule_flags(sched_cmd, sched.sched);

  ReportOptions report;
  auto* report_cmd = app.add_subcommand("report", "Run the whole pipeline and write a report bundle");
  report_cmd->add_option("--dataset", report.dataset);
  report_cmd->add_option("--method", report.method)->check(CLI::IsMember({"periodic", "greedy", "exact"}));
  report_cmd->add_option("--mode", report.decomp_mode)->check(CLI::IsMember({"h", "hv", "both"}));
  report_cmd->add_option("-o,--out", report.out);
  report_cmd->add_flag("--report-only", report.report_only,
                       "Schedule arithmetic only, from averaged mask counts");
  report_cmd->add_option("--masks-per-array", report.masks_per_array, "Average masks per array");
  report_cmd->add_option("--arrays", report.arrays, "Number of arrays (report-only)");
  report_cmd->add_option("--size", report.size, "Array side for the summary (report-only)");
  report_cmd->add_option("--super-length", report.super_length, "|s*| for the smart row (report-only)");
  report_cmd->add_option("--label", report.label, "Dataset name for the summary (report-only)");
  add_schedule_flags(report_cmd, report.sched);

  OracleOptions oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force references")->group("");
  oracle_cmd->add_option("kind", oracle.kind)->required();
  oracle_cmd->add_option("inputs", oracle.inputs)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen_cmd) return cmd_gen(gen);
    if (*plan_cmd) return cmd_plan(plan);
    if (*masks_cmd) return cmd_masks(masks);
    if (*decomp_cmd) return cmd_decompose(decomp);
    if (*sched_cmd) return cmd_schedule(sched);
    if (*report_cmd) return cmd_report(report);
    if (*oracle_cmd) return cmd_oracle(oracle);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
