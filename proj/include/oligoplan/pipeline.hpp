#pragma once

// Manufacturing schedules for a batch of arrays.
//
// Every array passes through three stages: strategy computation, mask
// fabrication and deposition (one deprotect + deposit cycle per mask).
// straight_schedule runs arrays one after another; simple_streamline
// pipelines the stages as a flow shop; smart_streamline additionally merges
// deposition runs across arrays along the common supersequence s*.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "oligoplan/core.hpp"
#include "oligoplan/maskgen.hpp"
#include "oligoplan/supersequence.hpp"

namespace oligoplan {

/// Stage durations in minutes.
struct StageTimes {
  double t_s = 40;             // strategy computation, per array
  double t_m_per_mask = 45;    // mask manufacture
  double t_dep = 5;            // deprotection, per cycle
  double t_dpo = 25;           // deposition, per cycle
  bool overlap_dep_dpo = false;

  double t_d_per_cycle() const noexcept {
    return overlap_dep_dpo ? std::max(t_dep, t_dpo) : t_dep + t_dpo;
  }

  void validate() const {
    if (t_s < 0 || t_m_per_mask < 0 || t_dep < 0 || t_dpo < 0)
      throw InvalidArgument("stage times must be non-negative");
  }
};

enum class MaskCost { per_mask, rectangle_library };

struct CostModel {
  MaskCost mode = MaskCost::per_mask;
  double rectangle_library_setup_minutes = 1440;  // about one day
  double compose_minutes_per_mask = 30;

  /// Minutes to produce one mask. A rectangle library is built once and its
  /// setup is amortized over every mask of the run.
  double per_mask_minutes(const StageTimes& times, double total_masks) const noexcept {
    if (mode == MaskCost::per_mask) return times.t_m_per_mask;
    const double setup = total_masks > 0 ? rectangle_library_setup_minutes / total_masks : 0.0;
    return setup + compose_minutes_per_mask;
  }
};

/// Stage totals for one array. p may be fractional when reproducing
/// averaged report rows.
struct ArrayJob {
  std::size_t array_id = 0;
  double p = 0;
  double T_s = 0;
  double T_m = 0;
  double T_d = 0;

  double total() const noexcept { return T_s + T_m + T_d; }
};

inline ArrayJob make_job(std::size_t array_id, double p, const StageTimes& times,
                         double per_mask_minutes) {
  times.validate();
  if (p < 0) throw InvalidArgument("mask count must be non-negative");
  return {array_id, p, times.t_s, p * per_mask_minutes, p * times.t_d_per_cycle()};
}

inline std::vector<ArrayJob> make_jobs(const SynthesisPlan& plan, const StageTimes& times,
                                       const CostModel& cost = {}) {
  const auto total_masks = static_cast<double>(plan.total_sequence_length());
  const double per_mask = cost.per_mask_minutes(times, total_masks);
  std::vector<ArrayJob> jobs;
  jobs.reserve(plan.sequences.size());
  for (std::size_t j = 0; j < plan.sequences.size(); ++j)
    jobs.push_back(make_job(j, static_cast<double>(plan.sequences[j].p()), times, per_mask));
  return jobs;
}

/// k identical jobs of (possibly fractional) p masks each.
inline std::vector<ArrayJob> make_uniform_jobs(std::size_t k, double p, const StageTimes& times,
                                               const CostModel& cost = {}) {
  const double per_mask = cost.per_mask_minutes(times, p * static_cast<double>(k));
  std::vector<ArrayJob> jobs;
  for (std::size_t j = 0; j < k; ++j) jobs.push_back(make_job(j, p, times, per_mask));
  return jobs;
}

enum class Stage { strategy, masks, deposition };

inline std::string to_string(Stage s) {
  switch (s) {
    case Stage::strategy: return "strategy";
    case Stage::masks: return "mask";
    case Stage::deposition: return "deposition";
  }
  return "unknown";
}

inline Stage parse_stage(std::string_view s) {
  if (s == "strategy") return Stage::strategy;
  if (s == "mask") return Stage::masks;
  if (s == "deposition") return Stage::deposition;
  throw InvalidArgument("unknown stage: " + std::string(s));
}

inline constexpr long kMergedRun = -1;

struct Segment {
  long array = 0;  // kMergedRun for a deposition run shared by several arrays
  Stage stage = Stage::strategy;
  double start = 0;
  double end = 0;
  friend bool operator==(const Segment&, const Segment&) = default;
};

enum class ScheduleMode { straight, simple, smart };

inline std::string to_string(ScheduleMode m) {
  switch (m) {
    case ScheduleMode::straight: return "straight";
    case ScheduleMode::simple: return "simple";
    case ScheduleMode::smart: return "smart";
  }
  return "unknown";
}

inline ScheduleMode parse_schedule_mode(std::string_view s) {
  if (s == "straight") return ScheduleMode::straight;
  if (s == "simple") return ScheduleMode::simple;
  if (s == "smart") return ScheduleMode::smart;
  throw InvalidArgument("unknown schedule mode: " + std::string(s));
}

struct ScheduleReport {
  ScheduleMode mode = ScheduleMode::straight;
  double total_minutes = 0;
  double r_r = 1;
  std::size_t deposition_cycles = 0;
  std::vector<Segment> segments;
};

inline double reduction_ratio(double t_mode, double t_straight) {
  if (!(t_straight > 0)) throw InvalidArgument("straightforward time must be positive");
  return t_mode / t_straight;
}

/// How many machines a stage has. `per_array` gives every array its own
/// line, so the stage never queues.
enum class StageResource { single, per_array };

struct FlowShopConfig {
  StageResource strategy = StageResource::per_array;
  StageResource masks = StageResource::per_array;
  StageResource deposition = StageResource::single;

  /// Classic permutation flow shop, one machine per stage.
  static constexpr FlowShopConfig single_machines() {
    return {StageResource::single, StageResource::single, StageResource::single};
  }
};

namespace detail {

inline void require_jobs(std::span<const ArrayJob> jobs) {
  if (jobs.empty()) throw InvalidArgument("no arrays");
  for (const auto& j : jobs)
    if (j.T_s < 0 || j.T_m < 0 || j.T_d < 0 || j.p < 0)
      throw InvalidArgument("stage totals must be non-negative");
}

inline double serial_total(std::span<const ArrayJob> jobs) {
  double total = 0;
  for (const auto& j : jobs) total += j.total();
  return total;
}

inline std::size_t cycle_count(std::span<const ArrayJob> jobs) {
  double p = 0;
  for (const auto& j : jobs) p += j.p;
  return static_cast<std::size_t>(std::llround(p));
}

inline double ratio_or_one(double t_mode, double t_straight) {
  return t_straight > 0 ? reduction_ratio(t_mode, t_straight) : 1.0;
}

inline double makespan(std::span<const Segment> segments) {
  double end = 0;
  for (const auto& s : segments) end = std::max(end, s.end);
  return end;
}

}  // namespace detail

/// Arrays one at a time, each through all three stages.
inline ScheduleReport straight_schedule(std::span<const ArrayJob> jobs) {
  detail::require_jobs(jobs);
  ScheduleReport report{ScheduleMode::straight, 0, 1, detail::cycle_count(jobs), {}};
  double clock = 0;
  for (const auto& j : jobs) {
    const auto id = static_cast<long>(j.array_id);
    report.segments.push_back({id, Stage::strategy, clock, clock + j.T_s});
    clock += j.T_s;
    report.segments.push_back({id, Stage::masks, clock, clock + j.T_m});
    clock += j.T_m;
    report.segments.push_back({id, Stage::deposition, clock, clock + j.T_d});
    clock += j.T_d;
  }
  report.total_minutes = clock;
  return report;
}

/// Flow shop in job order: C[i][s] = max(C[i-1][s], C[i][s-1]) + d[i][s],
/// where the C[i-1][s] term only applies to single-machine stages. The
/// default gives strategy and masks a line per array and shares one
/// deposition machine, which yields t_s + T_m + k * T_d for equal jobs.
inline ScheduleReport simple_streamline(std::span<const ArrayJob> jobs,
                                        FlowShopConfig config = {}) {
  detail::require_jobs(jobs);
  ScheduleReport report{ScheduleMode::simple, 0, 1, detail::cycle_count(jobs), {}};
  const StageResource resources[3] = {config.strategy, config.masks, config.deposition};
  const Stage stages[3] = {Stage::strategy, Stage::masks, Stage::deposition};
  double machine_free[3] = {0, 0, 0};
  for (const auto& j : jobs) {
    const double durations[3] = {j.T_s, j.T_m, j.T_d};
    double ready = 0;
    for (int s = 0; s < 3; ++s) {
      const double start =
          resources[s] == StageResource::single ? std::max(ready, machine_free[s]) : ready;
      const double end = start + durations[s];
      report.segments.push_back({static_cast<long>(j.array_id), stages[s], start, end});
      machine_free[s] = std::max(machine_free[s], end);
      ready = end;
    }
  }
  report.total_minutes = detail::makespan(report.segments);
  report.r_r = detail::ratio_or_one(report.total_minutes, detail::serial_total(jobs));
  return report;
}

/// Deposition follows s*: each cycle is one shared run of t_d_per_cycle for
/// all arrays whose next base matches. An array's c-th mask is ready
/// (c+1)/p of the way through its mask stage, so deposition may start
/// before all masks exist. A cycle starts once the previous cycle is done
/// and every participating array has its mask.
inline ScheduleReport smart_streamline(const SynthesisPlan& plan, std::span<const ArrayJob> jobs,
                                       const StageTimes& times, FlowShopConfig config = {}) {
  detail::require_jobs(jobs);
  times.validate();
  if (plan.super.empty()) throw InvalidArgument("empty supersequence");
  if (jobs.size() != plan.sequences.size())
    throw InvalidArgument("one job per planned array is required");
  for (std::size_t j = 0; j < jobs.size(); ++j)
    if (jobs[j].p != static_cast<double>(plan.sequences[j].p()))
      throw InvalidArgument("job mask count does not match its synthesis sequence");

  const auto cycles = deposition_schedule(plan);
  ScheduleReport report{ScheduleMode::smart, 0, 1, plan.super.size(), {}};

  const std::size_t k = jobs.size();
  std::vector<double> strategy_end(k);
  double strategy_free = 0;
  for (std::size_t j = 0; j < k; ++j) {
    const double start = config.strategy == StageResource::single ? strategy_free : 0.0;
    strategy_end[j] = start + jobs[j].T_s;
    strategy_free = strategy_end[j];
    report.segments.push_back(
        {static_cast<long>(jobs[j].array_id), Stage::strategy, start, strategy_end[j]});
  }

  auto per_mask = [&](std::size_t j) { return jobs[j].p > 0 ? jobs[j].T_m / jobs[j].p : 0.0; };

  // mask_ready[j][c]: completion time of array j's c-th mask.
  std::vector<std::vector<double>> mask_ready(k);
  if (config.masks == StageResource::per_array) {
    for (std::size_t j = 0; j < k; ++j) {
      const auto p = plan.sequences[j].p();
      for (std::size_t c = 0; c < p; ++c)
        mask_ready[j].push_back(strategy_end[j] + static_cast<double>(c + 1) * per_mask(j));
      if (p > 0)
        report.segments.push_back({static_cast<long>(jobs[j].array_id), Stage::masks,
                                   strategy_end[j], mask_ready[j].back()});
    }
  } else {
    // One mask machine producing masks in the order the cycles consume them.
    double clock = 0;
    for (const auto& cycle : cycles) {
      for (const auto j : cycle.arrays) {
        const double start = std::max(clock, strategy_end[j]);
        clock = start + per_mask(j);
        mask_ready[j].push_back(clock);
        const auto id = static_cast<long>(jobs[j].array_id);
        auto& segs = report.segments;
        if (!segs.empty() && segs.back().stage == Stage::masks && segs.back().array == id &&
            segs.back().end == start)
          segs.back().end = clock;
        else
          segs.push_back({id, Stage::masks, start, clock});
      }
    }
  }

  const double run = times.t_d_per_cycle();
  std::vector<std::size_t> used(k, 0);
  double clock = 0;
  for (const auto& cycle : cycles) {
    double start = clock;
    for (const auto j : cycle.arrays) start = std::max(start, mask_ready[j][used[j]++]);
    clock = start + run;
    const long who = cycle.arrays.size() == 1 ? static_cast<long>(jobs[cycle.arrays.front()].array_id)
                                              : kMergedRun;
    report.segments.push_back({who, Stage::deposition, start, clock});
  }

  report.total_minutes = detail::makespan(report.segments);
  report.r_r = detail::ratio_or_one(report.total_minutes, detail::serial_total(jobs));
  return report;
}

}  // namespace oligoplan
