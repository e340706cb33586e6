// Copyright 2026 The pivring Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "pivring/field.hpp"
#include "pivring/image.hpp"
#include "pivring/ring/clock.hpp"
#include "pivring/ring/config.hpp"
#include "pivring/ring/frame.hpp"

namespace pivring::ring {

struct RingModule {
  int id = 0;
  ModuleKind kind = ModuleKind::Control;
  int processing_index = -1;  // 0-based for processing modules
  ClockDomain clock;
  std::string name;
};

/// Ring order: Control -> Acquisition -> Storage -> Processing 1..n -> Control.
struct Ring {
  std::vector<RingModule> modules;

  int size() const noexcept { return static_cast<int>(modules.size()); }
  int next(int id) const noexcept { return (id + 1) % size(); }
  int processing_id(int index) const noexcept { return 3 + index; }
};

/// Throws ConfigError for n_processing < 1 or an otherwise invalid config.
Ring build_ring(const SimConfig& cfg);

enum class TraceEvent {
  Emit,    // Control created a frame
  Send,    // a send unit raised req for a frame
  Recv,    // a receive unit latched a frame
  Absorb,  // Control consumed a returning frame
  Accept,  // target module accepted a command
  Fill,    // a module wrote results into an empty frame
};

std::string to_string(TraceEvent e);

struct TraceRecord {
  SimTime time = 0;
  int module = 0;
  TraceEvent event = TraceEvent::Emit;
  std::uint64_t frame_id = 0;

  bool operator==(const TraceRecord&) const = default;
};

struct SimTrace {
  std::vector<TraceRecord> records;
  std::vector<std::string> module_names;

  bool operator==(const SimTrace&) const = default;
};

/// Writes `time_ns,module,event,frame_id`.
void write_trace_csv(std::ostream& out, const SimTrace& trace, const std::vector<std::string>& header = {});

/// Frame bookkeeping derived from a trace.
struct ConservationReport {
  std::size_t emitted = 0;
  std::size_t absorbed = 0;
  std::size_t sends = 0;
  std::size_t receives = 0;
  std::size_t unmatched = 0;  // frames whose hop sequence is broken or incomplete
  bool timestamps_monotonic = true;

  bool ok() const noexcept {
    return emitted == absorbed && sends == receives && unmatched == 0 && timestamps_monotonic;
  }
};

ConservationReport check_conservation(const SimTrace& trace, int ring_size);

struct ThroughputReport {
  int n_processing = 0;
  double images_per_sec = 0.0;
  double pixel_clock_mhz = 0.0;
  double vectors_per_sec = 0.0;
  std::vector<double> utilization;  // per processing module, fraction of time spent correlating
  double ring_occupancy = 0.0;      // mean fraction of send latches holding a frame

  double mean_utilization() const;
};

/// Writes `n,images_per_sec,pixel_clock_mhz,vectors_per_sec,utilization,ring_occupancy`
/// with fixed precision; utilization is the mean over processing modules.
void write_report_csv(std::ostream& out, const std::vector<ThroughputReport>& rows,
                      const std::vector<std::string>& header = {});

/// Fills pixel clock and vector rate from images/sec.
ThroughputReport make_report(int n_processing, double images_per_sec, int window_count, int pixels_per_frame);

struct SimResult {
  SimTrace trace;
  ThroughputReport report;
  std::vector<VectorField> fields;         // one per image pair, as assembled by Control
  std::vector<SimTime> pair_completion;    // time Control received the last vector of each pair
  std::size_t commands_issued = 0;
  std::size_t commands_returned_accepted = 0;
  std::size_t flag_violations = 0;  // results consumed before their command came back
  SimTime end_time = 0;
  int measured_first = 0;  // throughput is taken between these pair completions
  int measured_last = 0;
};

struct SimOptions {
  bool record_trace = false;
  /// Fault injection for tests: this module id never services its links.
  int stall_module = -1;
};

/// The frames a run streams through Acquisition: seeded particles advected by
/// cfg.flow once per frame, wrapped at the image borders.
std::vector<GrayImage> make_workload(const SimConfig& cfg, int n_frames);

/// Pairs skipped before and after the throughput measurement. The tail matters
/// because the last pairs see no further command traffic and finish early.
inline constexpr int kWarmupPairs = 4;
inline constexpr int kTailPairs = 4;
inline constexpr int kMinMeasuredPairs = 24;

/// Completion indices [first, last] used for the throughput figure. Falls back
/// to the whole run when there are too few pairs for warm-up and tail.
std::pair<int, int> measurement_window(int n_processing, int n_image_pairs);

/// Discrete-event run over `n_image_pairs` sliding frame pairs (n_image_pairs + 1
/// frames). Throws SimulationDeadlock if the event queue drains with work pending.
SimResult run_simulation(const SimConfig& cfg, int n_image_pairs, SimOptions options = {});

/// Steady-state report only, with a pair count large enough for a stable measurement.
ThroughputReport simulate_throughput(const SimConfig& cfg, int n_image_pairs = 0);

/// Default pair count used by simulate_throughput.
int default_pair_count(int n_processing);

}  // namespace pivring::ring
