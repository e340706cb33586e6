// Copyright 2026 The pivring Authors
// SPDX-License-Identifier: Apache-2.0

#include "pivring/ring/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <iomanip>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <ostream>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_map>

#include "pivring/binarize.hpp"
#include "pivring/errors.hpp"
#include "pivring/ring/handshake.hpp"
#include "pivring/ring/schedule.hpp"
#include "pivring/synth.hpp"

namespace pivring::ring {

std::string to_string(TraceEvent e) {
  switch (e) {
    case TraceEvent::Emit:
      return "emit";
    case TraceEvent::Send:
      return "send";
    case TraceEvent::Recv:
      return "recv";
    case TraceEvent::Absorb:
      return "absorb";
    case TraceEvent::Accept:
      return "accept";
    case TraceEvent::Fill:
      return "fill";
  }
  return "unknown";
}

Ring build_ring(const SimConfig& cfg) {
  cfg.validate();
  Ring ring;
  ring.modules.push_back({0, ModuleKind::Control, -1, cfg.clocks.control, "control"});
  ring.modules.push_back({1, ModuleKind::Acquisition, -1, cfg.clocks.acquisition, "acquisition"});
  ring.modules.push_back({2, ModuleKind::Storage, -1, cfg.clocks.storage, "storage"});
  for (int k = 0; k < cfg.n_processing; ++k) {
    ring.modules.push_back(
        {3 + k, ModuleKind::Processing, k, cfg.clocks.processing, "processing" + std::to_string(k + 1)});
  }
  return ring;
}

double ThroughputReport::mean_utilization() const {
  if (utilization.empty()) return 0.0;
  return std::accumulate(utilization.begin(), utilization.end(), 0.0) / static_cast<double>(utilization.size());
}

ThroughputReport make_report(int n_processing, double images_per_sec, int window_count, int pixels_per_frame) {
  ThroughputReport r;
  r.n_processing = n_processing;
  r.images_per_sec = images_per_sec;
  r.vectors_per_sec = images_per_sec * window_count;
  r.pixel_clock_mhz = images_per_sec * pixels_per_frame / 1e6;
  return r;
}

void write_report_csv(std::ostream& out, const std::vector<ThroughputReport>& rows,
                      const std::vector<std::string>& header) {
  for (const auto& line : header) out << "# " << line << '\n';
  out << "n,images_per_sec,pixel_clock_mhz,vectors_per_sec,utilization,ring_occupancy\n";
  char buf[160];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%d,%.3f,%.4f,%.2f,%.4f,%.4f\n", r.n_processing, r.images_per_sec, r.pixel_clock_mhz,
                  r.vectors_per_sec, r.mean_utilization(), r.ring_occupancy);
    out << buf;
  }
}

void write_trace_csv(std::ostream& out, const SimTrace& trace, const std::vector<std::string>& header) {
  for (const auto& line : header) out << "# " << line << '\n';
  out << "time_ns,module,event,frame_id\n";
  for (const auto& r : trace.records) {
    std::ostringstream row;
    row << r.time / 1000 << '.' << std::setw(3) << std::setfill('0') << r.time % 1000 << ','
        << trace.module_names.at(static_cast<std::size_t>(r.module)) << ',' << to_string(r.event) << ','
        << r.frame_id << '\n';
    out << row.str();
  }
}

ConservationReport check_conservation(const SimTrace& trace, int ring_size) {
  ConservationReport rep;
  // per frame: the module expected to latch it next, and whether it is in a send unit
  struct Progress {
    int at = 0;
    bool in_flight = false;
    bool done = false;
    bool broken = false;
  };
  std::unordered_map<std::uint64_t, Progress> frames;
  SimTime last = std::numeric_limits<SimTime>::min();
  for (const auto& r : trace.records) {
    if (r.time < last) rep.timestamps_monotonic = false;
    last = r.time;
    switch (r.event) {
      case TraceEvent::Emit: {
        ++rep.emitted;
        auto [it, fresh] = frames.try_emplace(r.frame_id, Progress{r.module, false, false, false});
        if (!fresh) it->second.broken = true;
        break;
      }
      case TraceEvent::Send: {
        ++rep.sends;
        auto& p = frames[r.frame_id];
        if (p.in_flight || p.done || p.at != r.module) p.broken = true;
        p.in_flight = true;
        break;
      }
      case TraceEvent::Recv: {
        ++rep.receives;
        auto& p = frames[r.frame_id];
        if (!p.in_flight || (p.at + 1) % ring_size != r.module) p.broken = true;
        p.in_flight = false;
        p.at = r.module;
        break;
      }
      case TraceEvent::Absorb: {
        ++rep.absorbed;
        auto& p = frames[r.frame_id];
        if (p.in_flight || p.done || p.at != r.module) p.broken = true;
        p.done = true;
        break;
      }
      case TraceEvent::Accept:
      case TraceEvent::Fill:
        break;
    }
  }
  for (const auto& [id, p] : frames) {
    if (p.broken || !p.done) ++rep.unmatched;
  }
  return rep;
}

std::vector<GrayImage> make_workload(const SimConfig& cfg, int n_frames) {
  const synth::FlowSpec flow = synth::FlowSpec::parse(cfg.flow);
  synth::ParticleField field =
      synth::seed_particles(cfg.width, cfg.height, cfg.particle_density, cfg.seed, cfg.window_size);
  synth::RenderConfig rc;
  rc.width = cfg.width;
  rc.height = cfg.height;
  std::vector<GrayImage> frames;
  for (int f = 0; f < n_frames; ++f) {
    frames.push_back(synth::render(field, rc));
    field = synth::advect(field, flow);
    for (auto& p : field.positions) {
      p.x = std::fmod(std::fmod(p.x, cfg.width) + cfg.width, cfg.width);
      p.y = std::fmod(std::fmod(p.y, cfg.height) + cfg.height, cfg.height);
    }
  }
  return frames;
}

namespace {

struct Event {
  SimTime time;
  int module;
  std::uint64_t seq;

  bool operator>(const Event& o) const {
    if (time != o.time) return time > o.time;
    if (module != o.module) return module > o.module;
    return seq > o.seq;
  }
};

struct Job {
  int pair = 0;
  int window = 0;
  SimTime data_ready = 0;
};

using FramePtr = std::shared_ptr<const BinaryImage>;

struct ModuleState {
  WrapperState wrapper;
  std::optional<RingFrame> stage;
  SimTime stage_ready = 0;
  std::set<SimTime> pending_wakes;
  SimTime latch_since = 0;
  SimTime latch_total = 0;

  // processing
  std::deque<int> fetch_wait;  // accepted pairs whose frames are not both stored yet
  std::deque<Job> jobs;
  std::optional<Job> current;
  SimTime engine_done = 0;
  SimTime blocked_until = 0;
  SimTime decoder_free = 0;
  std::deque<std::uint32_t> results;
  std::map<int, std::pair<FramePtr, FramePtr>> local_frames;
  std::map<int, int> windows_left;
  SimTime busy_ps = 0;
  SimTime first_start = -1;
};

struct Bank {
  int frame = -1;
  bool complete = false;
  std::vector<std::uint32_t> words;
  FramePtr image;
};

class Simulator {
 public:
  Simulator(const SimConfig& cfg, int n_pairs, SimOptions options)
      : cfg_(cfg), ring_(build_ring(cfg)), n_pairs_(n_pairs), options_(options), piv_(cfg.piv_config()) {
    if (n_pairs < 1) throw ConfigError("need at least one image pair");
    n_ = cfg.n_processing;
    windows_ = cfg.window_count();
    grid_ = tile_windows(cfg.width, cfg.height, cfg.window_size);
    states_.resize(static_cast<std::size_t>(ring_.size()));
    for (int i = 0; i < ring_.size(); ++i) {
      const int j = ring_.next(i);
      timing_.push_back({clock(i), clock(j), cfg.handshake_cost});
    }
    make_workload();
    stored_.assign(static_cast<std::size_t>(n_pairs_ + 1), false);
    fetch_count_.assign(static_cast<std::size_t>(n_pairs_), 0);
    cmd_returned_.assign(static_cast<std::size_t>(n_pairs_), std::vector<bool>(static_cast<std::size_t>(n_), false));
    received_.assign(static_cast<std::size_t>(n_pairs_), 0);
    result_.fields.assign(static_cast<std::size_t>(n_pairs_), VectorField{grid_, std::vector<Displacement>(
                                                                                     static_cast<std::size_t>(windows_))});
    have_vector_.assign(static_cast<std::size_t>(n_pairs_), std::vector<bool>(static_cast<std::size_t>(windows_), false));
    result_.pair_completion.assign(static_cast<std::size_t>(n_pairs_), -1);
    for (const auto& m : ring_.modules) result_.trace.module_names.push_back(m.name);
  }

  SimResult run() {
    RingFrame start{FrameKind::Command, 1, Opcode::StartAcquisition, 0, false, 0};
    commands_.push_back(start);
    schedule(0, clock(0).next_edge(0));

    while (!queue_.empty()) {
      const Event ev = queue_.top();
      queue_.pop();
      auto& pending = states_[static_cast<std::size_t>(ev.module)].pending_wakes;
      if (pending.erase(ev.time) == 0) continue;
      now_ = ev.time;
      wake(ev.module, ev.time);
    }

    if (contiguous_ < n_pairs_) report_deadlock();
    finish();
    return std::move(result_);
  }

 private:
  const ClockDomain& clock(int id) const { return ring_.modules[static_cast<std::size_t>(id)].clock; }
  ModuleState& state(int id) { return states_[static_cast<std::size_t>(id)]; }
  int prev(int id) const { return (id + ring_.size() - 1) % ring_.size(); }

  void make_workload() {
    for (const GrayImage& gray : ring::make_workload(cfg_, n_pairs_ + 1)) frames_.push_back(binarize(gray, grid_, piv_));
  }

  void trace(SimTime t, int module, TraceEvent e, std::uint64_t id) {
    if (options_.record_trace) result_.trace.records.push_back({t, module, e, id});
  }

  void schedule(int module, SimTime t) {
    auto& st = state(module);
    if (st.pending_wakes.insert(t).second) queue_.push({t, module, seq_++});
  }

  // ---- links -------------------------------------------------------------

  void step_link(int link, Side side, SimTime t) {
    const int sender = link;
    const int receiver = ring_.next(link);
    SendUnit& tx = state(sender).wrapper.send;
    ReceiveUnit& rx = state(receiver).wrapper.receive;
    const HandshakePhase before = tx.phase;
    const StepOutcome out = handshake_step(tx, rx, timing_[static_cast<std::size_t>(link)], side, t);
    if (!out.changed) return;
    if (side == Side::Sender && before != HandshakePhase::ReqRaised && tx.phase == HandshakePhase::ReqRaised) {
      trace(t, sender, TraceEvent::Send, tx.latch->id);
    }
    if (out.delivered) trace(t, receiver, TraceEvent::Recv, rx.latch->id);
    if (out.sender_freed) {
      auto& st = state(sender);
      st.latch_total += t - st.latch_since;
    }
    if (out.wake_other >= 0) schedule(side == Side::Sender ? receiver : sender, out.wake_other);
  }

  void step_links(int module, SimTime t) {
    if (is_stalled(module)) return;
    step_link(prev(module), Side::Receiver, t);
    step_link(module, Side::Sender, t);
  }

  bool is_stalled(int module) const { return module == options_.stall_module; }

  void load_send_latch(int module, const RingFrame& frame, SimTime t) {
    auto& st = state(module);
    st.wrapper.send.latch = frame;
    st.latch_since = t;
  }

  // ---- module dispatch ---------------------------------------------------

  void wake(int module, SimTime t) {
    step_links(module, t);
    if (is_stalled(module)) return;
    switch (ring_.modules[static_cast<std::size_t>(module)].kind) {
      case ModuleKind::Control:
        control(t);
        break;
      case ModuleKind::Acquisition:
        acquisition(t);
        break;
      case ModuleKind::Storage:
        storage(t);
        break;
      case ModuleKind::Processing:
        processing(module, t);
        break;
    }
    step_links(module, t);
  }

  // Moves a finished stage frame into the send unit when it is free.
  void drain_stage(int module, SimTime t) {
    auto& st = state(module);
    if (st.stage && t >= st.stage_ready && !st.wrapper.send.latch) {
      load_send_latch(module, *st.stage, t);
      st.stage.reset();
    }
  }

  // Takes the next frame out of the receive unit into the forwarding stage.
  std::optional<RingFrame> take_frame(int module) {
    auto& st = state(module);
    if (st.stage || !st.wrapper.receive.latch) return std::nullopt;
    RingFrame f = *st.wrapper.receive.latch;
    st.wrapper.receive.latch.reset();
    return f;
  }

  void stage_frame(int module, const RingFrame& f, SimTime t, std::int64_t cycles) {
    auto& st = state(module);
    st.stage = f;
    st.stage_ready = clock(module).edge_after(t, std::max<std::int64_t>(cycles, 1));
    schedule(module, st.stage_ready);
  }

  // ---- control -----------------------------------------------------------

  void control(SimTime t) {
    auto& st = state(0);
    if (st.wrapper.receive.latch) {
      const RingFrame f = *st.wrapper.receive.latch;
      st.wrapper.receive.latch.reset();
      trace(t, 0, TraceEvent::Absorb, f.id);
      absorb(f, t);
    }
    issue_pairs();
    if (!st.wrapper.send.latch) {
      if (!commands_.empty()) {
        RingFrame f = commands_.front();
        commands_.pop_front();
        f.id = next_frame_id_++;
        ++result_.commands_issued;
        load_send_latch(0, f, t);
        trace(t, 0, TraceEvent::Emit, f.id);
      } else if (contiguous_ < n_pairs_ && slots_in_flight_ < cfg_.max_empty_frames) {
        const RingFrame f = RingFrame::empty(next_frame_id_++);
        ++slots_in_flight_;
        load_send_latch(0, f, t);
        trace(t, 0, TraceEvent::Emit, f.id);
      }
    }
  }

  void absorb(const RingFrame& f, SimTime t) {
    switch (f.kind) {
      case FrameKind::Command:
        if (f.accepted) ++result_.commands_returned_accepted;
        if (f.opcode == Opcode::Correlate) {
          const int pair = static_cast<int>(f.payload);
          cmd_returned_[static_cast<std::size_t>(pair)][static_cast<std::size_t>(f.target - 3)] = f.accepted;
        }
        break;
      case FrameKind::Empty:
        --slots_in_flight_;
        break;
      case FrameKind::Data:
        --slots_in_flight_;
        if (f.opcode == Opcode::FrameStored) {
          stored_[f.payload] = true;
        } else if (f.opcode == Opcode::Vector) {
          consume_vector(VectorWord::unpack(f.payload), t);
        }
        break;
    }
  }

  void consume_vector(const VectorWord& v, SimTime t) {
    // at most kTagModulus pairs are outstanding, so the tag is unambiguous
    int pair = contiguous_;
    while (pair < issued_ && (pair % VectorWord::kTagModulus != v.pair_tag || result_.pair_completion[static_cast<std::size_t>(pair)] >= 0)) {
      ++pair;
    }
    if (pair >= issued_) throw Error("vector for window " + std::to_string(v.window) + " matches no outstanding pair");
    const auto p = static_cast<std::size_t>(pair);
    const auto w = static_cast<std::size_t>(v.window);
    if (have_vector_[p][w]) throw Error("duplicate vector for window " + std::to_string(v.window));
    have_vector_[p][w] = true;
    const int owner = (v.window + schedule_offset(n_, windows_, pair)) % n_;
    if (!cmd_returned_[p][static_cast<std::size_t>(owner)]) ++result_.flag_violations;
    result_.fields[p].vectors[w] = Displacement{v.dx, v.dy, v.peak, v.window};
    if (++received_[p] == windows_) {
      result_.pair_completion[p] = t;
      while (contiguous_ < n_pairs_ && result_.pair_completion[static_cast<std::size_t>(contiguous_)] >= 0) {
        ++contiguous_;
      }
    }
  }

  void issue_pairs() {
    // the second frame may still be arriving; modules wait on the storage read port
    while (issued_ < n_pairs_ && stored_[static_cast<std::size_t>(issued_)] &&
           issued_ < contiguous_ + VectorWord::kTagModulus) {
      for (int k = 0; k < n_; ++k) {
        commands_.push_back(
            RingFrame{FrameKind::Command, ring_.processing_id(k), Opcode::Correlate, static_cast<std::uint32_t>(issued_),
                      false, 0});
      }
      if (first_issue_ < 0) first_issue_ = now_;
      ++issued_;
    }
  }

  // ---- acquisition -------------------------------------------------------

  void acquisition(SimTime t) {
    constexpr int kModule = 1;
    drain_stage(kModule, t);
    if (auto f = take_frame(kModule)) {
      if (f->kind == FrameKind::Command && f->target == kModule && f->opcode == Opcode::StartAcquisition) {
        f->accepted = true;
        acq_started_ = true;
        trace(t, kModule, TraceEvent::Accept, f->id);
      }
      stage_frame(kModule, *f, t, 1);
    }
    drain_stage(kModule, t);
    if (!acq_started_) return;

    const int total_frames = n_pairs_ + 1;
    const auto words = static_cast<int>(frames_.front().words().size());
    if (!capturing_ && acq_frame_ < total_frames && bank_free(acq_frame_)) {
      capturing_ = true;
      acq_word_ = 0;
      acq_frame_start_ = t;
      begin_frame(acq_frame_);
    }
    if (!capturing_) return;

    if (t >= word_due(acq_word_)) {
      write_word(acq_frame_, acq_word_, frames_[static_cast<std::size_t>(acq_frame_)].words()[static_cast<std::size_t>(acq_word_)]);
      if (++acq_word_ == words) {
        frame_written(acq_frame_, t);
        capturing_ = false;
        ++acq_frame_;
        schedule(kModule, clock(kModule).edge_after(t, 1));
        return;
      }
    }
    schedule(kModule, std::max(clock(kModule).edge_after(t, 1), clock(kModule).next_edge(word_due(acq_word_))));
  }

  SimTime word_due(int word) const {
    const double ps = static_cast<double>(word + 1) * 32.0 * 1e6 / cfg_.pixel_clock_mhz;
    return acq_frame_start_ + std::llround(ps);
  }

  // ---- storage -----------------------------------------------------------

  bool bank_free(int frame) const {
    const Bank& b = banks_[static_cast<std::size_t>(frame % 2)];
    if (b.frame < 0) return true;
    return b.frame < n_pairs_ && fetch_count_[static_cast<std::size_t>(b.frame)] == n_;
  }

  void begin_frame(int frame) {
    Bank& b = banks_[static_cast<std::size_t>(frame % 2)];
    b.frame = frame;
    b.complete = false;
    b.image.reset();
    b.words.assign(frames_.front().words().size(), 0U);
  }

  void write_word(int frame, int word, std::uint32_t value) {
    banks_[static_cast<std::size_t>(frame % 2)].words[static_cast<std::size_t>(word)] = value;
  }

  void frame_written(int frame, SimTime t) {
    const SimTime at = clock(2).next_edge(t);
    completions_.push_back({at, frame});
    schedule(2, at);
  }

  void storage(SimTime t) {
    constexpr int kModule = 2;
    while (!completions_.empty() && completions_.front().first <= t) {
      const int frame = completions_.front().second;
      completions_.pop_front();
      Bank& b = banks_[static_cast<std::size_t>(frame % 2)];
      b.image = std::make_shared<const BinaryImage>(BinaryImage::from_words(cfg_.width, cfg_.height, b.words));
      b.complete = true;
      reports_.push_back(frame);
      for (int k = 0; k < n_; ++k) {
        const int id = ring_.processing_id(k);
        if (!state(id).fetch_wait.empty()) schedule(id, clock(id).next_edge(t));
      }
    }
    drain_stage(kModule, t);
    if (auto f = take_frame(kModule)) {
      if (f->kind == FrameKind::Empty && !reports_.empty()) {
        f->kind = FrameKind::Data;
        f->target = 0;
        f->opcode = Opcode::FrameStored;
        f->payload = static_cast<std::uint32_t>(reports_.front());
        reports_.pop_front();
        trace(t, kModule, TraceEvent::Fill, f->id);
      }
      stage_frame(kModule, *f, t, 1);
    }
    drain_stage(kModule, t);
  }

  bool pair_stored(int pair) const {
    const Bank& a = banks_[static_cast<std::size_t>(pair % 2)];
    const Bank& b = banks_[static_cast<std::size_t>((pair + 1) % 2)];
    return a.frame == pair && b.frame == pair + 1 && a.complete && b.complete;
  }

  std::pair<FramePtr, FramePtr> fetch(int pair, SimTime t) {
    if (!pair_stored(pair)) throw Error("pair " + std::to_string(pair) + " fetched before both frames were stored");
    const Bank& a = banks_[static_cast<std::size_t>(pair % 2)];
    const Bank& b = banks_[static_cast<std::size_t>((pair + 1) % 2)];
    if (++fetch_count_[static_cast<std::size_t>(pair)] == n_) schedule(1, clock(1).next_edge(t));
    return {a.image, b.image};
  }

  // ---- processing --------------------------------------------------------

  void processing(int module, SimTime t) {
    auto& st = state(module);
    const int k = module - 3;
    const ClockDomain& clk = clock(module);

    if (st.current && t >= st.engine_done) {
      const Job job = *st.current;
      st.current.reset();
      const auto& frames = st.local_frames.at(job.pair);
      const Displacement d = correlate_window(*frames.first, *frames.second, grid_, job.window, piv_);
      const VectorWord word{job.pair % VectorWord::kTagModulus, job.window, d.dx, d.dy, static_cast<int>(d.peak_value)};
      st.results.push_back(word.pack());
      st.busy_ps += clk.cycles_to_ps(cfg_.t_corr);
      if (--st.windows_left[job.pair] == 0) {
        st.windows_left.erase(job.pair);
        st.local_frames.erase(job.pair);
      }
    }

    drain_stage(module, t);
    if (auto f = take_frame(module)) {
      if (f->kind == FrameKind::Command && cfg_.hop_cost > 0) {
        // the wrapper forwards at once; decoding occupies the module's
        // controller, which the correlator shares
        st.decoder_free = clk.edge_after(std::max(t, st.decoder_free), cfg_.hop_cost);
        if (st.current) {
          st.engine_done = clk.edge_time(clk.edge_index(st.engine_done) + cfg_.hop_cost);
          schedule(module, st.engine_done);
        }
        st.blocked_until = std::max(st.blocked_until, st.decoder_free);
      }
      if (f->kind == FrameKind::Command) {
        if (f->target == module && f->opcode == Opcode::Correlate) {
          f->accepted = true;
          trace(t, module, TraceEvent::Accept, f->id);
          st.fetch_wait.push_back(static_cast<int>(f->payload));
        }
      } else if (f->kind == FrameKind::Empty && !st.results.empty()) {
        f->kind = FrameKind::Data;
        f->target = 0;
        f->opcode = Opcode::Vector;
        f->payload = st.results.front();
        st.results.pop_front();
        trace(t, module, TraceEvent::Fill, f->id);
      }
      stage_frame(module, *f, t, 1);
    }
    drain_stage(module, t);

    while (!st.fetch_wait.empty() && pair_stored(st.fetch_wait.front())) {
      load_pair(module, k, st.fetch_wait.front(), t);
      st.fetch_wait.pop_front();
    }

    if (!st.current && !st.jobs.empty()) {
      const Job& next = st.jobs.front();
      const SimTime ready = std::max(next.data_ready, st.blocked_until);
      if (t >= ready) {
        st.current = next;
        st.jobs.pop_front();
        st.engine_done = clk.edge_after(t, cfg_.t_corr);
        if (st.first_start < 0) st.first_start = t;
        schedule(module, st.engine_done);
      } else {
        schedule(module, clk.next_edge(ready));
      }
    }
  }

  void load_pair(int module, int k, int pair, SimTime t) {
    auto& st = state(module);
    st.local_frames[pair] = fetch(pair, t);
    const SimTime at_storage = clock(2).edge_after(t, cfg_.storage_latency);
    const SimTime ready = clock(module).next_edge(at_storage);
    const std::vector<int> owner = control_schedule(n_, windows_, schedule_offset(n_, windows_, pair));
    int count = 0;
    for (int w = 0; w < windows_; ++w) {
      if (owner[static_cast<std::size_t>(w)] == k) {
        st.jobs.push_back({pair, w, ready});
        ++count;
      }
    }
    if (count == 0) {
      st.local_frames.erase(pair);
    } else {
      st.windows_left[pair] = count;
    }
    schedule(module, ready);
  }

  // ---- wrap-up -----------------------------------------------------------

  [[noreturn]] void report_deadlock() {
    std::vector<std::string> stalled;
    for (int i = 0; i < ring_.size(); ++i) {
      const auto& st = state(i);
      const bool busy = st.wrapper.receive.latch || st.wrapper.send.latch || st.stage || !st.jobs.empty() ||
                        !st.fetch_wait.empty() ||
                        st.current || !st.results.empty() || (i == 0 && !commands_.empty()) ||
                        (i == 1 && capturing_) || (i == 2 && !reports_.empty()) || i == options_.stall_module;
      if (busy) stalled.push_back(ring_.modules[static_cast<std::size_t>(i)].name);
    }
    std::string what = "ring simulation deadlocked after " + std::to_string(contiguous_) + " of " +
                       std::to_string(n_pairs_) + " pairs; stalled:";
    for (const auto& s : stalled) what += " " + s;
    throw SimulationDeadlock(what, stalled);
  }

  void finish() {
    result_.end_time = now_;
    const auto& done = result_.pair_completion;
    double ips = 0.0;
    if (n_pairs_ >= 2) {
      const auto [first, last] = measurement_window(n_, n_pairs_);
      result_.measured_first = first;
      result_.measured_last = last;
      const double span_s =
          static_cast<double>(done[static_cast<std::size_t>(last)] - done[static_cast<std::size_t>(first)]) /
          kPicosPerSecond;
      ips = (last - first) / span_s;
    } else {
      ips = kPicosPerSecond / static_cast<double>(done[0] - first_issue_);
    }
    ThroughputReport rep = make_report(n_, ips, windows_, cfg_.pixels_per_frame());
    const SimTime work_end = done.back();
    for (int k = 0; k < n_; ++k) {
      const auto& st = state(ring_.processing_id(k));
      const SimTime span = work_end - std::max<SimTime>(st.first_start, 0);
      rep.utilization.push_back(span > 0 ? static_cast<double>(st.busy_ps) / static_cast<double>(span) : 0.0);
    }
    SimTime occupied = 0;
    for (const auto& st : states_) occupied += st.latch_total;
    rep.ring_occupancy = now_ > 0 ? static_cast<double>(occupied) / (static_cast<double>(now_) * ring_.size()) : 0.0;
    result_.report = std::move(rep);
  }

  SimConfig cfg_;
  Ring ring_;
  int n_pairs_;
  SimOptions options_;
  PivConfig piv_;
  int n_ = 1;
  int windows_ = 0;
  WindowGrid grid_;
  std::vector<ModuleState> states_;
  std::vector<LinkTiming> timing_;
  std::priority_queue<Event, std::vector<Event>, std::greater<>> queue_;
  std::uint64_t seq_ = 0;
  SimTime now_ = 0;
  SimResult result_;

  std::vector<BinaryImage> frames_;  // binarised workload, streamed by acquisition

  // control
  std::deque<RingFrame> commands_;
  std::uint64_t next_frame_id_ = 1;
  int slots_in_flight_ = 0;
  int issued_ = 0;
  int contiguous_ = 0;
  SimTime first_issue_ = -1;
  std::vector<bool> stored_;
  std::vector<std::vector<bool>> cmd_returned_;
  std::vector<int> received_;
  std::vector<std::vector<bool>> have_vector_;

  // acquisition
  bool acq_started_ = false;
  bool capturing_ = false;
  int acq_frame_ = 0;
  int acq_word_ = 0;
  SimTime acq_frame_start_ = 0;

  // storage
  std::array<Bank, 2> banks_;
  std::vector<int> fetch_count_;
  std::deque<std::pair<SimTime, int>> completions_;
  std::deque<int> reports_;
};

}  // namespace

SimResult run_simulation(const SimConfig& cfg, int n_image_pairs, SimOptions options) {
  Simulator sim(cfg, n_image_pairs, options);
  return sim.run();
}

std::pair<int, int> measurement_window(int n_processing, int n_image_pairs) {
  const int first = kWarmupPairs;
  const int avail = n_image_pairs - 1 - kTailPairs - first;
  if (avail < 1) return {0, n_image_pairs - 1};
  // whole schedule rotations keep every module's share identical
  const int span = avail >= n_processing ? n_processing * (avail / n_processing) : avail;
  return {first, first + span};
}

int default_pair_count(int n_processing) {
  const int rotations = (kMinMeasuredPairs + n_processing - 1) / n_processing;
  return kWarmupPairs + rotations * n_processing + kTailPairs + 1;
}

ThroughputReport simulate_throughput(const SimConfig& cfg, int n_image_pairs) {
  const int pairs = n_image_pairs > 0 ? n_image_pairs : default_pair_count(cfg.n_processing);
  return run_simulation(cfg, pairs).report;
}

}  // namespace pivring::ring
