#include "desynclab/engine.hpp"

#include <algorithm>
#include <queue>
#include <random>

#include "desynclab/protocols.hpp"
#include "desynclab/rng.hpp"

namespace desynclab {

namespace {

struct Node {
  double next_fire = 0.0;     // absolute seconds
  double phase_ref_time = 0.0;
  double phase_ref_value = 0.0;  // phase at phase_ref_time; grows linearly
  long generation = 0;           // invalidates superseded fire events
  long cycles = 0;               // own firings so far
  double last_heard = -1.0;      // most recent heard firing, any sender
  double prev_before_own = -1.0;  // last_heard snapshot at own firing
  bool update_armed = false;      // averaging update due at next heard firing
  int streak = 0;
  long declared_cycle = -1;  // first cycle of the winning streak
};

struct FireEvent {
  double time;
  int node;
  long generation;
};

struct LaterFirst {
  bool operator()(const FireEvent& a, const FireEvent& b) const {
    if (a.time != b.time) return a.time > b.time;
    return a.node > b.node;  // simultaneous firings process lowest id first
  }
};

}  // namespace

TrialRecord run_trial(const SimConfig& config) {
  config.validate();
  const ProtocolParams& p = config.params;
  const double T = p.period_s;
  const int w = p.w;

  std::mt19937_64 rng = make_rng(config.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  UniformNoise noise(p.normalized_sigma_delta());

  std::vector<Node> nodes(w);
  std::priority_queue<FireEvent, std::vector<FireEvent>, LaterFirst> queue;

  auto schedule_from_phase = [&](int id, double now, double phase) {
    Node& n = nodes[id];
    n.phase_ref_time = now;
    n.phase_ref_value = phase;
    n.next_fire = now + (1.0 - phase) * T;
    queue.push({n.next_fire, id, ++n.generation});
  };

  for (int i = 0; i < w; ++i) {
    // Uncoordinated start: initial phases i.i.d. uniform over the ring
    // unless the caller pinned them.
    const double phi = config.initial_phases.empty()
                           ? unit(rng)
                           : Phase::wrap(config.initial_phases[i]);
    schedule_from_phase(i, 0.0, phi);
  }

  TrialRecord record;
  record.seed = config.seed;
  int declared = 0;

  auto phase_now = [&](const Node& n, double t) {
    // Unwrapped elapsed fraction since the phase was last set; stays below
    // 1 for any node that has not reached its own firing yet.
    return n.phase_ref_value + (t - n.phase_ref_time) / T;
  };

  while (!queue.empty()) {
    const FireEvent ev = queue.top();
    queue.pop();
    Node& firer = nodes[ev.node];
    if (ev.generation != firer.generation) continue;

    const double t = ev.time;
    firer.cycles += 1;
    if (firer.cycles > config.max_cycles) {
      record.converged = false;
      return record;
    }

    // Gap check at the firing instant, against the most recent heard
    // firing. An unheard ring imposes no constraint yet, so the streak
    // starts as satisfied.
    bool ok = true;
    if (firer.last_heard >= 0.0) {
      ok = gap_within_threshold((t - firer.last_heard) / T, w, p.b_thres);
    }
    if (ok) {
      firer.streak += 1;
      if (firer.streak >= config.detection_window &&
          firer.declared_cycle < 0) {
        firer.declared_cycle = firer.cycles - (config.detection_window - 1);
        if (++declared == w) {
          record.converged = true;
          record.per_node_cycles.resize(w);
          long net = 0;
          for (int i = 0; i < w; ++i) {
            record.per_node_cycles[i] = nodes[i].declared_cycle;
            net = std::max(net, nodes[i].declared_cycle);
          }
          record.network_cycles = net;
          return record;
        }
      }
    } else {
      firer.streak = 0;
    }

    const bool silent =
        p.misfire_prob > 0.0 && unit(rng) < p.misfire_prob;

    // The firer's own cycle restarts either way.
    firer.prev_before_own = firer.last_heard;
    firer.update_armed = config.protocol == Protocol::kDesync &&
                         firer.prev_before_own >= 0.0;
    schedule_from_phase(ev.node, t, 0.0);

    if (silent) continue;

    for (int j = 0; j < w; ++j) {
      if (j == ev.node) continue;
      Node& n = nodes[j];
      if (config.protocol == Protocol::kDesync) {
        if (n.update_armed) {
          // First firing heard after the node's own: measure all three
          // phases as elapsed time over T and average with fresh noise.
          const double own = phase_now(n, t);
          const double prev = (t - n.prev_before_own) / T;
          const double n_own = noise(rng);
          const double n_prev = noise(rng);
          const double n_next = noise(rng);
          const Phase updated = desync_updated_phase(own, prev, 0.0, p.alpha,
                                                     n_own, n_prev, n_next);
          schedule_from_phase(j, t, updated.value());
          n.update_armed = false;
          record.desync_updates += 1;
        }
      } else {
        const double own = phase_now(n, t);
        if (in_listening_interval(own, w)) {
          const Phase updated =
              pco_updated_phase(own, p.alpha, w, noise(rng));
          schedule_from_phase(j, t, updated.value());
          if (t < T) record.pco_updates_first_period += 1;
        }
      }
      n.last_heard = t;
    }
  }

  return record;  // unreachable: every node always has a pending firing
}

}  // namespace desynclab
