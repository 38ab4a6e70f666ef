#pragma once

// Geometry and timing of the two verifier-prover pairs on one simulated
// nanosecond timeline, and the post-hoc no-signalling audit.
//
// A round answered on side X is sound when the answer reached verifier X
// before any light-speed signal carrying verifier Y's challenge could have
// reached prover X:
//     t_recv(X) < t_emit(Y) + separation / c - sync_slack

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rzk/protocol.hpp"

namespace rzk {

inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s

enum class SyncModel : std::uint8_t { kGps, kTrigger };

std::string_view to_string(SyncModel m);

struct SpacetimeConfig {
  double separation_m = 60.0;
  SyncModel sync_model = SyncModel::kTrigger;
  std::int64_t accuracy_ns = 174;           // GPS timing accuracy
  std::int64_t fibre_delay_ns = 440;        // trigger fibre to the far pair
  std::int64_t jitter_ns = 24;              // trigger arrival jitter bound
  std::int64_t compensation_delay_ns = 440; // local delay matching the fibre
  std::int64_t exchange_ns = 192;           // challenge emission to answer reception
  double rate_hz = 3e6;
  std::int64_t cycle_ns = 8;                // FPGA clock period

  /// Throws ConfigError on negative durations, non-positive separation or
  /// rate, or an exchange shorter than the trigger jitter.
  void validate() const;
  bool operator==(const SpacetimeConfig&) const = default;
};

/// 60 m, trigger synchronisation, 24-cycle (192 ns) rounds at 3 MHz.
SpacetimeConfig short_distance_config();
/// 390 m, GPS synchronisation, 840 ns exchange at 0.3 MHz.
SpacetimeConfig long_distance_config();

/// Slack subtracted in the audit: the GPS accuracy, or 0 for the trigger
/// model (its jitter is already inside the exchange bound).
std::int64_t sync_slack_ns(const SpacetimeConfig& cfg);

/// distance / c in nanoseconds. Throws ContractViolation for negative input.
double light_travel_ns(double distance_m);
/// Smallest separation at which an exchange plus slack stays inside the
/// light-travel window, in metres.
double min_separation_m(double exchange_ns, double sync_slack_ns);

/// Key-value config file: `key = value` per line, '#' comments.
/// Keys: separation_m sync_model accuracy_ns fibre_delay_ns jitter_ns
/// compensation_delay_ns exchange_ns rate_hz cycle_ns. Missing keys keep the
/// short-distance defaults. Throws ConfigError naming the line.
SpacetimeConfig parse_spacetime_config(std::istream& in);
SpacetimeConfig load_spacetime_config(const std::string& path);
void write_spacetime_config(std::ostream& out, const SpacetimeConfig& cfg);

/// Nominal start of round n on the shared schedule: floor(n * 1e9 / rate).
std::int64_t nominal_round_start_ns(const SpacetimeConfig& cfg, std::uint64_t round);

/// Per-round timestamps as a pure function of (cfg, seed, round).
///
/// Trigger: the near verifier emits after the compensation delay, the far one
/// after the fibre delay plus a uniform jitter in [-jitter, +jitter]; each
/// answer returns exchange - jitter after its emission, so the bound of
/// `exchange_ns` holds between any answer and the challenge on the other
/// side. GPS: both emit at the nominal start and answers return after
/// `exchange_ns`.
RoundClock make_round_clock(const SpacetimeConfig& cfg, std::uint64_t seed);

struct TimedSessionResult {
  SessionResult session;
  std::int64_t simulated_duration_ns = 0;  // rounds / rate
};

/// run_session with simulated timestamps attached to every record.
TimedSessionResult simulate_timed_session(const SpacetimeConfig& cfg, const Graph& g,
                                          const SessionConfig& session, Prover& left,
                                          Prover& right, const TranscriptSink& sink = {});

enum class Side : std::uint8_t { kLeft, kRight };

struct AuditViolation {
  std::uint32_t round = 0;
  Side side = Side::kLeft;
  double margin_ns = 0.0;
};

struct AuditReport {
  std::uint64_t rounds = 0;
  std::vector<AuditViolation> violations;
  std::optional<double> worst_margin_ns;  // empty for an empty transcript
  bool sound() const noexcept { return violations.empty(); }
};

/// Streaming form of audit_no_signalling.
class NoSignallingAuditor {
 public:
  explicit NoSignallingAuditor(const SpacetimeConfig& cfg);
  void add(const TranscriptRecord& rec);
  const AuditReport& report() const noexcept { return report_; }

 private:
  double window_ns_;
  AuditReport report_;
};

/// Throws ContractViolation naming the round when an answer is timestamped
/// before its challenge or a timestamp is negative.
AuditReport audit_no_signalling(std::span<const TranscriptRecord> records,
                                const SpacetimeConfig& cfg);

/// One `violation` line per violating round, then the summary line.
void write_audit_report(std::ostream& out, const AuditReport& report);
void write_audit_summary(std::ostream& out, const AuditReport& report);

}  // namespace rzk
