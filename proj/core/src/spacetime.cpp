#include "rzk/spacetime.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "rzk/error.hpp"

namespace rzk {

std::string_view to_string(SyncModel m) { return m == SyncModel::kGps ? "gps" : "trigger"; }

void SpacetimeConfig::validate() const {
  if (!(separation_m > 0.0) || !std::isfinite(separation_m)) {
    throw ConfigError("separation_m must be positive");
  }
  if (!(rate_hz > 0.0) || !std::isfinite(rate_hz)) throw ConfigError("rate_hz must be positive");
  for (auto [name, v] : {std::pair{"accuracy_ns", accuracy_ns}, {"fibre_delay_ns", fibre_delay_ns},
                         {"jitter_ns", jitter_ns}, {"compensation_delay_ns", compensation_delay_ns},
                         {"exchange_ns", exchange_ns}, {"cycle_ns", cycle_ns}}) {
    if (v < 0) throw ConfigError(std::string(name) + " must not be negative");
  }
  if (sync_model == SyncModel::kTrigger && exchange_ns < jitter_ns) {
    throw ConfigError("exchange_ns must cover the trigger jitter");
  }
}

SpacetimeConfig short_distance_config() { return {}; }

SpacetimeConfig long_distance_config() {
  SpacetimeConfig cfg;
  cfg.separation_m = 390.0;
  cfg.sync_model = SyncModel::kGps;
  cfg.exchange_ns = 840;
  cfg.rate_hz = 3e5;
  return cfg;
}

std::int64_t sync_slack_ns(const SpacetimeConfig& cfg) {
  return cfg.sync_model == SyncModel::kGps ? cfg.accuracy_ns : 0;
}

double light_travel_ns(double distance_m) {
  if (distance_m < 0) throw ContractViolation("distance must not be negative");
  return distance_m / kSpeedOfLight * 1e9;
}

double min_separation_m(double exchange_ns, double sync_slack_ns) {
  if (exchange_ns < 0 || sync_slack_ns < 0) throw ContractViolation("durations must not be negative");
  return (exchange_ns + sync_slack_ns) * 1e-9 * kSpeedOfLight;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::string at_line(std::size_t line, const std::string& what) {
  return "line " + std::to_string(line) + ": " + what;
}

template <typename T>
T parse_number(std::string_view v, std::string_view key, std::size_t line) {
  T out{};
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size()) {
    throw ConfigError(at_line(line, "invalid value for " + std::string(key)));
  }
  return out;
}

}  // namespace

SpacetimeConfig parse_spacetime_config(std::istream& in) {
  SpacetimeConfig cfg;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto s = trim(raw);
    if (s.empty() || s.front() == '#') continue;
    const auto eq = s.find('=');
    if (eq == std::string_view::npos) throw ConfigError(at_line(line, "expected key = value"));
    const auto key = trim(s.substr(0, eq));
    const auto val = trim(s.substr(eq + 1));
    if (key == "separation_m") {
      cfg.separation_m = parse_number<double>(val, key, line);
    } else if (key == "rate_hz") {
      cfg.rate_hz = parse_number<double>(val, key, line);
    } else if (key == "sync_model") {
      if (val == "gps") {
        cfg.sync_model = SyncModel::kGps;
      } else if (val == "trigger") {
        cfg.sync_model = SyncModel::kTrigger;
      } else {
        throw ConfigError(at_line(line, "sync_model must be gps or trigger"));
      }
    } else if (key == "accuracy_ns") {
      cfg.accuracy_ns = parse_number<std::int64_t>(val, key, line);
    } else if (key == "fibre_delay_ns") {
      cfg.fibre_delay_ns = parse_number<std::int64_t>(val, key, line);
    } else if (key == "jitter_ns") {
      cfg.jitter_ns = parse_number<std::int64_t>(val, key, line);
    } else if (key == "compensation_delay_ns") {
      cfg.compensation_delay_ns = parse_number<std::int64_t>(val, key, line);
    } else if (key == "exchange_ns") {
      cfg.exchange_ns = parse_number<std::int64_t>(val, key, line);
    } else if (key == "cycle_ns") {
      cfg.cycle_ns = parse_number<std::int64_t>(val, key, line);
    } else {
      throw ConfigError(at_line(line, "unknown key '" + std::string(key) + "'"));
    }
  }
  cfg.validate();
  return cfg;
}

SpacetimeConfig load_spacetime_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path);
  return parse_spacetime_config(in);
}

void write_spacetime_config(std::ostream& out, const SpacetimeConfig& cfg) {
  char buf[64];
  auto dbl = [&](double v) {
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
  };
  out << "separation_m = " << dbl(cfg.separation_m) << '\n'
      << "sync_model = " << to_string(cfg.sync_model) << '\n'
      << "accuracy_ns = " << cfg.accuracy_ns << '\n'
      << "fibre_delay_ns = " << cfg.fibre_delay_ns << '\n'
      << "jitter_ns = " << cfg.jitter_ns << '\n'
      << "compensation_delay_ns = " << cfg.compensation_delay_ns << '\n'
      << "exchange_ns = " << cfg.exchange_ns << '\n'
      << "rate_hz = " << dbl(cfg.rate_hz) << '\n'
      << "cycle_ns = " << cfg.cycle_ns << '\n';
}

std::int64_t nominal_round_start_ns(const SpacetimeConfig& cfg, std::uint64_t round) {
  return static_cast<std::int64_t>(std::floor(static_cast<double>(round) * 1e9 / cfg.rate_hz));
}

RoundClock make_round_clock(const SpacetimeConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  const std::uint64_t key = derive_seed(seed, Stream::kTiming);
  return [cfg, key](std::uint32_t round) {
    const std::int64_t t0 = nominal_round_start_ns(cfg, round);
    RoundTiming t;
    if (cfg.sync_model == SyncModel::kGps) {
      t.t_emit_left = t0;
      t.t_emit_right = t0;
      t.t_recv_left = t0 + cfg.exchange_ns;
      t.t_recv_right = t0 + cfg.exchange_ns;
      return t;
    }
    std::int64_t delta = 0;
    if (cfg.jitter_ns > 0) {
      Rng rng(mix64(key ^ round));
      delta = rng.uniform_between(-cfg.jitter_ns, cfg.jitter_ns);
    }
    const std::int64_t latency = cfg.exchange_ns - cfg.jitter_ns;
    t.t_emit_left = t0 + cfg.compensation_delay_ns;
    t.t_emit_right = t0 + cfg.fibre_delay_ns + delta;
    t.t_recv_left = t.t_emit_left + latency;
    t.t_recv_right = t.t_emit_right + latency;
    return t;
  };
}

TimedSessionResult simulate_timed_session(const SpacetimeConfig& cfg, const Graph& g,
                                          const SessionConfig& session, Prover& left,
                                          Prover& right, const TranscriptSink& sink) {
  TimedSessionResult out;
  out.session = run_session(g, session, left, right, sink, make_round_clock(cfg, session.seed));
  out.simulated_duration_ns = nominal_round_start_ns(cfg, out.session.rounds_run);
  return out;
}

NoSignallingAuditor::NoSignallingAuditor(const SpacetimeConfig& cfg)
    : window_ns_(light_travel_ns(cfg.separation_m) - static_cast<double>(sync_slack_ns(cfg))) {}

void NoSignallingAuditor::add(const TranscriptRecord& rec) {
  const auto& t = rec.timing;
  if (std::min({t.t_emit_left, t.t_recv_left, t.t_emit_right, t.t_recv_right}) < 0) {
    throw ContractViolation("round " + std::to_string(rec.round()) + ": negative timestamp");
  }
  if (t.t_recv_left < t.t_emit_left || t.t_recv_right < t.t_emit_right) {
    throw ContractViolation("round " + std::to_string(rec.round()) +
                            ": answer timestamped before its challenge");
  }
  ++report_.rounds;
  const double margins[2] = {
      static_cast<double>(t.t_emit_right) + window_ns_ - static_cast<double>(t.t_recv_left),
      static_cast<double>(t.t_emit_left) + window_ns_ - static_cast<double>(t.t_recv_right)};
  for (int s = 0; s < 2; ++s) {
    if (!report_.worst_margin_ns || margins[s] < *report_.worst_margin_ns) {
      report_.worst_margin_ns = margins[s];
    }
    if (!(margins[s] > 0.0)) {
      report_.violations.push_back({rec.round(), s == 0 ? Side::kLeft : Side::kRight, margins[s]});
    }
  }
}

AuditReport audit_no_signalling(std::span<const TranscriptRecord> records,
                                const SpacetimeConfig& cfg) {
  NoSignallingAuditor auditor(cfg);
  for (const auto& rec : records) auditor.add(rec);
  return auditor.report();
}

void write_audit_report(std::ostream& out, const AuditReport& report) {
  char buf[64];
  auto fixed = [&](double v) {
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 3);
    return std::string(buf, p);
  };
  for (const auto& v : report.violations) {
    out << "violation round=" << v.round << " side=" << (v.side == Side::kLeft ? "left" : "right")
        << " margin_ns=" << fixed(v.margin_ns) << '\n';
  }
  write_audit_summary(out, report);
}

void write_audit_summary(std::ostream& out, const AuditReport& report) {
  char buf[64];
  auto fixed = [&](double v) {
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 3);
    return std::string(buf, p);
  };
  out << "summary rounds=" << report.rounds << " violations=" << report.violations.size()
      << " worst_margin_ns=" << (report.worst_margin_ns ? fixed(*report.worst_margin_ns) : "none")
      << " status=" << (report.sound() ? "SOUND" : "VIOLATED") << '\n';
}

}  // namespace rzk
