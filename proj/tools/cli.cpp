#include "cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "rzk/attacks.hpp"
#include "rzk/catalogue.hpp"
#include "rzk/error.hpp"
#include "rzk/generator.hpp"
#include "rzk/graph_io.hpp"
#include "rzk/protocol.hpp"
#include "rzk/randomness.hpp"
#include "rzk/spacetime.hpp"
#include "rzk/transcript.hpp"

namespace rzk::cli {

namespace {

constexpr const char* kVersion = RZK_VERSION;
constexpr std::string_view kReplayTag = "# replay: ";
constexpr std::string_view kConfigTag = "# config.";

struct Options {
  std::string graph;
  std::string config;
  std::string out;
  std::string transcript;
  std::string shared;
  std::string profile = "fake-colouring";
  std::uint64_t seed = 0;
  std::uint32_t k = 1;
  std::optional<std::uint64_t> rounds;
  std::size_t vertices = 0;
  std::optional<double> separation;
  bool strict = false;
  bool keep_going = false;
  // Set by `replay`: write here, but keep the recorded --out in the manifest.
  std::string out_override;
};

std::string format_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

std::string fixed(double v, int digits) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, digits);
  return std::string(buf, p);
}

/// Resolved invocation, written at the top of every artefact.
class Manifest {
 public:
  explicit Manifest(std::string subcommand) : subcommand_(std::move(subcommand)) {
    replay_.push_back(subcommand_);
  }

  // Adds a parameter and its flag on the replay line.
  void flag(const std::string& name, const std::string& value) {
    params_.emplace_back(name, value);
    replay_.push_back("--" + name);
    replay_.push_back(value);
  }
  void switch_flag(const std::string& name) {
    params_.emplace_back(name, "true");
    replay_.push_back("--" + name);
  }
  void positional(const std::string& name, const std::string& value) {
    params_.emplace_back(name, value);
    replay_.push_back(value);
  }
  void note(const std::string& key, const std::string& value) { notes_.emplace_back(key, value); }

  std::vector<std::string> lines() const {
    std::vector<std::string> out;
    out.push_back("rzk-manifest version=" + std::string(kVersion));
    std::string replay;
    for (const auto& a : replay_) replay += (replay.empty() ? "" : " ") + a;
    out.push_back("replay: " + replay);
    out.push_back("subcommand=" + subcommand_);
    for (const auto& [k, v] : params_) out.push_back(k + "=" + v);
    for (const auto& [k, v] : notes_) out.push_back(k + "=" + v);
    return out;
  }

  void write(std::ostream& out) const {
    for (const auto& l : lines()) out << "# " << l << '\n';
  }

 private:
  std::string subcommand_;
  std::vector<std::pair<std::string, std::string>> params_;
  std::vector<std::pair<std::string, std::string>> notes_;
  std::vector<std::string> replay_;
};

void note_config(Manifest& m, const SpacetimeConfig& cfg) {
  std::ostringstream text;
  write_spacetime_config(text, cfg);
  std::string line;
  std::istringstream in(text.str());
  while (std::getline(in, line)) {
    const auto eq = line.find(" = ");
    m.note("config." + line.substr(0, eq), line.substr(eq + 3));
  }
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback, bool binary = false) {
    if (path.empty()) {
      stream_ = &fallback;
      return;
    }
    file_ = std::make_unique<std::ofstream>(path, binary ? std::ios::binary : std::ios::out);
    if (!*file_) throw IoError("cannot write " + path);
    stream_ = file_.get();
  }
  std::ostream& operator*() { return *stream_; }
  void close(const std::string& path) {
    if (!file_) return;
    file_->close();
    if (!*file_) throw IoError("failed writing " + path);
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

const std::string& target_path(const Options& o) { return o.out_override.empty() ? o.out : o.out_override; }

SpacetimeConfig resolve_config(const Options& o, std::optional<SpacetimeConfig> embedded = std::nullopt) {
  SpacetimeConfig cfg = !o.config.empty() ? load_spacetime_config(o.config)
                        : embedded        ? *embedded
                                          : short_distance_config();
  if (o.separation) cfg.separation_m = *o.separation;
  cfg.validate();
  return cfg;
}

Colouring require_certificate(const Instance& inst) {
  if (!inst.colouring) {
    throw ConfigError("no certificate: the instance has no colouring lines, provers cannot answer");
  }
  if (!validate_colouring(inst.graph, *inst.colouring)) {
    throw ContractViolation("certificate is not a proper 3-colouring of the graph");
  }
  return *inst.colouring;
}

int cmd_gen(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.vertices < 4) throw ContractViolation("--vertices must be at least 4");
  Manifest m("gen");
  m.flag("vertices", std::to_string(o.vertices));
  m.flag("seed", std::to_string(o.seed));
  if (!o.out.empty()) m.flag("out", o.out);

  std::vector<Graph> pool;
  GenerationOptions opts;
  const auto seeds = catalogue::hardness_seeds();
  std::size_t smallest = SIZE_MAX;
  for (const auto& s : seeds) smallest = std::min(smallest, s.graph.num_vertices());
  if (o.vertices >= smallest) {
    for (const auto& s : seeds) pool.push_back(s.graph);
    m.note("pool", "hardness");
  } else {
    // Below the hardness seeds only K4 and W5 fit; both contain near-4-cliques.
    pool = {catalogue::complete(4), catalogue::wheel(5)};
    opts.allow_near_four_cliques = true;
    m.note("pool", "small");
  }
  Rng rng(o.seed, Stream::kGraph);
  const GeneratedInstance inst = generate_instance(pool, o.vertices, rng, opts);
  m.note("joins", std::to_string(inst.joins));
  m.note("removed_edge", std::to_string(inst.removed_edge.u + 1) + " " + std::to_string(inst.removed_edge.v + 1));

  Output file(target_path(o), out);
  write_instance(*file, inst.graph, &inst.colouring, m.lines());
  file.close(target_path(o));
  (o.out.empty() ? err : out) << "vertices=" << inst.graph.num_vertices()
                              << " edges=" << inst.graph.num_edges() << " joins=" << inst.joins << '\n';
  return kOk;
}

int cmd_run(const Options& o, std::ostream& out, std::ostream&) {
  const Instance inst = load_instance(o.graph);
  const Colouring colouring = require_certificate(inst);
  const SpacetimeConfig sc = resolve_config(o);

  Manifest m("run");
  m.flag("graph", o.graph);
  m.flag("k", std::to_string(o.k));
  m.flag("seed", std::to_string(o.seed));
  if (o.rounds) m.flag("rounds", std::to_string(*o.rounds));
  if (!o.config.empty()) m.flag("config", o.config);
  if (o.separation) m.flag("separation", format_double(*o.separation));
  if (!o.shared.empty()) m.flag("shared", o.shared);
  if (o.keep_going) m.switch_flag("keep-going");
  if (o.strict) m.switch_flag("strict");
  if (!o.out.empty()) m.flag("out", o.out);
  note_config(m, sc);

  ProverSecret secret;
  if (o.shared.empty()) {
    secret = make_prover_secret(inst.graph, colouring, o.seed);
  } else {
    std::ifstream in(o.shared, std::ios::binary);
    if (!in) throw IoError("cannot open " + o.shared);
    SharedRandomness shared = read_shared_randomness(in);
    if (shared.sequence.num_vertices() != inst.graph.num_vertices()) {
      throw ConfigError("pre-shared randomness was made for a different vertex count");
    }
    const std::size_t L = shared.sequence.window_length();
    secret = {colouring, std::make_shared<const NodeSequence>(std::move(shared.sequence)),
              std::make_shared<const RecordedRoundSource>(std::move(shared.rounds), L)};
  }
  HonestProver left(secret);
  HonestProver right(secret);

  SessionConfig cfg;
  cfg.security_k = o.k;
  cfg.seed = o.seed;
  cfg.rounds = o.rounds;
  cfg.abort_on_first_failure = !o.keep_going;

  std::optional<Output> transcript;
  if (!target_path(o).empty()) {
    transcript.emplace(target_path(o), out);
    m.write(**transcript);
  }
  NoSignallingAuditor auditor(sc);
  TranscriptSink sink = [&](const TranscriptRecord& rec) {
    auditor.add(rec);
    if (transcript) write_transcript_record(**transcript, rec);
  };
  const TimedSessionResult res = simulate_timed_session(sc, inst.graph, cfg, left, right, sink);
  if (transcript) transcript->close(target_path(o));

  const auto& s = res.session;
  out << "vertices=" << inst.graph.num_vertices() << " edges=" << inst.graph.num_edges() << '\n'
      << "rounds_planned=" << s.rounds_planned << " rounds_run=" << s.rounds_run
      << " failures=" << s.failures << (s.aborted ? " aborted" : "") << '\n'
      << "wall_seconds=" << fixed(s.wall_seconds, 3) << " rounds_per_second=" << fixed(s.rounds_per_second, 0)
      << '\n'
      << "simulated_duration_s=" << fixed(static_cast<double>(res.simulated_duration_ns) * 1e-9, 6) << '\n'
      << "audit ";
  write_audit_summary(out, auditor.report());
  if (s.failures > 0 || s.aborted) return kProtocol;
  if (o.strict && !auditor.report().sound()) return kAuditFailure;
  return kOk;
}

int cmd_attack(const Options& o, std::ostream& out, std::ostream&) {
  const Instance inst = load_instance(o.graph);
  const std::uint64_t rounds = o.rounds.value_or(100'000);
  Manifest m("attack");
  m.flag("graph", o.graph);
  m.flag("profile", o.profile);
  m.flag("rounds", std::to_string(rounds));
  m.flag("seed", std::to_string(o.seed));
  if (!o.out.empty()) m.flag("out", o.out);

  const StrategyProfile profile = make_profile(o.profile, inst.graph, o.seed, inst.colouring);
  const DetectionReport report = simulate_attack(inst.graph, profile, rounds, o.seed);
  Output file(target_path(o), out);
  m.write(*file);
  write_detection_report(*file, report);
  file.close(target_path(o));
  return kOk;
}

int cmd_audit(const Options& o, std::ostream& out, std::ostream&) {
  const std::string& path = o.transcript;
  if (path.empty()) throw ContractViolation("audit needs a transcript path");
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);

  // A transcript written by `run` records its config; --config overrides it.
  std::vector<std::string> lines;
  std::string line;
  std::string embedded_text;
  while (std::getline(in, line)) {
    if (line.rfind(kConfigTag, 0) == 0) {
      const std::string kv = line.substr(kConfigTag.size());
      const auto eq = kv.find('=');
      if (eq != std::string::npos) embedded_text += kv.substr(0, eq) + " = " + kv.substr(eq + 1) + '\n';
    }
    lines.push_back(std::move(line));
  }
  std::optional<SpacetimeConfig> embedded;
  if (!embedded_text.empty()) {
    std::istringstream cfg_in(embedded_text);
    embedded = parse_spacetime_config(cfg_in);
  }
  const SpacetimeConfig sc = resolve_config(o, embedded);

  Manifest m("audit");
  m.positional("transcript", path);
  if (!o.config.empty()) m.flag("config", o.config);
  if (o.separation) m.flag("separation", format_double(*o.separation));
  if (!o.out.empty()) m.flag("out", o.out);
  note_config(m, sc);

  NoSignallingAuditor auditor(sc);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    if (lines[n].empty() || lines[n].front() == '#') continue;
    auditor.add(parse_transcript_record(lines[n], n + 1));
  }
  Output file(target_path(o), out);
  m.write(*file);
  write_audit_report(*file, auditor.report());
  file.close(target_path(o));
  return auditor.report().sound() ? kOk : kAuditFailure;
}

int cmd_bench(const Options& o, std::ostream& out, std::ostream&) {
  Graph g = catalogue::demo();
  Colouring c = catalogue::demo_colouring();
  if (!o.graph.empty()) {
    Instance inst = load_instance(o.graph);
    c = require_certificate(inst);
    g = std::move(inst.graph);
  }
  const std::uint64_t rounds = o.rounds.value_or(1'000'000);
  const ProverSecret secret = make_prover_secret(g, c, o.seed);
  HonestProver prover(secret);

  std::vector<Challenge> pool;
  Rng rng(o.seed, Stream::kVerifier);
  for (std::uint64_t n = 0; n < std::min<std::uint64_t>(rounds, 4096); ++n) {
    pool.push_back(sample_challenge_pair(g, rng, static_cast<std::uint32_t>(n)).left);
  }
  using Clock = std::chrono::steady_clock;
  unsigned sink = 0;
  const auto t0 = Clock::now();
  for (std::uint64_t n = 0; n < rounds; ++n) {
    Challenge ch = pool[n % pool.size()];
    ch.round = static_cast<std::uint32_t>(n);
    const Answer a = *prover.respond(ch);
    sink += a.a1 + a.a2;
  }
  const double answer_s = std::chrono::duration<double>(Clock::now() - t0).count();

  HonestProver left(secret);
  HonestProver right(secret);
  SessionConfig cfg;
  cfg.seed = o.seed;
  cfg.rounds = rounds;
  const SessionResult res = rounds > 0 ? run_session(g, cfg, left, right) : SessionResult{};
  const double rps = res.rounds_per_second;
  out << "vertices=" << g.num_vertices() << " edges=" << g.num_edges() << " rounds=" << rounds << '\n'
      << "answer_seconds=" << fixed(answer_s, 6) << " answers_per_second="
      << fixed(answer_s > 0 ? static_cast<double>(rounds) / answer_s : 0.0, 0) << '\n'
      << "round_seconds=" << fixed(res.wall_seconds, 6) << " rounds_per_second=" << fixed(rps, 0) << '\n'
      << "projected_1e6_rounds_seconds=" << fixed(rps > 0 ? 1e6 / rps : 0.0, 3) << '\n'
      << "failures=" << res.failures << " checksum=" << sink % 3 << '\n';
  return res.failures == 0 ? kOk : kProtocol;
}

int cmd_share(const Options& o, std::ostream& out, std::ostream& err) {
  const Instance inst = load_instance(o.graph);
  const std::uint64_t rounds = o.rounds.value_or(required_rounds(inst.graph.num_edges(), o.k));
  if (rounds > UINT32_MAX) throw ContractViolation("round count must fit 32 bits");
  if (target_path(o).empty()) throw ContractViolation("share needs --out");
  const SharedMaterial mat = make_shared_material(inst.graph.num_vertices(), o.seed);
  Output file(target_path(o), out, true);
  write_shared_randomness(*file, *mat.sequence, o.seed, *mat.rounds, static_cast<std::uint32_t>(rounds));
  file.close(target_path(o));
  const RandomnessBudget b = randomness_budget(inst.graph.num_vertices(), rounds);
  (o.out.empty() ? err : out) << "rounds=" << rounds << " window_length=" << b.window_length
                              << " per_round=" << b.per_round_bits << "bit+" << b.per_round_trits
                              << "trits naive_per_round=" << b.naive_per_round_trits << "trits\n";
  return kOk;
}

std::vector<std::string> read_replay_line(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(kReplayTag, 0) == 0) {
      std::vector<std::string> args;
      std::istringstream words(line.substr(kReplayTag.size()));
      for (std::string w; words >> w;) args.push_back(w);
      return args;
    }
    if (!line.empty() && line.front() != '#' && line.rfind("p ", 0) != 0) break;
  }
  throw ParseError("no manifest replay line in " + path);
}

int dispatch(const std::vector<std::string>& args, const std::string& out_override, std::ostream& out,
             std::ostream& err);

int cmd_replay(const std::string& artefact, const std::string& out_path, std::ostream& out,
               std::ostream& err) {
  const auto args = read_replay_line(artefact);
  if (!args.empty() && args.front() == "replay") throw ContractViolation("manifest replays itself");
  return dispatch(args, out_path, out, err);
}

int dispatch(const std::vector<std::string>& args, const std::string& out_override, std::ostream& out,
             std::ostream& err) {
  Options o;
  o.out_override = out_override;
  CLI::App app{"Relativistic zero-knowledge proof of 3-colourability: simulator and tools", "rzk"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  auto* gen = app.add_subcommand("gen", "Generate a 3-colourable hardness instance with certificate");
  gen->add_option("--vertices", o.vertices, "Target vertex count (>= 4)")->required();
  gen->add_option("--seed", o.seed, "64-bit seed");
  gen->add_option("--out", o.out, "Output instance path (stdout if omitted)");

  auto* run = app.add_subcommand("run", "Run an honest timed session and audit it");
  run->add_option("--graph", o.graph, "Instance with colouring lines")->required();
  run->add_option("--k", o.k, "Security parameter; 9|E|k rounds")->check(CLI::PositiveNumber);
  run->add_option("--seed", o.seed, "64-bit seed");
  run->add_option("--rounds", o.rounds, "Override the round count");
  run->add_option("--config", o.config, "Spacetime config file");
  run->add_option("--separation", o.separation, "Override separation_m");
  run->add_option("--shared", o.shared, "Pre-shared randomness file from `share`");
  run->add_option("--out", o.out, "Transcript output path");
  run->add_flag("--strict", o.strict, "Exit 3 on audit violations");
  run->add_flag("--keep-going", o.keep_going, "Do not abort at the first rejected round");

  auto* attack = app.add_subcommand("attack", "Evaluate a cheating strategy exactly and by sampling");
  attack->add_option("--graph", o.graph, "Instance path")->required();
  attack->add_option("--profile", o.profile, "honest|fake-colouring|constant|consistency-only|best-response");
  attack->add_option("--rounds", o.rounds, "Sampled rounds (default 100000)");
  attack->add_option("--seed", o.seed, "64-bit seed");
  attack->add_option("--out", o.out, "Report path (stdout if omitted)");

  auto* audit = app.add_subcommand("audit", "Audit a transcript for the no-signalling condition");
  audit->add_option("transcript,--transcript", o.transcript, "Transcript path")->required();
  audit->add_option("--config", o.config, "Spacetime config file (default: the transcript's own)");
  audit->add_option("--separation", o.separation, "Override separation_m");
  audit->add_option("--out", o.out, "Report path (stdout if omitted)");

  auto* bench = app.add_subcommand("bench", "Measure prover-answer and full-round throughput");
  bench->add_option("--graph", o.graph, "Instance with colouring (demo graph if omitted)");
  bench->add_option("--rounds", o.rounds, "Rounds (default 1000000)");
  bench->add_option("--seed", o.seed, "64-bit seed");

  auto* share = app.add_subcommand("share", "Write the provers' pre-shared randomness file");
  share->add_option("--graph", o.graph, "Instance path")->required();
  share->add_option("--k", o.k, "Security parameter; 9|E|k rounds")->check(CLI::PositiveNumber);
  share->add_option("--rounds", o.rounds, "Override the round count");
  share->add_option("--seed", o.seed, "64-bit seed");
  share->add_option("--out", o.out, "Output path")->required();

  std::string artefact;
  std::string replay_out;
  auto* replay = app.add_subcommand("replay", "Re-run the invocation recorded in an artefact's manifest");
  replay->add_option("artefact", artefact, "Artefact with a manifest")->required();
  replay->add_option("--out", replay_out, "Write here instead of the recorded output path");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  if (*gen) return cmd_gen(o, out, err);
  if (*run) return cmd_run(o, out, err);
  if (*attack) return cmd_attack(o, out, err);
  if (*audit) return cmd_audit(o, out, err);
  if (*bench) return cmd_bench(o, out, err);
  if (*share) return cmd_share(o, out, err);
  if (*replay) return cmd_replay(artefact, replay_out, out, err);
  return kUsage;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(args, "", out, err);
  } catch (const ContractViolation& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const SizeLimitError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidEdgeError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const ProtocolAbort& e) {
    err << "error: " << e.what() << '\n';
    return kProtocol;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUnexpected;
  }
}

}  // namespace rzk::cli
