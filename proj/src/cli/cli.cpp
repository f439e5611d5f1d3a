#include "uisdial/cli/cli.h"

#include <algorithm>
#include <csignal>
#include <fstream>
#include <iostream>
#include <memory>
#include <set>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <httplib.h>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "uisdial/agreement/report.h"
#include "uisdial/catalog/profile_client.h"
#include "uisdial/corpus/stats.h"
#include "uisdial/engine/engine.h"
#include "uisdial/estimator/factory.h"
#include "uisdial/estimator/linear.h"
#include "uisdial/evaluation/metrics.h"
#include "uisdial/evaluation/pairs.h"
#include "uisdial/evaluation/questionnaire.h"
#include "uisdial/service/http.h"
#include "uisdial/service/service.h"
#include "uisdial/synth/synth.h"
#include "uisdial/text/text.h"

namespace uisdial::cli {

namespace {

using nlohmann::json;

const std::string kDefaultCatalog = std::string(UISDIAL_DATA_DIR) + "/catalog.json";
const std::string kDefaultProfiles = std::string(UISDIAL_DATA_DIR) + "/profiles";

struct Globals {
  std::uint64_t seed = 0;
  std::string config_path;
  bool offline = false;
  std::string log_level = "warn";
};

// Swaps the default logger for one writing to `err` and restores it on exit.
class LoggerScope {
 public:
  LoggerScope(std::ostream& err, const std::string& level) : previous_(spdlog::default_logger()) {
    auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
    auto logger = std::make_shared<spdlog::logger>("uisdial", sink);
    logger->set_pattern("[%l] %v");
    logger->set_level(spdlog::level::from_str(level));
    spdlog::set_default_logger(logger);
  }
  ~LoggerScope() { spdlog::set_default_logger(previous_); }

 private:
  std::shared_ptr<spdlog::logger> previous_;
};

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out << content;
  if (!out) throw IoError("write failed for " + path);
}

estimator::EstimatorSpec make_spec(const std::string& backend, const std::string& model,
                                   const std::string& lexicon, const std::string& url) {
  estimator::EstimatorSpec spec;
  spec.backend = estimator::parse_backend(backend);
  spec.model_path = model;
  spec.lexicon_path = lexicon;
  if (!url.empty()) spec.external.url = url;
  return spec;
}

std::string uis_line(const engine::UisSnapshot& snap) {
  std::string out;
  for (UisKind kind : kAllKinds) {
    const auto& e = snap[index_of(kind)];
    if (!out.empty()) out += " | ";
    out += fmt::format("{} {:+.2f} {}{}", to_string(kind), e.score, to_string(e.judgment),
                       e.failed ? " (failed)" : "");
  }
  return out;
}

// ---- chat / replay --------------------------------------------------------

struct ChatOptions {
  std::string catalog = kDefaultCatalog;
  std::string backend = "lexicon";
  std::string model;
  std::string lexicon;
  std::string external_url;
  bool no_rules = false;
  bool diagnostics = false;
  std::string transcript;
  std::string session_id = "chat";
};

void print_reply(std::ostream& out, const engine::EngineReply& reply, bool diagnostics) {
  out << "system: " << reply.text << '\n';
  if (!diagnostics) return;
  if (reply.uis_snapshot) out << "  uis: " << uis_line(*reply.uis_snapshot) << '\n';
  std::string rules;
  for (auto r : reply.fired_rules) rules += (rules.empty() ? "" : ",") + std::string(engine::to_string(r));
  out << "  slot: " << to_string(reply.slot) << "  rules: " << (rules.empty() ? "-" : rules) << '\n';
  if (!reply.fired_rules.empty()) out << "  wo-RC: " << reply.counterfactual_text << '\n';
}

std::unique_ptr<engine::DialogueEngine> build_engine(const ChatOptions& o, bool rules_enabled) {
  auto catalog = std::make_shared<const catalog::CatalogFile>(catalog::load_catalog(o.catalog));
  auto est = estimator::make_estimator(make_spec(o.backend, o.model, o.lexicon, o.external_url));
  engine::EngineConfig config;
  config.estimator.backend = estimator::parse_backend(o.backend);
  config.rules_enabled = rules_enabled;
  // Interactive use never goes online; profiles come from fixtures.
  auto client = std::make_shared<catalog::ProfileClient>(
      catalog::ProfileClientConfig{.cache_dir = {}, .fixture_dir = kDefaultProfiles, .offline = true});
  engine::ProfileProvider profiles = [client](const catalog::PersonRef& p) {
    return client->try_fetch(p.name);
  };
  return std::make_unique<engine::DialogueEngine>(catalog, est, config, profiles);
}

int cmd_chat(const Globals& g, const ChatOptions& o, std::istream& in, std::ostream& out) {
  auto engine = build_engine(o, !o.no_rules);
  auto [state, opening] = engine->start_session(g.seed, o.session_id);
  print_reply(out, opening, o.diagnostics);
  std::string line;
  while (!state.done() && std::getline(in, line)) {
    if (text::trim(line).empty()) continue;
    print_reply(out, engine->step(state, line), o.diagnostics);
  }
  if (!o.transcript.empty()) engine::save_transcript(o.transcript, state.transcript);
  return kExitOk;
}

int cmd_replay(const ChatOptions& o, const std::string& log_path, std::ostream& out) {
  const auto log = engine::load_transcript(log_path);
  auto engine = build_engine(o, !o.no_rules);
  for (const auto& reply : engine::replay(log, *engine, !o.no_rules)) {
    print_reply(out, reply, o.diagnostics);
  }
  return kExitOk;
}

// ---- serve ----------------------------------------------------------------

httplib::Server* g_server = nullptr;

void stop_server(int) {
  if (g_server) g_server->stop();
}

struct ServeOptions {
  std::string host;
  int port = -1;
  std::string log_dir;
  bool no_rules = false;
  std::string backend;
  std::string model;
};

int cmd_serve(const Globals& g, const ServeOptions& o) {
  service::ServiceConfig config =
      g.config_path.empty() ? service::ServiceConfig{} : service::load_service_config(g.config_path);
  service::apply_env_overrides(config);
  if (!o.host.empty()) config.host = o.host;
  if (o.port >= 0) config.port = o.port;
  if (!o.log_dir.empty()) config.log_dir = o.log_dir;
  if (o.no_rules) config.engine.rules_enabled = false;
  if (!o.backend.empty()) {
    config.estimator_spec.backend = estimator::parse_backend(o.backend);
    config.engine.estimator.backend = config.estimator_spec.backend;
  }
  if (!o.model.empty()) config.estimator_spec.model_path = o.model;
  if (g.offline) config.offline = true;
  if (g.seed != 0) {
    config.seed = g.seed;
    config.seed_policy = service::SeedPolicy::Fixed;
  }
  config.validate();
  auto svc = service::SessionService::from_config(config);
  httplib::Server server;
  g_server = &server;
  std::signal(SIGINT, stop_server);
  std::signal(SIGTERM, stop_server);
  const bool ok = service::run_server(*svc, server);
  g_server = nullptr;
  if (!ok) throw IoError(fmt::format("cannot listen on {}:{}", config.host, config.port));
  return kExitOk;
}

// ---- corpus ---------------------------------------------------------------

int cmd_corpus_stats(const std::string& path, bool as_json, std::ostream& out) {
  const auto report = corpus::corpus_stats(corpus::load_corpus(path));
  out << (as_json ? corpus::to_json(report).dump(2) + "\n" : corpus::render_stats(report));
  return kExitOk;
}

int cmd_corpus_filter(const std::string& path, const std::string& kind, const std::string& out_path,
                      std::ostream& out) {
  const auto records = corpus::load_corpus(path);
  const auto kept = corpus::filter_corpus(records, parse_uis_kind(kind));
  if (out_path.empty()) {
    corpus::write_corpus(out, kept);
  } else {
    corpus::save_corpus(out_path, kept);
    out << fmt::format("kept {} of {} records\n", kept.size(), records.size());
  }
  return kExitOk;
}

int cmd_corpus_split(const Globals& g, const std::string& path, double train, double dev,
                     double test, const std::string& out_dir, std::ostream& out) {
  const auto records = corpus::load_corpus(path);
  const auto split = corpus::split_corpus(records, corpus::SplitSpec{train, dev, test, g.seed});
  auto line = [&](const char* name, const std::vector<corpus::AnnotatedUtterance>& part) {
    out << fmt::format("{}: {} dialogues, {} utterances\n", name, corpus::dialogue_ids(part).size(),
                       part.size());
  };
  line("train", split.train);
  line("dev", split.dev);
  line("test", split.test);
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    corpus::save_corpus(std::filesystem::path(out_dir) / "train.jsonl", split.train);
    corpus::save_corpus(std::filesystem::path(out_dir) / "dev.jsonl", split.dev);
    corpus::save_corpus(std::filesystem::path(out_dir) / "test.jsonl", split.test);
  }
  return kExitOk;
}

int cmd_alpha(const std::string& path, const std::string& kind, const std::string& variant,
              bool as_json, std::ostream& out) {
  auto records = corpus::load_corpus(path);
  if (!kind.empty()) {
    const UisKind k = parse_uis_kind(kind);
    if (variant == "filtered") {
      records = corpus::filter_corpus(records, k);
    } else if (variant != "full") {
      throw ValidationError("variant must be 'full' or 'filtered'");
    }
    const auto result =
        agreement::krippendorff_alpha_ordinal(agreement::matrix_from_corpus(records, k));
    out << fmt::format("{:.4f}\n", result.alpha);
    return kExitOk;
  }
  const auto report = agreement::agreement_report(records, {kAllKinds.begin(), kAllKinds.end()});
  out << (as_json ? agreement::to_json(report).dump(2) + "\n" : agreement::render_agreement(report));
  return kExitOk;
}

// ---- estimator --------------------------------------------------------------

struct TrainOptions {
  std::string train_path;
  std::string dev_path;
  std::string out_path;
  std::string variant = "full";
  std::vector<double> grid = {0.01, 0.1, 1.0, 10.0};
  int window = 10;
};

int cmd_train(const Globals& g, const TrainOptions& o, std::ostream& out) {
  const auto train = corpus::load_corpus(o.train_path);
  const auto dev = o.dev_path.empty() ? std::vector<corpus::AnnotatedUtterance>{}
                                      : corpus::load_corpus(o.dev_path);
  estimator::TrainConfig config;
  config.l2_grid = o.grid;
  config.seed = g.seed;
  config.context_window = o.window;
  estimator::LinearBundle bundle;
  for (UisKind kind : kAllKinds) {
    auto tr = train;
    auto dv = dev;
    if (o.variant == "filtered") {
      tr = corpus::filter_corpus(tr, kind);
      dv = corpus::filter_corpus(dv, kind);
    } else if (o.variant != "full") {
      throw ValidationError("variant must be 'full' or 'filtered'");
    }
    const auto result = estimator::train_linear(tr, dv, kind, config);
    for (const auto& p : result.grid) {
      out << fmt::format("{:<11} l2={:<6} acc={:.3f} mse={:.3f}\n", to_string(kind), p.l2,
                         p.selection_acc, p.selection_mse);
    }
    out << fmt::format("{:<11} selected l2={}{}\n", to_string(kind), result.model.l2,
                       result.constant_labels ? " (constant labels)" : "");
    bundle.models[index_of(kind)] = result.model;
  }
  bundle.save(o.out_path);
  return kExitOk;
}

struct EvalOptions {
  std::string test_path;
  std::string backend = "lexicon";
  std::string model;
  std::string lexicon;
  std::string external_url;
  std::string variant = "both";
  std::string train_variant = "full";
  int window = 10;
  bool as_json = false;
};

int cmd_eval_estimator(const EvalOptions& o, std::ostream& out) {
  const auto test = corpus::load_corpus(o.test_path);
  const auto est = estimator::make_estimator(make_spec(o.backend, o.model, o.lexicon, o.external_url));
  std::vector<std::string> variants;
  if (o.variant == "both") {
    variants = {"full", "filtered"};
  } else if (o.variant == "full" || o.variant == "filtered") {
    variants = {o.variant};
  } else {
    throw ValidationError("variant must be 'full', 'filtered' or 'both'");
  }
  evaluation::MetricReport report;
  for (const auto& variant : variants) {
    for (UisKind kind : kAllKinds) {
      const auto set = variant == "filtered" ? corpus::filter_corpus(test, kind) : test;
      if (set.empty()) {
        spdlog::warn("no {} test records for {}", variant, to_string(kind));
        continue;
      }
      auto row = evaluation::evaluate_estimator(*est, set, kind, o.window);
      row.train_variant = o.train_variant;
      row.test_variant = variant;
      report.rows.push_back(row);
    }
  }
  out << (o.as_json ? evaluation::to_json(report).dump(2) + "\n" : evaluation::render_metrics(report));
  return kExitOk;
}

// ---- dialogue evaluation ------------------------------------------------------

int cmd_eval_dialogues(const std::string& path, bool as_json, std::ostream& out) {
  const auto records = evaluation::load_questionnaires(path);
  const auto report = evaluation::questionnaire_report(records);
  out << (as_json ? evaluation::to_json(report).dump(2) + "\n"
                  : evaluation::render_questionnaire(report));
  return kExitOk;
}

int cmd_pairs_extract(const Globals& g, const std::vector<std::string>& logs, std::size_t cap,
                      const std::string& out_path, std::ostream& out) {
  std::vector<engine::Transcript> transcripts;
  for (const auto& p : logs) {
    if (std::filesystem::is_directory(p)) {
      std::vector<std::filesystem::path> files;
      for (const auto& entry : std::filesystem::directory_iterator(p)) {
        if (entry.path().extension() == ".jsonl" && entry.path().filename() != "questionnaires.jsonl") {
          files.push_back(entry.path());
        }
      }
      std::sort(files.begin(), files.end());
      for (const auto& f : files) transcripts.push_back(engine::load_transcript(f));
    } else {
      transcripts.push_back(engine::load_transcript(p));
    }
  }
  const auto pairs = evaluation::extract_eval_pairs(transcripts, cap, g.seed);
  std::string body;
  for (const auto& p : pairs) body += evaluation::to_json(p).dump() + "\n";
  if (out_path.empty()) {
    out << body;
  } else {
    write_text_file(out_path, body);
    out << fmt::format("{} pairs from {} transcripts\n", pairs.size(), transcripts.size());
  }
  return kExitOk;
}

int cmd_pairs_tally(const std::string& path, bool as_json, std::ostream& out) {
  const auto tally = evaluation::pairwise_tally(evaluation::load_votes(path));
  out << (as_json ? evaluation::to_json(tally).dump(2) + "\n" : evaluation::render_tally(tally));
  return kExitOk;
}

// ---- profiles / synthetic data --------------------------------------------------

int cmd_ingest_profiles(const Globals& g, const std::string& catalog_path,
                        const std::string& cache_dir, const std::string& fixture_dir,
                        std::ostream& out) {
  const auto cat = catalog::load_catalog(catalog_path);
  catalog::ProfileClientConfig config;
  config.cache_dir = cache_dir;
  config.fixture_dir = fixture_dir;
  config.offline = g.offline;
  catalog::ProfileClient client(config);
  std::set<std::string> names;
  for (const auto& m : cat.movies) {
    for (const auto& p : m.cast) names.insert(p.name);
    for (const auto& p : m.director) names.insert(p.name);
  }
  for (const auto& s : cat.scenarios) {
    if (s.s1.person) names.insert(s.s1.person->name);
  }
  std::size_t hits = 0;
  for (const auto& name : names) {
    try {
      out << name << ": " << client.fetch(name) << '\n';
      ++hits;
    } catch (const Error& e) {
      out << name << ": " << e.category() << '\n';
    }
  }
  out << fmt::format("{} of {} profiles available\n", hits, names.size());
  return kExitOk;
}

int cmd_gen_corpus(const Globals& g, synth::SynthConfig config, const std::string& out_dir,
                   std::ostream& out) {
  config.seed = g.seed;
  const auto corpus = synth::generate_corpus(config);
  synth::write_synth_corpus(out_dir, corpus);
  out << fmt::format("{} dialogues, {} utterances written to {}\n", config.dialogues,
                     corpus.records.size(), out_dir);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"UIS-aware movie recommendation dialogue toolkit", "uisdial"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "Seed for every random choice");
  app.add_option("--config", g.config_path, "Service config file (JSON)");
  app.add_flag("--offline", g.offline, "Never touch the network");
  app.add_option("--log-level", g.log_level, "trace, debug, info, warn, error or off")
      ->check(CLI::IsMember({"trace", "debug", "info", "warn", "error", "critical", "off"}));

  ChatOptions chat_opts;
  auto add_engine_flags = [&](CLI::App* cmd) {
    cmd->add_option("--catalog", chat_opts.catalog, "Catalog JSON");
    cmd->add_option("--backend", chat_opts.backend, "lexicon, linear or external");
    cmd->add_option("--model", chat_opts.model, "Linear model bundle");
    cmd->add_option("--lexicon", chat_opts.lexicon, "Lexicon JSON replacing the built-in one");
    cmd->add_option("--external-url", chat_opts.external_url, "Estimation endpoint");
    cmd->add_flag("--no-rules", chat_opts.no_rules, "Disable response changes (wo-RC)");
    cmd->add_flag("--diagnostics", chat_opts.diagnostics, "Print UIS scores and fired rules");
  };
  auto* chat = app.add_subcommand("chat", "Talk to the system on stdin/stdout");
  add_engine_flags(chat);
  chat->add_option("--transcript", chat_opts.transcript, "Write the session log here");
  chat->add_option("--session-id", chat_opts.session_id, "Session id recorded in the log");

  std::string replay_log;
  auto* replay = app.add_subcommand("replay", "Re-run a logged session from its seed");
  add_engine_flags(replay);
  replay->add_option("log", replay_log, "Transcript log")->required();

  ServeOptions serve_opts;
  auto* serve = app.add_subcommand("serve", "Run the HTTP session service");
  serve->add_option("--host", serve_opts.host);
  serve->add_option("--port", serve_opts.port);
  serve->add_option("--log-dir", serve_opts.log_dir, "Directory for session logs");
  serve->add_flag("--no-rules", serve_opts.no_rules, "Serve the wo-RC condition");
  serve->add_option("--backend", serve_opts.backend);
  serve->add_option("--model", serve_opts.model);

  std::string corpus_path;
  bool as_json = false;
  auto* stats = app.add_subcommand("corpus-stats", "Corpus size and score distribution");
  stats->add_option("corpus", corpus_path)->required();
  stats->add_flag("--json", as_json);

  std::string kind;
  std::string out_path;
  auto* filter = app.add_subcommand("corpus-filter", "Drop records with conflicting labels");
  filter->add_option("corpus", corpus_path)->required();
  filter->add_option("--kind", kind)->required();
  filter->add_option("--out", out_path);

  double train_frac = 0.8, dev_frac = 0.1, test_frac = 0.1;
  std::string out_dir;
  auto* split = app.add_subcommand("corpus-split", "Dialogue-level train/dev/test split");
  split->add_option("corpus", corpus_path)->required();
  split->add_option("--train", train_frac);
  split->add_option("--dev", dev_frac);
  split->add_option("--test", test_frac);
  split->add_option("--out-dir", out_dir);

  std::string variant = "full";
  auto* alpha = app.add_subcommand("alpha", "Ordinal Krippendorff's alpha");
  alpha->add_option("corpus", corpus_path)->required();
  alpha->add_option("--kind", kind, "One kind; omit for the full table");
  alpha->add_option("--variant", variant, "full or filtered");
  alpha->add_flag("--json", as_json);

  TrainOptions train_opts;
  auto* train = app.add_subcommand("train", "Fit the hashed-feature ridge estimator");
  train->add_option("train", train_opts.train_path, "Training corpus")->required();
  train->add_option("--dev", train_opts.dev_path, "Dev corpus for l2 selection");
  train->add_option("--out", train_opts.out_path, "Model bundle to write")->required();
  train->add_option("--variant", train_opts.variant, "full or filtered");
  train->add_option("--l2", train_opts.grid, "l2 grid");
  train->add_option("--window", train_opts.window, "Context window in turns");

  EvalOptions eval_opts;
  auto* eval_est = app.add_subcommand("eval-estimator", "Acc and Broad Acc on a test corpus");
  eval_est->add_option("test", eval_opts.test_path)->required();
  eval_est->add_option("--backend", eval_opts.backend);
  eval_est->add_option("--model", eval_opts.model);
  eval_est->add_option("--lexicon", eval_opts.lexicon);
  eval_est->add_option("--external-url", eval_opts.external_url);
  eval_est->add_option("--variant", eval_opts.variant, "full, filtered or both");
  eval_est->add_option("--train-variant", eval_opts.train_variant, "Label for the report");
  eval_est->add_option("--window", eval_opts.window);
  eval_est->add_flag("--json", eval_opts.as_json);

  std::string questionnaire_path;
  auto* eval_dlg = app.add_subcommand("eval-dialogues", "Questionnaire means and rank-sum tests");
  eval_dlg->add_option("questionnaires", questionnaire_path)->required();
  eval_dlg->add_flag("--json", as_json);

  auto* eval_pairs = app.add_subcommand("eval-pairs", "Changed/unchanged response pairs");
  eval_pairs->require_subcommand(1);
  std::vector<std::string> logs;
  std::size_t cap = 30;
  auto* extract = eval_pairs->add_subcommand("extract", "Sample pairs from session logs");
  extract->add_option("logs", logs, "Log files or directories")->required();
  extract->add_option("--cap", cap, "Pairs per rule");
  extract->add_option("--out", out_path);
  std::string votes_path;
  auto* tally = eval_pairs->add_subcommand("tally", "Count naturalness votes");
  tally->add_option("votes", votes_path)->required();
  tally->add_flag("--json", as_json);

  std::string catalog_path = kDefaultCatalog, cache_dir, fixture_dir = kDefaultProfiles;
  auto* ingest = app.add_subcommand("ingest-profiles", "Fetch first-sentence person profiles");
  ingest->add_option("--catalog", catalog_path);
  ingest->add_option("--cache-dir", cache_dir);
  ingest->add_option("--fixture-dir", fixture_dir);

  synth::SynthConfig synth_config;
  auto* gen = app.add_subcommand("gen-corpus", "Write a synthetic annotated corpus");
  gen->add_option("--dialogues", synth_config.dialogues);
  gen->add_option("--user-turns", synth_config.user_turns);
  gen->add_option("--noise", synth_config.noise);
  gen->add_option("--conflict-rate", synth_config.conflict_rate);
  gen->add_option("--out-dir", out_dir)->required();

  std::vector<const char*> argv = {"uisdial"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "error[usage]: " << e.what() << "\n";
    const CLI::App* failed = &app;
    for (auto* sub : app.get_subcommands()) failed = sub;
    err << failed->help();
    return kExitUsage;
  }

  LoggerScope logging(err, g.log_level);
  try {
    if (*chat) return cmd_chat(g, chat_opts, in, out);
    if (*replay) return cmd_replay(chat_opts, replay_log, out);
    if (*serve) return cmd_serve(g, serve_opts);
    if (*stats) return cmd_corpus_stats(corpus_path, as_json, out);
    if (*filter) return cmd_corpus_filter(corpus_path, kind, out_path, out);
    if (*split) return cmd_corpus_split(g, corpus_path, train_frac, dev_frac, test_frac, out_dir, out);
    if (*alpha) return cmd_alpha(corpus_path, kind, variant, as_json, out);
    if (*train) return cmd_train(g, train_opts, out);
    if (*eval_est) return cmd_eval_estimator(eval_opts, out);
    if (*eval_dlg) return cmd_eval_dialogues(questionnaire_path, as_json, out);
    if (*extract) return cmd_pairs_extract(g, logs, cap, out_path, out);
    if (*tally) return cmd_pairs_tally(votes_path, as_json, out);
    if (*ingest) return cmd_ingest_profiles(g, catalog_path, cache_dir, fixture_dir, out);
    if (*gen) return cmd_gen_corpus(g, synth_config, out_dir, out);
  } catch (const Error& e) {
    err << "error[" << e.category() << "]: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error[io]: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error[internal]: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace uisdial::cli
