// Copyright 2026 The Scribe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: simulate, replay, report, train, serve.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "nlohmann/json.hpp"
#include "scribe/dataset.h"
#include "scribe/error.h"
#include "scribe/experiment.h"
#include "scribe/http_server.h"
#include "scribe/learning.h"
#include "scribe/service.h"

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

fs::path DefaultDataDir() {
  const char* env = std::getenv("SCRIBE_DATA_DIR");
  return env != nullptr && *env != '\0' ? fs::path(env) : fs::path("scribe-data");
}

json ReadJson(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw scribe::Error(scribe::ErrorCode::kNotFound, "cannot open " + path.string());
  return json::parse(in);
}

void WriteText(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out.flush()) {
    throw scribe::Error(scribe::ErrorCode::kInvalidArgument, "cannot write " + path.string());
  }
}

std::vector<scribe::ExperimentLog> ReadLogFile(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw scribe::Error(scribe::ErrorCode::kNotFound, "cannot open " + path.string());
  return scribe::ReadLogs(in);
}

struct SimulateArgs {
  std::size_t users = 15;
  std::size_t sessions = 20;
  std::string condition = "both";
  std::uint64_t seed = 1;
  std::string out;
  std::string prototypes;
  double drift = scribe::WriterProfile{}.drift;
};

void Simulate(const SimulateArgs& args) {
  scribe::ExperimentConfig cfg;
  cfg.users = args.users;
  cfg.sessions = args.sessions;
  cfg.seed = args.seed;
  cfg.writer.drift = args.drift;
  cfg.engine.learning.seed = args.seed;

  const fs::path out = args.out.empty() ? DefaultDataDir() / "log.jsonl" : fs::path(args.out);
  const fs::path p0 = args.prototypes.empty() ? out.parent_path() / "p0.json"
                                              : fs::path(args.prototypes);

  const scribe::Baseline baseline = scribe::BuildBaseline(cfg);
  const auto writers = scribe::SynthesizeUsers(cfg);
  std::string text;
  if (args.condition == "fixed") {
    text = scribe::SerializeLog(scribe::RunCondition(writers, cfg.sessions,
                                                     scribe::Condition::kFixed,
                                                     baseline, cfg.engine, cfg.seed));
  } else {
    const auto adapt = scribe::RunCondition(writers, cfg.sessions,
                                            scribe::Condition::kAdapt, baseline,
                                            cfg.engine, cfg.seed);
    text = scribe::SerializeLog(adapt);
    if (args.condition == "both") {
      text += scribe::SerializeLog(
          scribe::ReplayFixed(adapt, baseline.typical, cfg.engine.decoder));
    }
  }
  WriteText(out, text);
  WriteText(p0, scribe::PrototypeStoreToJson(baseline.typical).dump() + "\n");
  std::cerr << "wrote " << out.string() << " and " << p0.string() << "\n";
}

void Replay(const std::string& log_path, const std::string& prototypes,
            const std::string& out) {
  const scribe::PrototypeSet typical =
      scribe::PrototypeStoreFromJson(ReadJson(prototypes));
  std::string text;
  for (const auto& log : ReadLogFile(log_path)) {
    if (log.condition != scribe::Condition::kAdapt) continue;
    text += scribe::SerializeLog(scribe::ReplayFixed(log, typical, scribe::DecoderConfig{}));
  }
  if (out.empty()) {
    std::cout << text;
  } else {
    WriteText(out, text);
  }
}

void Report(const std::string& log_path, const std::string& group) {
  const scribe::Alphabet alphabet = scribe::Alphabet::Lowercase();
  for (const auto& log : ReadLogFile(log_path)) {
    const std::string condition = scribe::ConditionName(log.condition);
    if (group == "session") {
      for (const auto& [key, report] : scribe::SessionReports(log, alphabet)) {
        json line = scribe::ChannelReportToJson(report);
        line["condition"] = condition;
        line["user"] = key.user;
        line["session"] = key.session;
        std::cout << line.dump() << "\n";
      }
    } else if (group == "user") {
      for (const auto& [user, report] : scribe::UserReports(log, alphabet)) {
        json line = scribe::ChannelReportToJson(report);
        line["condition"] = condition;
        line["user"] = user;
        std::cout << line.dump() << "\n";
      }
    } else {
      for (const auto& [label, report] : scribe::PerCharacterRates(log, alphabet)) {
        json line = scribe::ChannelReportToJson(report);
        line["condition"] = condition;
        line["label"] = label.ToString();
        std::cout << line.dump() << "\n";
      }
    }
  }
}

void Train(const std::string& dataset_path, const std::string& out,
           std::uint64_t seed) {
  std::ifstream in(dataset_path);
  if (!in) throw scribe::Error(scribe::ErrorCode::kNotFound, "cannot open " + dataset_path);
  std::vector<scribe::LabeledExample> corpus;
  for (const auto& record : scribe::ReadDataset(in)) {
    corpus.push_back({record.label, scribe::Encode(record.trace)});
  }
  scribe::LearningConfig cfg;
  cfg.seed = seed;
  const auto typical =
      scribe::TrainTypicalPrototypes(corpus, scribe::Alphabet::Lowercase(), cfg);
  WriteText(out, scribe::PrototypeStoreToJson(typical).dump() + "\n");
}

int Serve(const std::string& data_dir, const std::string& host, int port,
          const std::string& prototypes, std::uint64_t seed) {
  scribe::ServiceConfig cfg;
  cfg.data_dir = data_dir.empty() ? DefaultDataDir() : fs::path(data_dir);
  cfg.seed = seed;
  cfg.engine.learning.seed = seed;
  scribe::Baseline baseline;
  if (!prototypes.empty()) {
    baseline.typical = scribe::PrototypeStoreFromJson(ReadJson(prototypes));
  } else {
    scribe::ExperimentConfig ecfg;
    ecfg.seed = seed;
    ecfg.engine = cfg.engine;
    baseline = scribe::BuildBaseline(ecfg);
  }
  scribe::ScribeService service(std::move(baseline), cfg);
  scribe::HttpServer server(service);
  const int bound = server.Bind(host, port);
  if (bound < 0) {
    std::cerr << "cannot bind " << host << ":" << port << "\n";
    return 1;
  }
  std::cerr << "listening on " << host << ":" << bound << ", data in "
            << cfg.data_dir.string() << "\n";
  return server.Listen() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"scribe: adaptive handwriting recognition and channel-rate analysis"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "run synthetic writers");
  simulate->add_option("--users", sim.users)->check(CLI::PositiveNumber);
  simulate->add_option("--sessions", sim.sessions)->check(CLI::PositiveNumber);
  simulate->add_option("--condition", sim.condition)
      ->check(CLI::IsMember({"adapt", "fixed", "both"}));
  simulate->add_option("--seed", sim.seed);
  simulate->add_option("--out", sim.out, "log path (default $SCRIBE_DATA_DIR/log.jsonl)");
  simulate->add_option("--prototypes", sim.prototypes,
                       "where to write P0 (default next to the log)");
  simulate->add_option("--drift", sim.drift)->check(CLI::NonNegativeNumber);

  std::string log_path, prototypes, out, group = "session";
  auto* replay = app.add_subcommand("replay", "re-decode an adapt log against P0");
  replay->add_option("--log", log_path)->required();
  replay->add_option("--prototypes", prototypes)->required();
  replay->add_option("--out", out);

  auto* report = app.add_subcommand("report", "JSON-lines channel reports");
  report->add_option("--log", log_path)->required();
  report->add_option("--group", group)
      ->check(CLI::IsMember({"session", "user", "character"}));

  std::string dataset;
  std::uint64_t seed = 1;
  auto* train = app.add_subcommand("train", "fit P0 from a dataset JSONL");
  train->add_option("--dataset", dataset)->required();
  train->add_option("--out", out)->required();
  train->add_option("--seed", seed);

  std::string data_dir, host = "127.0.0.1";
  int port = 8080;
  auto* serve = app.add_subcommand("serve", "HTTP service");
  serve->add_option("--data-dir", data_dir, "default $SCRIBE_DATA_DIR");
  serve->add_option("--host", host);
  serve->add_option("--port", port)->check(CLI::Range(0, 65535));
  serve->add_option("--prototypes", prototypes, "P0 store (default: synthetic pool)");
  serve->add_option("--seed", seed);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*simulate) Simulate(sim);
    if (*replay) Replay(log_path, prototypes, out);
    if (*report) Report(log_path, group);
    if (*train) Train(dataset, out, seed);
    if (*serve) return Serve(data_dir, host, port, prototypes, seed);
  } catch (const std::exception& e) {
    std::cerr << "scribe: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
