// Copyright 2026 The Phraselette Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "phraselette/batch.hpp"
#include "phraselette/engine_config.hpp"
#include "phraselette/paths.hpp"
#include "phraselette/pos_tagger.hpp"
#include "phraselette/service.hpp"

namespace {

using namespace phraselette;
using nlohmann::json;

HttpServer* g_server = nullptr;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct EngineFlags {
  std::string config;
  std::string backend;
  std::string logit_fixture;
  std::string instruct_fixture;
  std::string lexicon;
  std::string pos_model;
  std::optional<std::uint64_t> seed;

  void add(CLI::App* cmd) {
    cmd->add_option("--config", config, "JSON config file");
    cmd->add_option("--backend", backend, "mock or remote")->check(CLI::IsMember({"mock", "remote"}));
    cmd->add_option("--logit-fixture", logit_fixture, "mock logit table");
    cmd->add_option("--instruct-fixture", instruct_fixture, "mock instruct rules");
    cmd->add_option("--lexicon", lexicon, "CMU-format pronunciation lexicon");
    cmd->add_option("--pos-model", pos_model, "tagger model JSON");
    cmd->add_option("--seed", seed, "seed for sampling backends");
  }

  EngineConfig resolve() const {
    EngineConfig c = config.empty() ? EngineConfig{} : EngineConfig::from_file(config);
    if (!backend.empty()) c.backend = backend;
    if (!logit_fixture.empty()) c.logit_fixture = logit_fixture;
    if (!instruct_fixture.empty()) c.instruct_fixture = instruct_fixture;
    if (!lexicon.empty()) c.lexicon_path = lexicon;
    if (!pos_model.empty()) c.pos_model_path = pos_model;
    if (seed) c.seed = seed;
    return c;
  }
};

int cmd_run(const EngineFlags& flags, const std::string& text_path, const std::string& text_inline,
            const std::string& inlet, const std::vector<std::string>& wells,
            const std::vector<std::string>& constraints, const std::vector<std::string>& params,
            const std::string& format) {
  batch::Request req;
  if (text_path.empty() == text_inline.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "give exactly one of --text or --text-inline");
  }
  req.text = text_path.empty() ? text_inline : read_file(text_path);
  req.inlet = batch::parse_inlet(inlet);
  req.wells = wells;
  req.constraints = constraints;
  for (const std::string& p : params) {
    const auto eq = p.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::kInvalidArgument, "--params must look like KIND=JSON");
    json j = json::parse(p.substr(eq + 1), nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw Error(ErrorCode::kInvalidArgument, "--params value for " + p.substr(0, eq) + " is not a JSON object");
    }
    req.parameters[p.substr(0, eq)] = j;
  }
  const EngineConfig config = flags.resolve();
  req.seed = config.seed;
  auto registry = std::make_shared<const WellRegistry>(WellRegistry::with_builtin_wells());
  const batch::Result result = batch::run(req, registry, make_services(config));
  if (format == "table") {
    std::cout << batch::render_table(result.output);
  } else {
    std::cout << result.output.dump(2) << "\n";
  }
  return result.exit_code;
}

int cmd_serve(const EngineFlags& flags, const std::string& host, int port, const std::string& sessions_dir) {
  const EngineConfig config = flags.resolve();
  auto registry = std::make_shared<const WellRegistry>(WellRegistry::with_builtin_wells());
  ServiceOptions options;
  options.sessions_dir = sessions_dir.empty() ? config.sessions_dir : std::filesystem::path(sessions_dir);
  options.seed = config.seed;
  Service service(registry, make_services(config), options);
  HttpServer server(service);
  if (!server.bind(host, port)) {
    std::cerr << "phraselette: cannot listen on " << host << ":" << port << "\n";
    return 1;
  }
  g_server = &server;
  std::signal(SIGINT, [](int) {
    if (g_server != nullptr) g_server->stop();
  });
  std::signal(SIGTERM, [](int) {
    if (g_server != nullptr) g_server->stop();
  });
  std::cerr << "phraselette: serving on http://" << host << ":" << port << "\n";
  server.listen_after_bind();
  g_server = nullptr;
  return 0;
}

int cmd_train_pos(const std::string& train, const std::string& lexicon, const std::string& out,
                  const std::string& eval, int iterations, std::uint64_t seed) {
  const auto corpus = read_tagged_corpus(train);
  TrainOptions options;
  options.iterations = iterations;
  options.seed = seed;
  const PosTagger tagger = PosTagger::train(corpus, TagLexicon::from_file(lexicon), options);
  tagger.save(out);
  std::cout << "trained on " << corpus.size() << " sentences, wrote " << out << "\n";
  if (!eval.empty()) {
    std::cout << "accuracy on " << eval << ": " << tagger.accuracy(read_tagged_corpus(eval)) << "\n";
  }
  return 0;
}

int cmd_pronounce(const EngineFlags& flags, const std::vector<std::string>& words) {
  const EngineConfig config = flags.resolve();
  const std::filesystem::path lexicon =
      config.lexicon_path.empty() ? data_dir() / "lexicon" / "cmudict-subset.dict" : config.lexicon_path;
  const Phonology phonology(std::make_shared<const Lexicon>(Lexicon::from_file(lexicon)));
  for (const std::string& phrase : words) {
    const auto phonemes = phonology.phrase_phonemes(phrase);
    std::cout << phrase << "\t" << render_phonemes(phonemes) << "\t" << phonology.syllables(phrase) << "\n";
  }
  return 0;
}

int cmd_tag(const EngineFlags& flags, const std::vector<std::string>& phrases) {
  const EngineConfig config = flags.resolve();
  const PosTagger tagger =
      config.pos_model_path.empty() ? PosTagger::load_default() : PosTagger::from_file(config.pos_model_path);
  for (const std::string& phrase : phrases) {
    std::string line;
    for (const TaggedWord& w : tagger.tag_phrase(phrase)) {
      if (!line.empty()) line += ' ';
      line += w.first + "/" + std::string(to_string(w.second));
    }
    std::cout << line << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constraint-driven phrase search"};
  app.require_subcommand(1);

  EngineFlags run_flags;
  std::string text_path;
  std::string text_inline;
  std::string inlet;
  std::vector<std::string> wells;
  std::vector<std::string> constraints;
  std::vector<std::string> params;
  std::string format = "json";
  auto* run = app.add_subcommand("run", "run wells on one inlet and print the pooled rephrasings");
  run->add_option("--text", text_path, "file holding the document text");
  run->add_option("--text-inline", text_inline, "document text given directly");
  run->add_option("--inlet", inlet, "character range START:END")->required();
  run->add_option("--well", wells, "KIND or KIND:description, repeatable")->required();
  run->add_option("--constraint", constraints, "KIND:VALUE constraint, repeatable");
  run->add_option("--params", params, "KIND={json parameters}, repeatable");
  run->add_option("--format", format, "json or table")->check(CLI::IsMember({"json", "table"}));
  run_flags.add(run);

  EngineFlags serve_flags;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string sessions_dir;
  auto* serve = app.add_subcommand("serve", "serve the HTTP API");
  serve->add_option("--host", host);
  serve->add_option("--port", port);
  serve->add_option("--sessions-dir", sessions_dir, "where session files are written");
  serve_flags.add(serve);

  std::string train = (phraselette::data_dir() / "pos" / "train.txt").string();
  std::string lexicon = (phraselette::data_dir() / "pos" / "lexicon.tsv").string();
  std::string out = (phraselette::data_dir() / "pos" / "model.json").string();
  std::string eval;
  int iterations = 12;
  std::uint64_t seed = 1;
  auto* train_pos = app.add_subcommand("train-pos", "train the part-of-speech tagger");
  train_pos->add_option("--train", train, "tagged training corpus");
  train_pos->add_option("--lexicon", lexicon, "word/tag lexicon");
  train_pos->add_option("--out", out, "model output path");
  train_pos->add_option("--eval", eval, "tagged corpus to report accuracy on");
  train_pos->add_option("--iterations", iterations);
  train_pos->add_option("--seed", seed);

  EngineFlags pron_flags;
  std::vector<std::string> words;
  auto* pronounce = app.add_subcommand("pronounce", "print ARPAbet pronunciations");
  pronounce->add_option("phrases", words)->required();
  pron_flags.add(pronounce);

  EngineFlags tag_flags;
  std::vector<std::string> phrases;
  auto* tag = app.add_subcommand("tag", "print part-of-speech tags");
  tag->add_option("phrases", phrases)->required();
  tag_flags.add(tag);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : phraselette::batch::kExitValidation;
  }

  try {
    if (*run) return cmd_run(run_flags, text_path, text_inline, inlet, wells, constraints, params, format);
    if (*serve) return cmd_serve(serve_flags, host, port, sessions_dir);
    if (*train_pos) return cmd_train_pos(train, lexicon, out, eval, iterations, seed);
    if (*pronounce) return cmd_pronounce(pron_flags, words);
    if (*tag) return cmd_tag(tag_flags, phrases);
  } catch (const phraselette::Error& e) {
    std::cerr << "phraselette: " << phraselette::to_string(e.code()) << ": " << e.what() << "\n";
    return phraselette::batch::exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "phraselette: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
