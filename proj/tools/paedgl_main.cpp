// Command-line front end: generate / train / eval / ablate / gradcheck.
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "paedgl/ablation.hpp"
#include "paedgl/checkpoint.hpp"
#include "paedgl/dgl.hpp"
#include "paedgl/generator.hpp"
#include "paedgl/grad_check.hpp"
#include "paedgl/manifest.hpp"
#include "paedgl/metrics.hpp"
#include "paedgl/training.hpp"

namespace {

using namespace paedgl;

// Applies a key=value config file by appending --key=value tokens for every
// key not explicitly given, so command-line flags always win.  Handled here
// because config options attached to subcommands are not processed by the
// parser itself.
std::vector<std::string> expand_config_args(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config_path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
    }
  }
  if (config_path.empty()) return args;
  for (const auto& [key, value] : read_key_value_file(config_path)) {
    const std::string flag = "--" + key;
    bool given = false;
    for (const std::string& arg : args) {
      if (arg == flag || arg.rfind(flag + "=", 0) == 0) {
        given = true;
        break;
      }
    }
    if (!given) args.push_back(flag + "=" + value);
  }
  return args;
}

std::uint64_t default_seed(std::uint64_t fallback) {
  const char* env = std::getenv("PAEDGL_SEED");
  if (env == nullptr || *env == '\0') return fallback;
  try {
    return std::stoull(env);
  } catch (const std::exception&) {
    throw ConfigError("PAEDGL_SEED is not a valid integer");
  }
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// "pos:weight,pos:weight" -> table.
std::map<int, double> parse_position_table(const std::string& text) {
  std::map<int, double> table;
  for (const std::string& item : split_list(text)) {
    const auto colon = item.find(':');
    if (colon == std::string::npos)
      throw ConfigError("position-table entry '" + item +
                        "' is not pos:weight");
    try {
      table[std::stoi(item.substr(0, colon))] =
          std::stod(item.substr(colon + 1));
    } catch (const std::exception&) {
      throw ConfigError("position-table entry '" + item + "' is malformed");
    }
  }
  return table;
}

std::vector<double> parse_double_list(const std::string& text,
                                      const char* what) {
  std::vector<double> out;
  for (const std::string& item : split_list(text)) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ConfigError(std::string(what) + " entry '" + item +
                        "' is not a number");
    }
  }
  return out;
}

std::string render_position_table(const std::map<int, double>& table) {
  std::string out;
  for (const auto& [pos, w] : table) {
    if (!out.empty()) out += ",";
    out += std::to_string(pos) + ":" + format_double(w);
  }
  return out;
}

std::string render_double_list(const std::vector<double>& values) {
  std::string out;
  for (double v : values) {
    if (!out.empty()) out += ",";
    out += format_double(v);
  }
  return out;
}

const char* position_mode_name(PositionMode mode) {
  switch (mode) {
    case PositionMode::kNone: return "none";
    case PositionMode::kPae: return "pae";
    case PositionMode::kPl: return "pl";
    case PositionMode::kPec: return "pec";
  }
  return "none";
}

PositionMode parse_position_mode(const std::string& name) {
  if (name == "none") return PositionMode::kNone;
  if (name == "pae") return PositionMode::kPae;
  if (name == "pl") return PositionMode::kPl;
  if (name == "pec") return PositionMode::kPec;
  throw ConfigError("unknown position mode '" + name +
                    "' (valid: none, pae, pl, pec)");
}

// Shared training hyperparameter block (train + ablate).
struct TrainOptions {
  TrainConfig cfg;
  std::string position_mode = "pae";
  std::string order = "reordered";
  bool pae_loss = true;
  bool dgl = true;

  void register_options(CLI::App* cmd, bool with_variant,
                        std::string* variant) {
    cmd->add_option("--epochs", cfg.epochs, "training epochs");
    cmd->add_option("--lr", cfg.learning_rate, "SGD learning rate")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--lambda-p", cfg.lambda_p, "position-loss weight")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--lambda-c", cfg.lambda_c, "cause-loss weight")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--l2", cfg.l2, "L2 coefficient")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--clip", cfg.clip_norm, "gradient-norm clip")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--min-count", cfg.min_count, "vocabulary threshold")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--word-dim", cfg.dims.word_dim, "word embedding dim")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--pos-dim", cfg.dims.pos_dim, "position embedding dim")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--hidden", cfg.dims.hidden, "recurrent hidden size")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--window", cfg.dims.window, "position clip bound")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-doc-len", cfg.dims.max_doc_len,
                    "document capacity q")
        ->check(CLI::PositiveNumber);
    if (with_variant) {
      cmd->add_option("--variant", *variant,
                      "model variant (sets all ablation flags)");
      cmd->add_option("--position-mode", position_mode,
                      "none|pae|pl|pec (overrides variant)");
      cmd->add_option("--pae-loss", pae_loss,
                      "auxiliary position loss (overrides variant)");
      cmd->add_option("--dgl", dgl, "dynamic global labels (overrides variant)");
      cmd->add_option("--order", order,
                      "reordered|original (overrides variant)");
    }
  }

  // variant first, then any explicitly passed fine-grained flag.
  void resolve_flags(CLI::App* cmd, const std::string& variant) {
    const auto given = [cmd](const char* name) {
      const CLI::Option* opt = cmd->get_option_no_throw(name);
      return opt != nullptr && opt->count() > 0;
    };
    cfg.flags = variant_flags(variant);
    if (given("--position-mode"))
      cfg.flags.position_mode = parse_position_mode(position_mode);
    if (given("--pae-loss")) cfg.flags.use_pae_loss = pae_loss;
    if (given("--dgl")) cfg.flags.use_dgl = dgl;
    if (given("--order")) {
      if (order == "reordered") {
        cfg.flags.order = OrderMode::kReordered;
      } else if (order == "original") {
        cfg.flags.order = OrderMode::kOriginal;
      } else {
        throw ConfigError("unknown order '" + order +
                          "' (valid: reordered, original)");
      }
    }
  }

  // with_flags matches register_options' with_variant: ablate takes its
  // flags from the variant list, so its manifest must not carry flag keys.
  void manifest_entries(std::vector<std::pair<std::string, std::string>>& m,
                        bool with_flags) {
    m.emplace_back("epochs", std::to_string(cfg.epochs));
    m.emplace_back("lr", format_double(cfg.learning_rate));
    m.emplace_back("lambda-p", format_double(cfg.lambda_p));
    m.emplace_back("lambda-c", format_double(cfg.lambda_c));
    m.emplace_back("l2", format_double(cfg.l2));
    m.emplace_back("clip", format_double(cfg.clip_norm));
    m.emplace_back("min-count", std::to_string(cfg.min_count));
    m.emplace_back("word-dim", std::to_string(cfg.dims.word_dim));
    m.emplace_back("pos-dim", std::to_string(cfg.dims.pos_dim));
    m.emplace_back("hidden", std::to_string(cfg.dims.hidden));
    m.emplace_back("window", std::to_string(cfg.dims.window));
    m.emplace_back("max-doc-len", std::to_string(cfg.dims.max_doc_len));
    if (!with_flags) return;
    m.emplace_back("position-mode", position_mode_name(cfg.flags.position_mode));
    m.emplace_back("pae-loss", cfg.flags.use_pae_loss ? "true" : "false");
    m.emplace_back("dgl", cfg.flags.use_dgl ? "true" : "false");
    m.emplace_back("order", cfg.flags.order == OrderMode::kReordered
                                ? "reordered"
                                : "original");
  }
};

void write_loss_log(const std::filesystem::path& path,
                    const std::vector<LossBreakdown>& epochs) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write loss log: " + path.string());
  for (std::size_t i = 0; i < epochs.size(); ++i) {
    out << "{\"epoch\":" << i + 1
        << ",\"position\":" << format_double(epochs[i].position)
        << ",\"cause\":" << format_double(epochs[i].cause)
        << ",\"l2\":" << format_double(epochs[i].l2)
        << ",\"total\":" << format_double(epochs[i].total) << "}\n";
  }
}

// Rejects evaluation corpora whose tokens are essentially unknown to the
// checkpoint (wrong vocabulary / wrong generator settings).
void check_vocabulary_overlap(const Model& model,
                              std::span<const Document> docs) {
  std::size_t total = 0, unknown = 0;
  for (const Document& doc : docs) {
    for (const Clause& clause : doc.clauses) {
      for (const std::string& tok : clause) {
        ++total;
        unknown += model.vocab().id(tok) == Vocabulary::kUnkId;
      }
    }
  }
  if (total > 0 && unknown * 2 > total) {
    std::ostringstream msg;
    msg << "checkpoint/corpus vocabulary mismatch: "
        << (100.0 * static_cast<double>(unknown) / static_cast<double>(total))
        << "% of corpus tokens are unknown to the checkpoint";
    throw CompatibilityError(msg.str());
  }
}

int cmd_generate(GeneratorConfig& cfg, const std::string& out,
                 const std::string& table_text,
                 const std::string& counts_text) {
  if (!table_text.empty()) cfg.position_table = parse_position_table(table_text);
  if (!counts_text.empty())
    cfg.cause_counts = parse_double_list(counts_text, "cause-counts");
  const auto docs = generate_synthetic(cfg);
  save_corpus(out, docs);

  std::vector<std::pair<std::string, std::string>> m;
  m.emplace_back("out", out);
  m.emplace_back("docs", std::to_string(cfg.docs));
  m.emplace_back("seed", std::to_string(cfg.seed));
  m.emplace_back("vocab", std::to_string(cfg.vocab_size));
  m.emplace_back("markers", std::to_string(cfg.marker_types));
  m.emplace_back("emotion-types", std::to_string(cfg.emotion_types));
  m.emplace_back("clause-min", std::to_string(cfg.clause_len_min));
  m.emplace_back("clause-max", std::to_string(cfg.clause_len_max));
  m.emplace_back("clauses-min", std::to_string(cfg.clauses_min));
  m.emplace_back("clauses-max", std::to_string(cfg.clauses_max));
  m.emplace_back("margin", std::to_string(cfg.emotion_margin));
  m.emplace_back("window", std::to_string(cfg.window));
  m.emplace_back("signal", format_double(cfg.content_signal));
  m.emplace_back("distractor", format_double(cfg.distractor));
  m.emplace_back("position-table",
                 render_position_table(cfg.position_table.empty()
                                           ? default_position_table(cfg.window)
                                           : cfg.position_table));
  m.emplace_back("cause-counts", render_double_list(cfg.cause_counts));
  write_manifest(out + ".manifest", "generate", m);

  std::cerr << "wrote " << docs.size() << " documents to " << out << "\n";
  return 0;
}

int cmd_train(CLI::App* cmd, TrainOptions& opt, const std::string& variant,
              const std::string& corpus_path, const std::string& out) {
  opt.resolve_flags(cmd, variant);
  const auto docs = load_corpus(corpus_path, opt.cfg.dims.max_doc_len);
  TrainResult result = train(docs, opt.cfg);
  save_checkpoint(result.model, out);
  write_loss_log(out + ".losses.jsonl", result.epoch_mean);

  std::vector<std::pair<std::string, std::string>> m;
  m.emplace_back("corpus", corpus_path);
  m.emplace_back("out", out);
  m.emplace_back("seed", std::to_string(opt.cfg.seed));
  opt.manifest_entries(m, true);
  write_manifest(out + ".manifest", "train", m);

  if (!result.epoch_mean.empty()) {
    const LossBreakdown& last = result.epoch_mean.back();
    std::cerr << "trained " << opt.cfg.epochs << " epochs over " << docs.size()
              << " documents; final mean loss " << format_double(last.total)
              << "\n";
  } else {
    std::cerr << "wrote initialized checkpoint (0 epochs)\n";
  }
  return 0;
}

int cmd_eval(const std::string& checkpoint_path, const std::string& corpus_path,
             bool oracle, int threads, const std::string& out) {
  const Model model = load_checkpoint(checkpoint_path);
  const auto docs = load_corpus(corpus_path, model.dims().max_doc_len);
  check_vocabulary_overlap(model, docs);

  const InferMode mode = oracle ? InferMode::kOracle : InferMode::kPredicted;
  const LabelSet predicted = infer_corpus(model, docs, mode, threads);
  LabelSet gold;
  gold.reserve(docs.size());
  for (const Document& d : docs) gold.push_back(d.gold_causes);

  const Metrics metrics = compute_metrics(predicted, gold);
  const auto hist = cause_count_histogram(predicted);

  std::ostringstream report;
  report << "documents=" << docs.size() << " proposed=" << metrics.proposed
         << " annotated=" << metrics.annotated
         << " correct=" << metrics.correct << "\n"
         << "precision=" << format_double(metrics.precision)
         << " recall=" << format_double(metrics.recall)
         << " f1=" << format_double(metrics.f1) << "\n"
         << "predicted_cause_counts:";
  for (const auto& [count, share] : hist) {
    report << " " << count << (count == 3 ? "+" : "") << "="
           << format_double(share);
  }
  report << "\n";
  std::cout << report.str();

  if (!out.empty()) {
    std::ofstream f(out, std::ios::binary);
    if (!f) throw IoError("cannot write metrics report: " + out);
    f << report.str();
    std::vector<std::pair<std::string, std::string>> m;
    m.emplace_back("checkpoint", checkpoint_path);
    m.emplace_back("corpus", corpus_path);
    m.emplace_back("oracle-dgl", oracle ? "true" : "false");
    m.emplace_back("threads", std::to_string(threads));
    m.emplace_back("out", out);
    write_manifest(out + ".manifest", "eval", m);
  }
  return 0;
}

int cmd_ablate(CLI::App* cmd, TrainOptions& opt, const std::string& corpus_path,
               const std::string& prefix, const std::string& variants_text,
               std::size_t reps, double split, int threads) {
  AblationConfig cfg;
  cfg.variants = split_list(variants_text);
  cfg.repetitions = reps;
  cfg.split = split;
  cfg.threads = threads;
  opt.resolve_flags(cmd, "pae-dgl");  // flags come from variants; hypers from opt
  cfg.base = opt.cfg;

  const auto docs = load_corpus(corpus_path, cfg.base.dims.max_doc_len);
  const auto rows = run_ablation(docs, cfg);

  write_results(prefix + ".jsonl", rows);
  const std::string table = format_results_table(rows);
  std::ofstream tf(prefix + ".txt", std::ios::binary);
  if (!tf) throw IoError("cannot write table: " + prefix + ".txt");
  tf << table;
  tf.close();
  std::cout << table;

  std::vector<std::pair<std::string, std::string>> m;
  m.emplace_back("corpus", corpus_path);
  m.emplace_back("out-prefix", prefix);
  m.emplace_back("variants", variants_text);
  m.emplace_back("reps", std::to_string(reps));
  m.emplace_back("split", format_double(split));
  m.emplace_back("threads", std::to_string(threads));
  m.emplace_back("seed", std::to_string(cfg.base.seed));
  opt.manifest_entries(m, false);
  write_manifest(prefix + ".manifest", "ablate", m);
  return 0;
}

int cmd_gradcheck(std::uint64_t seed, double tolerance, std::size_t sample) {
  // Tiny random model + document exercising every tensor.
  ModelDims dims;
  dims.word_dim = 6;
  dims.pos_dim = 4;
  dims.hidden = 5;
  dims.window = 3;
  dims.max_doc_len = 8;
  ModelFlags flags;  // full model

  Rng rng(mix_seed(seed, 0x9c0ffeeull));
  std::vector<std::string> tokens;
  for (int i = 0; i < 12; ++i) tokens.push_back("t" + std::to_string(i));
  Document doc;
  doc.doc_id = "gradcheck";
  doc.emotion_index = 1;
  for (int i = 0; i < 3; ++i) {
    Clause clause;
    const std::size_t len = 2 + rng.index(3);
    for (std::size_t t = 0; t < len; ++t)
      clause.push_back(tokens[rng.index(tokens.size())]);
    doc.clauses.push_back(clause);
  }
  doc.gold_causes = {1, 0, 0};

  std::vector<Document> corpus{doc};
  Vocabulary vocab = Vocabulary::build(corpus, 1);
  dims.vocab = vocab.size();
  Model model = Model::init(dims, flags, vocab, mix_seed(seed, 0x1234ull));

  TrainConfig cfg;
  cfg.dims = dims;
  cfg.flags = flags;
  const auto loss_fn = [&]() {
    return document_loss(model, doc, cfg, true).total;
  };
  const GradCheckReport report =
      grad_check(model.params(), loss_fn, tolerance, 1e-5, sample, seed);
  std::cout << report.summary();
  return report.passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"emotion-cause clause classifier (position-augmented "
               "embeddings + dynamic global labels)"};
  app.require_subcommand(1);
  static constexpr const char* kConfigHelp =
      "key=value defaults file (explicit flags win)";
  std::string config_file;

  // generate
  GeneratorConfig gen_cfg;
  gen_cfg.seed = 7;
  std::string gen_out, gen_table, gen_counts;
  CLI::App* generate = app.add_subcommand("generate", "write a synthetic corpus");
  generate->add_option("--out", gen_out, "output corpus path")->required();
  generate->add_option("--docs", gen_cfg.docs, "document count")
      ->check(CLI::PositiveNumber);
  generate->add_option("--seed", gen_cfg.seed, "RNG seed");
  generate->add_option("--vocab", gen_cfg.vocab_size, "content vocabulary size")
      ->check(CLI::PositiveNumber);
  generate->add_option("--markers", gen_cfg.marker_types, "marker token types")
      ->check(CLI::PositiveNumber);
  generate->add_option("--emotion-types", gen_cfg.emotion_types,
                       "emotion token types")
      ->check(CLI::PositiveNumber);
  generate->add_option("--clause-min", gen_cfg.clause_len_min,
                       "min clause length");
  generate->add_option("--clause-max", gen_cfg.clause_len_max,
                       "max clause length");
  generate->add_option("--clauses-min", gen_cfg.clauses_min,
                       "min clauses per document");
  generate->add_option("--clauses-max", gen_cfg.clauses_max,
                       "max clauses per document");
  generate->add_option("--margin", gen_cfg.emotion_margin,
                       "clauses on each side of the emotion clause");
  generate->add_option("--window", gen_cfg.window, "position clip bound");
  generate->add_option("--signal", gen_cfg.content_signal,
                       "content signal strength in [0,1]");
  generate->add_option("--distractor", gen_cfg.distractor,
                       "P(document plants a marker in a non-cause clause)");
  generate->add_option("--position-table", gen_table,
                       "cause-position weights, pos:w,...");
  generate->add_option("--cause-counts", gen_counts,
                       "P(1,2,... causes), comma-separated");
  generate->add_option("--config", config_file, kConfigHelp);

  // train
  TrainOptions train_opt;
  std::string train_corpus, train_out, train_variant = "pae-dgl";
  CLI::App* train_cmd = app.add_subcommand("train", "train a model");
  train_cmd->add_option("--corpus", train_corpus, "corpus path")->required();
  train_cmd->add_option("--out", train_out, "checkpoint output path")
      ->required();
  train_cmd->add_option("--seed", train_opt.cfg.seed, "RNG seed");
  train_opt.register_options(train_cmd, true, &train_variant);
  train_cmd->add_option("--config", config_file, kConfigHelp);

  // eval
  std::string eval_checkpoint, eval_corpus, eval_out;
  bool eval_oracle = false;
  int eval_threads = 0;
  CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate a checkpoint");
  eval_cmd->add_option("--checkpoint", eval_checkpoint, "checkpoint path")
      ->required();
  eval_cmd->add_option("--corpus", eval_corpus, "corpus path")->required();
  eval_cmd->add_flag("--oracle-dgl", eval_oracle,
                     "feed gold labels into DGL updates");
  eval_cmd->add_option("--threads", eval_threads, "inference threads (0=auto)");
  eval_cmd->add_option("--out", eval_out, "also write the report here");
  eval_cmd->add_option("--config", config_file, kConfigHelp);

  // ablate
  TrainOptions ablate_opt;
  std::string ablate_corpus, ablate_prefix;
  std::string ablate_variants = "bilstm,pae,pae-dgl";
  std::size_t ablate_reps = 5;
  double ablate_split = 0.9;
  int ablate_threads = 0;
  std::string unused_variant;
  CLI::App* ablate_cmd =
      app.add_subcommand("ablate", "train/evaluate a variant grid");
  ablate_cmd->add_option("--corpus", ablate_corpus, "corpus path")->required();
  ablate_cmd->add_option("--out-prefix", ablate_prefix,
                         "results path prefix")
      ->required();
  ablate_cmd->add_option("--variants", ablate_variants,
                         "comma-separated variant names");
  ablate_cmd->add_option("--reps", ablate_reps, "repetitions per variant")
      ->check(CLI::PositiveNumber);
  ablate_cmd->add_option("--split", ablate_split, "train fraction")
      ->check(CLI::Range(0.01, 0.99));
  ablate_cmd->add_option("--threads", ablate_threads, "worker threads (0=auto)");
  ablate_cmd->add_option("--seed", ablate_opt.cfg.seed, "base RNG seed");
  ablate_opt.register_options(ablate_cmd, false, &unused_variant);
  ablate_cmd->add_option("--config", config_file, kConfigHelp);

  // gradcheck
  std::uint64_t gc_seed = 7;
  double gc_tolerance = 1e-4;
  std::size_t gc_sample = 0;
  CLI::App* gc_cmd = app.add_subcommand(
      "gradcheck", "finite-difference check of the full model");
  gc_cmd->add_option("--seed", gc_seed, "RNG seed");
  gc_cmd->add_option("--tolerance", gc_tolerance, "max relative error");
  gc_cmd->add_option("--sample", gc_sample,
                     "elements checked per tensor (0=all)");
  gc_cmd->add_option("--config", config_file, kConfigHelp);

  try {
    std::vector<std::string> args = expand_config_args(argc, argv);
    std::reverse(args.begin(), args.end());  // the parser pops from the back
    app.parse(args);
    // Env-var seed applies when no flag/config value was given.
    if (generate->parsed() && generate->count("--seed") == 0)
      gen_cfg.seed = default_seed(gen_cfg.seed);
    if (train_cmd->parsed() && train_cmd->count("--seed") == 0)
      train_opt.cfg.seed = default_seed(train_opt.cfg.seed);
    if (ablate_cmd->parsed() && ablate_cmd->count("--seed") == 0)
      ablate_opt.cfg.seed = default_seed(ablate_opt.cfg.seed);
    if (gc_cmd->parsed() && gc_cmd->count("--seed") == 0)
      gc_seed = default_seed(gc_seed);

    if (generate->parsed())
      return cmd_generate(gen_cfg, gen_out, gen_table, gen_counts);
    if (train_cmd->parsed())
      return cmd_train(train_cmd, train_opt, train_variant, train_corpus,
                       train_out);
    if (eval_cmd->parsed())
      return cmd_eval(eval_checkpoint, eval_corpus, eval_oracle, eval_threads,
                      eval_out);
    if (ablate_cmd->parsed())
      return cmd_ablate(ablate_cmd, ablate_opt, ablate_corpus, ablate_prefix,
                        ablate_variants, ablate_reps, ablate_split,
                        ablate_threads);
    if (gc_cmd->parsed())
      return cmd_gradcheck(gc_seed, gc_tolerance, gc_sample);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
