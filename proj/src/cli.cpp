#include "depsent/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "depsent/engine.hpp"
#include "depsent/error.hpp"
#include "depsent/eval.hpp"
#include "util.hpp"

namespace depsent {

using detail::format_roundtrip;
using detail::format_so;
using detail::split;
using detail::trim;

namespace {

LexiconBundle require_lexicon(const RunConfig& cfg) {
  if (cfg.lexicon.empty())
    throw Error("the " + cfg.command + " command needs --lexicon");
  return load_lexicon_manifest(cfg.lexicon);
}

std::vector<OperationSpec> load_rules(const RunConfig& cfg, const LexiconBundle* lex) {
  if (cfg.rules == "builtin") {
    if (lex)
      return builtin_universal_rules(*lex);
    std::istringstream in(builtin_rules_xml());
    return parse_rules_xml(in, "builtin", nullptr);
  }
  return load_rules_xml(cfg.rules, lex);
}

std::vector<OperationSpec> apply_subset(const RunConfig& cfg,
                                        std::vector<OperationSpec> specs) {
  if (cfg.rules_subset.empty())
    return specs;
  std::vector<std::string> names;
  for (const std::string& piece : split(cfg.rules_subset, ',')) {
    std::string name = trim(piece);
    if (!name.empty())
      names.push_back(std::move(name));
  }
  return filter_rules_by_name(specs, names);
}

std::string document_id(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

std::string percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", fraction * 100.0);
  return buf;
}

std::string run_analyze(const RunConfig& cfg) {
  if (cfg.inputs.empty())
    throw Error("analyze needs at least one --input file");
  if (cfg.format == "trace")
    throw Error("analyze does not produce traces; use the explain command");
  LexiconBundle lex = require_lexicon(cfg);
  std::vector<OperationSpec> rules = apply_subset(cfg, load_rules(cfg, &lex));

  std::vector<std::pair<std::string, DocumentResult>> results;
  for (const std::string& input : cfg.inputs)
    results.emplace_back(document_id(input),
                         analyze_document(parse_conll_file(input), rules, lex));

  std::string out;
  if (cfg.format == "records") {
    for (const auto& [id, doc] : results)
      out += render_record(id, doc) + "\n";
    return out;
  }
  size_t idw = 2, sow = 2;
  for (const auto& [id, doc] : results) {
    idw = std::max(idw, id.size());
    sow = std::max(sow, format_so(doc.so).size());
  }
  for (const auto& [id, doc] : results) {
    std::string so = format_so(doc.so);
    out += id + std::string(idw - id.size() + 2, ' ');
    out += so + std::string(sow - so.size() + 2, ' ');
    out += to_string(doc.polarity);
    out += '\n';
  }
  return out;
}

std::string run_evaluate(const RunConfig& cfg) {
  if (cfg.inputs.size() != 1)
    throw Error("evaluate needs exactly one --input corpus manifest");
  if (cfg.format == "trace")
    throw Error("evaluate does not produce traces; use the explain command");
  LexiconBundle lex = require_lexicon(cfg);
  std::vector<LabeledDocument> corpus = load_corpus(cfg.inputs[0]);

  // A single accuracy for an explicit rule selection, the four-row
  // ablation otherwise.
  if (!cfg.rules_subset.empty() || cfg.rules != "builtin") {
    std::vector<OperationSpec> rules = apply_subset(cfg, load_rules(cfg, &lex));
    double acc = evaluate(corpus, rules, lex, cfg.jobs);
    if (cfg.format == "records")
      return "accuracy=" + format_roundtrip(acc) + "\n";
    return "accuracy  " + percent(acc) + "\n";
  }
  std::vector<AblationRow> rows = ablation(corpus, lex, cfg.jobs);
  return cfg.format == "records" ? render_ablation_records(rows) : render_ablation_table(rows);
}

std::string run_explain(const RunConfig& cfg) {
  if (cfg.inputs.size() != 1)
    throw Error("explain needs exactly one --input file");
  LexiconBundle lex = require_lexicon(cfg);
  std::vector<OperationSpec> rules = apply_subset(cfg, load_rules(cfg, &lex));
  std::vector<DepSentence> sentences = parse_conll_file(cfg.inputs[0]);
  if (cfg.sentence < 1 || cfg.sentence > static_cast<int>(sentences.size()))
    throw Error("--sentence " + std::to_string(cfg.sentence) + " is out of range (" +
                cfg.inputs[0] + " has " + std::to_string(sentences.size()) + " sentences)");

  SentenceResult res = analyze_sentence(sentences[static_cast<size_t>(cfg.sentence - 1)], rules,
                                        lex, TraceMode::Full);
  std::string out = render_trace_table(res.trace);
  std::string events = render_trace_events(res.trace);
  if (!events.empty())
    out += "\n" + events;
  out += "\nsentence SO: " + format_so(res.so) + "\n";
  return out;
}

std::string run_validate_rules(const RunConfig& cfg) {
  std::vector<OperationSpec> specs;
  if (cfg.lexicon.empty()) {
    specs = load_rules(cfg, nullptr);
  } else {
    LexiconBundle lex = load_lexicon_manifest(cfg.lexicon);
    specs = load_rules(cfg, &lex);
  }
  std::string out = "ok: " + std::to_string(specs.size()) + " operations\n";
  for (const OperationSpec& spec : specs) {
    out += "  " + spec.name + ": ";
    out += spec.transform.kind == TransformKind::Shift ? "shift" : "weighting";
    out += " amount=";
    out += spec.transform.amount ? format_roundtrip(*spec.transform.amount) : "lexicon";
    out += " levelsup=" + std::to_string(spec.delta);
    out += " priority=" + std::to_string(spec.priority);
    out += " scope=";
    for (size_t i = 0; i < spec.scopes.size(); ++i) {
      if (i)
        out += ',';
      out += to_string(spec.scopes[i]);
    }
    out += '\n';
  }
  return out;
}

} // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    std::string text;
    if (cfg.command == "analyze")
      text = run_analyze(cfg);
    else if (cfg.command == "evaluate")
      text = run_evaluate(cfg);
    else if (cfg.command == "explain")
      text = run_explain(cfg);
    else if (cfg.command == "validate-rules")
      text = run_validate_rules(cfg);
    else if (cfg.command == "emit-builtin-rules")
      text = builtin_rules_xml();
    else
      throw Error("unknown command '" + cfg.command + "'");
    out << text;
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"syntax-driven sentiment analysis over dependency trees"};
  app.require_subcommand(1);

  auto add_lexicon = [&](CLI::App* sub, bool required) {
    CLI::Option* opt = sub->add_option("--lexicon", cfg.lexicon, "lexicon manifest path");
    if (required)
      opt->required();
  };
  auto add_rules = [&](CLI::App* sub) {
    sub->add_option("--rules", cfg.rules, "rule XML path or 'builtin'")
        ->capture_default_str();
    sub->add_option("--rules-subset", cfg.rules_subset, "comma-separated rule names to keep");
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"table", "records"}))
        ->capture_default_str();
  };

  CLI::App* analyze = app.add_subcommand("analyze", "score documents and report polarity");
  add_lexicon(analyze, true);
  add_rules(analyze);
  add_format(analyze);
  analyze->add_option("--input", cfg.inputs, "CoNLL file(s), one document each")->required();

  CLI::App* evaluate = app.add_subcommand("evaluate", "accuracy or rule ablation on a corpus");
  add_lexicon(evaluate, true);
  add_rules(evaluate);
  add_format(evaluate);
  evaluate->add_option("--input", cfg.inputs, "corpus manifest (id, label, path)")->required();
  evaluate->add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);

  CLI::App* explain = app.add_subcommand("explain", "trace one sentence step by step");
  add_lexicon(explain, true);
  add_rules(explain);
  explain->add_option("--input", cfg.inputs, "CoNLL file")->required();
  explain->add_option("--sentence", cfg.sentence, "1-based sentence number")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  CLI::App* validate = app.add_subcommand("validate-rules", "check a rule file");
  add_lexicon(validate, false);
  validate->add_option("--rules", cfg.rules, "rule XML path or 'builtin'")->required();

  app.add_subcommand("emit-builtin-rules", "print the built-in rule pack as XML");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  cfg.command = app.get_subcommands().at(0)->get_name();
  return run(cfg, out, err);
}

} // namespace depsent
