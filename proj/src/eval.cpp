#include "depsent/eval.hpp"

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <thread>

#include "depsent/error.hpp"
#include "util.hpp"

namespace depsent {

using detail::split;
using detail::trim;

std::vector<LabeledDocument> load_corpus(const std::string& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in)
    throw CorpusError("cannot open corpus manifest: " + manifest_path);
  const std::filesystem::path base = std::filesystem::path(manifest_path).parent_path();

  std::vector<LabeledDocument> corpus;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.empty() || line[0] == '#')
      continue;
    std::vector<std::string> f = split(line, '\t');
    if (f.size() != 3)
      throw CorpusError(manifest_path + ":" + std::to_string(lineno) +
                        ": expected 'id<TAB>label<TAB>path'");
    LabeledDocument doc;
    doc.id = f[0];
    if (f[1] == "positive")
      doc.gold = Polarity::Positive;
    else if (f[1] == "negative")
      doc.gold = Polarity::Negative;
    else
      throw CorpusError(manifest_path + ":" + std::to_string(lineno) + ": bad label '" + f[1] +
                        "' (expected positive or negative)");
    std::filesystem::path p(f[2]);
    if (!p.is_absolute())
      p = base / p;
    try {
      doc.sentences = parse_conll_file(p.string());
    } catch (const Error& e) {
      throw CorpusError(manifest_path + ":" + std::to_string(lineno) + ": " + e.what());
    }
    if (doc.sentences.empty())
      throw CorpusError(manifest_path + ":" + std::to_string(lineno) + ": " + p.string() +
                        " contains no sentences");
    corpus.push_back(std::move(doc));
  }
  if (corpus.empty())
    throw CorpusError(manifest_path + ": manifest lists no documents");
  return corpus;
}

double evaluate(const std::vector<LabeledDocument>& corpus,
                const std::vector<OperationSpec>& rules, const LexiconBundle& lex, int jobs) {
  if (corpus.empty())
    throw CorpusError("empty corpus");

  std::vector<char> correct(corpus.size(), 0);
  auto score = [&](size_t i) {
    DocumentResult r = analyze_document(corpus[i].sentences, rules, lex);
    correct[i] = r.polarity == corpus[i].gold ? 1 : 0;
  };

  if (jobs <= 1 || corpus.size() < 2) {
    for (size_t i = 0; i < corpus.size(); ++i)
      score(i);
  } else {
    std::atomic<size_t> next{0};
    auto worker = [&] {
      for (size_t i = next.fetch_add(1); i < corpus.size(); i = next.fetch_add(1))
        score(i);
    };
    size_t n = std::min(static_cast<size_t>(jobs), corpus.size());
    std::vector<std::thread> pool;
    for (size_t t = 0; t < n; ++t)
      pool.emplace_back(worker);
    for (std::thread& t : pool)
      t.join();
  }

  size_t hits = 0;
  for (char c : correct)
    hits += static_cast<size_t>(c);
  return static_cast<double>(hits) / static_cast<double>(corpus.size());
}

std::vector<AblationRow> ablation(const std::vector<LabeledDocument>& corpus,
                                  const LexiconBundle& lex, int jobs) {
  const std::vector<OperationSpec> pack = builtin_universal_rules(lex);
  const std::vector<std::pair<const char*, std::vector<std::string>>> steps = {
      {"baseline", {}},
      {"+negation", {"negation"}},
      {"+intensification", {"negation", "intensification", "but"}},
      {"+irrealis", {"negation", "intensification", "but", "irrealis"}},
  };
  std::vector<AblationRow> rows;
  for (const auto& [name, subset] : steps) {
    std::vector<OperationSpec> rules = filter_rules_by_name(pack, subset);
    rows.push_back({name, evaluate(corpus, rules, lex, jobs)});
  }
  return rows;
}

std::string render_ablation_table(const std::vector<AblationRow>& rows) {
  std::string out = "Rule ablation (cumulative; +intensification includes the "
                    "adversative \"but\" weighting)\n";
  size_t width = 0;
  for (const AblationRow& row : rows)
    width = std::max(width, row.name.size());
  for (const AblationRow& row : rows) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", row.accuracy * 100.0);
    out += row.name;
    out.append(width - row.name.size() + 2, ' ');
    out += buf;
    out += "\n";
  }
  return out;
}

std::string render_ablation_records(const std::vector<AblationRow>& rows) {
  std::string out;
  for (const AblationRow& row : rows)
    out += row.name + "=" + detail::format_roundtrip(row.accuracy) + "\n";
  return out;
}

} // namespace depsent
