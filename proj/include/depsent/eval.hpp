#ifndef DEPSENT_EVAL_HPP
#define DEPSENT_EVAL_HPP

#include <string>
#include <vector>

#include "depsent/deptree.hpp"
#include "depsent/engine.hpp"
#include "depsent/lexicon.hpp"
#include "depsent/ruleset.hpp"

namespace depsent {

/// One gold-labeled review: id, binary label, parsed sentences.
struct LabeledDocument {
  std::string id;
  Polarity gold = Polarity::Negative;
  std::vector<DepSentence> sentences;
};

/// Reads a tab-separated corpus manifest, one document per line:
/// id, label (positive|negative), CoNLL file path. Relative paths resolve
/// against the manifest directory. Throws CorpusError with the manifest
/// line on bad labels or missing files.
std::vector<LabeledDocument> load_corpus(const std::string& manifest_path);

/// Fraction of documents whose predicted polarity equals gold. Documents
/// are independent; jobs > 1 spreads them over a worker pool with a
/// deterministic reduction.
double evaluate(const std::vector<LabeledDocument>& corpus,
                const std::vector<OperationSpec>& rules, const LexiconBundle& lex,
                int jobs = 1);

struct AblationRow {
  std::string name;
  double accuracy = 0.0;

  bool operator==(const AblationRow&) const = default;
};

/// Four runs with cumulative subsets of the built-in pack: no rules,
/// +negation, +intensification (which brings in the "but" weighting),
/// +irrealis. The lexicon must support the built-in pack.
std::vector<AblationRow> ablation(const std::vector<LabeledDocument>& corpus,
                                  const LexiconBundle& lex, int jobs = 1);

/// Aligned text table with accuracies as percentages.
std::string render_ablation_table(const std::vector<AblationRow>& rows);

/// Machine-readable key=value lines, accuracy as a fraction.
std::string render_ablation_records(const std::vector<AblationRow>& rows);

} // namespace depsent

#endif
