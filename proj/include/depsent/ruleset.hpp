#ifndef DEPSENT_RULESET_HPP
#define DEPSENT_RULESET_HPP

#include <iosfwd>
#include <memory>
#include <optional>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

#include "depsent/deptree.hpp"
#include "depsent/lexicon.hpp"

namespace depsent {

enum class TransformKind { Shift, Weighting };

/// The transformation half of a compositional operation. An absent amount
/// means "bind from the lexicon when the operation triggers": the trigger
/// word's intensifier weight for weighting, the bundle's (or the negator's
/// own) shift amount for shift.
struct TransformSpec {
  TransformKind kind = TransformKind::Weighting;
  std::optional<double> amount;

  bool operator==(const TransformSpec&) const = default;
};

/// A word pattern of a trigger predicate, matched anchored and
/// case-insensitively against the whole token form. Compiled eagerly so a
/// bad pattern fails at rule-load time, never during analysis.
class FormPattern {
public:
  explicit FormPattern(std::string text); // throws RuleError on a bad regex

  const std::string& text() const { return text_; }
  bool matches(std::string_view form) const;

  bool operator==(const FormPattern& other) const { return text_ == other.text_; }

private:
  std::string text_;
  std::shared_ptr<const std::regex> re_;
};

/// Which tokens trigger an operation: form constraint (a named lexicon list
/// or a pattern set), tag constraint, dependency-type constraint. An empty
/// pattern/tag/type set is a wildcard; at least one constraint must be
/// non-wildcard.
struct TriggerPredicate {
  std::optional<std::string> forms_list; // negators | intensifiers | adversatives | irrealis
  std::vector<FormPattern> form_patterns;
  std::vector<std::string> postags; // uppercased
  std::vector<std::string> deprels; // lowercased

  bool is_wildcard() const {
    return !forms_list && form_patterns.empty() && postags.empty() && deprels.empty();
  }
  bool operator==(const TriggerPredicate&) const = default;
};

/// One candidate of an operation's ordered scope list.
struct ScopeCandidate {
  enum class Kind { Dest, LmBranch, RightChildren, LeftChildren, SubjRight, SubjLeft };

  Kind kind = Kind::Dest;
  std::string label; // LmBranch dependency type
  int count = 0;     // RightChildren / LeftChildren n

  bool operator==(const ScopeCandidate&) const = default;

  static ScopeCandidate dest() { return {Kind::Dest, "", 0}; }
  static ScopeCandidate branch(std::string_view deprel);
  static ScopeCandidate rc(int n) { return {Kind::RightChildren, "", n}; }
  static ScopeCandidate lc(int n) { return {Kind::LeftChildren, "", n}; }
  static ScopeCandidate subjr() { return {Kind::SubjRight, "", 0}; }
  static ScopeCandidate subjl() { return {Kind::SubjLeft, "", 0}; }
};

/// Text form used in rule files and traces: "dest", "branch:attr", "rc:2",
/// "lc:1", "subjr", "subjl".
std::string to_string(const ScopeCandidate& c);
ScopeCandidate parse_scope_candidate(std::string_view text); // throws RuleError

/// A compositional operation as authored: transformation, trigger
/// predicate, levels to ascend (delta), priority (larger wins), and the
/// ordered scope candidate list.
struct OperationSpec {
  std::string name;
  std::string label; // short tag used in traces ("I", "N", ...)
  TransformSpec transform;
  TriggerPredicate trigger;
  int delta = 0;
  int priority = 0;
  std::vector<ScopeCandidate> scopes;

  bool operator==(const OperationSpec&) const = default;
};

/// True iff the token's form, tag and dependency type all satisfy the
/// predicate. Form matching is case-insensitive; list references are
/// resolved against the bundle.
bool matches(const TriggerPredicate& trigger, const TaggedToken& token, const LexiconBundle& lex);

/// shift: moves so toward (and possibly past) zero by amount, 0 stays 0;
/// weighting: so * (1 + amount).
double apply_transform(TransformKind kind, double amount, double so);

/// Nodes a single candidate selects, relative to the destination node and
/// the trigger's word index. Subjective kinds (subjr/subjl) already require
/// a nonzero so; the structural kinds select regardless of so.
NodeSet scope_nodes(const ScopeCandidate& c, const DepSentence& s, int dest, int trigger,
                    const std::vector<double>& so);

struct ScopeChoice {
  int candidate = -1; // index into the scope list, -1 = no candidate matched
  NodeSet nodes;
};

/// First-match resolution: candidates are tried in order and one matches
/// iff it selects at least one node with nonzero so. Returns the full node
/// set of the first match, or {-1, {}} when the operation expires.
ScopeChoice resolve_scope(const std::vector<ScopeCandidate>& scopes, const DepSentence& s,
                          int dest, int trigger, const std::vector<double>& so);

/// XML rule files: an <operations> root with one <operation> element per
/// spec. Passing a bundle validates lexicon-list references; a null bundle
/// skips that check (schema-only validation). Throws RuleError.
std::vector<OperationSpec> parse_rules_xml(std::istream& in, const std::string& source_name,
                                           const LexiconBundle* lex);
std::vector<OperationSpec> load_rules_xml(const std::string& path, const LexiconBundle* lex);
void write_rules_xml(std::ostream& out, const std::vector<OperationSpec>& specs);
std::string rules_to_xml(const std::vector<OperationSpec>& specs);

/// The built-in universal pack: intensification, "but" clauses, negation,
/// irrealis. The bundle must provide a non-empty word list for each.
std::vector<OperationSpec> builtin_universal_rules(const LexiconBundle& lex);

/// The same pack rendered as an XML rule file (no lexicon needed).
std::string builtin_rules_xml();

/// Subset of specs whose names appear in names, in spec order. Unknown
/// names throw RuleError.
std::vector<OperationSpec> filter_rules_by_name(const std::vector<OperationSpec>& specs,
                                                const std::vector<std::string>& names);

} // namespace depsent

#endif
