#ifndef DEPSENT_LEXICON_HPP
#define DEPSENT_LEXICON_HPP

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace depsent {

/// One subjective-lexicon row. A key ending in '*' is a stem wildcard
/// (prefix match); pos, when set, qualifies the entry to one universal tag.
struct SentimentEntry {
  std::string key;
  std::optional<std::string> pos;
  double so = 0.0;

  bool is_stem() const { return !key.empty() && key.back() == '*'; }
  bool operator==(const SentimentEntry&) const = default;
};

/// Intensifier weighting factor; negative beta marks a diminisher.
struct IntensifierEntry {
  std::string key;
  double beta = 0.0;

  bool operator==(const IntensifierEntry&) const = default;
};

enum class SentimentFormat { SoCal, SentiStrength };

/// Subjective word scores plus the word lists that instantiate operation
/// predicates (negators, adversatives, irrealis markers, emoticons).
/// Immutable once loaded; all lookups are case-insensitive except emoticons.
class LexiconBundle {
public:
  static constexpr double kDefaultAlpha = 4.0;

  void add_sentiment(const SentimentEntry& e); // throws on duplicate (key,pos)
  void add_intensifier(const IntensifierEntry& e);
  void add_negator(std::string_view word, std::optional<double> alpha_override = std::nullopt);
  void add_adversative(std::string_view word);
  void add_irrealis(std::string_view word);
  void add_emoticon(std::string_view emoticon, double so);

  void set_alpha(double alpha) { alpha_ = alpha; }

  /// Bundle-level negation shift amount.
  double alpha() const { return alpha_; }

  /// Semantic orientation of (form, upos). Precedence: exact (form,pos)
  /// match, then plain form match, then longest stem-wildcard match, then
  /// emoticon exact match, then 0.
  double lookup_so(std::string_view form, std::string_view upos) const;

  /// Weighting factor of a known intensifier, absent otherwise.
  std::optional<double> lookup_beta(std::string_view form) const;

  bool is_negator(std::string_view form) const;
  bool is_adversative(std::string_view form) const;
  bool is_irrealis_marker(std::string_view form) const;

  /// Per-negator alpha override when the negator list carries one,
  /// otherwise the bundle alpha. Absent for non-negators.
  std::optional<double> negator_alpha(std::string_view form) const;

  /// Named word-list queries used by rule triggers
  /// (negators | intensifiers | adversatives | irrealis).
  static bool known_list(std::string_view name);
  bool list_nonempty(std::string_view name) const;
  bool list_contains(std::string_view name, std::string_view form) const;

  /// Canonical single-stream form; reloading yields identical lookups.
  void save_canonical(std::ostream& out) const;
  static LexiconBundle load_canonical(std::istream& in, const std::string& source_name);

private:
  struct StemEntry {
    std::string prefix; // key without the trailing '*'
    std::optional<std::string> pos;
    double so = 0.0;
  };

  std::map<std::pair<std::string, std::string>, double> exact_; // (key, pos or "")
  std::map<std::string, std::vector<StemEntry>> stems_by_prefix_;
  size_t max_stem_len_ = 0;
  std::map<std::string, double> intensifiers_;
  std::map<std::string, std::optional<double>> negators_;
  std::set<std::string> adversatives_;
  std::set<std::string> irrealis_;
  std::map<std::string, double> emoticons_; // case-sensitive
  double alpha_ = kDefaultAlpha;
};

/// Loads one sentiment file. SoCal style is one file per PoS category
/// ("word<TAB>score" lines, PoS qualifier from pos); SentiStrength style is
/// "term<TAB>score" where term may end in '*'. Throws LexiconError with the
/// offending line number.
std::vector<SentimentEntry> load_socal_file(const std::string& path, std::string_view pos);
std::vector<SentimentEntry> load_sentistrength_file(const std::string& path);

/// SoCal variant that infers the PoS qualifier from the file name
/// (adjectives -> ADJ, nouns -> NOUN, verbs -> VERB, adverbs -> ADV).
std::vector<SentimentEntry> load_sentiment_lexicon(const std::string& path, SentimentFormat format);

/// "word<TAB>beta" lines.
std::vector<IntensifierEntry> load_intensifiers(const std::string& path);

/// Assembles a bundle from a key=value manifest naming the component files
/// and alpha. Relative paths resolve against the manifest directory.
LexiconBundle load_lexicon_manifest(const std::string& path);

} // namespace depsent

#endif
