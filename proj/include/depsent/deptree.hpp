#ifndef DEPSENT_DEPTREE_HPP
#define DEPSENT_DEPTREE_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace depsent {

/// One word of a tagged, dependency-parsed sentence.
///
/// Indices are 1-based word positions; head 0 points at the dummy root.
/// upos is stored uppercased and deprel lowercased so that rule matching
/// is a plain string comparison.
struct TaggedToken {
  int index = 0;
  std::string form;
  std::optional<std::string> lemma;
  std::string upos;
  int head = 0;
  std::string deprel;

  bool operator==(const TaggedToken&) const = default;
};

/// A set of node indices, kept sorted ascending.
using NodeSet = std::vector<int>;

/// A dependency-parsed sentence with an implicit dummy root (node 0).
///
/// Immutable after construction; node 0 heads the syntactic root(s).
class DepSentence {
public:
  DepSentence() = default;

  /// Validates the tree invariant: contiguous indices 1..n, head in range,
  /// no self-loops, every node reachable from node 0. Throws TreeError.
  static DepSentence from_tokens(std::vector<TaggedToken> tokens);

  /// Number of words (nodes are 0..size()).
  int size() const { return static_cast<int>(tokens_.size()); }

  const std::vector<TaggedToken>& tokens() const { return tokens_; }

  /// Token at 1-based node index i (1 <= i <= size()).
  const TaggedToken& token(int i) const { return tokens_[static_cast<size_t>(i - 1)]; }

  int head_of(int i) const { return token(i).head; }

  /// Children of node i (0 <= i <= size()), ascending by index.
  const NodeSet& children_of(int i) const { return children_[static_cast<size_t>(i)]; }

  bool valid_node(int i) const { return i >= 0 && i <= size(); }

  bool operator==(const DepSentence& other) const { return tokens_ == other.tokens_; }

private:
  std::vector<TaggedToken> tokens_;
  std::vector<NodeSet> children_; // indexed 0..n
};

/// Singleton with the delta-th ancestor of node i, empty if the walk would
/// pass above node 0. ancestor(s, i, 0) == {i}.
NodeSet ancestor(const DepSentence& s, int i, int delta);

/// All nodes whose head is i.
NodeSet children(const DepSentence& s, int i);

/// Singleton with the minimum-index child of i whose dependency type equals
/// deprel (compared lowercased), empty if there is none.
NodeSet lm_branch(const DepSentence& s, int i, std::string_view deprel);

/// Postorder traversal of the tree: every child precedes its head, siblings
/// in ascending index order, node 0 last.
std::vector<int> postorder(const DepSentence& s);

/// Reads blank-line-separated CoNLL-style sentence blocks. Token lines are
/// tab-separated with either the compact 6-column layout
/// (ID FORM LEMMA UPOS HEAD DEPREL) or the standard 10+-column
/// CoNLL-X/CoNLL-U layout. '#' comments are ignored; multiword-token ranges
/// and empty nodes are skipped. Throws ParseError / TreeError.
std::vector<DepSentence> parse_conll(std::istream& in);
std::vector<DepSentence> parse_conll(const std::string& text);
std::vector<DepSentence> parse_conll_file(const std::string& path);

/// Writes a sentence as a 10-column CoNLL-U block ('_' for absent fields),
/// terminated by a blank line.
void write_conll(const DepSentence& s, std::ostream& out);
std::string to_conll(const std::vector<DepSentence>& sentences);

} // namespace depsent

#endif
