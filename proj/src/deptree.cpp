#include "depsent/deptree.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <utility>

#include "depsent/error.hpp"

namespace depsent {

namespace {

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string uppercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return out;
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  size_t start = 0;
  while (true) {
    size_t pos = line.find('\t', start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

bool parse_int(const std::string& s, int& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

// "3-4" multiword ranges and "5.1" empty nodes are skipped, not parsed.
bool is_skippable_id(const std::string& id) {
  return id.find('-') != std::string::npos || id.find('.') != std::string::npos;
}

} // namespace

DepSentence DepSentence::from_tokens(std::vector<TaggedToken> tokens) {
  const int n = static_cast<int>(tokens.size());
  for (int i = 0; i < n; ++i) {
    const TaggedToken& t = tokens[static_cast<size_t>(i)];
    if (t.index != i + 1)
      throw TreeError("token indices are not contiguous 1..n: expected " +
                      std::to_string(i + 1) + ", got " + std::to_string(t.index));
    if (t.head < 0 || t.head > n)
      throw TreeError("token " + std::to_string(t.index) + " has out-of-range head " +
                      std::to_string(t.head));
    if (t.head == t.index)
      throw TreeError("token " + std::to_string(t.index) + " is its own head");
    if (t.upos.empty())
      throw TreeError("token " + std::to_string(t.index) + " has an empty PoS tag");
    if (t.deprel.empty())
      throw TreeError("token " + std::to_string(t.index) + " has an empty dependency type");
  }

  DepSentence s;
  s.tokens_ = std::move(tokens);
  s.children_.assign(static_cast<size_t>(n) + 1, {});
  for (const TaggedToken& t : s.tokens_)
    s.children_[static_cast<size_t>(t.head)].push_back(t.index);
  // children come out ascending because tokens are scanned in index order

  // every node must be reachable from node 0 (no cycles, no disconnection)
  std::vector<char> seen(static_cast<size_t>(n) + 1, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int cur = stack.back();
    stack.pop_back();
    for (int c : s.children_[static_cast<size_t>(cur)]) {
      if (!seen[static_cast<size_t>(c)]) {
        seen[static_cast<size_t>(c)] = 1;
        ++reached;
        stack.push_back(c);
      }
    }
  }
  if (reached != n + 1) {
    for (int i = 1; i <= n; ++i) {
      if (!seen[static_cast<size_t>(i)])
        throw TreeError("node " + std::to_string(i) +
                        " is not reachable from the root (cyclic or disconnected heads)");
    }
  }
  return s;
}

NodeSet ancestor(const DepSentence& s, int i, int delta) {
  int cur = i;
  for (int step = 0; step < delta; ++step) {
    if (cur == 0)
      return {}; // would pass above the dummy root
    cur = s.head_of(cur);
  }
  return {cur};
}

NodeSet children(const DepSentence& s, int i) { return s.children_of(i); }

NodeSet lm_branch(const DepSentence& s, int i, std::string_view deprel) {
  const std::string wanted = lowercase(deprel);
  for (int c : s.children_of(i)) {
    if (s.token(c).deprel == wanted)
      return {c}; // children are ascending, first hit is leftmost
  }
  return {};
}

std::vector<int> postorder(const DepSentence& s) {
  std::vector<int> order;
  order.reserve(static_cast<size_t>(s.size()) + 1);
  // explicit stack; second visit of a node emits it
  std::vector<std::pair<int, bool>> stack{{0, false}};
  while (!stack.empty()) {
    auto [node, expanded] = stack.back();
    stack.pop_back();
    if (expanded) {
      order.push_back(node);
      continue;
    }
    stack.emplace_back(node, true);
    const NodeSet& kids = s.children_of(node);
    for (auto it = kids.rbegin(); it != kids.rend(); ++it)
      stack.emplace_back(*it, false);
  }
  return order;
}

std::vector<DepSentence> parse_conll(std::istream& in) {
  std::vector<DepSentence> sentences;
  std::vector<TaggedToken> block;
  std::string line;
  int lineno = 0;
  int block_start = 0;

  auto flush_block = [&]() {
    if (block.empty())
      return;
    try {
      sentences.push_back(DepSentence::from_tokens(std::move(block)));
    } catch (const TreeError& e) {
      throw TreeError("sentence starting at line " + std::to_string(block_start) + ": " +
                      e.what());
    }
    block.clear();
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.empty()) {
      flush_block();
      continue;
    }
    if (line[0] == '#')
      continue;

    std::vector<std::string> f = split_tabs(line);
    if (!f.empty() && is_skippable_id(f[0]))
      continue;

    TaggedToken tok;
    std::string head_field;
    if (f.size() == 6) {
      // compact layout: ID FORM LEMMA UPOS HEAD DEPREL
      tok.form = f[1];
      tok.lemma = f[2];
      tok.upos = f[3];
      head_field = f[4];
      tok.deprel = f[5];
    } else if (f.size() >= 10) {
      // CoNLL-X / CoNLL-U layout
      tok.form = f[1];
      tok.lemma = f[2];
      tok.upos = f[3];
      head_field = f[6];
      tok.deprel = f[7];
    } else {
      throw ParseError("line " + std::to_string(lineno) + ": expected 6 or >=10 tab-separated columns, got " +
                       std::to_string(f.size()));
    }

    if (!parse_int(f[0], tok.index))
      throw ParseError("line " + std::to_string(lineno) + ": bad token id '" + f[0] + "'");
    if (!parse_int(head_field, tok.head))
      throw ParseError("line " + std::to_string(lineno) + ": bad head '" + head_field + "'");
    if (tok.lemma == "_")
      tok.lemma.reset();
    if (tok.upos == "_")
      tok.upos.clear();
    tok.upos = uppercase(tok.upos);
    tok.deprel = lowercase(tok.deprel);

    if (block.empty())
      block_start = lineno;
    block.push_back(std::move(tok));
  }
  flush_block();
  return sentences;
}

std::vector<DepSentence> parse_conll(const std::string& text) {
  std::istringstream in(text);
  return parse_conll(in);
}

std::vector<DepSentence> parse_conll_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot open CoNLL file: " + path);
  return parse_conll(in);
}

void write_conll(const DepSentence& s, std::ostream& out) {
  for (const TaggedToken& t : s.tokens()) {
    out << t.index << '\t' << t.form << '\t' << (t.lemma ? *t.lemma : "_") << '\t' << t.upos
        << "\t_\t_\t" << t.head << '\t' << t.deprel << "\t_\t_\n";
  }
  out << '\n';
}

std::string to_conll(const std::vector<DepSentence>& sentences) {
  std::ostringstream out;
  for (const DepSentence& s : sentences)
    write_conll(s, out);
  return out.str();
}

} // namespace depsent
