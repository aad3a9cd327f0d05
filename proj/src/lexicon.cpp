#include "depsent/lexicon.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "depsent/error.hpp"
#include "util.hpp"

namespace depsent {

using detail::lowercase;
using detail::parse_double;
using detail::split;
using detail::trim;
using detail::uppercase;

namespace {

constexpr std::string_view kCanonicalMagic = "# depsent-canonical-lexicon v1";

// Lines of a lexicon component file: skips blanks and '#' comments,
// strips trailing '\r', hands (lineno, line) to the callback.
template <typename Fn>
void for_each_data_line(const std::string& path, Fn&& fn) {
  std::ifstream in(path);
  if (!in)
    throw LexiconError("cannot open lexicon file: " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.empty() || line[0] == '#')
      continue;
    fn(lineno, line);
  }
}

double parse_score(const std::string& path, int lineno, const std::string& field,
                   const char* what) {
  double v = 0.0;
  if (!parse_double(field, v))
    throw LexiconError(path + ":" + std::to_string(lineno) + ": non-numeric " + what + " '" +
                       field + "'");
  return v;
}

} // namespace

void LexiconBundle::add_sentiment(const SentimentEntry& e) {
  if (e.key.empty())
    throw LexiconError("sentiment entry with empty key");
  const std::string key = lowercase(e.key);
  const std::string pos = e.pos ? uppercase(*e.pos) : std::string();
  if (e.is_stem()) {
    std::string prefix = key.substr(0, key.size() - 1);
    auto& bucket = stems_by_prefix_[prefix];
    for (const StemEntry& s : bucket) {
      if ((s.pos ? *s.pos : std::string()) == pos)
        throw LexiconError("duplicate lexicon entry for key '" + key + "'" +
                           (pos.empty() ? "" : " (" + pos + ")"));
    }
    StemEntry s;
    s.prefix = std::move(prefix);
    if (!pos.empty())
      s.pos = pos;
    s.so = e.so;
    max_stem_len_ = std::max(max_stem_len_, s.prefix.size());
    bucket.push_back(std::move(s));
  } else {
    auto [it, inserted] = exact_.emplace(std::make_pair(key, pos), e.so);
    (void)it;
    if (!inserted)
      throw LexiconError("duplicate lexicon entry for key '" + key + "'" +
                         (pos.empty() ? "" : " (" + pos + ")"));
  }
}

void LexiconBundle::add_intensifier(const IntensifierEntry& e) {
  auto [it, inserted] = intensifiers_.emplace(lowercase(e.key), e.beta);
  (void)it;
  if (!inserted)
    throw LexiconError("duplicate intensifier entry '" + lowercase(e.key) + "'");
}

void LexiconBundle::add_negator(std::string_view word, std::optional<double> alpha_override) {
  negators_[lowercase(word)] = alpha_override;
}

void LexiconBundle::add_adversative(std::string_view word) {
  adversatives_.insert(lowercase(word));
}

void LexiconBundle::add_irrealis(std::string_view word) { irrealis_.insert(lowercase(word)); }

void LexiconBundle::add_emoticon(std::string_view emoticon, double so) {
  emoticons_[std::string(emoticon)] = so;
}

double LexiconBundle::lookup_so(std::string_view form, std::string_view upos) const {
  const std::string lf = lowercase(form);
  const std::string up = uppercase(upos);

  if (auto it = exact_.find({lf, up}); it != exact_.end())
    return it->second;
  if (auto it = exact_.find({lf, std::string()}); it != exact_.end())
    return it->second;

  // longest stem-wildcard match; a pos-qualified stem beats a plain one
  // of the same length
  size_t start = std::min(lf.size(), max_stem_len_);
  for (size_t len = start + 1; len-- > 0;) {
    auto it = stems_by_prefix_.find(lf.substr(0, len));
    if (it == stems_by_prefix_.end())
      continue;
    const StemEntry* plain = nullptr;
    for (const StemEntry& s : it->second) {
      if (s.pos && *s.pos == up)
        return s.so;
      if (!s.pos)
        plain = &s;
    }
    if (plain)
      return plain->so;
  }

  if (auto it = emoticons_.find(std::string(form)); it != emoticons_.end())
    return it->second;
  return 0.0;
}

std::optional<double> LexiconBundle::lookup_beta(std::string_view form) const {
  auto it = intensifiers_.find(lowercase(form));
  if (it == intensifiers_.end())
    return std::nullopt;
  return it->second;
}

bool LexiconBundle::is_negator(std::string_view form) const {
  return negators_.count(lowercase(form)) > 0;
}

bool LexiconBundle::is_adversative(std::string_view form) const {
  return adversatives_.count(lowercase(form)) > 0;
}

bool LexiconBundle::is_irrealis_marker(std::string_view form) const {
  return irrealis_.count(lowercase(form)) > 0;
}

std::optional<double> LexiconBundle::negator_alpha(std::string_view form) const {
  auto it = negators_.find(lowercase(form));
  if (it == negators_.end())
    return std::nullopt;
  return it->second ? *it->second : alpha_;
}

bool LexiconBundle::known_list(std::string_view name) {
  return name == "negators" || name == "intensifiers" || name == "adversatives" ||
         name == "irrealis";
}

bool LexiconBundle::list_nonempty(std::string_view name) const {
  if (name == "negators")
    return !negators_.empty();
  if (name == "intensifiers")
    return !intensifiers_.empty();
  if (name == "adversatives")
    return !adversatives_.empty();
  if (name == "irrealis")
    return !irrealis_.empty();
  return false;
}

bool LexiconBundle::list_contains(std::string_view name, std::string_view form) const {
  const std::string lf = lowercase(form);
  if (name == "negators")
    return negators_.count(lf) > 0;
  if (name == "intensifiers")
    return intensifiers_.count(lf) > 0;
  if (name == "adversatives")
    return adversatives_.count(lf) > 0;
  if (name == "irrealis")
    return irrealis_.count(lf) > 0;
  return false;
}

void LexiconBundle::save_canonical(std::ostream& out) const {
  using detail::format_roundtrip;
  out << kCanonicalMagic << '\n';
  out << "alpha\t" << format_roundtrip(alpha_) << '\n';
  for (const auto& [key, so] : exact_)
    out << "sent\t" << key.first << '\t' << (key.second.empty() ? "_" : key.second) << '\t'
        << format_roundtrip(so) << '\n';
  for (const auto& [prefix, bucket] : stems_by_prefix_) {
    // map order gives deterministic prefixes; sort each bucket by pos
    std::vector<const StemEntry*> entries;
    for (const StemEntry& s : bucket)
      entries.push_back(&s);
    std::sort(entries.begin(), entries.end(), [](const StemEntry* a, const StemEntry* b) {
      return (a->pos ? *a->pos : std::string()) < (b->pos ? *b->pos : std::string());
    });
    for (const StemEntry* s : entries)
      out << "sent\t" << prefix << "*\t" << (s->pos ? *s->pos : "_") << '\t'
          << format_roundtrip(s->so) << '\n';
  }
  for (const auto& [key, beta] : intensifiers_)
    out << "int\t" << key << '\t' << format_roundtrip(beta) << '\n';
  for (const auto& [key, override] : negators_)
    out << "neg\t" << key << '\t' << (override ? format_roundtrip(*override) : "_") << '\n';
  for (const std::string& key : adversatives_)
    out << "adv\t" << key << '\n';
  for (const std::string& key : irrealis_)
    out << "irr\t" << key << '\n';
  for (const auto& [key, so] : emoticons_)
    out << "emo\t" << key << '\t' << format_roundtrip(so) << '\n';
}

LexiconBundle LexiconBundle::load_canonical(std::istream& in, const std::string& source_name) {
  LexiconBundle bundle;
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) -> LexiconError {
    return LexiconError(source_name + ":" + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.empty() || line[0] == '#')
      continue;
    std::vector<std::string> f = split(line, '\t');
    const std::string& tag = f[0];
    if (tag == "alpha" && f.size() == 2) {
      bundle.set_alpha(parse_score(source_name, lineno, f[1], "alpha"));
    } else if (tag == "sent" && f.size() == 4) {
      SentimentEntry e;
      e.key = f[1];
      if (f[2] != "_")
        e.pos = f[2];
      e.so = parse_score(source_name, lineno, f[3], "score");
      bundle.add_sentiment(e);
    } else if (tag == "int" && f.size() == 3) {
      bundle.add_intensifier({f[1], parse_score(source_name, lineno, f[2], "beta")});
    } else if (tag == "neg" && (f.size() == 2 || f.size() == 3)) {
      std::optional<double> override;
      if (f.size() == 3 && f[2] != "_")
        override = parse_score(source_name, lineno, f[2], "alpha override");
      bundle.add_negator(f[1], override);
    } else if (tag == "adv" && f.size() == 2) {
      bundle.add_adversative(f[1]);
    } else if (tag == "irr" && f.size() == 2) {
      bundle.add_irrealis(f[1]);
    } else if (tag == "emo" && f.size() == 3) {
      bundle.add_emoticon(f[1], parse_score(source_name, lineno, f[2], "score"));
    } else {
      throw fail("unrecognized canonical lexicon line '" + line + "'");
    }
  }
  return bundle;
}

std::vector<SentimentEntry> load_socal_file(const std::string& path, std::string_view pos) {
  std::vector<SentimentEntry> entries;
  std::set<std::pair<std::string, std::string>> seen;
  const std::string pos_u = uppercase(pos);
  for_each_data_line(path, [&](int lineno, const std::string& line) {
    std::vector<std::string> f = split(line, '\t');
    if (f.size() < 2)
      throw LexiconError(path + ":" + std::to_string(lineno) +
                         ": expected 'word<TAB>score', got '" + line + "'");
    SentimentEntry e;
    e.key = lowercase(f[0]);
    e.pos = pos_u;
    e.so = parse_score(path, lineno, f[1], "score");
    if (!seen.insert({e.key, pos_u}).second)
      throw LexiconError(path + ":" + std::to_string(lineno) + ": duplicate entry for key '" +
                         e.key + "'");
    entries.push_back(std::move(e));
  });
  return entries;
}

std::vector<SentimentEntry> load_sentistrength_file(const std::string& path) {
  std::vector<SentimentEntry> entries;
  std::set<std::pair<std::string, std::string>> seen;
  for_each_data_line(path, [&](int lineno, const std::string& line) {
    std::vector<std::string> f = split(line, '\t');
    if (f.size() < 2)
      throw LexiconError(path + ":" + std::to_string(lineno) +
                         ": expected 'term<TAB>score', got '" + line + "'");
    SentimentEntry e;
    e.key = lowercase(f[0]);
    e.so = parse_score(path, lineno, f[1], "score");
    if (!seen.insert({e.key, std::string()}).second)
      throw LexiconError(path + ":" + std::to_string(lineno) + ": duplicate entry for key '" +
                         e.key + "'");
    entries.push_back(std::move(e));
  });
  return entries;
}

std::vector<SentimentEntry> load_sentiment_lexicon(const std::string& path,
                                                   SentimentFormat format) {
  if (format == SentimentFormat::SentiStrength)
    return load_sentistrength_file(path);
  const std::string stem = lowercase(std::filesystem::path(path).stem().string());
  // "adverb" is checked before "verb": the former contains the latter
  std::string_view pos;
  if (stem.find("adjective") != std::string::npos)
    pos = "ADJ";
  else if (stem.find("adverb") != std::string::npos)
    pos = "ADV";
  else if (stem.find("noun") != std::string::npos)
    pos = "NOUN";
  else if (stem.find("verb") != std::string::npos)
    pos = "VERB";
  else
    throw LexiconError("cannot infer PoS category from file name '" + path +
                       "' (expected adjectives/nouns/verbs/adverbs)");
  return load_socal_file(path, pos);
}

std::vector<IntensifierEntry> load_intensifiers(const std::string& path) {
  std::vector<IntensifierEntry> entries;
  std::set<std::string> seen;
  for_each_data_line(path, [&](int lineno, const std::string& line) {
    std::vector<std::string> f = split(line, '\t');
    if (f.size() < 2)
      throw LexiconError(path + ":" + std::to_string(lineno) +
                         ": expected 'word<TAB>beta', got '" + line + "'");
    IntensifierEntry e;
    e.key = lowercase(f[0]);
    e.beta = parse_score(path, lineno, f[1], "beta");
    if (!seen.insert(e.key).second)
      throw LexiconError(path + ":" + std::to_string(lineno) + ": duplicate intensifier '" +
                         e.key + "'");
    entries.push_back(std::move(e));
  });
  return entries;
}

namespace {

void load_word_list(const std::string& path, bool allow_alpha_override, LexiconBundle& bundle,
                    void (LexiconBundle::*add_plain)(std::string_view)) {
  for_each_data_line(path, [&](int lineno, const std::string& line) {
    std::vector<std::string> f = split(line, '\t');
    if (allow_alpha_override && f.size() >= 2) {
      bundle.add_negator(f[0], parse_score(path, lineno, f[1], "alpha override"));
    } else if (allow_alpha_override) {
      bundle.add_negator(f[0], std::nullopt);
    } else {
      (bundle.*add_plain)(f[0]);
    }
  });
}

void load_emoticons(const std::string& path, LexiconBundle& bundle) {
  for_each_data_line(path, [&](int lineno, const std::string& line) {
    std::vector<std::string> f = split(line, '\t');
    if (f.size() < 2)
      throw LexiconError(path + ":" + std::to_string(lineno) +
                         ": expected 'emoticon<TAB>score', got '" + line + "'");
    bundle.add_emoticon(f[0], parse_score(path, lineno, f[1], "score"));
  });
}

} // namespace

LexiconBundle load_lexicon_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw LexiconError("cannot open lexicon manifest: " + path);

  // a canonical bundle is accepted directly in place of a manifest
  std::string first;
  std::getline(in, first);
  if (!first.empty() && first.back() == '\r')
    first.pop_back();
  if (first == kCanonicalMagic)
    return LexiconBundle::load_canonical(in, path);

  const std::filesystem::path base = std::filesystem::path(path).parent_path();
  auto resolve = [&](const std::string& p) {
    std::filesystem::path fp(p);
    return fp.is_absolute() ? fp.string() : (base / fp).string();
  };

  std::map<std::string, std::string> kv;
  std::string line = first;
  int lineno = 1;
  bool pending = !first.empty();
  std::istream& rest = in;
  while (pending || std::getline(rest, line)) {
    if (!pending)
      ++lineno;
    pending = false;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    std::string t = trim(line);
    if (t.empty() || t[0] == '#')
      continue;
    size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw LexiconError(path + ":" + std::to_string(lineno) + ": expected key=value, got '" +
                         t + "'");
    kv[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }

  static const std::set<std::string> known = {
      "format",  "alpha",        "adjectives", "nouns",    "verbs",     "adverbs",
      "sentiment", "intensifiers", "negators",   "adversatives", "irrealis", "emoticons"};
  for (const auto& [k, v] : kv) {
    (void)v;
    if (!known.count(k))
      throw LexiconError(path + ": unknown manifest key '" + k + "'");
  }

  auto fmt_it = kv.find("format");
  if (fmt_it == kv.end())
    throw LexiconError(path + ": manifest is missing the 'format' key");
  SentimentFormat format;
  if (fmt_it->second == "socal")
    format = SentimentFormat::SoCal;
  else if (fmt_it->second == "sentistrength")
    format = SentimentFormat::SentiStrength;
  else
    throw LexiconError(path + ": unknown lexicon format '" + fmt_it->second +
                       "' (expected socal or sentistrength)");

  LexiconBundle bundle;
  if (auto it = kv.find("alpha"); it != kv.end()) {
    double a = 0.0;
    if (!parse_double(it->second, a))
      throw LexiconError(path + ": non-numeric alpha '" + it->second + "'");
    bundle.set_alpha(a);
  }

  static const std::pair<const char*, const char*> socal_files[] = {
      {"adjectives", "ADJ"}, {"nouns", "NOUN"}, {"verbs", "VERB"}, {"adverbs", "ADV"}};
  if (format == SentimentFormat::SoCal) {
    for (const auto& [key, pos] : socal_files) {
      if (auto it = kv.find(key); it != kv.end())
        for (const SentimentEntry& e : load_socal_file(resolve(it->second), pos))
          bundle.add_sentiment(e);
    }
    if (kv.count("sentiment"))
      throw LexiconError(path + ": 'sentiment' is not valid for format=socal "
                                "(use adjectives/nouns/verbs/adverbs)");
  } else {
    if (auto it = kv.find("sentiment"); it != kv.end())
      for (const SentimentEntry& e : load_sentistrength_file(resolve(it->second)))
        bundle.add_sentiment(e);
  }

  if (auto it = kv.find("intensifiers"); it != kv.end())
    for (const IntensifierEntry& e : load_intensifiers(resolve(it->second)))
      bundle.add_intensifier(e);
  if (auto it = kv.find("negators"); it != kv.end())
    load_word_list(resolve(it->second), true, bundle, nullptr);
  if (auto it = kv.find("adversatives"); it != kv.end())
    load_word_list(resolve(it->second), false, bundle, &LexiconBundle::add_adversative);
  if (auto it = kv.find("irrealis"); it != kv.end())
    load_word_list(resolve(it->second), false, bundle, &LexiconBundle::add_irrealis);
  if (auto it = kv.find("emoticons"); it != kv.end())
    load_emoticons(resolve(it->second), bundle);
  return bundle;
}

} // namespace depsent
