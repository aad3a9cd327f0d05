#include "depsent/ruleset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "depsent/error.hpp"
#include "util.hpp"

namespace depsent {

namespace pt = boost::property_tree;

using detail::format_roundtrip;
using detail::lowercase;
using detail::parse_double;
using detail::parse_int;
using detail::split;
using detail::trim;
using detail::uppercase;

FormPattern::FormPattern(std::string text) : text_(std::move(text)) {
  try {
    re_ = std::make_shared<const std::regex>(text_,
                                             std::regex::ECMAScript | std::regex::icase);
  } catch (const std::regex_error& e) {
    throw RuleError("invalid form pattern '" + text_ + "': " + e.what());
  }
}

bool FormPattern::matches(std::string_view form) const {
  return std::regex_match(form.begin(), form.end(), *re_);
}

ScopeCandidate ScopeCandidate::branch(std::string_view deprel) {
  return {Kind::LmBranch, detail::lowercase(deprel), 0};
}

std::string to_string(const ScopeCandidate& c) {
  switch (c.kind) {
  case ScopeCandidate::Kind::Dest:
    return "dest";
  case ScopeCandidate::Kind::LmBranch:
    return "branch:" + c.label;
  case ScopeCandidate::Kind::RightChildren:
    return "rc:" + std::to_string(c.count);
  case ScopeCandidate::Kind::LeftChildren:
    return "lc:" + std::to_string(c.count);
  case ScopeCandidate::Kind::SubjRight:
    return "subjr";
  case ScopeCandidate::Kind::SubjLeft:
    return "subjl";
  }
  return "dest";
}

ScopeCandidate parse_scope_candidate(std::string_view text) {
  const std::string t = trim(text);
  if (t == "dest")
    return ScopeCandidate::dest();
  if (t == "subjr")
    return ScopeCandidate::subjr();
  if (t == "subjl")
    return ScopeCandidate::subjl();
  size_t colon = t.find(':');
  if (colon != std::string::npos) {
    const std::string kind = t.substr(0, colon);
    const std::string arg = trim(t.substr(colon + 1));
    if (kind == "branch") {
      if (arg.empty())
        throw RuleError("scope candidate 'branch:' needs a dependency type");
      return ScopeCandidate::branch(arg);
    }
    if (kind == "rc" || kind == "lc") {
      int n = 0;
      if (!parse_int(arg, n) || n < 1)
        throw RuleError("scope candidate '" + t + "' needs a positive count");
      return kind == "rc" ? ScopeCandidate::rc(n) : ScopeCandidate::lc(n);
    }
  }
  throw RuleError("unknown scope kind '" + t + "'");
}

bool matches(const TriggerPredicate& trigger, const TaggedToken& token,
             const LexiconBundle& lex) {
  const std::string form = lowercase(token.form);
  if (trigger.forms_list) {
    if (!lex.list_contains(*trigger.forms_list, form))
      return false;
  } else if (!trigger.form_patterns.empty()) {
    bool hit = false;
    for (const FormPattern& p : trigger.form_patterns) {
      if (p.matches(form)) {
        hit = true;
        break;
      }
    }
    if (!hit)
      return false;
  }
  if (!trigger.postags.empty()) {
    const std::string upos = uppercase(token.upos);
    if (std::find(trigger.postags.begin(), trigger.postags.end(), upos) == trigger.postags.end())
      return false;
  }
  if (!trigger.deprels.empty()) {
    const std::string deprel = lowercase(token.deprel);
    if (std::find(trigger.deprels.begin(), trigger.deprels.end(), deprel) ==
        trigger.deprels.end())
      return false;
  }
  return true;
}

double apply_transform(TransformKind kind, double amount, double so) {
  if (kind == TransformKind::Weighting)
    return so * (1.0 + amount);
  if (so > 0.0)
    return so - amount;
  if (so < 0.0)
    return so + amount;
  return 0.0;
}

NodeSet scope_nodes(const ScopeCandidate& c, const DepSentence& s, int dest, int trigger,
                    const std::vector<double>& so) {
  switch (c.kind) {
  case ScopeCandidate::Kind::Dest:
    return {dest};
  case ScopeCandidate::Kind::LmBranch:
    return lm_branch(s, dest, c.label);
  case ScopeCandidate::Kind::RightChildren: {
    NodeSet out;
    for (int j : s.children_of(dest)) {
      if (j <= trigger)
        continue;
      out.push_back(j);
      if (static_cast<int>(out.size()) == c.count)
        break;
    }
    return out;
  }
  case ScopeCandidate::Kind::LeftChildren: {
    NodeSet out;
    for (int j : s.children_of(dest))
      if (j < trigger)
        out.push_back(j);
    if (static_cast<int>(out.size()) > c.count)
      out.erase(out.begin(), out.end() - c.count);
    return out;
  }
  case ScopeCandidate::Kind::SubjRight: {
    for (int j : s.children_of(dest))
      if (j > trigger && so[static_cast<size_t>(j)] != 0.0)
        return {j};
    return {};
  }
  case ScopeCandidate::Kind::SubjLeft: {
    NodeSet out;
    for (int j : s.children_of(dest))
      if (j < trigger && so[static_cast<size_t>(j)] != 0.0)
        out.assign(1, j); // children ascend, so the last hit is the maximum
    return out;
  }
  }
  return {};
}

ScopeChoice resolve_scope(const std::vector<ScopeCandidate>& scopes, const DepSentence& s,
                          int dest, int trigger, const std::vector<double>& so) {
  for (size_t k = 0; k < scopes.size(); ++k) {
    NodeSet nodes = scope_nodes(scopes[k], s, dest, trigger, so);
    for (int j : nodes)
      if (so[static_cast<size_t>(j)] != 0.0)
        return {static_cast<int>(k), std::move(nodes)};
  }
  return {};
}

namespace {

void check_attrs(const pt::ptree& node, const std::string& path,
                 std::initializer_list<const char*> allowed) {
  auto attrs = node.get_child_optional("<xmlattr>");
  if (!attrs)
    return;
  for (const auto& [key, value] : *attrs) {
    (void)value;
    bool ok = false;
    for (const char* a : allowed)
      if (key == a)
        ok = true;
    if (!ok)
      throw RuleError(path + ": unknown attribute '" + key + "'");
  }
}

const pt::ptree& required_child(const pt::ptree& op, const std::string& path,
                                const std::string& key) {
  size_t n = op.count(key);
  if (n == 0)
    throw RuleError(path + ": missing child <" + key + ">");
  if (n > 1)
    throw RuleError(path + ": duplicate child <" + key + ">");
  return op.get_child(key);
}

std::vector<std::string> parse_csv_or_star(const pt::ptree& node, const std::string& path) {
  const std::string text = trim(node.get_value<std::string>());
  if (text.empty())
    throw RuleError(path + ": empty element (use '*' for a wildcard)");
  if (text == "*")
    return {};
  std::vector<std::string> out;
  for (const std::string& piece : split(text, ',')) {
    std::string p = trim(piece);
    if (p.empty())
      throw RuleError(path + ": empty list entry in '" + text + "'");
    out.push_back(std::move(p));
  }
  return out;
}

OperationSpec parse_operation(const pt::ptree& op, const std::string& path,
                              const LexiconBundle* lex) {
  for (const auto& [key, child] : op) {
    (void)child;
    if (key != "<xmlattr>" && key != "forms" && key != "postags" && key != "dependency" &&
        key != "rule" && key != "levelsup" && key != "priority" && key != "scope")
      throw RuleError(path + ": unknown element <" + key + ">");
  }
  check_attrs(op, path, {"name", "label"});

  OperationSpec spec;
  spec.name = op.get<std::string>("<xmlattr>.name", "");
  if (spec.name.empty())
    throw RuleError(path + ": missing name attribute");
  spec.label = op.get<std::string>("<xmlattr>.label", spec.name);

  const pt::ptree& forms = required_child(op, path, "forms");
  check_attrs(forms, path + ".forms", {"list"});
  if (auto list = forms.get_optional<std::string>("<xmlattr>.list")) {
    if (!LexiconBundle::known_list(*list))
      throw RuleError(path + ".forms: unknown lexicon list '" + *list + "'");
    if (!trim(forms.get_value<std::string>()).empty())
      throw RuleError(path + ".forms: give either a list attribute or pattern text, not both");
    if (lex && !lex->list_nonempty(*list))
      throw RuleError(path + ".forms: the lexicon provides no '" + *list + "' entries");
    spec.trigger.forms_list = *list;
  } else {
    std::vector<std::string> patterns = parse_csv_or_star(forms, path + ".forms");
    for (const std::string& p : patterns) {
      try {
        spec.trigger.form_patterns.emplace_back(p);
      } catch (const RuleError& e) {
        throw RuleError(path + ".forms: " + e.what());
      }
    }
  }

  const pt::ptree& postags = required_child(op, path, "postags");
  check_attrs(postags, path + ".postags", {});
  for (const std::string& tag : parse_csv_or_star(postags, path + ".postags"))
    spec.trigger.postags.push_back(uppercase(tag));

  const pt::ptree& deps = required_child(op, path, "dependency");
  check_attrs(deps, path + ".dependency", {});
  for (const std::string& dep : parse_csv_or_star(deps, path + ".dependency"))
    spec.trigger.deprels.push_back(lowercase(dep));

  if (spec.trigger.is_wildcard())
    throw RuleError(path + ": trigger matches every token "
                           "(constrain forms, postags or dependency)");

  const pt::ptree& rule = required_child(op, path, "rule");
  check_attrs(rule, path + ".rule", {"type", "amount"});
  const std::string type = rule.get<std::string>("<xmlattr>.type", "");
  if (type == "shift")
    spec.transform.kind = TransformKind::Shift;
  else if (type == "weighting")
    spec.transform.kind = TransformKind::Weighting;
  else
    throw RuleError(path + ".rule: unknown type '" + type + "' (expected shift or weighting)");
  const std::string amount = rule.get<std::string>("<xmlattr>.amount", "");
  if (amount.empty())
    throw RuleError(path + ".rule: missing amount attribute");
  if (amount != "lexicon") {
    double v = 0.0;
    if (!parse_double(amount, v) || !std::isfinite(v))
      throw RuleError(path + ".rule: amount must be a finite number or 'lexicon', got '" +
                      amount + "'");
    spec.transform.amount = v;
  }

  const std::string levelsup = trim(required_child(op, path, "levelsup").get_value<std::string>());
  if (!parse_int(levelsup, spec.delta) || spec.delta < 0)
    throw RuleError(path + ".levelsup: expected a non-negative integer, got '" + levelsup + "'");

  const std::string priority = trim(required_child(op, path, "priority").get_value<std::string>());
  if (!parse_int(priority, spec.priority))
    throw RuleError(path + ".priority: expected an integer, got '" + priority + "'");

  const pt::ptree& scope = required_child(op, path, "scope");
  check_attrs(scope, path + ".scope", {});
  for (const std::string& cand : parse_csv_or_star(scope, path + ".scope")) {
    try {
      spec.scopes.push_back(parse_scope_candidate(cand));
    } catch (const RuleError& e) {
      throw RuleError(path + ".scope: " + e.what());
    }
  }
  if (spec.scopes.empty())
    throw RuleError(path + ".scope: at least one scope candidate is required");
  return spec;
}

std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
    case '&':
      out += "&amp;";
      break;
    case '<':
      out += "&lt;";
      break;
    case '>':
      out += "&gt;";
      break;
    case '"':
      out += "&quot;";
      break;
    case '\'':
      out += "&apos;";
      break;
    default:
      out += c;
    }
  }
  return out;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i)
      out += ',';
    out += parts[i];
  }
  return out;
}

} // namespace

std::vector<OperationSpec> parse_rules_xml(std::istream& in, const std::string& source_name,
                                           const LexiconBundle* lex) {
  pt::ptree tree;
  try {
    pt::read_xml(in, tree, pt::xml_parser::trim_whitespace | pt::xml_parser::no_comments);
  } catch (const pt::xml_parser_error& e) {
    throw RuleError(source_name + ": " + e.what());
  }
  auto ops = tree.get_child_optional("operations");
  if (!ops)
    throw RuleError(source_name + ": missing root element <operations>");

  std::vector<OperationSpec> specs;
  int idx = 0;
  for (const auto& [key, node] : *ops) {
    if (key == "<xmlattr>")
      continue;
    if (key != "operation")
      throw RuleError(source_name + ": operations: unknown element <" + key + ">");
    ++idx;
    const std::string path = "operations.operation[" + std::to_string(idx) + "]";
    try {
      specs.push_back(parse_operation(node, path, lex));
    } catch (const RuleError& e) {
      throw RuleError(source_name + ": " + e.what());
    }
  }
  return specs;
}

std::vector<OperationSpec> load_rules_xml(const std::string& path, const LexiconBundle* lex) {
  std::ifstream in(path);
  if (!in)
    throw RuleError("cannot open rule file: " + path);
  return parse_rules_xml(in, path, lex);
}

void write_rules_xml(std::ostream& out, const std::vector<OperationSpec>& specs) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<operations>\n";
  for (const OperationSpec& spec : specs) {
    out << "  <operation name=\"" << xml_escape(spec.name) << "\" label=\""
        << xml_escape(spec.label) << "\">\n";
    if (spec.trigger.forms_list) {
      out << "    <forms list=\"" << xml_escape(*spec.trigger.forms_list) << "\"/>\n";
    } else {
      std::vector<std::string> texts;
      for (const FormPattern& p : spec.trigger.form_patterns) {
        if (p.text().find(',') != std::string::npos)
          throw RuleError("form pattern '" + p.text() +
                          "' contains a comma and cannot be serialized");
        texts.push_back(p.text());
      }
      out << "    <forms>" << xml_escape(texts.empty() ? "*" : join(texts)) << "</forms>\n";
    }
    out << "    <postags>"
        << xml_escape(spec.trigger.postags.empty() ? "*" : join(spec.trigger.postags))
        << "</postags>\n";
    out << "    <dependency>"
        << xml_escape(spec.trigger.deprels.empty() ? "*" : join(spec.trigger.deprels))
        << "</dependency>\n";
    out << "    <rule type=\""
        << (spec.transform.kind == TransformKind::Shift ? "shift" : "weighting") << "\" amount=\""
        << (spec.transform.amount ? format_roundtrip(*spec.transform.amount) : "lexicon")
        << "\"/>\n";
    out << "    <levelsup>" << spec.delta << "</levelsup>\n";
    out << "    <priority>" << spec.priority << "</priority>\n";
    std::vector<std::string> cands;
    for (const ScopeCandidate& c : spec.scopes)
      cands.push_back(to_string(c));
    out << "    <scope>" << xml_escape(join(cands)) << "</scope>\n";
    out << "  </operation>\n";
  }
  out << "</operations>\n";
}

std::string rules_to_xml(const std::vector<OperationSpec>& specs) {
  std::ostringstream out;
  write_rules_xml(out, specs);
  return out.str();
}

namespace {

std::vector<OperationSpec> builtin_specs() {
  std::vector<OperationSpec> out;
  {
    OperationSpec op;
    op.name = "intensification";
    op.label = "I";
    op.transform = {TransformKind::Weighting, std::nullopt};
    op.trigger.forms_list = "intensifiers";
    op.trigger.postags = {"ADV", "ADJ"};
    op.trigger.deprels = {"advmod", "amod", "nmod"};
    op.delta = 1;
    op.priority = 3;
    op.scopes = {ScopeCandidate::dest(), ScopeCandidate::branch("acomp")};
    out.push_back(std::move(op));
  }
  {
    OperationSpec op;
    op.name = "but";
    op.label = "I";
    op.transform = {TransformKind::Weighting, -0.25};
    op.trigger.forms_list = "adversatives";
    op.trigger.postags = {"CONJ"};
    op.trigger.deprels = {"cc"};
    op.delta = 1;
    op.priority = 1;
    op.scopes = {ScopeCandidate::subjl()};
    out.push_back(std::move(op));
  }
  {
    OperationSpec op;
    op.name = "negation";
    op.label = "N";
    op.transform = {TransformKind::Shift, std::nullopt};
    op.trigger.forms_list = "negators";
    op.trigger.deprels = {"neg"};
    op.delta = 1;
    op.priority = 2;
    op.scopes = {ScopeCandidate::dest(), ScopeCandidate::branch("attr"),
                 ScopeCandidate::branch("acomp"), ScopeCandidate::subjr()};
    out.push_back(std::move(op));
  }
  {
    OperationSpec op;
    op.name = "irrealis";
    op.label = "IR";
    op.transform = {TransformKind::Weighting, -1.0};
    op.trigger.forms_list = "irrealis";
    op.trigger.deprels = {"mark"};
    op.delta = 2;
    op.priority = 3;
    op.scopes = {ScopeCandidate::dest(), ScopeCandidate::subjr()};
    out.push_back(std::move(op));
  }
  return out;
}

} // namespace

std::vector<OperationSpec> builtin_universal_rules(const LexiconBundle& lex) {
  for (const char* list : {"intensifiers", "adversatives", "negators", "irrealis"})
    if (!lex.list_nonempty(list))
      throw RuleError(std::string("built-in rule pack needs a non-empty '") + list +
                      "' word list");
  return builtin_specs();
}

std::string builtin_rules_xml() { return rules_to_xml(builtin_specs()); }

std::vector<OperationSpec> filter_rules_by_name(const std::vector<OperationSpec>& specs,
                                                const std::vector<std::string>& names) {
  for (const std::string& name : names) {
    bool known = false;
    for (const OperationSpec& spec : specs)
      if (spec.name == name)
        known = true;
    if (!known) {
      std::string valid;
      for (const OperationSpec& spec : specs) {
        if (!valid.empty())
          valid += ", ";
        valid += spec.name;
      }
      throw RuleError("unknown rule name '" + name + "' (loaded rules: " + valid + ")");
    }
  }
  std::vector<OperationSpec> out;
  for (const OperationSpec& spec : specs)
    if (std::find(names.begin(), names.end(), spec.name) != names.end())
      out.push_back(spec);
  return out;
}

} // namespace depsent
