#include "depsent/engine.hpp"

#include <algorithm>
#include <sstream>

#include "depsent/error.hpp"
#include "util.hpp"

namespace depsent {

using detail::format_so;
using detail::lowercase;

std::string instance_tag(const OperationInstance& inst, const DepSentence& s) {
  return inst.spec->label + "_" + lowercase(s.token(inst.trigger).form) + "(" +
         std::to_string(inst.remaining) + "," + std::to_string(inst.spec->priority) + ")";
}

namespace {

// Heap "less": the top is the highest priority, then the earliest push.
bool heap_less(const OperationInstance& a, const OperationInstance& b) {
  if (a.spec->priority != b.spec->priority)
    return a.spec->priority < b.spec->priority;
  return a.seq > b.seq;
}

bool pops_before(const OperationInstance& a, const OperationInstance& b) {
  return heap_less(b, a);
}

} // namespace

void InstanceQueue::push(const OperationInstance& inst) {
  heap_.push_back(inst);
  std::push_heap(heap_.begin(), heap_.end(), heap_less);
}

OperationInstance InstanceQueue::pop() {
  std::pop_heap(heap_.begin(), heap_.end(), heap_less);
  OperationInstance top = heap_.back();
  heap_.pop_back();
  return top;
}

std::vector<OperationInstance> InstanceQueue::snapshot() const {
  std::vector<OperationInstance> items = heap_;
  std::sort(items.begin(), items.end(), pops_before);
  return items;
}

std::string_view to_string(Polarity p) {
  return p == Polarity::Positive ? "positive" : "negative";
}

SOState init_so(const DepSentence& s, const LexiconBundle& lex) {
  SOState so(static_cast<size_t>(s.size()) + 1, 0.0);
  for (const TaggedToken& tok : s.tokens())
    so[static_cast<size_t>(tok.index)] = lex.lookup_so(tok.form, tok.upos);
  return so;
}

namespace {

// Amount carried by a new instance. Weighting without a literal amount
// takes the trigger word's intensifier weight and yields nothing when the
// word has none; shift without a literal amount takes the negator's own
// alpha when the list carries one, else the bundle alpha.
std::optional<double> bind_amount(const OperationSpec& spec, const TaggedToken& token,
                                  const LexiconBundle& lex) {
  if (spec.transform.amount)
    return *spec.transform.amount;
  if (spec.transform.kind == TransformKind::Weighting)
    return lex.lookup_beta(token.form);
  std::optional<double> alpha = lex.negator_alpha(token.form);
  return alpha ? *alpha : lex.alpha();
}

void trace_enqueued(AnalysisTrace* trace, const OperationInstance& inst, const DepSentence& s,
                    bool to_apply, int node) {
  if (!trace)
    return;
  TraceEvent e;
  e.kind = TraceEventKind::InstanceEnqueued;
  e.node = node;
  e.op = instance_tag(inst, s);
  e.queue = to_apply ? "A" : "Q";
  trace->events.push_back(std::move(e));
}

} // namespace

void compute_node(int i, const std::vector<OperationSpec>& rules, const DepSentence& s,
                  SOState& so, std::vector<NodeQueues>& queues, const LexiconBundle& lex,
                  long& seq, AnalysisTrace* trace) {
  NodeQueues& here = queues[static_cast<size_t>(i)];

  if (trace) {
    TraceEvent e;
    e.kind = TraceEventKind::NodeVisited;
    e.node = i;
    e.word = (i == 0 ? "root" : lowercase(s.token(i).form)) + "_" + std::to_string(i);
    trace->events.push_back(std::move(e));
  }

  // operations triggered by this node's token
  if (i > 0) {
    const TaggedToken& tok = s.token(i);
    for (const OperationSpec& spec : rules) {
      if (!matches(spec.trigger, tok, lex))
        continue;
      std::optional<double> amount = bind_amount(spec, tok, lex);
      if (!amount)
        continue;
      OperationInstance inst{&spec, *amount, i, spec.delta, ++seq};
      bool to_apply = spec.delta == 0;
      (to_apply ? here.apply : here.forward).push(inst);
      trace_enqueued(trace, inst, s, to_apply, i);
    }
  }

  // operations ascending from the children
  for (int c : s.children_of(i)) {
    InstanceQueue& from = queues[static_cast<size_t>(c)].forward;
    while (!from.empty()) {
      OperationInstance inst = from.pop();
      --inst.remaining;
      inst.seq = ++seq;
      bool to_apply = inst.remaining == 0;
      (to_apply ? here.apply : here.forward).push(inst);
      trace_enqueued(trace, inst, s, to_apply, i);
    }
  }

  if (trace) {
    TraceEvent e;
    e.kind = TraceEventKind::QueueSnapshot;
    e.node = i;
    e.before = so[static_cast<size_t>(i)];
    for (const OperationInstance& inst : here.apply.snapshot())
      e.a_items.push_back(instance_tag(inst, s));
    for (const OperationInstance& inst : here.forward.snapshot())
      e.q_items.push_back(instance_tag(inst, s));
    trace->events.push_back(std::move(e));
  }

  // operations whose destination is this node, by priority
  while (!here.apply.empty()) {
    OperationInstance inst = here.apply.pop();
    ScopeChoice choice = resolve_scope(inst.spec->scopes, s, i, inst.trigger, so);
    if (choice.candidate < 0) {
      if (trace) {
        TraceEvent e;
        e.kind = TraceEventKind::InstanceExpired;
        e.op = instance_tag(inst, s);
        e.reason = "no scope candidate matched";
        trace->events.push_back(std::move(e));
      }
      continue;
    }
    TraceEvent e;
    if (trace) {
      e.kind = TraceEventKind::InstanceApplied;
      e.op = instance_tag(inst, s);
      e.scope = to_string(inst.spec->scopes[static_cast<size_t>(choice.candidate)]);
      e.affected = choice.nodes;
    }
    for (int j : choice.nodes) {
      double& sigma = so[static_cast<size_t>(j)];
      if (trace)
        e.so_before.push_back(sigma);
      sigma = apply_transform(inst.spec->transform.kind, inst.amount, sigma);
      if (trace)
        e.so_after.push_back(sigma);
    }
    if (trace)
      trace->events.push_back(std::move(e));
  }

  // join this node with its children
  double before = so[static_cast<size_t>(i)];
  TraceEvent join;
  join.kind = TraceEventKind::Join;
  join.node = i;
  join.before = before;
  for (int c : s.children_of(i)) {
    double contrib = so[static_cast<size_t>(c)];
    if (trace)
      join.contributions.push_back(contrib);
    so[static_cast<size_t>(i)] += contrib;
  }
  join.after = so[static_cast<size_t>(i)];
  if (trace)
    trace->events.push_back(std::move(join));
}

SentenceResult analyze_sentence(const DepSentence& s, const std::vector<OperationSpec>& rules,
                                const LexiconBundle& lex, TraceMode mode) {
  SOState so = init_so(s, lex);
  std::vector<NodeQueues> queues(static_cast<size_t>(s.size()) + 1);
  long seq = 0;
  SentenceResult result;
  AnalysisTrace* trace = mode == TraceMode::Full ? &result.trace : nullptr;

  for (int i : postorder(s))
    compute_node(i, rules, s, so, queues, lex, seq, trace);

  while (!queues[0].forward.empty()) {
    OperationInstance inst = queues[0].forward.pop();
    if (trace) {
      TraceEvent e;
      e.kind = TraceEventKind::InstanceExpired;
      e.op = instance_tag(inst, s);
      e.reason = "ascended past root";
      trace->events.push_back(std::move(e));
    }
  }

  result.so = so[0];
  return result;
}

DocumentResult analyze_document(const std::vector<DepSentence>& sentences,
                                const std::vector<OperationSpec>& rules,
                                const LexiconBundle& lex, TraceMode mode) {
  if (sentences.empty())
    throw CorpusError("document contains no sentences");
  DocumentResult doc;
  for (const DepSentence& s : sentences) {
    doc.sentences.push_back(analyze_sentence(s, rules, lex, mode));
    doc.so += doc.sentences.back().so;
  }
  doc.polarity = doc.so > 0.0 ? Polarity::Positive : Polarity::Negative;
  return doc;
}

namespace {

std::string bracket_list(const std::vector<std::string>& items) {
  if (items.empty())
    return "-";
  std::string out = "[";
  for (size_t i = 0; i < items.size(); ++i) {
    if (i)
      out += ", ";
    out += items[i];
  }
  out += "]";
  return out;
}

// Column width in terminal cells, not bytes (headers carry multibyte
// characters).
size_t display_width(const std::string& s) {
  size_t w = 0;
  for (unsigned char c : s)
    if ((c & 0xC0) != 0x80)
      ++w;
  return w;
}

void append_padded(std::string& out, const std::string& cell, size_t width, bool last) {
  out += cell;
  if (!last)
    out.append(width - display_width(cell) + 2, ' ');
}

} // namespace

std::string render_trace_table(const AnalysisTrace& trace) {
  // last two headers: sigma, sigma<-A
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"Step", "Word_index", "A", "Q", "\xcf\x83", "\xcf\x83\xe2\x86\x90""A"});
  for (const TraceEvent& e : trace.events) {
    switch (e.kind) {
    case TraceEventKind::NodeVisited:
      rows.push_back({std::to_string(rows.size()), e.word, "-", "-", "", ""});
      break;
    case TraceEventKind::QueueSnapshot:
      rows.back()[2] = bracket_list(e.a_items);
      rows.back()[3] = bracket_list(e.q_items);
      rows.back()[4] = format_so(e.before);
      break;
    case TraceEventKind::Join:
      rows.back()[5] = format_so(e.after);
      break;
    default:
      break;
    }
  }

  std::vector<size_t> widths(rows[0].size(), 0);
  for (const auto& row : rows)
    for (size_t c = 0; c < row.size(); ++c)
      widths[c] = std::max(widths[c], display_width(row[c]));

  std::string out;
  for (const auto& row : rows) {
    std::string line;
    for (size_t c = 0; c < row.size(); ++c)
      append_padded(line, row[c], widths[c], c + 1 == row.size());
    out += line;
    out += '\n';
  }
  return out;
}

std::string render_trace_events(const AnalysisTrace& trace) {
  std::string out;
  std::string at;
  for (const TraceEvent& e : trace.events) {
    switch (e.kind) {
    case TraceEventKind::NodeVisited:
      at = e.word;
      break;
    case TraceEventKind::InstanceApplied: {
      out += at + ": " + e.op + " via " + e.scope + ":";
      for (size_t k = 0; k < e.affected.size(); ++k)
        out += " node " + std::to_string(e.affected[k]) + " " + format_so(e.so_before[k]) +
               " -> " + format_so(e.so_after[k]);
      out += '\n';
      break;
    }
    case TraceEventKind::InstanceExpired:
      out += at + ": " + e.op + " expired (" + e.reason + ")\n";
      break;
    default:
      break;
    }
  }
  return out;
}

std::string render_record(const std::string& id, const DocumentResult& doc) {
  std::string out = id;
  out += '\t';
  out += format_so(doc.so);
  out += '\t';
  out += to_string(doc.polarity);
  out += '\t';
  for (size_t i = 0; i < doc.sentences.size(); ++i) {
    if (i)
      out += ',';
    out += format_so(doc.sentences[i].so);
  }
  return out;
}

} // namespace depsent
