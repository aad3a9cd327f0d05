#ifndef DEPSENT_ENGINE_HPP
#define DEPSENT_ENGINE_HPP

#include <string>
#include <string_view>
#include <vector>

#include "depsent/deptree.hpp"
#include "depsent/lexicon.hpp"
#include "depsent/ruleset.hpp"

namespace depsent {

/// Per-node semantic orientations for one sentence, indexed 0..n.
using SOState = std::vector<double>;

/// A triggered operation traveling up the tree. The transform amount is
/// bound at trigger time; remaining counts down from the spec's delta; seq
/// is assigned afresh on every queue push and breaks priority ties FIFO.
struct OperationInstance {
  const OperationSpec* spec = nullptr;
  double amount = 0.0;
  int trigger = 0;
  int remaining = 0;
  long seq = 0;
};

/// Rendering used in traces and queue listings: label_form(remaining,priority).
std::string instance_tag(const OperationInstance& inst, const DepSentence& s);

/// Priority queue over instances: higher priority pops first, equal
/// priorities pop in push order.
class InstanceQueue {
public:
  void push(const OperationInstance& inst);
  OperationInstance pop();
  bool empty() const { return heap_.empty(); }
  size_t size() const { return heap_.size(); }

  /// Contents in pop order, without disturbing the queue.
  std::vector<OperationInstance> snapshot() const;

private:
  std::vector<OperationInstance> heap_;
};

/// The two queues the traversal maintains per node: apply holds instances
/// whose destination is this node, forward holds instances still
/// ascending.
struct NodeQueues {
  InstanceQueue apply;
  InstanceQueue forward;
};

enum class TraceEventKind {
  NodeVisited,
  InstanceEnqueued,
  QueueSnapshot,
  InstanceApplied,
  InstanceExpired,
  Join
};

/// One step of an analysis; which fields are meaningful depends on kind.
struct TraceEvent {
  TraceEventKind kind = TraceEventKind::NodeVisited;
  int node = -1;                     // NodeVisited / QueueSnapshot / Join
  std::string word;                  // NodeVisited: "form_index"
  std::string op;                    // instance tag
  std::string queue;                 // InstanceEnqueued: "A" or "Q"
  std::string scope;                 // InstanceApplied: chosen candidate
  NodeSet affected;                  // InstanceApplied
  std::vector<double> so_before;     // InstanceApplied, per affected node
  std::vector<double> so_after;      // InstanceApplied, per affected node
  std::string reason;                // InstanceExpired
  double before = 0.0;               // Join: sigma at node before joining;
                                     // QueueSnapshot: sigma when queues settled
  double after = 0.0;                // Join
  std::vector<double> contributions; // Join: child sigmas in child order
  std::vector<std::string> a_items;  // QueueSnapshot, pop order
  std::vector<std::string> q_items;  // QueueSnapshot, pop order
};

/// Append-only event list; replays one sentence analysis deterministically.
struct AnalysisTrace {
  std::vector<TraceEvent> events;
};

enum class TraceMode { Off, Full };

struct SentenceResult {
  double so = 0.0;
  AnalysisTrace trace;
};

enum class Polarity { Positive, Negative };

std::string_view to_string(Polarity p);

struct DocumentResult {
  std::vector<SentenceResult> sentences;
  double so = 0.0;
  Polarity polarity = Polarity::Negative;
};

/// sigma_i = lookup_so(form_i, upos_i) for words, sigma_0 = 0.
SOState init_so(const DepSentence& s, const LexiconBundle& lex);

/// One node of the traversal: enqueue operations triggered here, pull up
/// the children's forward queues, drain the apply queue, join child
/// sigmas. Children of i must already be computed. seq is the sentence-wide
/// push counter; trace may be null.
void compute_node(int i, const std::vector<OperationSpec>& rules, const DepSentence& s,
                  SOState& so, std::vector<NodeQueues>& queues, const LexiconBundle& lex,
                  long& seq, AnalysisTrace* trace);

/// Full postorder run over the sentence; the result SO is sigma_0.
/// Instances still ascending above node 0 expire.
SentenceResult analyze_sentence(const DepSentence& s, const std::vector<OperationSpec>& rules,
                                const LexiconBundle& lex, TraceMode mode = TraceMode::Off);

/// Document SO = sum of sentence SOs; positive iff the sum is > 0 (ties
/// negative). Throws CorpusError on an empty document.
DocumentResult analyze_document(const std::vector<DepSentence>& sentences,
                                const std::vector<OperationSpec>& rules,
                                const LexiconBundle& lex, TraceMode mode = TraceMode::Off);

/// State-table view of a trace: one row per visited node with the apply
/// and forward queue contents and the sigma update.
std::string render_trace_table(const AnalysisTrace& trace);

/// One line per application or expiry, in analysis order.
std::string render_trace_events(const AnalysisTrace& trace);

/// One analyze record: id, document SO, polarity, per-sentence SOs.
std::string render_record(const std::string& id, const DocumentResult& doc);

} // namespace depsent

#endif
