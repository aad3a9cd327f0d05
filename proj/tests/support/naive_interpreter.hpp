#ifndef DEPSENT_TESTS_NAIVE_INTERPRETER_HPP
#define DEPSENT_TESTS_NAIVE_INTERPRETER_HPP

// A literal, unoptimized transcription of the node-processing algorithm,
// kept deliberately separate from the engine: plain lists instead of
// heaps, recursion instead of an explicit postorder, and its own scope
// selection code. Used as the differential oracle.

#include <optional>
#include <vector>

#include "depsent/deptree.hpp"
#include "depsent/lexicon.hpp"
#include "depsent/ruleset.hpp"

namespace naive {

struct Inst {
  const depsent::OperationSpec* spec = nullptr;
  double amount = 0.0;
  int trigger = 0;
  int remaining = 0;
  long seq = 0;
};

struct State {
  std::vector<double> so;
  std::vector<std::vector<Inst>> apply;
  std::vector<std::vector<Inst>> forward;
  long seq = 0;
};

// Position of the instance that leaves the list next: highest priority,
// and among equal priorities the one pushed first.
inline std::size_t next_out(const std::vector<Inst>& list) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < list.size(); ++k) {
    int bp = list[best].spec->priority;
    int kp = list[k].spec->priority;
    if (kp > bp || (kp == bp && list[k].seq < list[best].seq))
      best = k;
  }
  return best;
}

inline Inst take_next(std::vector<Inst>& list) {
  std::size_t k = next_out(list);
  Inst out = list[k];
  list.erase(list.begin() + static_cast<long>(k));
  return out;
}

inline std::optional<double> instance_amount(const depsent::OperationSpec& spec,
                                             const depsent::TaggedToken& token,
                                             const depsent::LexiconBundle& lex) {
  if (spec.transform.amount.has_value())
    return spec.transform.amount;
  if (spec.transform.kind == depsent::TransformKind::Weighting)
    return lex.lookup_beta(token.form);
  std::optional<double> alpha = lex.negator_alpha(token.form);
  if (alpha.has_value())
    return alpha;
  return lex.alpha();
}

// One candidate's node selection, spelled out per kind.
inline std::vector<int> select(const depsent::ScopeCandidate& c, const depsent::DepSentence& s,
                               int dest, int trigger, const std::vector<double>& so) {
  using Kind = depsent::ScopeCandidate::Kind;
  std::vector<int> out;
  if (c.kind == Kind::Dest) {
    out.push_back(dest);
  } else if (c.kind == Kind::LmBranch) {
    int found = -1;
    for (const depsent::TaggedToken& t : s.tokens())
      if (t.head == dest && t.deprel == c.label && (found < 0 || t.index < found))
        found = t.index;
    if (found >= 0)
      out.push_back(found);
  } else if (c.kind == Kind::RightChildren) {
    for (int j = trigger + 1; j <= s.size(); ++j)
      if (s.token(j).head == dest && static_cast<int>(out.size()) < c.count)
        out.push_back(j);
  } else if (c.kind == Kind::LeftChildren) {
    std::vector<int> all;
    for (int j = 1; j < trigger; ++j)
      if (s.token(j).head == dest)
        all.push_back(j);
    std::size_t skip = all.size() > static_cast<std::size_t>(c.count)
                           ? all.size() - static_cast<std::size_t>(c.count)
                           : 0;
    for (std::size_t k = skip; k < all.size(); ++k)
      out.push_back(all[k]);
  } else if (c.kind == Kind::SubjRight) {
    for (int j = trigger + 1; j <= s.size(); ++j)
      if (s.token(j).head == dest && so[static_cast<std::size_t>(j)] != 0.0) {
        out.push_back(j);
        break;
      }
  } else if (c.kind == Kind::SubjLeft) {
    for (int j = trigger - 1; j >= 1; --j)
      if (s.token(j).head == dest && so[static_cast<std::size_t>(j)] != 0.0) {
        out.push_back(j);
        break;
      }
  }
  return out;
}

inline void run_instance(const Inst& inst, int dest, const depsent::DepSentence& s, State& st) {
  const std::vector<depsent::ScopeCandidate>& scopes = inst.spec->scopes;
  for (const depsent::ScopeCandidate& c : scopes) {
    std::vector<int> nodes = select(c, s, dest, inst.trigger, st.so);
    bool subjective = false;
    for (int j : nodes)
      if (st.so[static_cast<std::size_t>(j)] != 0.0)
        subjective = true;
    if (!subjective)
      continue;
    for (int j : nodes) {
      double& sigma = st.so[static_cast<std::size_t>(j)];
      if (inst.spec->transform.kind == depsent::TransformKind::Weighting) {
        sigma = sigma * (1.0 + inst.amount);
      } else if (sigma > 0.0) {
        sigma = sigma - inst.amount;
      } else if (sigma < 0.0) {
        sigma = sigma + inst.amount;
      } else {
        sigma = 0.0;
      }
    }
    return; // the first matching candidate consumes the operation
  }
}

inline void visit(int i, const std::vector<depsent::OperationSpec>& rules,
                  const depsent::DepSentence& s, State& st,
                  const depsent::LexiconBundle& lex) {
  for (int c : depsent::children(s, i))
    visit(c, rules, s, st, lex);

  std::vector<Inst>& A = st.apply[static_cast<std::size_t>(i)];
  std::vector<Inst>& Q = st.forward[static_cast<std::size_t>(i)];

  // step 1: operations this node's token triggers
  if (i > 0) {
    const depsent::TaggedToken& tok = s.token(i);
    for (const depsent::OperationSpec& spec : rules) {
      if (!depsent::matches(spec.trigger, tok, lex))
        continue;
      std::optional<double> amount = instance_amount(spec, tok, lex);
      if (!amount.has_value())
        continue;
      Inst inst;
      inst.spec = &spec;
      inst.amount = *amount;
      inst.trigger = i;
      inst.remaining = spec.delta;
      inst.seq = ++st.seq;
      if (spec.delta > 0)
        Q.push_back(inst);
      else
        A.push_back(inst);
    }
  }

  // step 2: operations ascending from the children
  for (int c : depsent::children(s, i)) {
    std::vector<Inst>& from = st.forward[static_cast<std::size_t>(c)];
    while (!from.empty()) {
      Inst inst = take_next(from);
      inst.remaining = inst.remaining - 1;
      inst.seq = ++st.seq;
      if (inst.remaining == 0)
        A.push_back(inst);
      else
        Q.push_back(inst);
    }
  }

  // step 3: operations whose destination is this node
  while (!A.empty()) {
    Inst inst = take_next(A);
    run_instance(inst, i, s, st);
  }

  // step 4: join
  for (int c : depsent::children(s, i))
    st.so[static_cast<std::size_t>(i)] += st.so[static_cast<std::size_t>(c)];
}

inline double sentence_so(const depsent::DepSentence& s,
                          const std::vector<depsent::OperationSpec>& rules,
                          const depsent::LexiconBundle& lex) {
  State st;
  st.so.assign(static_cast<std::size_t>(s.size()) + 1, 0.0);
  for (const depsent::TaggedToken& t : s.tokens())
    st.so[static_cast<std::size_t>(t.index)] = lex.lookup_so(t.form, t.upos);
  st.apply.resize(st.so.size());
  st.forward.resize(st.so.size());
  visit(0, rules, s, st, lex);
  return st.so[0];
}

} // namespace naive

#endif
