#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "depsent/deptree.hpp"
#include "depsent/error.hpp"
#include "support/random_cases.hpp"

using namespace depsent;

namespace {

const std::string kDataDir = DEPSENT_TEST_DATA_DIR;

DepSentence running_example() {
  std::vector<DepSentence> sents = parse_conll_file(kDataDir + "/running_example.conll");
  REQUIRE(sents.size() == 1);
  return sents[0];
}

int node_of(const DepSentence& s, const std::string& form) {
  for (const TaggedToken& t : s.tokens())
    if (t.form == form)
      return t.index;
  return -1;
}

// reference traversal the iterative postorder is checked against
void reference_postorder(const DepSentence& s, int i, std::vector<int>& out) {
  for (int c : children(s, i))
    reference_postorder(s, c, out);
  out.push_back(i);
}

} // namespace

TEST_CASE("compact six-column blocks parse") {
  std::string text = "1\tHe\the\tPRON\t2\tnsubj\n"
                     "2\twins\twin\tVERB\t0\troot\n"
                     "3\tbig\tbig\tADV\t2\tadvmod\n";
  std::vector<DepSentence> sents = parse_conll(text);
  REQUIRE(sents.size() == 1);
  const DepSentence& s = sents[0];
  CHECK(s.size() == 3);
  CHECK(children(s, 0) == NodeSet{2});
  CHECK(s.token(1).form == "He");
  CHECK(s.token(1).lemma == "he");
  CHECK(s.token(1).upos == "PRON");
  CHECK(s.token(3).head == 2);
  CHECK(s.token(3).deprel == "advmod");
}

TEST_CASE("standard ten-column blocks parse, extras ignored") {
  std::string text =
      "# sent_id = 1\n"
      "1\tGood\tgood\tADJ\tJJ\tDegree=Pos\t0\troot\t_\t_\n"
      "2-3\tdon't\t_\t_\t_\t_\t_\t_\t_\t_\n"
      "2\tdo\tdo\tAUX\tVBP\t_\t1\taux\t_\t_\n"
      "3\tnot\tnot\tPART\tRB\t_\t1\tneg\t_\t_\n"
      "3.1\tghost\t_\t_\t_\t_\t_\t_\t_\t_\n";
  std::vector<DepSentence> sents = parse_conll(text);
  REQUIRE(sents.size() == 1);
  CHECK(sents[0].size() == 3);
  CHECK(sents[0].token(1).upos == "ADJ");
  CHECK(sents[0].token(3).deprel == "neg");
}

TEST_CASE("upos is uppercased and deprel lowercased") {
  std::vector<DepSentence> sents = parse_conll("1\tok\t_\tadj\t0\tROOT\n");
  CHECK(sents[0].token(1).upos == "ADJ");
  CHECK(sents[0].token(1).deprel == "root");
  CHECK(!sents[0].token(1).lemma.has_value());
}

TEST_CASE("several blocks and CRLF endings") {
  std::string text = "1\ta\t_\tX\t0\troot\r\n\r\n1\tb\t_\tX\t0\troot\n\n\n";
  std::vector<DepSentence> sents = parse_conll(text);
  REQUIRE(sents.size() == 2);
  CHECK(sents[0].token(1).form == "a");
  CHECK(sents[1].token(1).form == "b");
}

TEST_CASE("malformed input is rejected with positions") {
  CHECK_THROWS_AS(parse_conll("1\tonly four\tcols\tX\n"), ParseError);
  CHECK_THROWS_AS(parse_conll("1\ta\t_\tX\tzz\troot\n"), ParseError);

  // self-loop
  CHECK_THROWS_AS(parse_conll("1\ta\t_\tX\t2\tdep\n2\tb\t_\tX\t2\troot\n"), TreeError);
  // head out of range
  CHECK_THROWS_AS(parse_conll("1\ta\t_\tX\t9\tdep\n"), TreeError);
  // cycle, unreachable from the root
  CHECK_THROWS_AS(
      parse_conll("1\ta\t_\tX\t0\troot\n2\tb\t_\tX\t3\tdep\n3\tc\t_\tX\t2\tdep\n"), TreeError);
  // non-contiguous indices
  CHECK_THROWS_AS(parse_conll("1\ta\t_\tX\t0\troot\n3\tb\t_\tX\t1\tdep\n"), TreeError);
  // empty upos
  CHECK_THROWS_AS(parse_conll("1\ta\t_\t_\t0\troot\n"), TreeError);

  try {
    parse_conll("1\ta\t_\tX\t0\troot\nbroken line\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("running example fixture matches the reference tree") {
  DepSentence s = running_example();
  REQUIRE(s.size() == 14);
  int is = node_of(s, "is");
  CHECK(lm_branch(s, is, "attr") == NodeSet{node_of(s, "handsome")});
  CHECK(lm_branch(s, is, "cc") == NodeSet{node_of(s, "but")});
  CHECK(children(s, is) == NodeSet{1, 3, 5, 6, 7, 9});
  CHECK(children(s, 0) == NodeSet{is});
  CHECK(children(s, node_of(s, "like")) == NodeSet{11, 12, 13});
}

TEST_CASE("ancestor walks up and stops above the root") {
  DepSentence s = running_example();
  int very = node_of(s, "very");
  int handsome = node_of(s, "handsome");
  CHECK(ancestor(s, very, 1) == NodeSet{handsome});
  CHECK(ancestor(s, very, 0) == NodeSet{very});
  CHECK(ancestor(s, handsome, 1) == NodeSet{2});
  CHECK(ancestor(s, handsome, 2) == NodeSet{0});
  CHECK(ancestor(s, handsome, 3) == NodeSet{});
  CHECK(ancestor(s, 0, 1) == NodeSet{});
}

TEST_CASE("children of a leaf is empty") {
  DepSentence s = running_example();
  CHECK(children(s, node_of(s, "very")) == NodeSet{});
}

TEST_CASE("lm_branch picks the smallest index among equal labels") {
  std::string text = "1\ta\t_\tX\t5\tamod\n2\tb\t_\tX\t5\tdep\n3\tc\t_\tX\t5\tamod\n"
                     "4\td\t_\tX\t5\tdep\n5\te\t_\tX\t0\troot\n";
  DepSentence s = parse_conll(text)[0];
  CHECK(lm_branch(s, 5, "amod") == NodeSet{1});
  CHECK(lm_branch(s, 5, "AMOD") == NodeSet{1});
  CHECK(lm_branch(s, 5, "zzz") == NodeSet{});
}

TEST_CASE("postorder of a chain and a star") {
  DepSentence chain = parse_conll("1\ta\t_\tX\t2\tdep\n2\tb\t_\tX\t0\troot\n")[0];
  CHECK(postorder(chain) == std::vector<int>{1, 2, 0});

  DepSentence star = parse_conll("1\ta\t_\tX\t2\tdep\n2\tb\t_\tX\t0\troot\n"
                                 "3\tc\t_\tX\t2\tdep\n4\td\t_\tX\t2\tdep\n")[0];
  CHECK(postorder(star) == std::vector<int>{1, 3, 4, 2, 0});
}

TEST_CASE("postorder visits children before heads on the fixture") {
  DepSentence s = running_example();
  std::vector<int> order = postorder(s);
  auto pos = [&](int node) {
    return std::find(order.begin(), order.end(), node) - order.begin();
  };
  CHECK(pos(node_of(s, "very")) < pos(node_of(s, "handsome")));
  CHECK(pos(node_of(s, "handsome")) < pos(node_of(s, "is")));
  CHECK(order.back() == 0);
  CHECK(order.size() == 15);
}

TEST_CASE("postorder equals the recursive reference on random trees") {
  std::mt19937 rng(7001);
  for (int it = 0; it < 300; ++it) {
    DepSentence s = testgen::random_tree(rng, 12);
    std::vector<int> expect;
    reference_postorder(s, 0, expect);
    CHECK(postorder(s) == expect);

    // children partitions the word nodes
    int counted = 0;
    for (int h = 0; h <= s.size(); ++h)
      counted += static_cast<int>(children(s, h).size());
    CHECK(counted == s.size());

    // ancestor composes through single steps
    for (int i = 1; i <= s.size(); ++i) {
      NodeSet two = ancestor(s, i, 2);
      NodeSet one = ancestor(s, i, 1);
      NodeSet step = one.empty() ? NodeSet{} : ancestor(s, one[0], 1);
      CHECK(two == step);
    }
  }
}

TEST_CASE("write and reparse round-trips the tree") {
  std::mt19937 rng(7002);
  std::vector<DepSentence> originals = {running_example()};
  for (int it = 0; it < 50; ++it)
    originals.push_back(testgen::random_tree(rng, 10));

  std::string dumped = to_conll(originals);
  std::vector<DepSentence> reparsed = parse_conll(dumped);
  REQUIRE(reparsed.size() == originals.size());
  for (size_t k = 0; k < originals.size(); ++k)
    CHECK(reparsed[k] == originals[k]);
}

TEST_CASE("write_conll emits ten columns with placeholders") {
  DepSentence s = parse_conll("1\tok\t_\tADJ\t0\troot\n")[0];
  std::ostringstream out;
  write_conll(s, out);
  CHECK(out.str() == "1\tok\t_\tADJ\t_\t_\t0\troot\t_\t_\n\n");
}
