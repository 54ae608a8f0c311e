#include <doctest.h>
#include <json.hpp>

#include <random>
#include <sstream>

#include "hltag/error.hpp"
#include "hltag/model.hpp"
#include "hltag/model_io.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

using namespace hltag;

namespace {

const DomainId kA{"a", 0};
const DomainId kB{"b", 1};

ModelDims tiny_dims() {
  ModelDims d;
  d.word_dim = 4;
  d.char_dim = 3;
  d.char_hidden = 2;
  d.hidden = 6;
  d.layers = 2;
  d.num_tags = 3;
  return d;
}

std::vector<Sentence> tiny_sentences() {
  return {make_sentence("s1", {"Dogs", "bark", "loudly"}, {PosTag::ADJ, PosTag::ADP, PosTag::ADV}, kA),
          make_sentence("s2", {"cats", "Sleep"}, {PosTag::ADV, PosTag::ADJ}, kB)};
}

TaggerModel tiny_model(bool use_crf, std::uint64_t seed = 3) {
  const auto sents = tiny_sentences();
  Corpus c{kA, sents};
  const std::vector<Corpus> corpora{c};
  TaggerModel m = make_model(build_vocab(corpora), {"a", "b"}, tiny_dims(), use_crf, seed);
  // non-zero CRF scores so their gradients are exercised away from symmetry
  std::mt19937_64 rng(seed + 100);
  for (auto& h : m.params.heads) {
    const auto r = testing::random_crf_head(3, -0.5, 0.5, rng);
    h.transitions = r.transitions;
    h.start_scores = r.start_scores;
    h.end_scores = r.end_scores;
    h.emission_bias = testing::random_matrix(3, 1, -0.3, 0.3, rng);
  }
  return m;
}

void check_gradient(bool use_crf, double dropout) {
  TaggerModel model = tiny_model(use_crf);
  const auto sents = tiny_sentences();
  const std::vector<const Sentence*> batch{&sents[0], &sents[1]};

  Rng rng = make_stream(17, "dropout");
  const LossGradient analytic = loss_and_gradient(model, batch, dropout, rng);
  auto loss = [&] {
    Rng r = make_stream(17, "dropout");
    return batch_loss(model, batch, dropout, r);
  };
  CHECK(analytic.loss == doctest::Approx(loss()).epsilon(1e-12));
  const Parameters numeric = testing::finite_difference_gradient(model.params, loss, 1e-5);
  for (const auto& [name, err] : testing::relative_errors(analytic.gradient, numeric)) {
    INFO(name);
    CHECK(err <= 1e-4);
  }
}

}  // namespace

TEST_CASE("make_model shapes and determinism") {
  const TaggerModel m = tiny_model(true);
  const ModelDims d = tiny_dims();
  CHECK(m.params.word_table.rows() == d.word_dim);
  CHECK(m.params.word_table.cols() == m.vocab.word_count());
  CHECK(m.params.char_table.cols() == m.vocab.char_count());
  REQUIRE(m.params.encoder.size() == 2);
  CHECK(m.params.encoder[0].forward.input_size() == d.input_dim());
  CHECK(m.params.encoder[1].forward.input_size() == d.state_dim());
  CHECK(m.params.encoder[1].backward.hidden_size() == d.hidden);
  REQUIRE(m.params.heads.size() == 2);
  CHECK(m.params.heads[1].emission_weight.rows() == 3);
  CHECK(m.params.heads[1].emission_weight.cols() == d.state_dim());
  CHECK(m.head_index("b") == 1);
  CHECK_FALSE(m.has_head("c"));
  CHECK_THROWS_AS(m.head_index("c"), Error);

  const TaggerModel same = tiny_model(true);
  CHECK(same.params.word_table == m.params.word_table);
  CHECK(same.params.encoder[1].backward.hidden_weight == m.params.encoder[1].backward.hidden_weight);
  const TaggerModel other = tiny_model(true, 4);
  CHECK(other.params.word_table != m.params.word_table);

  const TaggerModel fresh = make_model(m.vocab, {"a"}, d, true, 1);
  CHECK(fresh.params.heads[0].transitions.isZero());
  CHECK(fresh.params.word_table.cwiseAbs().maxCoeff() <= 0.1);
  CHECK(parameter_count(fresh.params) > 0);
}

TEST_CASE("embed_tokens: lowercased word lookup, cased characters, UNK") {
  const TaggerModel m = tiny_model(true);
  const Sentence s = make_sentence("x", {"dogs", "Dogs", "zebra"});
  const Eigen::MatrixXd v = embed_tokens(m, s);
  REQUIRE(v.rows() == tiny_dims().input_dim());
  REQUIRE(v.cols() == 3);
  const int wd = tiny_dims().word_dim;
  CHECK(v.col(0).head(wd) == v.col(1).head(wd));
  CHECK(v.col(0).tail(4) != v.col(1).tail(4));
  CHECK(v.col(2).head(wd) == m.params.word_table.col(Vocabulary::kUnk));
}

TEST_CASE("encode in evaluation mode ignores dropout and rng") {
  const TaggerModel m = tiny_model(true);
  const auto sents = tiny_sentences();
  const Eigen::MatrixXd x = embed_tokens(m, sents[0]);
  const Eigen::MatrixXd a = encode(m, x, 0.4, false, nullptr);
  CHECK(a.rows() == tiny_dims().state_dim());
  CHECK(a.cols() == 3);
  Rng rng(1);
  CHECK(encode(m, x, 0.0, true, &rng) == a);
  Rng r1(5), r2(5);
  CHECK(encode(m, x, 0.3, true, &r1) == encode(m, x, 0.3, true, &r2));
  Rng r3(5);
  CHECK(encode(m, x, 0.3, true, &r3) != a);
}

TEST_CASE("tag_sentence") {
  const TaggerModel m = tiny_model(true);
  const Sentence s = make_sentence("x", {"dogs", "bark"});
  const TagSequence t = tag_sentence(m, s, "a");
  CHECK(t.size() == 2);
  for (PosTag tag : t) CHECK(code(tag) < 3);
  CHECK(tag_sentence(m, s, "a") == t);
  CHECK(make_tagger(m, "a")(s) == t);
  CHECK_THROWS_AS(tag_sentence(m, s, "missing"), Error);
  CHECK_THROWS_AS(tag_sentence(m, Sentence{"e", {}, kA}, "a"), Error);

  // the decoder follows use_crf
  TaggerModel soft = m;
  soft.use_crf = false;
  const Eigen::MatrixXd st = encode(m, embed_tokens(m, s), 0, false, nullptr);
  const auto e = emissions(st, m.head("a"));
  CHECK(to_codes(tag_sentence(soft, s, "a")) == softmax_decode(e));
  CHECK(to_codes(t) == viterbi_decode(e, m.head("a")));
}

TEST_CASE("CRF gradients match finite differences") { check_gradient(true, 0.0); }
TEST_CASE("softmax gradients match finite differences") { check_gradient(false, 0.0); }
TEST_CASE("gradients match finite differences under a fixed dropout mask") { check_gradient(true, 0.3); }

TEST_CASE("heads absent from a batch get zero gradient") {
  const TaggerModel m = tiny_model(true);
  const auto sents = tiny_sentences();
  const std::vector<const Sentence*> batch{&sents[0]};
  Rng rng(1);
  const auto g = loss_and_gradient(m, batch, 0.0, rng);
  const DomainHead& hb = g.gradient.heads[1];
  CHECK(hb.emission_weight.isZero());
  CHECK(hb.emission_bias.isZero());
  CHECK(hb.transitions.isZero());
  CHECK(hb.start_scores.isZero());
  CHECK(hb.end_scores.isZero());
  CHECK_FALSE(g.gradient.heads[0].emission_weight.isZero());

  const Sentence stray = make_sentence("z", {"x"}, {PosTag::ADJ}, DomainId{"zzz", 5});
  const std::vector<const Sentence*> bad{&stray};
  CHECK_THROWS_AS(loss_and_gradient(m, bad, 0.0, rng), Error);
}

TEST_CASE("model save/load round trip") {
  const TaggerModel m = tiny_model(false);
  std::stringstream first;
  save_model(m, first);
  const std::string text = first.str();
  std::istringstream in(text);
  const TaggerModel loaded = load_model(in);
  std::stringstream second;
  save_model(loaded, second);
  CHECK(second.str() == text);
  CHECK(loaded.use_crf == false);
  CHECK(loaded.domains == m.domains);
  CHECK(loaded.dims == m.dims);
  CHECK(loaded.vocab == m.vocab);
  CHECK(loaded.params.encoder[1].forward.hidden_weight == m.params.encoder[1].forward.hidden_weight);
  const Sentence s = make_sentence("x", {"cats", "bark", "Ünknown"});
  CHECK(tag_sentence(loaded, s, "b") == tag_sentence(m, s, "b"));
}

TEST_CASE("load_model rejects malformed input") {
  std::istringstream junk("{not json");
  CHECK_THROWS_AS(load_model(junk), ParseError);
  std::istringstream wrong(R"({"format":"other","version":1})");
  CHECK_THROWS_AS(load_model(wrong), ParseError);

  const TaggerModel m = tiny_model(true);
  std::stringstream out;
  save_model(m, out);
  auto j = nlohmann::json::parse(out.str());
  j["version"] = 99;
  std::istringstream bad_version(j.dump());
  CHECK_THROWS_AS(load_model(bad_version), ParseError);
}

TEST_CASE("load_word_vectors") {
  TaggerModel m = tiny_model(true);
  const Eigen::MatrixXd before = m.params.word_table;
  std::istringstream vecs("DOGS 1 2 3 4\ndogs 9 9 9 9\nnotinvocab 1 1 1 1\n");
  CHECK(load_word_vectors(m, vecs) == 1);
  const int id = m.vocab.word_id("dogs");
  CHECK(m.params.word_table.col(id) == Eigen::Vector4d(1, 2, 3, 4));
  CHECK(m.params.word_table.col(m.vocab.word_id("bark")) == before.col(m.vocab.word_id("bark")));
  std::istringstream bad("dogs 1 2 3\n");
  CHECK_THROWS_AS(load_word_vectors(m, bad), ParseError);
}
