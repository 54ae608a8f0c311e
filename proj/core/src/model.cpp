#include "hltag/model.hpp"

#include <cmath>
#include <istream>
#include <sstream>
#include <unordered_set>

#include "hltag/error.hpp"
#include "hltag/gru.hpp"
#include "hltag/text.hpp"

namespace hltag {

Parameters zeros_like(const Parameters& like) {
  Parameters out = like;
  visit_tensors([](const std::string&, auto& t) { t.setZero(); }, out);
  return out;
}

std::size_t parameter_count(const Parameters& params) {
  std::size_t n = 0;
  visit_tensors([&n](const std::string&, const auto& t) { n += static_cast<std::size_t>(t.size()); }, params);
  return n;
}

int TaggerModel::head_index(std::string_view domain) const {
  for (std::size_t i = 0; i < domains.size(); ++i)
    if (domains[i] == domain) return static_cast<int>(i);
  throw Error("model has no decoder head for domain '" + std::string(domain) + "'");
}

bool TaggerModel::has_head(std::string_view domain) const noexcept {
  for (const auto& d : domains)
    if (d == domain) return true;
  return false;
}

namespace {

void fill_uniform(Eigen::MatrixXd& m, Eigen::Index rows, Eigen::Index cols, double bound, Rng& rng) {
  std::uniform_real_distribution<double> dist(-bound, bound);
  m.resize(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = dist(rng);
}

void fill_uniform(Eigen::VectorXd& v, Eigen::Index size, double bound, Rng& rng) {
  std::uniform_real_distribution<double> dist(-bound, bound);
  v.resize(size);
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = dist(rng);
}

GruCell make_cell(int input, int hidden, Rng& rng) {
  GruCell c;
  const double bound = 1.0 / std::sqrt(static_cast<double>(hidden));
  fill_uniform(c.input_weight, 3 * hidden, input, bound, rng);
  fill_uniform(c.hidden_weight, 3 * hidden, hidden, bound, rng);
  fill_uniform(c.bias, 3 * hidden, bound, rng);
  return c;
}

BiGru make_bigru(int input, int hidden, Rng& rng) {
  BiGru layer;
  layer.forward = make_cell(input, hidden, rng);
  layer.backward = make_cell(input, hidden, rng);
  return layer;
}

void check_dims(const ModelDims& d) {
  if (d.word_dim < 1 || d.char_dim < 1 || d.char_hidden < 1 || d.hidden < 1 || d.layers < 1)
    throw Error("model dimensions must be positive");
  if (d.num_tags < 1 || d.num_tags > kNumTags) throw Error("num_tags must be within 1..17");
}

}  // namespace

TaggerModel make_model(Vocabulary vocab, std::vector<std::string> domains, const ModelDims& dims, bool use_crf,
                       std::uint64_t seed) {
  check_dims(dims);
  if (domains.empty()) throw Error("a tagger needs at least one domain head");
  std::unordered_set<std::string> seen;
  for (const auto& d : domains) {
    if (d.empty()) throw Error("domain names must be non-empty");
    if (!seen.insert(d).second) throw Error("duplicate domain '" + d + "'");
  }

  TaggerModel m;
  m.dims = dims;
  m.vocab = std::move(vocab);
  m.domains = std::move(domains);
  m.use_crf = use_crf;

  Rng rng = make_stream(seed, "init");
  fill_uniform(m.params.word_table, dims.word_dim, m.vocab.word_count(), 0.1, rng);
  fill_uniform(m.params.char_table, dims.char_dim, m.vocab.char_count(), 0.1, rng);
  m.params.char_encoder = make_bigru(dims.char_dim, dims.char_hidden, rng);
  for (int l = 0; l < dims.layers; ++l)
    m.params.encoder.push_back(make_bigru(l == 0 ? dims.input_dim() : dims.state_dim(), dims.hidden, rng));
  const double glorot = std::sqrt(6.0 / static_cast<double>(dims.num_tags + dims.state_dim()));
  for (std::size_t h = 0; h < m.domains.size(); ++h) {
    DomainHead head;
    fill_uniform(head.emission_weight, dims.num_tags, dims.state_dim(), glorot, rng);
    head.emission_bias = Eigen::VectorXd::Zero(dims.num_tags);
    head.transitions = Eigen::MatrixXd::Zero(dims.num_tags, dims.num_tags);
    head.start_scores = Eigen::VectorXd::Zero(dims.num_tags);
    head.end_scores = Eigen::VectorXd::Zero(dims.num_tags);
    m.params.heads.push_back(std::move(head));
  }
  return m;
}

std::size_t load_word_vectors(TaggerModel& model, std::istream& in) {
  std::string line;
  std::size_t line_no = 0, replaced = 0;
  std::unordered_set<int> done;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    std::string token;
    fields >> token;
    std::vector<double> values;
    double v;
    while (fields >> v) values.push_back(v);
    if (!fields.eof()) throw ParseError(line_no, "non-numeric vector component");
    if (static_cast<int>(values.size()) != model.dims.word_dim)
      throw ParseError(line_no, "expected " + std::to_string(model.dims.word_dim) + " components, found " +
                                    std::to_string(values.size()));
    const int id = model.vocab.word_id(token);
    if (id == Vocabulary::kUnk || !done.insert(id).second) continue;
    model.params.word_table.col(id) = Eigen::Map<const Eigen::VectorXd>(values.data(), model.dims.word_dim);
    ++replaced;
  }
  return replaced;
}

namespace {

struct TokenTrace {
  int word = 0;
  std::vector<int> chars;
  BiGruTrace char_trace;
};

struct SentenceTrace {
  std::vector<TokenTrace> tokens;
  std::vector<BiGruTrace> layers;
  std::vector<Eigen::MatrixXd> masks;  // empty matrix when no dropout was applied
  Eigen::MatrixXd states;
};

void check_sentence(const Sentence& s) {
  if (s.tokens.empty()) throw Error("cannot tag an empty sentence ('" + s.id + "')");
  for (const auto& t : s.tokens)
    if (t.form.empty()) throw Error("sentence '" + s.id + "' contains an empty token");
}

Eigen::MatrixXd embed(const TaggerModel& model, const Sentence& sentence, std::vector<TokenTrace>* traces) {
  check_sentence(sentence);
  const ModelDims& d = model.dims;
  const auto n = static_cast<Eigen::Index>(sentence.size());
  Eigen::MatrixXd x(d.input_dim(), n);
  if (traces) traces->resize(sentence.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& form = sentence.tokens[i].form;
    const int word = model.vocab.word_id(form);
    std::vector<int> chars = model.vocab.char_ids(form);
    Eigen::MatrixXd char_vectors(d.char_dim, static_cast<Eigen::Index>(chars.size()));
    for (std::size_t c = 0; c < chars.size(); ++c)
      char_vectors.col(static_cast<Eigen::Index>(c)) = model.params.char_table.col(chars[c]);
    BiGruTrace ct = bigru_forward(model.params.char_encoder, char_vectors);
    x.col(i).head(d.word_dim) = model.params.word_table.col(word);
    x.col(i).segment(d.word_dim, d.char_hidden) = ct.forward.outputs.col(ct.forward.outputs.cols() - 1);
    x.col(i).tail(d.char_hidden) = ct.backward.outputs.col(0);
    if (traces) (*traces)[i] = TokenTrace{word, std::move(chars), std::move(ct)};
  }
  return x;
}

Eigen::MatrixXd run_encoder(const TaggerModel& model, const Eigen::MatrixXd& vectors, double dropout_rate,
                            bool training, Rng* rng, SentenceTrace* trace) {
  if (vectors.rows() != model.dims.input_dim())
    throw ShapeError("encoder expects inputs of width " + std::to_string(model.dims.input_dim()) + ", got " +
                     std::to_string(vectors.rows()));
  if (dropout_rate < 0.0 || dropout_rate >= 1.0) throw Error("dropout rate must lie in [0, 1)");
  const bool drop = training && dropout_rate > 0.0;
  if (drop && rng == nullptr) throw Error("training-mode dropout needs a random stream");
  const double keep = 1.0 - dropout_rate;

  Eigen::MatrixXd current = vectors;
  for (const BiGru& layer : model.params.encoder) {
    BiGruTrace tr = bigru_forward(layer, current);
    current = bigru_outputs(tr);
    Eigen::MatrixXd mask;
    if (drop) {
      std::bernoulli_distribution bern(keep);
      mask.resize(current.rows(), current.cols());
      for (Eigen::Index i = 0; i < mask.size(); ++i) mask.data()[i] = bern(*rng) ? 1.0 / keep : 0.0;
      current = current.cwiseProduct(mask);
    }
    if (trace) {
      trace->layers.push_back(std::move(tr));
      trace->masks.push_back(std::move(mask));
    }
  }
  return current;
}

const DomainHead& routed_head(const TaggerModel& model, const Sentence& s, int* index) {
  *index = model.head_index(s.domain.name);
  return model.params.heads[*index];
}

// Forward pass plus backward into `grad`; returns the sentence loss.
double sentence_loss_gradient(const TaggerModel& model, const Sentence& s, double dropout_rate, Rng& rng,
                              Parameters& grad) {
  const std::vector<int> gold = to_codes(s.gold_tags());
  int h = 0;
  const DomainHead& head = routed_head(model, s, &h);
  SentenceTrace trace;
  const Eigen::MatrixXd x = embed(model, s, &trace.tokens);
  trace.states = run_encoder(model, x, dropout_rate, true, &rng, &trace);
  const EmissionScores e = emissions(trace.states, head);

  DomainHead& head_grad = grad.heads[h];
  CrfLossGradient lg = model.use_crf ? crf_nll_gradient(e, gold, head, head_grad) : softmax_nll_gradient(e, gold);

  head_grad.emission_weight.noalias() += lg.d_emissions.transpose() * trace.states.transpose();
  head_grad.emission_bias += lg.d_emissions.colwise().sum().transpose();
  Eigen::MatrixXd d_current = head.emission_weight.transpose() * lg.d_emissions.transpose();

  for (int l = static_cast<int>(model.params.encoder.size()) - 1; l >= 0; --l) {
    if (trace.masks[l].size() > 0) d_current = d_current.cwiseProduct(trace.masks[l]);
    d_current = bigru_backward(model.params.encoder[l], trace.layers[l], d_current, grad.encoder[l]);
  }

  const ModelDims& d = model.dims;
  for (std::size_t i = 0; i < trace.tokens.size(); ++i) {
    const auto col = static_cast<Eigen::Index>(i);
    const TokenTrace& tok = trace.tokens[i];
    grad.word_table.col(tok.word) += d_current.col(col).head(d.word_dim);
    const auto m = static_cast<Eigen::Index>(tok.chars.size());
    Eigen::MatrixXd d_char_out = Eigen::MatrixXd::Zero(2 * d.char_hidden, m);
    d_char_out.col(m - 1).head(d.char_hidden) = d_current.col(col).segment(d.word_dim, d.char_hidden);
    d_char_out.col(0).tail(d.char_hidden) += d_current.col(col).tail(d.char_hidden);
    const Eigen::MatrixXd d_chars =
        bigru_backward(model.params.char_encoder, tok.char_trace, d_char_out, grad.char_encoder);
    for (Eigen::Index c = 0; c < m; ++c) grad.char_table.col(tok.chars[c]) += d_chars.col(c);
  }
  return lg.loss;
}

}  // namespace

Eigen::MatrixXd embed_tokens(const TaggerModel& model, const Sentence& sentence) {
  return embed(model, sentence, nullptr);
}

Eigen::MatrixXd encode(const TaggerModel& model, const Eigen::MatrixXd& vectors, double dropout_rate,
                       bool training, Rng* rng) {
  return run_encoder(model, vectors, dropout_rate, training, rng, nullptr);
}

EmissionScores emissions(const Eigen::MatrixXd& states, const DomainHead& head) {
  if (states.rows() != head.emission_weight.cols())
    throw ShapeError("emission layer expects states of width " + std::to_string(head.emission_weight.cols()) +
                     ", got " + std::to_string(states.rows()));
  EmissionScores e = (head.emission_weight * states).transpose();
  e.rowwise() += head.emission_bias.transpose();
  return e;
}

TagSequence tag_sentence(const TaggerModel& model, const Sentence& sentence, std::string_view domain) {
  const DomainHead& head = model.head(domain);
  const Eigen::MatrixXd states = encode(model, embed_tokens(model, sentence), 0.0, false, nullptr);
  const EmissionScores e = emissions(states, head);
  return from_codes(model.use_crf ? viterbi_decode(e, head) : softmax_decode(e));
}

SentenceTagger make_tagger(const TaggerModel& model, std::string domain) {
  model.head_index(domain);
  return [&model, domain = std::move(domain)](const Sentence& s) { return tag_sentence(model, s, domain); };
}

LossGradient loss_and_gradient(const TaggerModel& model, std::span<const Sentence* const> batch,
                               double dropout_rate, Rng& rng) {
  if (batch.empty()) throw Error("loss_and_gradient: empty batch");
  LossGradient out{0.0, zeros_like(model.params)};
  for (const Sentence* s : batch) out.loss += sentence_loss_gradient(model, *s, dropout_rate, rng, out.gradient);
  const double scale = 1.0 / static_cast<double>(batch.size());
  out.loss *= scale;
  visit_tensors([scale](const std::string&, auto& t) { t *= scale; }, out.gradient);
  return out;
}

double batch_loss(const TaggerModel& model, std::span<const Sentence* const> batch, double dropout_rate,
                  Rng& rng) {
  if (batch.empty()) throw Error("batch_loss: empty batch");
  double total = 0.0;
  for (const Sentence* s : batch) {
    const std::vector<int> gold = to_codes(s->gold_tags());
    int h = 0;
    const DomainHead& head = routed_head(model, *s, &h);
    const Eigen::MatrixXd states = encode(model, embed_tokens(model, *s), dropout_rate, true, &rng);
    const EmissionScores e = emissions(states, head);
    total += model.use_crf ? crf_log_partition(e, head) - crf_path_score(e, gold, head)
                           : softmax_nll_gradient(e, gold).loss;
  }
  return total / static_cast<double>(batch.size());
}

}  // namespace hltag
