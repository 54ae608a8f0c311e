#include <istream>
#include <ostream>
#include <sstream>

#include "hltag/corpus.hpp"
#include "hltag/error.hpp"

namespace hltag {
namespace {

constexpr std::size_t kColumns = 10;

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> cols;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      cols.push_back(line.substr(start));
      return cols;
    }
    cols.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool is_plain_id(std::string_view id) {
  if (id.empty()) return false;
  for (char c : id)
    if (c < '0' || c > '9') return false;
  return true;
}

class SentenceBuilder {
 public:
  SentenceBuilder(Corpus& out, const DomainId& domain) : out_(out), domain_(domain) {}

  void comment(std::string_view body) {
    body = trim(body);
    constexpr std::string_view key = "sent_id";
    if (body.substr(0, key.size()) != key) return;
    body.remove_prefix(key.size());
    body = trim(body);
    if (body.empty() || body.front() != '=') return;
    body.remove_prefix(1);
    id_ = std::string(trim(body));
  }

  void token(std::string form, std::optional<PosTag> tag) {
    current_.push_back(Token{std::move(form), tag});
  }

  void finish(std::size_t line) {
    if (current_.empty()) {
      id_.reset();
      return;
    }
    ++ordinal_;
    Sentence s{id_.value_or(domain_.name + "-" + std::to_string(ordinal_)), std::move(current_), domain_};
    current_.clear();
    id_.reset();
    try {
      validate(s);
    } catch (const Error& e) {
      throw ParseError(line, e.what());
    }
    out_.sentences.push_back(std::move(s));
  }

 private:
  Corpus& out_;
  const DomainId& domain_;
  std::vector<Token> current_;
  std::optional<std::string> id_;
  std::size_t ordinal_ = 0;
};

}  // namespace

Corpus parse_conllu(std::istream& in, const DomainId& domain) {
  Corpus corpus{domain, {}};
  SentenceBuilder builder(corpus, domain);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty()) {
      builder.finish(line_no);
      continue;
    }
    if (line.front() == '#') {
      builder.comment(line.substr(1));
      continue;
    }
    const auto cols = split_tabs(line);
    if (cols.size() != kColumns)
      throw ParseError(line_no, "expected 10 tab-separated columns, found " + std::to_string(cols.size()));
    if (!is_plain_id(cols[0])) {
      if (cols[0].find_first_of("-.") != std::string_view::npos) continue;  // multiword range or empty node
      throw ParseError(line_no, "invalid token id '" + std::string(cols[0]) + "'");
    }
    if (cols[1].empty()) throw ParseError(line_no, "empty FORM column");
    std::optional<PosTag> tag;
    if (cols[3] != "_") {
      tag = try_parse_tag(cols[3]);
      if (!tag) throw ParseError(line_no, "unknown UPOS tag '" + std::string(cols[3]) + "'");
    }
    builder.token(std::string(cols[1]), tag);
  }
  builder.finish(line_no);
  return corpus;
}

Corpus parse_conllu(std::string_view text, const DomainId& domain) {
  std::istringstream in{std::string(text)};
  return parse_conllu(in, domain);
}

void write_conllu(const Corpus& corpus, std::ostream& out) {
  for (const auto& s : corpus.sentences) {
    for (const auto& t : s.tokens) {
      if (!t.gold_tag)
        throw Error("write_conllu: sentence '" + s.id + "' has an untagged token '" + t.form + "'");
    }
  }
  for (const auto& s : corpus.sentences) {
    out << "# sent_id = " << s.id << '\n';
    for (std::size_t i = 0; i < s.tokens.size(); ++i) {
      const auto& t = s.tokens[i];
      out << (i + 1) << '\t' << t.form << "\t_\t" << name(*t.gold_tag) << "\t_\t_\t_\t_\t_\t_\n";
    }
    out << '\n';
  }
}

std::string write_conllu(const Corpus& corpus) {
  std::ostringstream out;
  write_conllu(corpus, out);
  return out.str();
}

}  // namespace hltag
