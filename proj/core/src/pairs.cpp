#include <istream>
#include <sstream>

#include <json.hpp>

#include "hltag/corpus.hpp"
#include "hltag/error.hpp"

namespace hltag {
namespace {

using nlohmann::json;

std::vector<std::string> token_array(const json& obj, const char* field, std::size_t line) {
  auto it = obj.find(field);
  if (it == obj.end()) throw ParseError(line, std::string("missing field '") + field + "'");
  if (!it->is_array()) throw ParseError(line, std::string("field '") + field + "' must be an array");
  if (it->empty()) throw ParseError(line, std::string("field '") + field + "' is empty");
  std::vector<std::string> out;
  for (const auto& tok : *it) {
    if (!tok.is_string()) throw ParseError(line, std::string("field '") + field + "' must hold strings");
    out.push_back(tok.get<std::string>());
  }
  return out;
}

}  // namespace

std::vector<SentencePair> parse_pairs(std::istream& in) {
  std::vector<SentencePair> pairs;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
    json obj;
    try {
      obj = json::parse(raw);
    } catch (const json::parse_error& e) {
      throw ParseError(line_no, std::string("invalid JSON: ") + e.what());
    }
    if (!obj.is_object()) throw ParseError(line_no, "expected a JSON object");
    auto id_it = obj.find("id");
    if (id_it == obj.end()) throw ParseError(line_no, "missing field 'id'");
    std::string id = id_it->is_string() ? id_it->get<std::string>() : id_it->dump();
    const auto headline = token_array(obj, "headline_tokens", line_no);
    const auto lead = token_array(obj, "lead_tokens", line_no);
    try {
      pairs.push_back({make_sentence(id, headline), make_sentence(id, lead)});
    } catch (const Error& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return pairs;
}

std::vector<SentencePair> parse_pairs(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_pairs(in);
}

}  // namespace hltag
