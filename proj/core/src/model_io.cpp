#include "hltag/model_io.hpp"

#include <fstream>
#include <map>

#include <json.hpp>

#include "hltag/error.hpp"
#include "hltag/text.hpp"

namespace hltag {
namespace {

using nlohmann::ordered_json;

constexpr const char* kFormat = "hltag-model";

ordered_json dims_to_json(const ModelDims& d) {
  return {{"word_dim", d.word_dim}, {"char_dim", d.char_dim}, {"char_hidden", d.char_hidden},
          {"hidden", d.hidden},     {"layers", d.layers},     {"num_tags", d.num_tags}};
}

ModelDims dims_from_json(const ordered_json& j) {
  ModelDims d;
  d.word_dim = j.at("word_dim").get<int>();
  d.char_dim = j.at("char_dim").get<int>();
  d.char_hidden = j.at("char_hidden").get<int>();
  d.hidden = j.at("hidden").get<int>();
  d.layers = j.at("layers").get<int>();
  d.num_tags = j.at("num_tags").get<int>();
  return d;
}

}  // namespace

void save_model(const TaggerModel& model, std::ostream& out) {
  ordered_json j;
  j["format"] = kFormat;
  j["version"] = kModelFormatVersion;
  j["dims"] = dims_to_json(model.dims);
  j["use_crf"] = model.use_crf;
  ordered_json chars = ordered_json::array();
  for (char32_t c : model.vocab.chars()) chars.push_back(text::encode_code_point(c));
  j["vocab"] = {{"min_freq", model.vocab.min_freq()}, {"words", model.vocab.words()}, {"chars", chars}};
  j["domains"] = model.domains;
  ordered_json tensors = ordered_json::array();
  visit_tensors(
      [&tensors](const std::string& name, const auto& t) {
        tensors.push_back({{"name", name},
                           {"rows", t.rows()},
                           {"cols", t.cols()},
                           {"data", std::vector<double>(t.data(), t.data() + t.size())}});
      },
      model.params);
  j["tensors"] = std::move(tensors);
  out << j.dump() << '\n';
  if (!out) throw Error("failed to write model");
}

void save_model(const TaggerModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  save_model(model, out);
}

TaggerModel load_model(std::istream& in) {
  ordered_json j;
  try {
    j = ordered_json::parse(in);
  } catch (const ordered_json::parse_error& e) {
    throw ParseError(0, std::string("model file is not valid JSON: ") + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != kFormat) throw ParseError(0, "not an hltag model file");
    const int version = j.at("version").get<int>();
    if (version != kModelFormatVersion)
      throw ParseError(0, "unsupported model format version " + std::to_string(version));

    std::vector<char32_t> chars;
    for (const auto& c : j.at("vocab").at("chars")) {
      const auto cps = text::code_points(c.get<std::string>());
      if (cps.size() != 1) throw ParseError(0, "vocabulary character entry must be one code point");
      chars.push_back(cps[0]);
    }
    Vocabulary vocab(j.at("vocab").at("words").get<std::vector<std::string>>(), std::move(chars),
                     j.at("vocab").at("min_freq").get<int>());

    // A freshly shaped model tells us which tensors must be present.
    TaggerModel model = make_model(std::move(vocab), j.at("domains").get<std::vector<std::string>>(),
                                   dims_from_json(j.at("dims")), j.at("use_crf").get<bool>(), 0);

    std::map<std::string, const ordered_json*> by_name;
    for (const auto& t : j.at("tensors")) by_name[t.at("name").get<std::string>()] = &t;
    std::size_t used = 0;
    visit_tensors(
        [&](const std::string& name, auto& t) {
          auto it = by_name.find(name);
          if (it == by_name.end()) throw ParseError(0, "model file is missing tensor '" + name + "'");
          const ordered_json& tj = *it->second;
          if (tj.at("rows").get<Eigen::Index>() != t.rows() || tj.at("cols").get<Eigen::Index>() != t.cols())
            throw ParseError(0, "tensor '" + name + "' has the wrong shape");
          const auto data = tj.at("data").get<std::vector<double>>();
          if (static_cast<Eigen::Index>(data.size()) != t.size())
            throw ParseError(0, "tensor '" + name + "' has the wrong number of values");
          std::copy(data.begin(), data.end(), t.data());
          ++used;
        },
        model.params);
    if (used != by_name.size()) throw ParseError(0, "model file contains unknown tensors");
    return model;
  } catch (const ordered_json::exception& e) {
    throw ParseError(0, std::string("malformed model file: ") + e.what());
  }
}

TaggerModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open model '" + path.string() + "'");
  return load_model(in);
}

}  // namespace hltag
