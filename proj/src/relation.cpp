#include "egraph/relation.hpp"

#include <fstream>

#include "egraph/error.hpp"
#include "egraph/text.hpp"

namespace egraph {

namespace {

constexpr std::string_view kNegationPrefix = "not ";

const std::vector<std::string>& default_positive_relations() {
  static const std::vector<std::string> names = {
      "antonym of", "synonym of", "at location", "capable of",  "causes",
      "is a",       "desires",    "has subevent", "part of",    "has context",
      "has property", "made of",  "receives action", "used for",
  };
  return names;
}

}  // namespace

RelationVocabulary RelationVocabulary::defaults() {
  std::vector<std::string> names;
  for (const auto& positive : default_positive_relations()) {
    names.push_back(positive);
    names.push_back(std::string(kNegationPrefix) + positive);
  }
  return from_names(names);
}

RelationVocabulary RelationVocabulary::from_names(const std::vector<std::string>& names) {
  RelationVocabulary vocab;
  for (const auto& raw : names) {
    std::string name = text::normalize(raw);
    if (name.empty() || name.front() == '#') continue;
    if (vocab.index_.count(name) != 0) throw VocabularyError("duplicate relation '" + name + "'");
    Relation relation;
    relation.name = name;
    if (name.starts_with(kNegationPrefix)) {
      relation.polarity = Polarity::negated;
      relation.counterpart = name.substr(kNegationPrefix.size());
    } else {
      relation.polarity = Polarity::positive;
      relation.counterpart = std::string(kNegationPrefix) + name;
    }
    vocab.index_.emplace(name, vocab.relations_.size());
    vocab.relations_.push_back(std::move(relation));
  }
  if (vocab.relations_.empty()) throw VocabularyError("relation vocabulary is empty");
  for (const auto& relation : vocab.relations_) {
    if (vocab.index_.count(relation.counterpart) == 0) {
      throw VocabularyError("relation '" + relation.name + "' has no counterpart '" +
                            relation.counterpart + "'");
    }
  }
  return vocab;
}

RelationVocabulary RelationVocabulary::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw VocabularyError("cannot read relation vocabulary " + path.string());
  std::vector<std::string> names;
  std::string line;
  while (std::getline(in, line)) names.push_back(line);
  return from_names(names);
}

bool RelationVocabulary::contains(std::string_view name) const {
  return index_.count(text::normalize(name)) != 0;
}

const Relation* RelationVocabulary::find(std::string_view name) const {
  auto it = index_.find(text::normalize(name));
  return it == index_.end() ? nullptr : &relations_[it->second];
}

std::ptrdiff_t RelationVocabulary::index_of(std::string_view name) const {
  auto it = index_.find(text::normalize(name));
  return it == index_.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
}

bool is_polarity_flipping(std::string_view relation_name) {
  std::string name = text::normalize(relation_name);
  return name.starts_with(kNegationPrefix) || name == "antonym of";
}

}  // namespace egraph
