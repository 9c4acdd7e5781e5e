#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace egraph {

enum class Polarity { positive, negated };

struct Relation {
  std::string name;  // normalized: lowercase, single spaces
  Polarity polarity = Polarity::positive;
  std::string counterpart;
};

// Closed set of relations organized as negation pairs: every positive
// relation "x" has exactly one negated partner "not x".
class RelationVocabulary {
 public:
  // 14 positive relations and their negations.
  static RelationVocabulary defaults();

  // One relation name per entry; blank entries and lines starting with '#'
  // are skipped. Throws VocabularyError on unpaired or duplicate names.
  static RelationVocabulary from_names(const std::vector<std::string>& names);
  static RelationVocabulary load(const std::filesystem::path& path);

  const std::vector<Relation>& relations() const { return relations_; }
  std::size_t size() const { return relations_.size(); }
  const Relation& at(std::size_t index) const { return relations_.at(index); }

  // Lookups compare normalized names.
  bool contains(std::string_view name) const;
  const Relation* find(std::string_view name) const;
  std::ptrdiff_t index_of(std::string_view name) const;

 private:
  std::vector<Relation> relations_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Negated relations plus "antonym of" flip the polarity of a reasoning chain.
bool is_polarity_flipping(std::string_view relation_name);

}  // namespace egraph
