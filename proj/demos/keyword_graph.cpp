// Builds a keyword co-occurrence network from a handful of hand-written
// records and prints it as DOT, raw and rescaled by association strength.

#include <cstdio>

#include "bibliorank/bibliorank.hpp"

using namespace bibliorank;

namespace {

PublicationRecord make(std::string id, std::vector<std::string> keywords) {
  PublicationRecord r;
  r.id = std::move(id);
  r.title = "demo";
  r.year = 2016;
  r.authors = {"Doe J."};
  r.author_keywords = std::move(keywords);
  return r;
}

}  // namespace

int main() {
  Corpus corpus;
  corpus.records = {
      make("d1", {"big data", "privacy", "cloud computing"}),
      make("d2", {"big data", "privacy"}),
      make("d3", {"big data", "security", "cloud computing"}),
      make("d4", {"privacy", "security"}),
      make("d5", {"big data", "anonymization"}),
      make("d6", {"privacy", "anonymization", "big data"}),
  };

  auto g = keyword_cooccurrence(corpus, KeywordSource::author, 2);
  std::printf("%s\n", graph_to_dot(g).c_str());

  // association strength corrects for how common each keyword is
  auto assoc = association_strength(g);
  std::printf("association strength per edge:\n");
  for (const auto& e : assoc.edges)
    std::printf("  %-14s -- %-14s %.4f\n", assoc.nodes[e.a].key.c_str(),
                assoc.nodes[e.b].key.c_str(), e.weight);
  return 0;
}
