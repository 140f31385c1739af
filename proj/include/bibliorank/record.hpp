#pragma once

#include <string>
#include <vector>

#include "bibliorank/text.hpp"

namespace bibliorank {

enum class DocType { article, conference_paper, other };

inline DocType parse_doc_type(std::string_view raw) {
  std::string s = to_lower(collapse_ws(raw));
  if (s == "article") return DocType::article;
  if (s == "conference paper" || s == "conference_paper") return DocType::conference_paper;
  return DocType::other;
}

inline const char* doc_type_name(DocType t) {
  switch (t) {
    case DocType::article: return "article";
    case DocType::conference_paper: return "conference_paper";
    default: return "other";
  }
}

struct PublicationRecord {
  std::string id;
  std::string title;
  std::string abstract;
  int year = 0;
  DocType doc_type = DocType::other;
  std::string language;
  std::vector<std::string> authors;
  std::vector<std::string> countries;  // sorted, unique
  std::vector<std::string> author_keywords;
  std::vector<std::string> indexed_keywords;
  std::vector<std::string> references;
  long long citation_count = 0;

  bool operator==(const PublicationRecord&) const = default;
};

struct Provenance {
  std::string source;       // path the corpus was ingested from
  std::string ingested_at;  // ISO 8601 UTC, empty when unknown
};

struct Corpus {
  std::vector<PublicationRecord> records;
  Provenance provenance;
};

}  // namespace bibliorank
