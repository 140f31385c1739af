#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

#include "bibliorank/csv.hpp"
#include "bibliorank/errors.hpp"
#include "bibliorank/record.hpp"
#include "bibliorank/text.hpp"

namespace bibliorank {

enum class RecordField {
  id, title, abstract, year, doc_type, language,
  authors, countries, author_keywords, indexed_keywords,
  references, citation_count,
};

inline const std::map<std::string, RecordField>& record_field_names() {
  static const std::map<std::string, RecordField> names = {
      {"id", RecordField::id},
      {"title", RecordField::title},
      {"abstract", RecordField::abstract},
      {"year", RecordField::year},
      {"doc_type", RecordField::doc_type},
      {"language", RecordField::language},
      {"authors", RecordField::authors},
      {"countries", RecordField::countries},
      {"author_keywords", RecordField::author_keywords},
      {"indexed_keywords", RecordField::indexed_keywords},
      {"references", RecordField::references},
      {"citation_count", RecordField::citation_count},
  };
  return names;
}

// Maps source CSV column names onto record fields. Loaded from a plain
// key=value file; keys starting with '$' are options ($list_sep).
struct SchemaMap {
  std::map<std::string, RecordField> columns;
  char list_sep = ';';

  static SchemaMap load(const std::string& path) {
    SchemaMap schema;
    std::set<RecordField> used;
    for (const std::string& raw : split(read_file(path), '\n')) {
      std::string line = trim(raw);
      if (line.empty() || line[0] == '#') continue;
      auto eq = line.find('=');
      if (eq == std::string::npos)
        throw ValidationError("schema: expected key=value, got '" + line + "'");
      std::string key = trim(line.substr(0, eq));
      std::string value = trim(line.substr(eq + 1));
      if (!key.empty() && key[0] == '$') {
        if (key == "$list_sep") {
          if (value.size() != 1)
            throw ValidationError("schema: $list_sep must be a single character");
          schema.list_sep = value[0];
        } else {
          throw ValidationError("schema: unknown option " + key);
        }
        continue;
      }
      auto it = record_field_names().find(value);
      if (it == record_field_names().end())
        throw ValidationError("schema: unknown field '" + value + "' for column '" + key + "'");
      if (schema.columns.count(key))
        throw ValidationError("schema: column '" + key + "' mapped twice");
      if (!used.insert(it->second).second)
        throw ValidationError("schema: field '" + value + "' mapped from two columns");
      schema.columns[key] = it->second;
    }
    for (const char* required : {"id", "title", "year", "authors"}) {
      RecordField f = record_field_names().at(required);
      if (!used.count(f))
        throw ValidationError(std::string("schema: no column mapped to required field '") + required + "'");
    }
    return schema;
  }
};

struct Exclusion {
  std::size_t row = 0;  // 1-based, header is row 1
  std::string id;
  std::string reason;
};

struct IngestResult {
  Corpus corpus;
  std::vector<Exclusion> exclusions;
};

namespace detail {

inline std::vector<std::string> split_list(std::string_view s, char sep) {
  std::vector<std::string> out;
  for (const std::string& part : split(s, sep)) {
    std::string t = trim(part);
    if (!t.empty()) out.push_back(std::move(t));
  }
  return out;
}

inline std::vector<std::string> keyword_list(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const std::string& part : split(s, sep)) {
    std::string t = to_lower(trim(part));
    if (!t.empty() && seen.insert(t).second) out.push_back(std::move(t));
  }
  return out;
}

inline std::vector<std::string> country_list(std::string_view s, char sep) {
  std::vector<std::string> out;
  for (const std::string& part : split(s, sep)) {
    std::string t = title_case(collapse_ws(part));
    if (!t.empty()) out.push_back(std::move(t));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace detail

// Reads a source CSV through a schema map. Rows that fail validation land in
// the exclusion report instead of the corpus; an input with zero valid rows
// is an error outright.
inline IngestResult ingest_csv(const std::string& csv_path, const SchemaMap& schema) {
  auto rows = read_csv_file(csv_path);
  if (rows.empty()) throw ValidationError("ingest: empty file " + csv_path);

  const auto& header = rows.front();
  std::unordered_map<std::string, std::size_t> col_index;
  for (std::size_t i = 0; i < header.size(); ++i) col_index[trim(header[i])] = i;

  std::vector<std::pair<std::size_t, RecordField>> bound;  // column index -> field
  std::vector<std::string> missing;
  for (const auto& [column, field] : schema.columns) {
    auto it = col_index.find(column);
    if (it == col_index.end())
      missing.push_back(column);
    else
      bound.emplace_back(it->second, field);
  }
  if (!missing.empty())
    throw ValidationError("ingest: columns not found in header: " + join(missing, ", "));

  IngestResult result;
  result.corpus.provenance.source = csv_path;
  std::unordered_set<std::string> seen_ids;

  for (std::size_t r = 1; r < rows.size(); ++r) {
    auto& row = rows[r];
    row.resize(header.size());  // tolerate ragged rows; blanks fail validation below

    PublicationRecord rec;
    std::string year_raw, cites_raw;
    for (const auto& [col, field] : bound) {
      const std::string& cell = row[col];
      switch (field) {
        case RecordField::id: rec.id = trim(cell); break;
        case RecordField::title: rec.title = trim(cell); break;
        case RecordField::abstract: rec.abstract = trim(cell); break;
        case RecordField::year: year_raw = trim(cell); break;
        case RecordField::doc_type: rec.doc_type = parse_doc_type(cell); break;
        case RecordField::language: rec.language = to_lower(trim(cell)); break;
        case RecordField::authors: rec.authors = detail::split_list(cell, schema.list_sep); break;
        case RecordField::countries: rec.countries = detail::country_list(cell, schema.list_sep); break;
        case RecordField::author_keywords:
          rec.author_keywords = detail::keyword_list(cell, schema.list_sep);
          break;
        case RecordField::indexed_keywords:
          rec.indexed_keywords = detail::keyword_list(cell, schema.list_sep);
          break;
        case RecordField::references: rec.references = detail::split_list(cell, schema.list_sep); break;
        case RecordField::citation_count: cites_raw = trim(cell); break;
      }
    }

    std::string reason;
    if (rec.id.empty()) {
      reason = "missing_id";
    } else if (seen_ids.count(rec.id)) {
      reason = "duplicate_id";
    } else if (auto y = parse_int(year_raw); !y || *y < 1900 || *y > 2100) {
      reason = "bad_year";
    } else if (rec.authors.empty()) {
      reason = "no_authors";
    } else {
      rec.year = static_cast<int>(*parse_int(year_raw));
      if (cites_raw.empty()) {
        rec.citation_count = 0;
      } else if (auto c = parse_int(cites_raw); c && *c >= 0) {
        rec.citation_count = *c;
      } else {
        reason = "bad_citation_count";
      }
    }

    if (!reason.empty()) {
      result.exclusions.push_back({r + 1, rec.id, reason});
      continue;
    }
    seen_ids.insert(rec.id);
    result.corpus.records.push_back(std::move(rec));
  }

  if (result.corpus.records.empty())
    throw ValidationError("ingest: no valid records in " + csv_path);
  return result;
}

// Near-duplicate collapse. Key is normalized title + year + normalized first
// author; the copy with the most citations survives, position of the first
// occurrence is kept.
inline IngestResult dedupe(const Corpus& corpus) {
  IngestResult result;
  result.corpus.provenance = corpus.provenance;
  std::unordered_map<std::string, std::size_t> keeper;  // key -> index into result records
  std::unordered_map<std::string, std::string> dropped_for;  // loser id -> winner key (reporting)

  for (const auto& rec : corpus.records) {
    std::string key = normalize_key(rec.title) + "|" + std::to_string(rec.year) + "|" +
                      (rec.authors.empty() ? std::string() : normalize_key(rec.authors.front()));
    auto it = keeper.find(key);
    if (it == keeper.end()) {
      keeper[key] = result.corpus.records.size();
      result.corpus.records.push_back(rec);
      continue;
    }
    PublicationRecord& held = result.corpus.records[it->second];
    if (rec.citation_count > held.citation_count) {
      result.exclusions.push_back({0, held.id, "duplicate_record"});
      held = rec;
    } else {
      result.exclusions.push_back({0, rec.id, "duplicate_record"});
    }
  }
  return result;
}

inline std::string exclusions_csv(const std::vector<Exclusion>& exclusions) {
  std::string out = "row,id,reason\n";
  for (const auto& e : exclusions)
    out += csv_row({e.row ? std::to_string(e.row) : std::string(), e.id, e.reason});
  return out;
}

// Corpus round trip as newline-delimited JSON, one record per line, keys in
// fixed order. Provenance deliberately stays out so identical record sets
// serialize to identical bytes.
inline std::string corpus_to_ndjson(const Corpus& corpus) {
  std::string out;
  for (const auto& r : corpus.records) {
    nlohmann::ordered_json j;
    j["id"] = r.id;
    j["title"] = r.title;
    j["abstract"] = r.abstract;
    j["year"] = r.year;
    j["doc_type"] = doc_type_name(r.doc_type);
    j["language"] = r.language;
    j["authors"] = r.authors;
    j["countries"] = r.countries;
    j["author_keywords"] = r.author_keywords;
    j["indexed_keywords"] = r.indexed_keywords;
    j["references"] = r.references;
    j["citation_count"] = r.citation_count;
    out += j.dump();
    out.push_back('\n');
  }
  return out;
}

inline Corpus corpus_from_ndjson(const std::string& text, std::string source = "") {
  Corpus corpus;
  corpus.provenance.source = std::move(source);
  std::size_t line_no = 0;
  for (const std::string& line : split(text, '\n')) {
    ++line_no;
    if (trim(line).empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded())
      throw ValidationError("corpus: bad json on line " + std::to_string(line_no));
    PublicationRecord r;
    try {
      r.id = j.at("id").get<std::string>();
      r.title = j.value("title", "");
      r.abstract = j.value("abstract", "");
      r.year = j.at("year").get<int>();
      r.doc_type = parse_doc_type(j.value("doc_type", "other"));
      r.language = j.value("language", "");
      r.authors = j.value("authors", std::vector<std::string>{});
      r.countries = j.value("countries", std::vector<std::string>{});
      r.author_keywords = j.value("author_keywords", std::vector<std::string>{});
      r.indexed_keywords = j.value("indexed_keywords", std::vector<std::string>{});
      r.references = j.value("references", std::vector<std::string>{});
      r.citation_count = j.value("citation_count", 0LL);
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError("corpus: line " + std::to_string(line_no) + ": " + e.what());
    }
    corpus.records.push_back(std::move(r));
  }
  return corpus;
}

inline Corpus read_corpus_file(const std::string& path) {
  return corpus_from_ndjson(read_file(path), path);
}

}  // namespace bibliorank
