#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "bibliorank/csv.hpp"
#include "bibliorank/errors.hpp"
#include "bibliorank/record.hpp"
#include "bibliorank/text.hpp"

namespace bibliorank {

// Maps token families onto one canonical form, e.g. "anonym*" -> "anonym"
// folds anonymous/anonymity/anonymization together.
struct WildcardRule {
  std::string pattern;    // prefix ending in '*', at least 4 chars total
  std::string canonical;
};

inline void check_rule(const WildcardRule& r) {
  if (r.pattern.size() < 4 || r.pattern.back() != '*')
    throw ValidationError("rule pattern '" + r.pattern + "' must end in '*' and be at least 4 characters");
  if (r.pattern.find('*') != r.pattern.size() - 1)
    throw ValidationError("rule pattern '" + r.pattern + "' may only use '*' at the end");
  if (r.canonical.empty())
    throw ValidationError("rule for '" + r.pattern + "' has no replacement term");
}

inline std::vector<WildcardRule> load_rules(const std::string& path) {
  std::vector<WildcardRule> rules;
  for (const std::string& raw : split(read_file(path), '\n')) {
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    auto gap = line.find_first_of(" \t");
    if (gap == std::string::npos)
      throw ValidationError("rule line needs 'pattern replacement': " + line);
    WildcardRule r{to_lower(trim(line.substr(0, gap))), to_lower(trim(line.substr(gap)))};
    check_rule(r);
    rules.push_back(std::move(r));
  }
  return rules;
}

inline std::unordered_set<std::string> load_stopwords(const std::string& path) {
  std::unordered_set<std::string> words;
  for (const std::string& raw : split(read_file(path), '\n')) {
    std::string line = to_lower(trim(raw));
    if (!line.empty() && line[0] != '#') words.insert(line);
  }
  return words;
}

enum class Weighting { term_frequency, tfidf };

// Sparse document-term matrix. rows[d] holds (term index, value) pairs
// sorted by term index; terms are sorted lexicographically.
struct TermDocMatrix {
  Weighting weighting = Weighting::term_frequency;
  std::vector<std::string> doc_ids;
  std::vector<std::string> terms;
  std::vector<std::vector<std::pair<std::uint32_t, double>>> rows;

  std::size_t docs() const { return doc_ids.size(); }
  std::size_t vocab() const { return terms.size(); }
};

namespace detail {

class RuleMatcher {
 public:
  explicit RuleMatcher(const std::vector<WildcardRule>& rules) {
    for (const auto& r : rules) {
      check_rule(r);
      prefixes_.push_back({r.pattern.substr(0, r.pattern.size() - 1), r.canonical});
    }
    // longest prefix first so the most specific rule wins
    std::stable_sort(prefixes_.begin(), prefixes_.end(),
                     [](const auto& a, const auto& b) { return a.first.size() > b.first.size(); });
  }

  const std::string* match(std::string_view token) const {
    for (const auto& [prefix, canonical] : prefixes_)
      if (token.substr(0, prefix.size()) == prefix) return &canonical;
    return nullptr;
  }

 private:
  std::vector<std::pair<std::string, std::string>> prefixes_;
};

inline void tokenize_into(std::string_view text, const std::unordered_set<std::string>& stopwords,
                          const RuleMatcher& rules, std::map<std::string, double>& tf) {
  std::string token;
  auto flush = [&] {
    if (token.size() >= 3 && !stopwords.count(token)) {
      if (const std::string* canonical = rules.match(token))
        tf[*canonical] += 1;
      else
        tf[token] += 1;
    }
    token.clear();
  };
  for (char c : text) {
    unsigned char u = static_cast<unsigned char>(c);
    if (std::isalpha(u))
      token.push_back(static_cast<char>(std::tolower(u)));
    else
      flush();  // digits and punctuation split tokens and are dropped
  }
  flush();
}

}  // namespace detail

// Term frequencies over title, abstract and both keyword lists. Tokens
// shorter than 3 characters and stopwords are dropped before wildcard rules
// apply.
inline TermDocMatrix tokenize_corpus(const Corpus& corpus,
                                     const std::unordered_set<std::string>& stopwords = {},
                                     const std::vector<WildcardRule>& rules = {}) {
  detail::RuleMatcher matcher(rules);
  std::vector<std::map<std::string, double>> doc_tf;
  doc_tf.reserve(corpus.records.size());
  std::map<std::string, std::uint32_t> vocab;

  TermDocMatrix m;
  for (const auto& rec : corpus.records) {
    std::map<std::string, double> tf;
    detail::tokenize_into(rec.title, stopwords, matcher, tf);
    detail::tokenize_into(rec.abstract, stopwords, matcher, tf);
    for (const auto& kw : rec.author_keywords) detail::tokenize_into(kw, stopwords, matcher, tf);
    for (const auto& kw : rec.indexed_keywords) detail::tokenize_into(kw, stopwords, matcher, tf);
    for (const auto& [t, _] : tf) vocab.emplace(t, 0);
    doc_tf.push_back(std::move(tf));
    m.doc_ids.push_back(rec.id);
  }

  std::uint32_t next = 0;
  for (auto& [t, idx] : vocab) {
    idx = next++;
    m.terms.push_back(t);
  }
  m.rows.reserve(doc_tf.size());
  for (const auto& tf : doc_tf) {
    std::vector<std::pair<std::uint32_t, double>> row;
    row.reserve(tf.size());
    for (const auto& [t, n] : tf) row.emplace_back(vocab.at(t), n);
    m.rows.push_back(std::move(row));  // map order == index order, already sorted
  }
  return m;
}

inline std::vector<std::size_t> document_frequency(const TermDocMatrix& m) {
  std::vector<std::size_t> df(m.terms.size(), 0);
  for (const auto& row : m.rows)
    for (const auto& [t, _] : row) ++df[t];
  return df;
}

struct TfidfOptions {
  bool smooth = false;          // ln(N/(1+df)) + 1 instead of ln(N/df)
  bool keep_saturated = false;  // keep terms with df == N (zero weight unless smoothed)
};

// tf-idf reweighting: w = tf * ln(N/df). Terms present in every document
// carry no signal under the plain scheme and are pruned unless asked not to.
inline TermDocMatrix tfidf(const TermDocMatrix& m, TfidfOptions opts = {},
                           std::vector<std::string>* warnings = nullptr) {
  if (m.weighting != Weighting::term_frequency)
    throw std::invalid_argument("tfidf expects a raw term-frequency matrix");
  const std::size_t n = m.docs();
  if (n == 0) throw ValidationError("tfidf: empty matrix");
  if (n == 1 && warnings)
    warnings->push_back("single-document corpus: every term is saturated, idf carries no signal");

  auto df = document_frequency(m);
  std::vector<double> idf(m.terms.size(), 0);
  std::vector<std::uint32_t> remap(m.terms.size(), UINT32_MAX);

  TermDocMatrix out;
  out.weighting = Weighting::tfidf;
  out.doc_ids = m.doc_ids;
  std::uint32_t next = 0;
  std::size_t pruned = 0;
  for (std::size_t t = 0; t < m.terms.size(); ++t) {
    if (df[t] == 0) continue;  // unreachable for matrices built here, stay safe
    if (df[t] == n && !opts.keep_saturated) {
      ++pruned;
      continue;
    }
    double dn = static_cast<double>(n), dd = static_cast<double>(df[t]);
    idf[t] = opts.smooth ? std::log(dn / (1.0 + dd)) + 1.0 : std::log(dn / dd);
    remap[t] = next++;
    out.terms.push_back(m.terms[t]);
  }
  if (pruned && warnings)
    warnings->push_back(std::to_string(pruned) + " term(s) present in every document pruned");

  out.rows.reserve(m.rows.size());
  for (const auto& row : m.rows) {
    std::vector<std::pair<std::uint32_t, double>> r;
    for (const auto& [t, tf] : row)
      if (remap[t] != UINT32_MAX) r.emplace_back(remap[t], tf * idf[t]);
    out.rows.push_back(std::move(r));
  }
  return out;
}

// Aggregate weight per term, heaviest first. Ties break on the term itself.
inline std::vector<std::pair<std::string, double>> top_terms(const TermDocMatrix& m, std::size_t n) {
  std::vector<double> totals(m.terms.size(), 0);
  for (const auto& row : m.rows)
    for (const auto& [t, v] : row) totals[t] += v;
  std::vector<std::pair<std::string, double>> out;
  out.reserve(m.terms.size());
  for (std::size_t t = 0; t < m.terms.size(); ++t) out.emplace_back(m.terms[t], totals[t]);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (out.size() > n) out.resize(n);
  return out;
}

// MatrixMarket coordinate output plus a sidecar (<path>.index) that names
// the rows and columns.
inline void write_matrix_market(const TermDocMatrix& m, const std::string& path) {
  std::size_t nnz = 0;
  for (const auto& row : m.rows) nnz += row.size();
  std::string out = "%%MatrixMarket matrix coordinate real general\n";
  out += "% rows are documents, columns are terms\n";
  out += std::to_string(m.docs()) + " " + std::to_string(m.vocab()) + " " + std::to_string(nnz) + "\n";
  for (std::size_t d = 0; d < m.rows.size(); ++d)
    for (const auto& [t, v] : m.rows[d])
      out += std::to_string(d + 1) + " " + std::to_string(t + 1) + " " + format_number(v) + "\n";
  write_file(path, out);

  std::string index;
  for (std::size_t d = 0; d < m.doc_ids.size(); ++d)
    index += "row " + std::to_string(d + 1) + " " + m.doc_ids[d] + "\n";
  for (std::size_t t = 0; t < m.terms.size(); ++t)
    index += "col " + std::to_string(t + 1) + " " + m.terms[t] + "\n";
  write_file(path + ".index", index);
}

}  // namespace bibliorank
