#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "bibliorank/errors.hpp"
#include "bibliorank/record.hpp"
#include "bibliorank/text.hpp"

namespace bibliorank {

enum class GraphKind { keyword_cooccurrence, bibliographic_coupling, cocitation };

struct GraphNode {
  std::string key;
  double weight = 0;
};

// Undirected edge between node indices, stored with a < b.
struct GraphEdge {
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  double weight = 0;
};

struct WeightedGraph {
  GraphKind kind = GraphKind::keyword_cooccurrence;
  std::vector<GraphNode> nodes;  // sorted by key
  std::vector<GraphEdge> edges;  // sorted by (a, b)

  double density() const {
    std::size_t n = nodes.size();
    if (n < 2) return 0;
    return 2.0 * static_cast<double>(edges.size()) / (static_cast<double>(n) * static_cast<double>(n - 1));
  }

  // Structural soundness: sorted unique keys, ordered loop-free edges with
  // in-range endpoints and positive weights.
  void check() const {
    for (std::size_t i = 1; i < nodes.size(); ++i)
      if (!(nodes[i - 1].key < nodes[i].key))
        throw std::logic_error("graph: node keys not sorted/unique");
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const auto& e = edges[i];
      if (e.a >= e.b) throw std::logic_error("graph: edge not ordered a < b");
      if (e.b >= nodes.size()) throw std::logic_error("graph: edge endpoint out of range");
      if (!(e.weight > 0)) throw std::logic_error("graph: non-positive edge weight");
      if (i && !(edges[i - 1].a < e.a || (edges[i - 1].a == e.a && edges[i - 1].b < e.b)))
        throw std::logic_error("graph: edges not sorted/unique");
    }
  }
};

enum class KeywordSource { author, indexed };

// Cited-reference strings match case- and whitespace-insensitively, nothing
// fuzzier. Digits must survive: the year is often all that separates two
// works by the same author.
inline std::string reference_key(std::string_view ref) { return collapse_ws(to_lower(ref)); }

namespace detail {

inline std::set<std::string> keyword_set(const PublicationRecord& rec, KeywordSource source) {
  const auto& list = source == KeywordSource::author ? rec.author_keywords : rec.indexed_keywords;
  std::set<std::string> out;
  for (const auto& kw : list) {
    std::string k = to_lower(trim(kw));
    if (!k.empty()) out.insert(std::move(k));
  }
  return out;
}

inline WeightedGraph assemble(GraphKind kind, const std::map<std::string, double>& node_weights,
                              const std::map<std::pair<std::uint32_t, std::uint32_t>, double>& edge_acc,
                              double min_edge_weight) {
  WeightedGraph g;
  g.kind = kind;
  g.nodes.reserve(node_weights.size());
  for (const auto& [key, w] : node_weights) g.nodes.push_back({key, w});
  for (const auto& [ab, w] : edge_acc)
    if (w >= min_edge_weight) g.edges.push_back({ab.first, ab.second, w});
  return g;
}

}  // namespace detail

// Keyword co-occurrence: a node per keyword appearing in at least
// min_occurrences documents (document frequency, not raw mentions), an edge
// weighted by the number of documents where both keywords appear.
inline WeightedGraph keyword_cooccurrence(const Corpus& corpus, KeywordSource source,
                                          double min_occurrences = 1) {
  if (min_occurrences < 1) min_occurrences = 1;
  std::map<std::string, double> doc_freq;
  std::vector<std::set<std::string>> doc_sets;
  doc_sets.reserve(corpus.records.size());
  for (const auto& rec : corpus.records) {
    auto kws = detail::keyword_set(rec, source);
    for (const auto& k : kws) doc_freq[k] += 1;
    doc_sets.push_back(std::move(kws));
  }

  std::map<std::string, double> kept;
  for (const auto& [k, n] : doc_freq)
    if (n >= min_occurrences) kept.emplace(k, n);
  std::map<std::string, std::uint32_t> index;
  std::uint32_t next = 0;
  for (const auto& [k, _] : kept) index.emplace(k, next++);

  std::map<std::pair<std::uint32_t, std::uint32_t>, double> edges;
  std::vector<std::uint32_t> present;
  for (const auto& kws : doc_sets) {
    present.clear();
    for (const auto& k : kws) {
      auto it = index.find(k);
      if (it != index.end()) present.push_back(it->second);
    }
    // set iteration is ordered and index respects key order, so present is sorted
    for (std::size_t i = 0; i < present.size(); ++i)
      for (std::size_t j = i + 1; j < present.size(); ++j)
        edges[{present[i], present[j]}] += 1;
  }
  return detail::assemble(GraphKind::keyword_cooccurrence, kept, edges, 1);
}

// Rescales co-occurrence counts by the product of the endpoint document
// frequencies: w_ab / (s_a * s_b). Leaves node weights untouched.
inline WeightedGraph association_strength(const WeightedGraph& g) {
  if (g.kind != GraphKind::keyword_cooccurrence)
    throw std::invalid_argument("association strength is defined for co-occurrence graphs");
  WeightedGraph out = g;
  for (auto& e : out.edges) {
    double sa = g.nodes[e.a].weight, sb = g.nodes[e.b].weight;
    if (!(sa > 0) || !(sb > 0))
      throw std::logic_error("association strength: zero-weight endpoint");
    e.weight = e.weight / (sa * sb);
  }
  return out;
}

enum class CouplingUnit { document, country };

// Bibliographic coupling: two units are linked by the references they share.
// Document mode couples records, country mode pools each country's reference
// sets first. Node weight is the size of the unit's reference set. Records
// below min_citations are ignored in country mode (spares the giant tail).
inline WeightedGraph bibliographic_coupling(const Corpus& corpus, CouplingUnit unit,
                                            double min_edge_weight = 1, long long min_citations = 0) {
  std::map<std::string, std::set<std::string>> pools;  // unit key -> normalized refs
  for (const auto& rec : corpus.records) {
    std::set<std::string> refs;
    for (const auto& r : rec.references) {
      std::string k = reference_key(r);
      if (!k.empty()) refs.insert(std::move(k));
    }
    if (unit == CouplingUnit::document) {
      if (!rec.id.empty()) pools[rec.id] = std::move(refs);
    } else {
      if (rec.citation_count < min_citations) continue;
      for (const auto& c : rec.countries) pools[c].insert(refs.begin(), refs.end());
    }
  }

  std::map<std::string, double> node_weights;
  std::map<std::string, std::uint32_t> index;
  std::uint32_t next = 0;
  for (const auto& [key, refs] : pools) {
    node_weights[key] = static_cast<double>(refs.size());
    index.emplace(key, next++);
  }

  // invert: reference -> units holding it, then bump every unit pair
  std::map<std::string, std::vector<std::uint32_t>> holders;
  for (const auto& [key, refs] : pools)
    for (const auto& r : refs) holders[r].push_back(index.at(key));

  std::map<std::pair<std::uint32_t, std::uint32_t>, double> edges;
  for (const auto& [_, units] : holders)
    for (std::size_t i = 0; i < units.size(); ++i)
      for (std::size_t j = i + 1; j < units.size(); ++j)
        edges[{units[i], units[j]}] += 1;

  return detail::assemble(GraphKind::bibliographic_coupling, node_weights, edges,
                          std::max(min_edge_weight, 1.0));
}

// Co-citation: cited works are the nodes, linked when the same document cites
// both. Node weight counts citing documents; min_node_citations trims rarely
// cited references before edges are formed.
inline WeightedGraph cocitation(const Corpus& corpus, double min_edge_weight = 1,
                                double min_node_citations = 1) {
  std::map<std::string, double> citing_docs;
  std::vector<std::set<std::string>> doc_refs;
  doc_refs.reserve(corpus.records.size());
  for (const auto& rec : corpus.records) {
    std::set<std::string> refs;
    for (const auto& r : rec.references) {
      std::string k = reference_key(r);
      if (!k.empty()) refs.insert(std::move(k));
    }
    for (const auto& r : refs) citing_docs[r] += 1;
    doc_refs.push_back(std::move(refs));
  }

  std::map<std::string, double> kept;
  for (const auto& [r, n] : citing_docs)
    if (n >= std::max(min_node_citations, 1.0)) kept.emplace(r, n);
  std::map<std::string, std::uint32_t> index;
  std::uint32_t next = 0;
  for (const auto& [r, _] : kept) index.emplace(r, next++);

  std::map<std::pair<std::uint32_t, std::uint32_t>, double> edges;
  std::vector<std::uint32_t> present;
  for (const auto& refs : doc_refs) {
    present.clear();
    for (const auto& r : refs) {
      auto it = index.find(r);
      if (it != index.end()) present.push_back(it->second);
    }
    for (std::size_t i = 0; i < present.size(); ++i)
      for (std::size_t j = i + 1; j < present.size(); ++j)
        edges[{present[i], present[j]}] += 1;
  }
  return detail::assemble(GraphKind::cocitation, kept, edges, std::max(min_edge_weight, 1.0));
}

// Field-normalized citation impact per country: each document's citations are
// divided by the mean citations of its publication year (0 when that mean is
// 0), then averaged over the country's documents. With one country per paper
// the publication-weighted mean across countries is 1. exclude_uncited drops
// zero-citation documents before both averaging steps.
inline std::map<std::string, double> avg_normalized_citations(const Corpus& corpus,
                                                              bool exclude_uncited = false) {
  struct Acc {
    double sum = 0;
    std::size_t n = 0;
  };
  std::map<int, Acc> per_year;
  std::vector<const PublicationRecord*> used;
  for (const auto& rec : corpus.records) {
    if (exclude_uncited && rec.citation_count == 0) continue;
    used.push_back(&rec);
    auto& a = per_year[rec.year];
    a.sum += static_cast<double>(rec.citation_count);
    ++a.n;
  }

  std::map<std::string, Acc> per_country;
  for (const auto* rec : used) {
    const Acc& y = per_year.at(rec->year);
    double mean = y.sum / static_cast<double>(y.n);
    double norm = mean > 0 ? static_cast<double>(rec->citation_count) / mean : 0.0;
    for (const auto& c : rec->countries) {
      auto& a = per_country[c];
      a.sum += norm;
      ++a.n;
    }
  }

  std::map<std::string, double> out;
  for (const auto& [c, a] : per_country) out[c] = a.sum / static_cast<double>(a.n);
  return out;
}

}  // namespace bibliorank
