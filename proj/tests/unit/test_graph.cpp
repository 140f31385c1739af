#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <map>
#include <random>
#include <set>

#include "bibliorank/graph.hpp"
#include "bibliorank/graph_io.hpp"

using namespace bibliorank;

namespace {

PublicationRecord rec_kw(std::string id, std::vector<std::string> kws) {
  PublicationRecord r;
  r.id = std::move(id);
  r.year = 2010;
  r.authors = {"A"};
  r.author_keywords = std::move(kws);
  return r;
}

PublicationRecord rec_refs(std::string id, std::vector<std::string> refs,
                           std::vector<std::string> countries = {"X"}, long long cites = 0) {
  PublicationRecord r;
  r.id = std::move(id);
  r.year = 2010;
  r.authors = {"A"};
  r.references = std::move(refs);
  r.countries = std::move(countries);
  r.citation_count = cites;
  return r;
}

Corpus kw_corpus() {
  Corpus c;
  c.records = {rec_kw("d1", {"privacy", "big data"}), rec_kw("d2", {"privacy", "cloud"}),
               rec_kw("d3", {"big data", "cloud"}), rec_kw("d4", {"big data"})};
  return c;
}

int edge_weight(const WeightedGraph& g, const std::string& a, const std::string& b) {
  auto idx = [&](const std::string& k) -> int {
    for (std::size_t i = 0; i < g.nodes.size(); ++i)
      if (g.nodes[i].key == k) return static_cast<int>(i);
    return -1;
  };
  int ia = idx(a), ib = idx(b);
  if (ia < 0 || ib < 0) return -1;
  if (ia > ib) std::swap(ia, ib);
  for (const auto& e : g.edges)
    if (e.a == static_cast<std::uint32_t>(ia) && e.b == static_cast<std::uint32_t>(ib))
      return static_cast<int>(e.weight);
  return 0;
}

}  // namespace

TEST_CASE("keyword co-occurrence counts documents, not mentions") {
  auto g = keyword_cooccurrence(kw_corpus(), KeywordSource::author);
  g.check();
  REQUIRE(g.nodes.size() == 3);
  CHECK(g.nodes[0].key == "big data");
  CHECK(g.nodes[0].weight == 3.0);
  CHECK(g.nodes[1].key == "cloud");
  CHECK(g.nodes[2].key == "privacy");
  REQUIRE(g.edges.size() == 3);
  CHECK(edge_weight(g, "big data", "privacy") == 1);
  CHECK(edge_weight(g, "cloud", "privacy") == 1);
  CHECK(edge_weight(g, "big data", "cloud") == 1);
}

TEST_CASE("keyword casing folds before counting") {
  Corpus c;
  c.records = {rec_kw("d1", {"Privacy", "BIG DATA"}), rec_kw("d2", {"privacy", "big data"})};
  auto g = keyword_cooccurrence(c, KeywordSource::author);
  REQUIRE(g.nodes.size() == 2);
  CHECK(g.nodes[0].weight == 2.0);
  CHECK(edge_weight(g, "big data", "privacy") == 2);
}

TEST_CASE("min occurrences filters nodes before edges form") {
  auto g = keyword_cooccurrence(kw_corpus(), KeywordSource::author, 3);
  REQUIRE(g.nodes.size() == 1);
  CHECK(g.nodes[0].key == "big data");
  CHECK(g.edges.empty());

  auto g2 = keyword_cooccurrence(kw_corpus(), KeywordSource::author, 2);
  CHECK(g2.nodes.size() == 3);  // all survive at 2
}

TEST_CASE("edge weight never exceeds the smaller endpoint frequency") {
  auto g = keyword_cooccurrence(kw_corpus(), KeywordSource::author);
  for (const auto& e : g.edges)
    CHECK(e.weight <= std::min(g.nodes[e.a].weight, g.nodes[e.b].weight));
}

TEST_CASE("association strength rescales by endpoint frequencies") {
  auto g = keyword_cooccurrence(kw_corpus(), KeywordSource::author);
  auto a = association_strength(g);
  CHECK(a.nodes.size() == g.nodes.size());
  // big data appears in 3 docs, cloud in 2, together once
  double got = -1;
  for (const auto& e : a.edges)
    if (a.nodes[e.a].key == "big data" && a.nodes[e.b].key == "cloud") got = e.weight;
  CHECK(got == Catch::Approx(1.0 / 6.0));
}

TEST_CASE("association strength rejects non-cooccurrence graphs") {
  Corpus c;
  c.records = {rec_refs("dA", {"r1"}), rec_refs("dB", {"r1"})};
  auto g = bibliographic_coupling(c, CouplingUnit::document);
  CHECK_THROWS_AS(association_strength(g), std::invalid_argument);
}

TEST_CASE("document coupling counts shared references") {
  Corpus c;
  c.records = {rec_refs("dA", {"Canny J., 2002", "Sweeney L., 2002", "Dwork C., 2006"}),
               rec_refs("dB", {"Sweeney L., 2002", "Dwork C., 2006", "Gentry C., 2009"}),
               rec_refs("dC", {"Weiser M., 1991"})};
  auto g = bibliographic_coupling(c, CouplingUnit::document);
  g.check();
  REQUIRE(g.nodes.size() == 3);
  CHECK(g.nodes[0].key == "dA");
  CHECK(g.nodes[0].weight == 3.0);
  REQUIRE(g.edges.size() == 1);
  CHECK(edge_weight(g, "dA", "dB") == 2);
  CHECK(edge_weight(g, "dA", "dC") == 0);
}

TEST_CASE("reference keys fold case and whitespace, nothing else") {
  Corpus c;
  c.records = {rec_refs("dA", {"Canny J., 2002"}), rec_refs("dB", {"  CANNY  j., 2002 "})};
  auto g = bibliographic_coupling(c, CouplingUnit::document);
  CHECK(edge_weight(g, "dA", "dB") == 1);

  // the year is part of the key: same author, different work
  Corpus d;
  d.records = {rec_refs("dA", {"Canny J., 2002"}), rec_refs("dB", {"Canny J., 2004"})};
  CHECK(edge_weight(bibliographic_coupling(d, CouplingUnit::document), "dA", "dB") == 0);
}

TEST_CASE("country coupling pools references per country") {
  Corpus c;
  c.records = {rec_refs("dA", {"r1", "r2"}, {"Xanadu"}, 5), rec_refs("dB", {"r3", "r4"}, {"Xanadu"}, 2),
               rec_refs("dC", {"r2", "r5"}, {"Yonder"}, 0)};
  auto g = bibliographic_coupling(c, CouplingUnit::country);
  REQUIRE(g.nodes.size() == 2);
  CHECK(g.nodes[0].key == "Xanadu");
  CHECK(g.nodes[0].weight == 4.0);
  CHECK(edge_weight(g, "Xanadu", "Yonder") == 1);

  // citation floor removes dC and with it the whole Yonder pool
  auto g2 = bibliographic_coupling(c, CouplingUnit::country, 1, 1);
  REQUIRE(g2.nodes.size() == 1);
  CHECK(g2.nodes[0].key == "Xanadu");
}

TEST_CASE("co-citation links references cited together") {
  Corpus c;
  c.records = {rec_refs("d1", {"p", "q"}), rec_refs("d2", {"p", "q", "s"}), rec_refs("d3", {"q", "s"})};
  auto g = cocitation(c);
  g.check();
  REQUIRE(g.nodes.size() == 3);
  CHECK(g.nodes[1].key == "q");
  CHECK(g.nodes[1].weight == 3.0);
  CHECK(edge_weight(g, "p", "q") == 2);
  CHECK(edge_weight(g, "p", "s") == 1);
  CHECK(edge_weight(g, "q", "s") == 2);

  auto g2 = cocitation(c, 2);
  CHECK(g2.edges.size() == 2);  // (p,s) fell below the floor

  auto g3 = cocitation(c, 1, 3);
  REQUIRE(g3.nodes.size() == 1);  // only q is cited 3 times
  CHECK(g3.edges.empty());
}

TEST_CASE("threshold monotonicity: a higher floor yields a subgraph") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    Corpus c;
    int docs = 3 + static_cast<int>(rng() % 10);
    for (int d = 0; d < docs; ++d) {
      std::vector<std::string> kws;
      for (int k = 0; k < 6; ++k)
        if (rng() % 2) kws.push_back("kw" + std::to_string(k));
      c.records.push_back(rec_kw("d" + std::to_string(d), kws));
    }
    auto loose = keyword_cooccurrence(c, KeywordSource::author, 1);
    auto tight = keyword_cooccurrence(c, KeywordSource::author, 2);
    std::set<std::string> loose_nodes;
    for (const auto& n : loose.nodes) loose_nodes.insert(n.key);
    for (const auto& n : tight.nodes) REQUIRE(loose_nodes.count(n.key) == 1);
    for (const auto& e : tight.edges) {
      int w = edge_weight(loose, tight.nodes[e.a].key, tight.nodes[e.b].key);
      REQUIRE(w == static_cast<int>(e.weight));
    }
  }
}

TEST_CASE("coupling matches a brute-force pairwise intersection") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    Corpus c;
    int docs = 2 + static_cast<int>(rng() % 10);
    std::vector<std::set<std::string>> refsets(docs);
    for (int d = 0; d < docs; ++d) {
      std::vector<std::string> refs;
      for (int k = 0; k < 8; ++k)
        if (rng() % 2) {
          refs.push_back("ref" + std::to_string(k));
          refsets[d].insert("ref" + std::to_string(k));
        }
      c.records.push_back(rec_refs((d < 10 ? "d0" : "d") + std::to_string(d), refs));
    }
    auto g = bibliographic_coupling(c, CouplingUnit::document);
    for (int i = 0; i < docs; ++i)
      for (int j = i + 1; j < docs; ++j) {
        std::set<std::string> inter;
        std::set_intersection(refsets[i].begin(), refsets[i].end(), refsets[j].begin(),
                              refsets[j].end(), std::inserter(inter, inter.begin()));
        int expected = static_cast<int>(inter.size());
        int got = edge_weight(g, c.records[i].id, c.records[j].id);
        REQUIRE((got == -1 ? 0 : got) == expected);
      }
  }
}

TEST_CASE("density is edges over possible pairs") {
  auto g = keyword_cooccurrence(kw_corpus(), KeywordSource::author);
  CHECK(g.density() == Catch::Approx(1.0));  // 3 nodes, 3 edges
  WeightedGraph empty;
  CHECK(empty.density() == 0.0);
}

TEST_CASE("dot export quotes and escapes") {
  WeightedGraph g;
  g.nodes = {{"a \"quoted\" key", 1}, {"plain", 2}};
  g.edges = {{0, 1, 3}};
  auto dot = graph_to_dot(g);
  CHECK(dot.find("graph G {") == 0);
  CHECK(dot.find("\"a \\\"quoted\\\" key\" [weight=1];") != std::string::npos);
  CHECK(dot.find("\"a \\\"quoted\\\" key\" -- \"plain\" [weight=3];") != std::string::npos);
}

TEST_CASE("graphml export carries weights and escapes markup") {
  WeightedGraph g;
  g.nodes = {{"a<b&c", 1.5}, {"d", 2}};
  g.edges = {{0, 1, 0.25}};
  auto xml = graph_to_graphml(g);
  CHECK(xml.find("label=\"a&lt;b&amp;c\"") != std::string::npos);
  CHECK(xml.find("<data key=\"w\">1.5</data>") != std::string::npos);
  CHECK(xml.find("source=\"n0\" target=\"n1\"") != std::string::npos);
  CHECK(xml.find("<data key=\"ew\">0.25</data>") != std::string::npos);
}

TEST_CASE("pajek export is one-based") {
  WeightedGraph g;
  g.nodes = {{"x", 1}, {"y", 2}, {"z", 3}};
  g.edges = {{0, 2, 4}};
  auto net = graph_to_pajek(g);
  CHECK(net.find("*Vertices 3") == 0);
  CHECK(net.find("1 \"x\" 1") != std::string::npos);
  CHECK(net.find("*Edges\n1 3 4") != std::string::npos);
}

TEST_CASE("graph file dispatch by extension") {
  WeightedGraph g;
  g.nodes = {{"n1", 1}, {"n2", 1}};
  g.edges = {{0, 1, 1}};
  std::string base = std::tmpnam(nullptr);
  for (const char* ext : {".dot", ".graphml", ".net"}) {
    std::string path = base + std::string(ext);
    write_graph_file(g, path);
    CHECK(!read_file(path).empty());
    std::remove(path.c_str());
  }
  CHECK_THROWS_AS(write_graph_file(g, base + ".txt"), ValidationError);
}

TEST_CASE("normalized citations: same-year equal citations score 1.0 everywhere") {
  Corpus c;
  c.records = {rec_refs("a", {}, {"Xanadu"}, 7), rec_refs("b", {}, {"Yonder"}, 7),
               rec_refs("c", {}, {"Xanadu", "Yonder"}, 7)};
  auto scores = avg_normalized_citations(c);
  REQUIRE(scores.size() == 2);
  CHECK(scores.at("Xanadu") == Catch::Approx(1.0));
  CHECK(scores.at("Yonder") == Catch::Approx(1.0));
}

TEST_CASE("normalized citations: {0, 20} against a year mean of 10 averages to 1.0") {
  Corpus c;
  c.records = {rec_refs("a", {}, {"Solo"}, 0), rec_refs("b", {}, {"Solo"}, 20)};
  auto scores = avg_normalized_citations(c);
  CHECK(scores.at("Solo") == Catch::Approx(1.0));
}

TEST_CASE("normalized citations: zero-mean years contribute zero, not NaN") {
  Corpus c;
  c.records = {rec_refs("a", {}, {"Solo"}, 0)};
  CHECK(avg_normalized_citations(c).at("Solo") == 0.0);
}

TEST_CASE("normalized citations: excluding uncited documents shifts the score") {
  Corpus c;
  c.records = {rec_refs("a", {}, {"Solo"}, 0), rec_refs("b", {}, {"Solo"}, 20)};
  auto filtered = avg_normalized_citations(c, true);
  // only the 20-citation paper remains, and it defines the year mean
  CHECK(filtered.at("Solo") == Catch::Approx(1.0));
  Corpus d;
  d.records = {rec_refs("a", {}, {"Solo"}, 0), rec_refs("b", {}, {"Solo"}, 10),
               rec_refs("c", {}, {"Solo"}, 20)};
  CHECK(avg_normalized_citations(d, true).at("Solo") == Catch::Approx(1.0));
  CHECK(avg_normalized_citations(d).at("Solo") == Catch::Approx(1.0));
}

TEST_CASE("normalized citations conserve mass with one country per paper") {
  std::mt19937 rng(77);
  Corpus c;
  std::map<std::string, int> pubs;
  for (int i = 0; i < 60; ++i) {
    std::string country = std::string("C") + std::to_string(rng() % 5);
    int year = 2005 + static_cast<int>(rng() % 4);
    auto r = rec_refs("d" + std::to_string(i), {}, {country}, 1 + rng() % 40);
    r.year = year;
    c.records.push_back(std::move(r));
    ++pubs[country];
  }
  auto scores = avg_normalized_citations(c);
  double weighted = 0;
  int total = 0;
  for (const auto& [country, n] : pubs) {
    weighted += scores.at(country) * n;
    total += n;
  }
  CHECK(weighted / total == Catch::Approx(1.0).margin(1e-9));
}
