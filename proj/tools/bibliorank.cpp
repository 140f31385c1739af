// Command-line front end: ingest, indicators, rank, graph, cluster.
// Every run writes a manifest with content digests of inputs and outputs
// plus a key=value summary file, both under --out-dir.

#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bibliorank/bibliorank.hpp"

namespace fs = std::filesystem;
using namespace bibliorank;

namespace {

std::vector<std::string> g_argv;

std::string under(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

// default outputs land in out-dir; explicit --out paths are taken verbatim
std::string pick(const std::string& given, const std::string& dir, const std::string& fallback) {
  return given.empty() ? under(dir, fallback) : given;
}

void flush_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

void finish(RunManifest& mf, const std::string& dir) {
  mf.argv = g_argv;
  mf.write(under(dir, mf.command + "_manifest.json"));
  write_file(under(dir, mf.command + "_summary.txt"), summary_kv(mf.summary));
}

struct IngestOpts {
  std::string in, schema, out, exclusions_out, out_dir = ".";
  bool dedupe = false;
};

void run_ingest(const IngestOpts& o) {
  fs::create_directories(o.out_dir);
  std::string out = pick(o.out, o.out_dir, "corpus.ndjson");
  std::string excl_out = pick(o.exclusions_out, o.out_dir, "exclusions.csv");

  auto schema = SchemaMap::load(o.schema);
  auto res = ingest_csv(o.in, schema);
  if (o.dedupe) {
    auto deduped = dedupe(res.corpus);
    res.corpus = std::move(deduped.corpus);
    for (auto& e : deduped.exclusions) res.exclusions.push_back(std::move(e));
  }
  write_file(out, corpus_to_ndjson(res.corpus));
  write_file(excl_out, exclusions_csv(res.exclusions));

  RunManifest mf;
  mf.command = "ingest";
  mf.add_input(o.in);
  mf.add_config(o.schema);
  mf.add_output(out);
  mf.add_output(excl_out);
  mf.add_summary("records", std::to_string(res.corpus.records.size()));
  mf.add_summary("excluded", std::to_string(res.exclusions.size()));
  mf.add_summary("dedupe", o.dedupe ? "on" : "off");
  finish(mf, o.out_dir);
}

struct IndicatorsOpts {
  std::string in, sis, out, norm_out, out_dir = ".";
  bool fractional = false;
  bool exclude_uncited = false;
};

void run_indicators(const IndicatorsOpts& o) {
  fs::create_directories(o.out_dir);
  std::string out = pick(o.out, o.out_dir, "indicators.csv");

  auto corpus = read_corpus_file(o.in);
  std::map<std::string, double> sis;
  if (!o.sis.empty()) sis = load_sis_table(o.sis);
  std::vector<std::string> warnings;
  auto rows = country_indicators(corpus, sis,
                                 o.fractional ? Counting::fractional : Counting::full, &warnings);
  flush_warnings(warnings);
  write_file(out, indicator_table_csv(rows));

  RunManifest mf;
  mf.command = "indicators";
  mf.add_input(o.in);
  if (!o.sis.empty()) mf.add_config(o.sis);
  mf.add_output(out);

  if (!o.norm_out.empty()) {
    auto scores = avg_normalized_citations(corpus, o.exclude_uncited);
    std::string csv = "Country,AvgNormCites\n";
    for (const auto& [country, score] : scores) csv += csv_row({country, format_number(score)});
    write_file(o.norm_out, csv);
    mf.add_output(o.norm_out);
  }

  mf.add_summary("records", std::to_string(corpus.records.size()));
  mf.add_summary("countries", std::to_string(rows.size()));
  mf.add_summary("counting", o.fractional ? "fractional" : "full");
  finish(mf, o.out_dir);
}

struct RankOpts {
  std::string in, criteria, normalization = "vector", out, compare_out, out_dir = ".";
  double v = 0.5;
};

void run_rank(const RankOpts& o) {
  fs::create_directories(o.out_dir);
  std::string out = pick(o.out, o.out_dir, "rank_report.csv");
  std::string compare_out = pick(o.compare_out, o.out_dir, "rank_compare.csv");

  auto rows = load_indicator_table(o.in);
  std::vector<std::string> warnings;
  std::vector<Criterion> tcrit, vcrit;
  if (o.criteria.empty()) {
    tcrit = default_topsis_criteria();
    vcrit = default_vikor_criteria();
  } else {
    tcrit = load_criteria(o.criteria, &warnings);
    vcrit = tcrit;
  }
  auto tm = build_matrix(rows, tcrit, &warnings);
  auto vm = build_matrix(rows, vcrit, &warnings);

  TopsisOptions topts;
  topts.normalization = o.normalization == "minmax" ? TopsisNorm::minmax : TopsisNorm::vector;
  auto tres = topsis(tm, topts);
  auto vres = vikor(vm, o.v);

  // ranks join the indicator columns by country; first occurrence wins
  std::map<std::string, std::size_t> tidx, vidx;
  for (std::size_t i = 0; i < tm.rows(); ++i) tidx.emplace(tm.alternatives[i], i);
  for (std::size_t i = 0; i < vm.rows(); ++i) vidx.emplace(vm.alternatives[i], i);

  auto raw = read_csv_file(o.in);
  std::size_t country_col = 0;
  for (std::size_t j = 0; j < raw[0].size(); ++j)
    if (raw[0][j] == "Country") country_col = j;

  std::string report;
  for (std::size_t r = 0; r < raw.size(); ++r) {
    auto cells = raw[r];
    if (r == 0) {
      for (const char* h : {"T.s", "T.r", "V.S", "V.R", "V.Q", "V.r", "T.r.dense", "V.r.dense"})
        cells.push_back(h);
    } else {
      const std::string country = cells.at(country_col);  // copy: push_back reallocates
      auto ti = tidx.find(country);
      if (ti != tidx.end()) {
        cells.push_back(format_fixed(tres.closeness[ti->second], 3));
        cells.push_back(std::to_string(tres.rank[ti->second]));
      } else
        cells.insert(cells.end(), {"", ""});
      auto vi = vidx.find(country);
      if (vi != vidx.end()) {
        cells.push_back(format_fixed(vres.s[vi->second], 3));
        cells.push_back(format_fixed(vres.r[vi->second], 3));
        cells.push_back(format_fixed(vres.q[vi->second], 3));
        cells.push_back(std::to_string(vres.rank[vi->second]));
      } else
        cells.insert(cells.end(), {"", "", "", ""});
      cells.push_back(ti != tidx.end() ? std::to_string(tres.dense_rank[ti->second]) : "");
      cells.push_back(vi != vidx.end() ? std::to_string(vres.dense_rank[vi->second]) : "");
    }
    report += csv_row(cells);
  }
  write_file(out, report);

  RunManifest mf;
  mf.command = "rank";
  mf.add_input(o.in);
  if (!o.criteria.empty()) mf.add_config(o.criteria);
  mf.add_output(out);

  // methods can rank different row subsets when criteria needs diverge;
  // the divergence report only makes sense over the same alternatives
  std::map<std::string, int> tmap, vmap;
  for (std::size_t i = 0; i < tm.rows(); ++i) tmap.emplace(tm.alternatives[i], tres.rank[i]);
  for (std::size_t i = 0; i < vm.rows(); ++i) vmap.emplace(vm.alternatives[i], vres.rank[i]);
  bool comparable = tmap.size() == tm.rows() && vmap.size() == vm.rows() && tmap.size() == vmap.size();
  if (comparable)
    for (auto a = tmap.begin(), b = vmap.begin(); a != tmap.end(); ++a, ++b)
      if (a->first != b->first) {
        comparable = false;
        break;
      }
  if (comparable && tmap.size() >= 2) {
    auto cmp = rank_compare(tmap, vmap);
    write_file(compare_out, rank_compare_csv(cmp));
    mf.add_output(compare_out);
    mf.add_summary("spearman_rho", format_number(cmp.spearman_rho));
    mf.add_summary("kendall_tau", format_number(cmp.kendall_tau));
  } else {
    warnings.push_back("rank comparison skipped: methods ranked different alternative sets");
    mf.add_summary("rank_compare", "skipped");
  }
  flush_warnings(warnings);

  for (std::size_t i = 0; i < tm.rows(); ++i)
    if (tres.rank[i] == 1) mf.add_summary("top_topsis", tm.alternatives[i]);
  for (std::size_t i = 0; i < vm.rows(); ++i)
    if (vres.rank[i] == 1) mf.add_summary("top_vikor", vm.alternatives[i]);
  mf.add_summary("alternatives", std::to_string(raw.size() - 1));
  mf.add_summary("v", format_number(o.v));
  mf.add_summary("normalization", o.normalization);
  finish(mf, o.out_dir);
}

struct GraphOpts {
  std::string in, kind, out, keyword_source = "author", unit = "document", out_dir = ".";
  double min = -1;  // unset: kind decides (cocitation defaults to 3)
  double min_node_citations = 1;
  long long min_citations = 1;
  bool association = false;
};

void run_graph(const GraphOpts& o) {
  fs::create_directories(o.out_dir);
  auto corpus = read_corpus_file(o.in);

  WeightedGraph g;
  if (o.kind == "cooccurrence") {
    double min_occ = o.min < 0 ? 1 : o.min;
    auto source = o.keyword_source == "indexed" ? KeywordSource::indexed : KeywordSource::author;
    g = keyword_cooccurrence(corpus, source, min_occ);
    if (o.association) g = association_strength(g);
  } else if (o.kind == "coupling") {
    double min_edge = o.min < 0 ? 1 : o.min;
    auto unit = o.unit == "country" ? CouplingUnit::country : CouplingUnit::document;
    g = bibliographic_coupling(corpus, unit, min_edge,
                               unit == CouplingUnit::country ? o.min_citations : 0);
  } else {
    double min_edge = o.min < 0 ? 3 : o.min;
    g = cocitation(corpus, min_edge, o.min_node_citations);
  }
  g.check();
  write_graph_file(g, o.out);

  RunManifest mf;
  mf.command = "graph";
  mf.add_input(o.in);
  mf.add_output(o.out);
  mf.add_summary("kind", o.kind);
  mf.add_summary("nodes", std::to_string(g.nodes.size()));
  mf.add_summary("edges", std::to_string(g.edges.size()));
  mf.add_summary("density", format_number(g.density()));
  finish(mf, o.out_dir);
}

struct ClusterOpts {
  std::string in, stopwords, rules, weighting = "tfidf", out, matrix_out, out_dir = ".";
  std::size_t k = 3;
  std::uint64_t seed = 42;
  std::size_t max_iter = 100;
  bool bisecting = false;
  bool smooth = false;
  bool keep_saturated = false;
};

void run_cluster(const ClusterOpts& o) {
  fs::create_directories(o.out_dir);
  std::string out = pick(o.out, o.out_dir, "clusters.csv");

  auto corpus = read_corpus_file(o.in);
  std::unordered_set<std::string> stopwords;
  if (!o.stopwords.empty()) stopwords = load_stopwords(o.stopwords);
  std::vector<WildcardRule> rules;
  if (!o.rules.empty()) rules = load_rules(o.rules);

  auto m = tokenize_corpus(corpus, stopwords, rules);
  std::vector<std::string> warnings;
  if (o.weighting == "tfidf") m = tfidf(m, {o.smooth, o.keep_saturated}, &warnings);
  flush_warnings(warnings);

  Clustering c;
  if (o.bisecting) {
    c = bisecting_kmeans(m, o.k, o.seed, o.max_iter).clustering;
  } else {
    c = kmeans(m, o.k, o.seed, o.max_iter);
  }

  std::string csv = "doc_id,cluster\n";
  for (std::size_t i = 0; i < m.docs(); ++i)
    csv += csv_row({m.doc_ids[i], std::to_string(c.assignments[i])});
  write_file(out, csv);

  RunManifest mf;
  mf.command = "cluster";
  mf.add_input(o.in);
  if (!o.stopwords.empty()) mf.add_config(o.stopwords);
  if (!o.rules.empty()) mf.add_config(o.rules);
  mf.add_output(out);
  if (!o.matrix_out.empty()) {
    write_matrix_market(m, o.matrix_out);
    mf.add_output(o.matrix_out);
    mf.add_output(o.matrix_out + ".index");
  }
  mf.add_summary("docs", std::to_string(m.docs()));
  mf.add_summary("terms", std::to_string(m.vocab()));
  mf.add_summary("k", std::to_string(o.k));
  mf.add_summary("seed", std::to_string(o.seed));
  mf.add_summary("mode", o.bisecting ? "bisecting" : "lloyd");
  mf.add_summary("iterations", std::to_string(c.iterations));
  mf.add_summary("sse", format_number(c.sse));
  finish(mf, o.out_dir);
}

}  // namespace

int main(int argc, char** argv) {
  g_argv.assign(argv, argv + argc);

  CLI::App app{"bibliometric indicators, networks and country ranking"};
  app.require_subcommand(1);

  IngestOpts ing;
  auto* c_ing = app.add_subcommand("ingest", "parse a records CSV into a validated corpus");
  c_ing->add_option("--in", ing.in, "records CSV")->required();
  c_ing->add_option("--schema", ing.schema, "column mapping file")->required();
  c_ing->add_option("--out", ing.out, "corpus output (default <out-dir>/corpus.ndjson)");
  c_ing->add_option("--exclusions", ing.exclusions_out, "exclusion report CSV");
  c_ing->add_flag("--dedupe", ing.dedupe, "drop duplicate records, keeping the best cited");
  c_ing->add_option("--out-dir", ing.out_dir, "directory for outputs and the run manifest");
  c_ing->callback([&ing] { run_ingest(ing); });

  IndicatorsOpts ind;
  auto* c_ind = app.add_subcommand("indicators", "per-country indicator table from a corpus");
  c_ind->add_option("--in", ind.in, "corpus file")->required();
  c_ind->add_option("--sis", ind.sis, "country,servers CSV to join");
  c_ind->add_option("--out", ind.out, "indicator table CSV");
  c_ind->add_flag("--fractional", ind.fractional, "split multi-country papers evenly");
  c_ind->add_option("--norm-citations", ind.norm_out, "also write year-normalized citation scores");
  c_ind->add_flag("--exclude-uncited", ind.exclude_uncited,
                  "drop zero-citation papers from normalized scores");
  c_ind->add_option("--out-dir", ind.out_dir, "directory for outputs and the run manifest");
  c_ind->callback([&ind] { run_indicators(ind); });

  RankOpts rnk;
  auto* c_rnk = app.add_subcommand("rank", "rank countries from an indicator table");
  c_rnk->add_option("--in", rnk.in, "indicator table CSV")->required();
  c_rnk->add_option("--criteria", rnk.criteria, "criteria config (name direction weight per line)");
  c_rnk->add_option("--v", rnk.v, "compromise weight, 1 = group utility only")
      ->check(CLI::Range(0.0, 1.0));
  c_rnk->add_option("--normalization", rnk.normalization, "vector or minmax")
      ->check(CLI::IsMember({"vector", "minmax"}));
  c_rnk->add_option("--out", rnk.out, "combined report CSV");
  c_rnk->add_option("--compare", rnk.compare_out, "rank divergence CSV");
  c_rnk->add_option("--out-dir", rnk.out_dir, "directory for outputs and the run manifest");
  c_rnk->callback([&rnk] { run_rank(rnk); });

  GraphOpts gph;
  auto* c_gph = app.add_subcommand("graph", "build and export a corpus network");
  c_gph->add_option("--in", gph.in, "corpus file")->required();
  c_gph->add_option("--kind", gph.kind, "cooccurrence, coupling or cocitation")
      ->required()
      ->check(CLI::IsMember({"cooccurrence", "coupling", "cocitation"}));
  c_gph->add_option("--out", gph.out, "graph file (.dot/.gv, .graphml/.xml, .net/.paj)")
      ->required();
  c_gph->add_option("--min", gph.min,
                    "threshold: keyword occurrences, coupling edge weight, or co-citations "
                    "(co-citation default 3)");
  c_gph->add_option("--keyword-source", gph.keyword_source, "author or indexed")
      ->check(CLI::IsMember({"author", "indexed"}));
  c_gph->add_flag("--association", gph.association, "rescale edges by association strength");
  c_gph->add_option("--unit", gph.unit, "coupling unit: document or country")
      ->check(CLI::IsMember({"document", "country"}));
  c_gph->add_option("--min-citations", gph.min_citations,
                    "per-document citation floor for country coupling");
  c_gph->add_option("--min-node-citations", gph.min_node_citations,
                    "citing-document floor for co-citation nodes");
  c_gph->add_option("--out-dir", gph.out_dir, "directory for the run manifest");
  c_gph->callback([&gph] { run_graph(gph); });

  ClusterOpts clu;
  auto* c_clu = app.add_subcommand("cluster", "tf-idf + k-means over titles and abstracts");
  c_clu->add_option("--in", clu.in, "corpus file")->required();
  c_clu->add_option("--k", clu.k, "cluster count")->required();
  c_clu->add_option("--seed", clu.seed, "rng seed");
  c_clu->add_option("--max-iter", clu.max_iter, "iteration cap");
  c_clu->add_flag("--bisecting", clu.bisecting, "split clusters one at a time");
  c_clu->add_option("--stopwords", clu.stopwords, "one stopword per line");
  c_clu->add_option("--rules", clu.rules, "wildcard merge rules, 'priva* privacy' per line");
  c_clu->add_option("--weighting", clu.weighting, "tfidf or tf")
      ->check(CLI::IsMember({"tfidf", "tf"}));
  c_clu->add_flag("--smooth", clu.smooth, "smoothed idf variant");
  c_clu->add_flag("--keep-saturated", clu.keep_saturated, "keep terms present in every document");
  c_clu->add_option("--out", clu.out, "doc_id,cluster CSV");
  c_clu->add_option("--matrix", clu.matrix_out, "also export the weighted matrix (MatrixMarket)");
  c_clu->add_option("--out-dir", clu.out_dir, "directory for outputs and the run manifest");
  c_clu->callback([&clu] { run_cluster(clu); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage problems are input errors
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
