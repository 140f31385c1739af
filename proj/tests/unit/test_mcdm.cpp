#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <map>

#include "bibliorank/mcdm.hpp"

using namespace bibliorank;

namespace {

const std::string kFixtures = FIXTURE_DIR;

DecisionMatrix hand_instance() {
  // the worked 3x2 example from docs/mcdm_hand_worksheet.md
  DecisionMatrix m;
  m.alternatives = {"A", "B", "C"};
  m.criteria = {{"c1", Direction::benefit, 0.5}, {"c2", Direction::benefit, 0.5}};
  m.x = {{1, 9}, {5, 5}, {9, 1}};
  return m;
}

struct PublishedTable {
  std::vector<std::string> countries;
  std::vector<double> ts, vs, vr, vq;
  std::vector<int> tr, vrank;
};

PublishedTable load_published() {
  PublishedTable t;
  for (const auto& row : read_csv_file(kFixtures + "/fixtures/country_mcdm_published.csv")) {
    if (row[0] == "Country") continue;
    t.countries.push_back(row[0]);
    t.ts.push_back(*parse_double(row[1]));
    t.tr.push_back(static_cast<int>(*parse_int(row[2])));
    t.vs.push_back(*parse_double(row[3]));
    t.vr.push_back(*parse_double(row[4]));
    t.vq.push_back(*parse_double(row[5]));
    t.vrank.push_back(static_cast<int>(*parse_int(row[6])));
  }
  return t;
}

}  // namespace

TEST_CASE("hand worksheet: topsis on the symmetric 3x2 instance") {
  auto r = topsis(hand_instance());
  // both columns have norm sqrt(107); ideal (4.5,4.5)/sqrt(107), anti (0.5,0.5)/sqrt(107)
  for (int i = 0; i < 3; ++i) CHECK(r.closeness[i] == Catch::Approx(0.5).margin(1e-9));
  CHECK(r.dist_ideal[0] == Catch::Approx(4.0 / std::sqrt(107.0)).margin(1e-9));
  CHECK(r.dist_anti[0] == Catch::Approx(4.0 / std::sqrt(107.0)).margin(1e-9));
  CHECK(r.dist_ideal[1] == Catch::Approx(std::sqrt(8.0 / 107.0)).margin(1e-9));
  // A and C run through bit-identical arithmetic, so they tie exactly and
  // keep input order; B's closeness may differ in the last bit either way
  std::vector<int> sorted = r.rank;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<int>{1, 2, 3});
  CHECK(r.rank[0] < r.rank[2]);
  CHECK(r.dense_rank[0] == r.dense_rank[2]);
}

TEST_CASE("hand worksheet: instance is symmetric under column swap + row reversal") {
  auto base = topsis(hand_instance());
  DecisionMatrix m = hand_instance();
  std::swap(m.x[0], m.x[2]);  // reversing rows == swapping both columns here
  auto flipped = topsis(m);
  for (int i = 0; i < 3; ++i)
    CHECK(base.closeness[i] == Catch::Approx(flipped.closeness[2 - i]).margin(1e-12));
}

TEST_CASE("hand worksheet: vikor on the symmetric 3x2 instance") {
  auto r = vikor(hand_instance(), 0.5);
  CHECK(r.s[0] == Catch::Approx(0.5).margin(1e-9));
  CHECK(r.s[1] == Catch::Approx(0.5).margin(1e-9));
  CHECK(r.s[2] == Catch::Approx(0.5).margin(1e-9));
  CHECK(r.r[0] == Catch::Approx(0.5).margin(1e-9));
  CHECK(r.r[1] == Catch::Approx(0.25).margin(1e-9));
  CHECK(r.r[2] == Catch::Approx(0.5).margin(1e-9));
  CHECK(r.s_degenerate);  // constant S: its Q term is defined as zero
  CHECK_FALSE(r.r_degenerate);
  CHECK(r.q[0] == Catch::Approx(0.5).margin(1e-9));
  CHECK(r.q[1] == Catch::Approx(0.0).margin(1e-9));
  CHECK(r.q[2] == Catch::Approx(0.5).margin(1e-9));
  CHECK(r.rank == std::vector<int>{2, 1, 3});
  // min-Q row also minimizes R, as the worksheet notes
  CHECK(r.r[1] == *std::min_element(r.r.begin(), r.r.end()));
  CHECK(r.acceptable_advantage);  // 0.5 - 0.0 >= 1/(3-1)
  CHECK(r.acceptable_stability);
  CHECK(r.compromise_set == std::vector<std::string>{"B"});
}

TEST_CASE("two alternatives, one benefit criterion: closeness hits the endpoints") {
  DecisionMatrix m;
  m.alternatives = {"hi", "lo"};
  m.criteria = {{"c", Direction::benefit, 1.0}};
  m.x = {{10}, {5}};
  auto r = topsis(m);
  CHECK(r.closeness[0] == Catch::Approx(1.0));
  CHECK(r.closeness[1] == Catch::Approx(0.0).margin(1e-15));
  CHECK(r.rank == std::vector<int>{1, 2});
}

TEST_CASE("an alternative dominating everywhere gets S = R = Q = 0") {
  DecisionMatrix m;
  m.alternatives = {"top", "mid", "low"};
  m.criteria = {{"a", Direction::benefit, 0.5}, {"b", Direction::cost, 0.5}};
  m.x = {{10, 1}, {6, 3}, {2, 9}};
  auto r = vikor(m, 0.5);
  CHECK(r.s[0] == 0.0);
  CHECK(r.r[0] == 0.0);
  CHECK(r.q[0] == 0.0);
  CHECK(r.rank[0] == 1);
}

TEST_CASE("published table: topsis reproduces scores and the full ranking") {
  auto pub = load_published();
  auto rows = load_indicator_table(kFixtures + "/fixtures/country_indicators.csv");
  auto m = build_matrix(rows, default_topsis_criteria());
  auto r = topsis(m);
  REQUIRE(m.alternatives == pub.countries);
  for (std::size_t i = 0; i < 20; ++i) {
    CHECK(r.closeness[i] == Catch::Approx(pub.ts[i]).margin(5e-3));
    CHECK(r.rank[i] == pub.tr[i]);
  }
}

TEST_CASE("published table: vikor reproduces S, R, Q and the full ranking") {
  auto pub = load_published();
  auto rows = load_indicator_table(kFixtures + "/fixtures/country_indicators.csv");
  auto m = build_matrix(rows, default_vikor_criteria());
  auto r = vikor(m, 0.5);
  for (std::size_t i = 0; i < 20; ++i) {
    CHECK(r.s[i] == Catch::Approx(pub.vs[i]).margin(5e-3));
    CHECK(r.r[i] == Catch::Approx(pub.vr[i]).margin(5e-3));
    CHECK(r.q[i] == Catch::Approx(pub.vq[i]).margin(5e-3));
    CHECK(r.rank[i] == pub.vrank[i]);
  }
  // the regret ceiling sits at the single-criterion weight
  double rmax = *std::max_element(r.r.begin(), r.r.end());
  CHECK(rmax == Catch::Approx(1.0 / 7.0).margin(5e-3));
}

TEST_CASE("topsis scale invariance on a sample column") {
  DecisionMatrix m;
  m.alternatives = {"p", "q", "r"};
  m.criteria = {{"a", Direction::benefit, 0.6}, {"b", Direction::cost, 0.4}};
  m.x = {{3, 7}, {8, 2}, {5, 5}};
  auto base = topsis(m);
  DecisionMatrix scaled = m;
  for (auto& row : scaled.x) row[1] *= 1234.5;
  auto after = topsis(scaled);
  for (int i = 0; i < 3; ++i)
    CHECK(base.closeness[i] == Catch::Approx(after.closeness[i]).margin(1e-12));
  CHECK(base.rank == after.rank);
}

TEST_CASE("vikor affine invariance on a sample column") {
  DecisionMatrix m;
  m.alternatives = {"p", "q", "r"};
  m.criteria = {{"a", Direction::benefit, 0.6}, {"b", Direction::cost, 0.4}};
  m.x = {{3, 7}, {8, 2}, {5, 5}};
  auto base = vikor(m, 0.4);
  DecisionMatrix mapped = m;
  for (auto& row : mapped.x) row[0] = 2.5 * row[0] + 17.0;
  auto after = vikor(mapped, 0.4);
  for (int i = 0; i < 3; ++i) {
    CHECK(base.s[i] == Catch::Approx(after.s[i]).margin(1e-12));
    CHECK(base.r[i] == Catch::Approx(after.r[i]).margin(1e-12));
    CHECK(base.q[i] == Catch::Approx(after.q[i]).margin(1e-12));
  }
}

TEST_CASE("flipping direction and negating the column changes nothing") {
  DecisionMatrix m;
  m.alternatives = {"p", "q", "r"};
  m.criteria = {{"a", Direction::benefit, 0.5}, {"b", Direction::cost, 0.5}};
  m.x = {{3, 7}, {8, 2}, {5, 5}};
  DecisionMatrix neg = m;
  neg.criteria[1].direction = Direction::benefit;
  for (auto& row : neg.x) row[1] = -row[1];

  auto t1 = topsis(m), t2 = topsis(neg);
  for (int i = 0; i < 3; ++i)
    CHECK(t1.closeness[i] == Catch::Approx(t2.closeness[i]).margin(1e-12));
  auto v1 = vikor(m, 0.5), v2 = vikor(neg, 0.5);
  for (int i = 0; i < 3; ++i) CHECK(v1.q[i] == Catch::Approx(v2.q[i]).margin(1e-12));
}

TEST_CASE("validation errors carry the column name") {
  DecisionMatrix m;
  m.alternatives = {"p", "q"};
  m.criteria = {{"zeros", Direction::benefit, 0.5}, {"fine", Direction::benefit, 0.5}};
  m.x = {{0, 1}, {0, 2}};
  try {
    topsis(m);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("zeros") != std::string::npos);
  }

  DecisionMatrix c;
  c.alternatives = {"p", "q"};
  c.criteria = {{"flat", Direction::benefit, 0.5}, {"fine", Direction::benefit, 0.5}};
  c.x = {{4, 1}, {4, 2}};
  try {
    vikor(c, 0.5);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("flat") != std::string::npos);
  }
}

TEST_CASE("degenerate sizes and parameters are rejected") {
  DecisionMatrix one;
  one.alternatives = {"only"};
  one.criteria = {{"c", Direction::benefit, 1.0}};
  one.x = {{5}};
  CHECK_THROWS_AS(topsis(one), ValidationError);
  TopsisOptions allow;
  allow.allow_single_alternative = true;
  auto r = topsis(one, allow);
  CHECK(r.closeness == std::vector<double>{1.0});
  CHECK_THROWS_AS(vikor(one, 0.5), ValidationError);

  auto m = hand_instance();
  CHECK_THROWS_AS(vikor(m, 1.5), ValidationError);
  CHECK_THROWS_AS(vikor(m, -0.1), ValidationError);
  m.criteria[0].weight = 0.9;  // weights no longer sum to 1
  CHECK_THROWS_AS(topsis(m), ValidationError);
}

TEST_CASE("minmax normalization is available and direction-aware") {
  DecisionMatrix m;
  m.alternatives = {"p", "q", "r"};
  m.criteria = {{"a", Direction::benefit, 0.5}, {"b", Direction::cost, 0.5}};
  m.x = {{3, 7}, {8, 2}, {5, 5}};
  TopsisOptions opts;
  opts.normalization = TopsisNorm::minmax;
  auto r = topsis(m, opts);
  // q dominates on both folded columns: best on a (max) and on b (min)
  CHECK(r.rank[1] == 1);
  CHECK(r.closeness[1] == Catch::Approx(1.0));
  for (double c : r.closeness) {
    CHECK(c >= 0.0);
    CHECK(c <= 1.0);
  }
}

TEST_CASE("criteria config loads, validates and rescales weights") {
  std::string path = std::string(std::tmpnam(nullptr)) + "_crit.cfg";
  write_file(path, "# comment\npub benefit 2\nncp cost 1\nsis benefit 1\n");
  std::vector<std::string> warnings;
  auto crit = load_criteria(path, &warnings);
  REQUIRE(crit.size() == 3);
  CHECK(crit[0].weight == Catch::Approx(0.5));
  CHECK(crit[1].direction == Direction::cost);
  CHECK(!warnings.empty());  // rescaled

  write_file(path, "pub sideways 1\n");
  CHECK_THROWS_AS(load_criteria(path), ValidationError);
  write_file(path, "pub benefit 0\n");
  CHECK_THROWS_AS(load_criteria(path), ValidationError);
  write_file(path, "pub benefit 1\npub cost 1\n");
  CHECK_THROWS_AS(load_criteria(path), ValidationError);
  std::remove(path.c_str());
}

TEST_CASE("default criteria sets are normalized and name ncp as the cost") {
  for (const auto& set : {default_topsis_criteria(), default_vikor_criteria()}) {
    double sum = 0;
    for (const auto& c : set) {
      sum += c.weight;
      if (c.name == "ncp") CHECK(c.direction == Direction::cost);
      else CHECK(c.direction == Direction::benefit);
    }
    CHECK(sum == Catch::Approx(1.0).margin(1e-12));
  }
  CHECK(default_topsis_criteria().size() == 8);
  CHECK(default_vikor_criteria().size() == 7);
}

TEST_CASE("build_matrix excludes rows lacking a selected value, keeps duplicates") {
  std::vector<CountryIndicators> rows(3);
  rows[0].country = "Withsis";
  rows[0].pub = 5;
  rows[0].sis = 100.0;
  rows[1].country = "Nosis";
  rows[1].pub = 3;
  rows[2].country = "Withsis";  // duplicate name
  rows[2].pub = 1;
  rows[2].sis = 50.0;

  std::vector<Criterion> crit = {{"pub", Direction::benefit, 0.5}, {"sis", Direction::benefit, 0.5}};
  std::vector<std::string> warnings;
  auto m = build_matrix(rows, crit, &warnings);
  CHECK(m.alternatives == std::vector<std::string>{"Withsis", "Withsis"});
  bool excluded_note = false, duplicate_note = false;
  for (const auto& w : warnings) {
    if (w.find("Nosis") != std::string::npos) excluded_note = true;
    if (w.find("duplicate") != std::string::npos) duplicate_note = true;
  }
  CHECK(excluded_note);
  CHECK(duplicate_note);

  std::vector<Criterion> bogus = {{"nonesuch", Direction::benefit, 1.0}};
  CHECK_THROWS_AS(build_matrix(rows, bogus), ValidationError);
}

TEST_CASE("rank_compare endpoints: identical and reversed") {
  std::map<std::string, int> a = {{"w", 1}, {"x", 2}, {"y", 3}, {"z", 4}};
  auto same = rank_compare(a, a);
  CHECK(same.spearman_rho == Catch::Approx(1.0));
  CHECK(same.kendall_tau == Catch::Approx(1.0));
  for (const auto& d : same.deltas) CHECK(d.delta == 0);

  std::map<std::string, int> rev = {{"w", 4}, {"x", 3}, {"y", 2}, {"z", 1}};
  auto opposite = rank_compare(a, rev);
  CHECK(opposite.spearman_rho == Catch::Approx(-1.0));
  CHECK(opposite.kendall_tau == Catch::Approx(-1.0));
}

TEST_CASE("rank_compare rejects mismatched alternative sets") {
  std::map<std::string, int> a = {{"x", 1}, {"y", 2}};
  std::map<std::string, int> b = {{"x", 1}, {"z", 2}};
  CHECK_THROWS_AS(rank_compare(a, b), ValidationError);
  std::map<std::string, int> c = {{"x", 1}};
  CHECK_THROWS_AS(rank_compare(a, c), ValidationError);
}

TEST_CASE("rank_compare on the published rankings") {
  auto pub = load_published();
  std::map<std::string, int> tr, vr;
  for (std::size_t i = 0; i < pub.countries.size(); ++i) {
    tr[pub.countries[i]] = pub.tr[i];
    vr[pub.countries[i]] = pub.vrank[i];
  }
  auto cmp = rank_compare(tr, vr);
  CHECK(cmp.spearman_rho == Catch::Approx(4596.0 / 7980.0).margin(1e-9));
  CHECK(cmp.kendall_tau == Catch::Approx(9.0 / 19.0).margin(1e-9));
  REQUIRE(!cmp.deltas.empty());
  CHECK(cmp.deltas[0].name == "India");  // largest movement first
  CHECK(cmp.deltas[0].delta == 16);
  for (const auto& d : cmp.deltas)
    if (d.name == "United States") CHECK(d.delta == 0);
}

TEST_CASE("dense ranks group exact ties") {
  DecisionMatrix m;
  m.alternatives = {"a", "b", "c", "d"};
  m.criteria = {{"c1", Direction::benefit, 1.0}};
  m.x = {{4}, {9}, {4}, {1}};
  auto r = topsis(m);
  CHECK(r.rank == std::vector<int>{2, 1, 3, 4});        // input order breaks the tie
  CHECK(r.dense_rank == std::vector<int>{2, 1, 2, 3});  // but they share the dense rank
}

TEST_CASE("report tables have the published column order") {
  auto rows = load_indicator_table(kFixtures + "/fixtures/country_indicators.csv");
  auto tm = build_matrix(rows, default_topsis_criteria());
  auto vm = build_matrix(rows, default_vikor_criteria());
  auto csv = rank_report_csv(tm, topsis(tm), vikor(vm, 0.5));
  CHECK(csv.find("Country,T.s,T.r,V.S,V.R,V.Q,V.r,T.r.dense,V.r.dense\n") == 0);
  // rows keep matrix order; the fixture lists United States first
  auto first_row = csv.substr(csv.find('\n') + 1);
  CHECK(first_row.find("United States,0.66") == 0);

  auto cmp = rank_compare({{"x", 1}, {"y", 2}}, {{"x", 2}, {"y", 1}});
  auto ccsv = rank_compare_csv(cmp);
  CHECK(ccsv.find("Country,rank_a,rank_b,delta\n") == 0);
  CHECK(ccsv.find("x,1,2,1") != std::string::npos);
}
