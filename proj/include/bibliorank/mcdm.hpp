#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bibliorank/csv.hpp"
#include "bibliorank/errors.hpp"
#include "bibliorank/indicators.hpp"
#include "bibliorank/text.hpp"

namespace bibliorank {

enum class Direction { benefit, cost };

struct Criterion {
  std::string name;
  Direction direction = Direction::benefit;
  double weight = 0;  // in (0,1], weights across a matrix sum to 1
};

struct DecisionMatrix {
  std::vector<std::string> alternatives;
  std::vector<Criterion> criteria;
  std::vector<std::vector<double>> x;  // rows = alternatives, cols = criteria

  std::size_t rows() const { return alternatives.size(); }
  std::size_t cols() const { return criteria.size(); }

  void check() const {
    if (alternatives.empty() || criteria.empty())
      throw ValidationError("decision matrix: needs at least one alternative and one criterion");
    if (x.size() != alternatives.size())
      throw ValidationError("decision matrix: row count does not match alternatives");
    double wsum = 0;
    for (const auto& c : criteria) {
      if (!(c.weight > 0)) throw ValidationError("decision matrix: weight of '" + c.name + "' must be positive");
      wsum += c.weight;
    }
    if (std::abs(wsum - 1.0) > 1e-9)
      throw ValidationError("decision matrix: weights sum to " + format_number(wsum) + ", expected 1");
    for (const auto& row : x) {
      if (row.size() != criteria.size())
        throw ValidationError("decision matrix: ragged row");
      for (double v : row)
        if (!std::isfinite(v)) throw ValidationError("decision matrix: non-finite value");
    }
  }
};

// Scales weights to sum 1. Returns true when rescaling actually changed them.
inline bool normalize_weights(std::vector<Criterion>& criteria) {
  double sum = 0;
  for (const auto& c : criteria) {
    if (!(c.weight > 0))
      throw ValidationError("criterion '" + c.name + "' must have a positive weight");
    sum += c.weight;
  }
  if (std::abs(sum - 1.0) <= 1e-9) return false;
  for (auto& c : criteria) c.weight /= sum;
  return true;
}

// Config format: one criterion per line, `name direction weight`, comments
// with '#'. Weights not summing to 1 are rescaled with a warning.
inline std::vector<Criterion> load_criteria(const std::string& path,
                                            std::vector<std::string>* warnings = nullptr) {
  std::vector<Criterion> criteria;
  for (const std::string& raw : split(read_file(path), '\n')) {
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> parts;
    for (const auto& p : split(collapse_ws(line), ' '))
      if (!p.empty()) parts.push_back(p);
    if (parts.size() != 3)
      throw ValidationError("criteria config: expected 'name direction weight', got '" + line + "'");
    Criterion c;
    c.name = to_lower(parts[0]);
    std::string dir = to_lower(parts[1]);
    if (dir == "benefit") c.direction = Direction::benefit;
    else if (dir == "cost") c.direction = Direction::cost;
    else throw ValidationError("criteria config: direction must be benefit or cost, got '" + parts[1] + "'");
    auto w = parse_double(parts[2]);
    if (!w || !(*w > 0))
      throw ValidationError("criteria config: bad weight '" + parts[2] + "' for " + c.name);
    c.weight = *w;
    for (const auto& seen : criteria)
      if (seen.name == c.name) throw ValidationError("criteria config: duplicate criterion " + c.name);
    criteria.push_back(std::move(c));
  }
  if (criteria.empty()) throw ValidationError("criteria config: no criteria in " + path);
  if (normalize_weights(criteria) && warnings)
    warnings->push_back("criteria weights did not sum to 1 and were rescaled");
  return criteria;
}

// Equal-weight defaults. The two methods settle on different criterion sets:
// the publications-per-infrastructure ratio participates in the closeness
// ranking but not in the regret ranking (see docs/mcdm_configuration_notes.md
// for how these were pinned down).
inline std::vector<Criterion> default_topsis_criteria() {
  std::vector<Criterion> c;
  for (const char* name : {"pub", "cites", "cpp", "std_dev", "ncp", "max_cites", "pub_sis", "sis"})
    c.push_back({name, std::string(name) == "ncp" ? Direction::cost : Direction::benefit, 1.0 / 8.0});
  return c;
}

inline std::vector<Criterion> default_vikor_criteria() {
  std::vector<Criterion> c;
  for (const char* name : {"pub", "cites", "cpp", "std_dev", "ncp", "max_cites", "sis"})
    c.push_back({name, std::string(name) == "ncp" ? Direction::cost : Direction::benefit, 1.0 / 7.0});
  return c;
}

// Assembles the decision matrix from indicator rows. Rows missing a selected
// optional column (infrastructure scores) are excluded with a warning;
// duplicate country names are kept, that is the caller's mess to own.
inline DecisionMatrix build_matrix(const std::vector<CountryIndicators>& rows,
                                   const std::vector<Criterion>& criteria,
                                   std::vector<std::string>* warnings = nullptr) {
  DecisionMatrix m;
  m.criteria = criteria;
  normalize_weights(m.criteria);

  auto value_of = [](const CountryIndicators& r, const std::string& name) -> std::optional<double> {
    if (name == "pub") return r.pub;
    if (name == "cites") return r.cites;
    if (name == "cpp") return r.cpp;
    if (name == "std_dev") return r.std_dev;
    if (name == "ncp") return r.ncp;
    if (name == "max_cites") return r.max_cites;
    if (name == "sis") return r.sis;
    if (name == "pub_sis") return r.pub_per_sis;
    throw ValidationError("unknown criterion '" + name + "'");
  };

  std::map<std::string, int> name_count;
  for (const auto& row : rows) {
    std::vector<double> values;
    values.reserve(m.criteria.size());
    bool complete = true;
    for (const auto& c : m.criteria) {
      auto v = value_of(row, c.name);
      if (!v) {
        complete = false;
        if (warnings)
          warnings->push_back("excluded " + row.country + ": no value for criterion " + c.name);
        break;
      }
      values.push_back(*v);
    }
    if (!complete) continue;
    if (++name_count[row.country] == 2 && warnings)
      warnings->push_back("duplicate alternative '" + row.country + "' retained");
    m.alternatives.push_back(row.country);
    m.x.push_back(std::move(values));
  }
  if (m.alternatives.empty()) throw ValidationError("decision matrix: no usable rows");
  return m;
}

namespace detail {

// rank[i] = 1-based position under the comparator; stable, so equal scores
// keep input order. dense[i] groups exact ties onto one rank.
inline void assign_ranks(const std::vector<double>& score, bool descending,
                         std::vector<int>& rank, std::vector<int>& dense) {
  const std::size_t n = score.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return descending ? score[a] > score[b] : score[a] < score[b];
  });
  rank.assign(n, 0);
  dense.assign(n, 0);
  int d = 0;
  for (std::size_t pos = 0; pos < n; ++pos) {
    if (pos == 0 || score[order[pos]] != score[order[pos - 1]]) ++d;
    rank[order[pos]] = static_cast<int>(pos) + 1;
    dense[order[pos]] = d;
  }
}

}  // namespace detail

enum class TopsisNorm { vector, minmax };

struct TopsisOptions {
  TopsisNorm normalization = TopsisNorm::vector;
  // With one alternative both distances vanish; opting in defines C = 1.
  bool allow_single_alternative = false;
};

struct TopsisResult {
  std::vector<double> closeness;
  std::vector<double> dist_ideal;
  std::vector<double> dist_anti;
  std::vector<int> rank;        // 1 = best, descending closeness
  std::vector<int> dense_rank;  // exact ties share a rank
  bool degenerate = false;      // some alternative coincided with both ideal points
};

// Closeness to the ideal point: normalize columns, weight them, measure the
// Euclidean distance to the per-column best (A+) and worst (A-), then
// C = D- / (D+ + D-). Higher C is better.
inline TopsisResult topsis(const DecisionMatrix& m, TopsisOptions opts = {}) {
  m.check();
  const std::size_t n = m.rows(), k = m.cols();
  if (n < 2) {
    if (n == 1 && opts.allow_single_alternative) {
      TopsisResult r;
      r.closeness = {1.0};
      r.dist_ideal = {0.0};
      r.dist_anti = {0.0};
      r.rank = {1};
      r.dense_rank = {1};
      return r;
    }
    throw ValidationError("topsis: need at least two alternatives");
  }

  // normalized and weighted value matrix
  std::vector<std::vector<double>> v(n, std::vector<double>(k, 0.0));
  for (std::size_t j = 0; j < k; ++j) {
    double w = m.criteria[j].weight;
    if (opts.normalization == TopsisNorm::vector) {
      double norm2 = 0;
      for (std::size_t i = 0; i < n; ++i) norm2 += m.x[i][j] * m.x[i][j];
      if (norm2 <= 0)
        throw ValidationError("topsis: column '" + m.criteria[j].name + "' has zero norm");
      double inv = 1.0 / std::sqrt(norm2);
      for (std::size_t i = 0; i < n; ++i) v[i][j] = w * m.x[i][j] * inv;
    } else {
      // min-max folds the direction in, every column becomes benefit-like
      double lo = m.x[0][j], hi = m.x[0][j];
      for (std::size_t i = 1; i < n; ++i) {
        lo = std::min(lo, m.x[i][j]);
        hi = std::max(hi, m.x[i][j]);
      }
      double range = hi - lo;
      for (std::size_t i = 0; i < n; ++i) {
        double r = range > 0 ? (m.x[i][j] - lo) / range : 0.0;
        if (m.criteria[j].direction == Direction::cost && range > 0) r = 1.0 - r;
        v[i][j] = w * r;
      }
    }
  }

  std::vector<double> ideal(k), anti(k);
  for (std::size_t j = 0; j < k; ++j) {
    double lo = v[0][j], hi = v[0][j];
    for (std::size_t i = 1; i < n; ++i) {
      lo = std::min(lo, v[i][j]);
      hi = std::max(hi, v[i][j]);
    }
    bool benefit_like = opts.normalization == TopsisNorm::minmax ||
                        m.criteria[j].direction == Direction::benefit;
    ideal[j] = benefit_like ? hi : lo;
    anti[j] = benefit_like ? lo : hi;
  }

  TopsisResult r;
  r.closeness.resize(n);
  r.dist_ideal.resize(n);
  r.dist_anti.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double dp = 0, dm = 0;
    for (std::size_t j = 0; j < k; ++j) {
      dp += (v[i][j] - ideal[j]) * (v[i][j] - ideal[j]);
      dm += (v[i][j] - anti[j]) * (v[i][j] - anti[j]);
    }
    r.dist_ideal[i] = std::sqrt(dp);
    r.dist_anti[i] = std::sqrt(dm);
    double denom = r.dist_ideal[i] + r.dist_anti[i];
    if (denom > 0) {
      r.closeness[i] = r.dist_anti[i] / denom;
    } else {
      // only happens when every column is constant; call everything middling
      r.closeness[i] = 0.5;
      r.degenerate = true;
    }
  }
  detail::assign_ranks(r.closeness, /*descending=*/true, r.rank, r.dense_rank);
  return r;
}

struct VikorResult {
  std::vector<double> s;  // group utility, lower is better
  std::vector<double> r;  // individual regret
  std::vector<double> q;  // compromise index
  std::vector<int> rank;        // ascending q
  std::vector<int> dense_rank;
  std::vector<std::string> compromise_set;  // best-first
  double v = 0.5;
  bool acceptable_advantage = false;
  bool acceptable_stability = false;
  bool s_degenerate = false;  // S constant, its Q term zeroed
  bool r_degenerate = false;
};

// Compromise ranking: per-criterion normalized regret g weighted by w,
// S = sum, R = max, Q blends the two with trade-off v. Lowest Q wins when
// the advantage and stability conditions hold; otherwise the compromise set
// widens by the standard extension rules.
inline VikorResult vikor(const DecisionMatrix& m, double v = 0.5) {
  m.check();
  if (!(v >= 0.0 && v <= 1.0)) throw ValidationError("vikor: trade-off v must lie in [0,1]");
  const std::size_t n = m.rows(), k = m.cols();
  if (n < 2) throw ValidationError("vikor: need at least two alternatives");

  VikorResult res;
  res.v = v;
  res.s.assign(n, 0.0);
  res.r.assign(n, 0.0);

  for (std::size_t j = 0; j < k; ++j) {
    double lo = m.x[0][j], hi = m.x[0][j];
    for (std::size_t i = 1; i < n; ++i) {
      lo = std::min(lo, m.x[i][j]);
      hi = std::max(hi, m.x[i][j]);
    }
    if (hi == lo)
      throw ValidationError("vikor: column '" + m.criteria[j].name +
                            "' is constant, range normalization undefined");
    bool benefit = m.criteria[j].direction == Direction::benefit;
    double best = benefit ? hi : lo;
    double range = hi - lo;
    double w = m.criteria[j].weight;
    for (std::size_t i = 0; i < n; ++i) {
      double g = w * (benefit ? (best - m.x[i][j]) : (m.x[i][j] - best)) / range;
      res.s[i] += g;
      res.r[i] = std::max(res.r[i], g);
    }
  }

  double s_lo = *std::min_element(res.s.begin(), res.s.end());
  double s_hi = *std::max_element(res.s.begin(), res.s.end());
  double r_lo = *std::min_element(res.r.begin(), res.r.end());
  double r_hi = *std::max_element(res.r.begin(), res.r.end());
  res.s_degenerate = s_hi == s_lo;
  res.r_degenerate = r_hi == r_lo;

  res.q.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double qs = res.s_degenerate ? 0.0 : (res.s[i] - s_lo) / (s_hi - s_lo);
    double qr = res.r_degenerate ? 0.0 : (res.r[i] - r_lo) / (r_hi - r_lo);
    res.q[i] = v * qs + (1.0 - v) * qr;
  }
  detail::assign_ranks(res.q, /*descending=*/false, res.rank, res.dense_rank);

  // compromise conditions on the Q-ordered list
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return res.q[a] < res.q[b]; });
  double dq = 1.0 / static_cast<double>(n - 1);
  std::size_t a1 = order[0], a2 = order[1];
  res.acceptable_advantage = res.q[a2] - res.q[a1] >= dq;
  res.acceptable_stability = res.s[a1] == s_lo || res.r[a1] == r_lo;

  if (res.acceptable_advantage && res.acceptable_stability) {
    res.compromise_set = {m.alternatives[a1]};
  } else if (res.acceptable_advantage) {
    // stability failed: the runner-up joins
    res.compromise_set = {m.alternatives[a1], m.alternatives[a2]};
  } else {
    // advantage failed: everyone within dq of the best joins
    for (std::size_t pos = 0; pos < n; ++pos) {
      if (res.q[order[pos]] - res.q[a1] < dq)
        res.compromise_set.push_back(m.alternatives[order[pos]]);
      else
        break;
    }
  }
  return res;
}

struct RankDelta {
  std::string name;
  int rank_a = 0;
  int rank_b = 0;
  int delta = 0;  // rank_b - rank_a
};

struct RankComparison {
  double spearman_rho = 0;
  double kendall_tau = 0;  // tau-a, ties count as neither concordant nor discordant
  std::vector<RankDelta> deltas;  // largest movement first
};

inline RankComparison rank_compare(const std::map<std::string, int>& a,
                                   const std::map<std::string, int>& b) {
  if (a.size() != b.size())
    throw ValidationError("rank compare: rankings cover different alternative sets");
  if (a.size() < 2) throw ValidationError("rank compare: need at least two alternatives");

  RankComparison cmp;
  std::vector<double> ra, rb;
  for (const auto& [name, rank] : a) {
    auto it = b.find(name);
    if (it == b.end())
      throw ValidationError("rank compare: '" + name + "' missing from second ranking");
    cmp.deltas.push_back({name, rank, it->second, it->second - rank});
    ra.push_back(rank);
    rb.push_back(it->second);
  }

  const std::size_t n = ra.size();
  double mean_a = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
  double mean_b = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
  double cov = 0, var_a = 0, var_b = 0;
  for (std::size_t i = 0; i < n; ++i) {
    cov += (ra[i] - mean_a) * (rb[i] - mean_b);
    var_a += (ra[i] - mean_a) * (ra[i] - mean_a);
    var_b += (rb[i] - mean_b) * (rb[i] - mean_b);
  }
  if (var_a == 0 || var_b == 0)
    throw ValidationError("rank compare: constant ranking has no defined correlation");
  cmp.spearman_rho = cov / std::sqrt(var_a * var_b);

  long long concordant = 0, discordant = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double prod = (ra[i] - ra[j]) * (rb[i] - rb[j]);
      if (prod > 0) ++concordant;
      else if (prod < 0) ++discordant;
    }
  cmp.kendall_tau = static_cast<double>(concordant - discordant) /
                    (static_cast<double>(n) * (n - 1) / 2.0);

  std::sort(cmp.deltas.begin(), cmp.deltas.end(), [](const RankDelta& x, const RankDelta& y) {
    if (std::abs(x.delta) != std::abs(y.delta)) return std::abs(x.delta) > std::abs(y.delta);
    return x.name < y.name;
  });
  return cmp;
}

// Table in the published column order, dense ranks appended for tie
// inspection. Scores carry three decimals like the source table.
inline std::string rank_report_csv(const DecisionMatrix& m, const TopsisResult& t,
                                   const VikorResult& v) {
  std::string out = "Country,T.s,T.r,V.S,V.R,V.Q,V.r,T.r.dense,V.r.dense\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out += csv_row({m.alternatives[i], format_fixed(t.closeness[i], 3), std::to_string(t.rank[i]),
                    format_fixed(v.s[i], 3), format_fixed(v.r[i], 3), format_fixed(v.q[i], 3),
                    std::to_string(v.rank[i]), std::to_string(t.dense_rank[i]),
                    std::to_string(v.dense_rank[i])});
  }
  return out;
}

inline std::string rank_compare_csv(const RankComparison& cmp) {
  std::string out = "Country,rank_a,rank_b,delta\n";
  for (const auto& d : cmp.deltas)
    out += csv_row({d.name, std::to_string(d.rank_a), std::to_string(d.rank_b), std::to_string(d.delta)});
  return out;
}

}  // namespace bibliorank
