#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bibliorank/csv.hpp"
#include "bibliorank/errors.hpp"
#include "bibliorank/record.hpp"
#include "bibliorank/text.hpp"

namespace bibliorank {

struct CountryIndicators {
  std::string country;
  double pub = 0;        // weighted publication count
  double cites = 0;      // weighted citation total
  double cpp = 0;        // citations per publication
  double std_dev = 0;    // sample stdev of citation counts (0 when pub <= 1)
  double ncp = 0;        // share of uncited publications
  double max_cites = 0;
  std::optional<double> sis;          // scientific-infrastructure score, when known
  std::optional<double> pub_per_sis;  // pub / sis
  bool degenerate_std = false;
};

enum class Counting { full, fractional };

inline std::map<std::string, double> load_sis_table(const std::string& path) {
  std::map<std::string, double> sis;
  auto rows = read_csv_file(path);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.size() < 2) throw ValidationError("sis table: expected 2 columns in " + path);
    auto value = parse_double(row[1]);
    if (!value) {
      if (i == 0) continue;  // header
      throw ValidationError("sis table: bad value '" + row[1] + "' in " + path);
    }
    sis[trim(row[0])] = *value;
  }
  if (sis.empty()) throw ValidationError("sis table: no rows in " + path);
  return sis;
}

// Per-country output indicators. Full counting credits every listed country
// with weight 1; fractional counting splits the record evenly across its
// countries. max_cites stays unweighted either way.
inline std::vector<CountryIndicators> country_indicators(
    const Corpus& corpus, const std::map<std::string, double>& sis,
    Counting counting = Counting::full, std::vector<std::string>* warnings = nullptr) {
  struct Acc {
    std::vector<std::pair<double, double>> obs;  // (citations, weight)
  };
  std::map<std::string, Acc> by_country;
  std::size_t skipped = 0;
  for (const auto& rec : corpus.records) {
    if (rec.countries.empty()) {
      ++skipped;
      continue;
    }
    double w = counting == Counting::full ? 1.0 : 1.0 / static_cast<double>(rec.countries.size());
    for (const auto& country : rec.countries)
      by_country[country].obs.emplace_back(static_cast<double>(rec.citation_count), w);
  }
  if (skipped && warnings)
    warnings->push_back(std::to_string(skipped) + " record(s) without country affiliation skipped");

  std::vector<CountryIndicators> out;
  out.reserve(by_country.size());
  for (const auto& [country, acc] : by_country) {
    CountryIndicators ind;
    ind.country = country;
    double wsum = 0, csum = 0, zsum = 0, cmax = 0;
    for (auto [c, w] : acc.obs) {
      wsum += w;
      csum += w * c;
      if (c == 0) zsum += w;
      cmax = std::max(cmax, c);
    }
    ind.pub = wsum;
    ind.cites = csum;
    ind.cpp = csum / wsum;
    ind.ncp = zsum / wsum;
    ind.max_cites = cmax;
    if (wsum > 1) {
      double ss = 0;
      for (auto [c, w] : acc.obs) ss += w * (c - ind.cpp) * (c - ind.cpp);
      ind.std_dev = std::sqrt(ss / (wsum - 1));
    } else {
      ind.std_dev = 0;
      ind.degenerate_std = true;
      if (warnings)
        warnings->push_back("stdev undefined for " + country + " (single publication), reported as 0");
    }
    auto it = sis.find(country);
    if (it != sis.end() && it->second > 0) {
      ind.sis = it->second;
      ind.pub_per_sis = ind.pub / it->second;
    } else if (warnings) {
      warnings->push_back("no infrastructure score for " + country);
    }
    out.push_back(std::move(ind));
  }

  std::sort(out.begin(), out.end(), [](const CountryIndicators& a, const CountryIndicators& b) {
    if (a.pub != b.pub) return a.pub > b.pub;
    if (a.cites != b.cites) return a.cites > b.cites;
    return a.country < b.country;
  });
  return out;
}

namespace detail {

// Counts render as integers, ratios stick to three decimals so zero prints
// as "0.000" and tables stay byte-stable across load/store cycles.
inline std::string fmt_count(double v) {
  if (v == std::floor(v) && std::abs(v) < 1e15) return std::to_string(static_cast<long long>(v));
  return format_fixed(v, 3);
}

}  // namespace detail

inline std::string indicator_table_csv(const std::vector<CountryIndicators>& rows) {
  std::string out = "Country,Pub,Cites,CPP,Std.Dev,NCP,Max.Cites,Pub.SIS,SIS\n";
  for (const auto& r : rows) {
    out += csv_row({r.country, detail::fmt_count(r.pub), detail::fmt_count(r.cites),
                    format_fixed(r.cpp, 3), format_fixed(r.std_dev, 3), format_fixed(r.ncp, 3),
                    detail::fmt_count(r.max_cites),
                    r.pub_per_sis ? format_fixed(*r.pub_per_sis, 3) : std::string(),
                    r.sis ? detail::fmt_count(*r.sis) : std::string()});
  }
  return out;
}

// Reads a previously written indicator table. Values are taken as they are,
// nothing is recomputed, row order is preserved.
inline std::vector<CountryIndicators> load_indicator_table(const std::string& path) {
  auto rows = read_csv_file(path);
  if (rows.size() < 2) throw ValidationError("indicator table: no data rows in " + path);
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < rows[0].size(); ++i) col[trim(rows[0][i])] = i;
  for (const char* required : {"Country", "Pub", "Cites", "CPP", "Std.Dev", "NCP", "Max.Cites"})
    if (!col.count(required))
      throw ValidationError(std::string("indicator table: missing column ") + required);

  auto cell = [&](const std::vector<std::string>& row, const char* name) -> std::string {
    auto it = col.find(name);
    if (it == col.end() || it->second >= row.size()) return "";
    return row[it->second];
  };
  auto num = [&](const std::vector<std::string>& row, const char* name) {
    auto v = parse_double(cell(row, name));
    if (!v) throw ValidationError(std::string("indicator table: bad ") + name + " value");
    return *v;
  };

  std::vector<CountryIndicators> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    CountryIndicators ind;
    ind.country = trim(cell(rows[r], "Country"));
    if (ind.country.empty()) throw ValidationError("indicator table: empty country name");
    ind.pub = num(rows[r], "Pub");
    ind.cites = num(rows[r], "Cites");
    ind.cpp = num(rows[r], "CPP");
    ind.std_dev = num(rows[r], "Std.Dev");
    ind.ncp = num(rows[r], "NCP");
    ind.max_cites = num(rows[r], "Max.Cites");
    if (auto v = parse_double(cell(rows[r], "Pub.SIS"))) ind.pub_per_sis = *v;
    if (auto v = parse_double(cell(rows[r], "SIS"))) ind.sis = *v;
    out.push_back(std::move(ind));
  }
  return out;
}

struct YearSeries {
  std::map<int, double> counts;
};

inline YearSeries year_series(const Corpus& corpus) {
  YearSeries s;
  for (const auto& rec : corpus.records) s.counts[rec.year] += 1;
  return s;
}

// Average annual growth rate in percent between two observed years:
// 100 * ((end/start)^(1/(end-start)) - 1). Compound, not linear.
inline double apgr(const YearSeries& series, int start_year, int end_year) {
  if (start_year >= end_year)
    throw ValidationError("growth rate: start year must precede end year");
  auto s = series.counts.find(start_year);
  auto e = series.counts.find(end_year);
  if (s == series.counts.end() || e == series.counts.end())
    throw ValidationError("growth rate: both years must be present in the series");
  if (s->second <= 0)
    throw ValidationError("growth rate: undefined for a zero-count start year");
  double span = end_year - start_year;
  return 100.0 * (std::pow(e->second / s->second, 1.0 / span) - 1.0);
}

struct AuthorProduction {
  std::string author;
  long long pub = 0;
  long long cites = 0;
};

inline std::vector<AuthorProduction> author_production(const Corpus& corpus) {
  std::map<std::string, AuthorProduction> by_author;
  for (const auto& rec : corpus.records) {
    for (const auto& a : rec.authors) {
      auto& ap = by_author[a];
      ap.author = a;
      ap.pub += 1;
      ap.cites += rec.citation_count;
    }
  }
  std::vector<AuthorProduction> out;
  out.reserve(by_author.size());
  for (auto& [_, ap] : by_author) out.push_back(std::move(ap));
  std::sort(out.begin(), out.end(), [](const AuthorProduction& a, const AuthorProduction& b) {
    if (a.pub != b.pub) return a.pub > b.pub;
    if (a.cites != b.cites) return a.cites > b.cites;
    return a.author < b.author;
  });
  return out;
}

}  // namespace bibliorank
