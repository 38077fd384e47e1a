#include <cmath>
#include <iomanip>
#include <sstream>

#include "common.hpp"
#include "syncov/original_polynomial.hpp"
#include "syncov/pipeline/pipeline.hpp"
#include "syncov/polynomial.hpp"
#include "syncov/tree_families.hpp"

namespace syncov::pipeline {

std::optional<double> loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (x[i] > 0 && y[i] > 0) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  }
  if (lx.size() < 2) return std::nullopt;
  const double n = static_cast<double>(lx.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  if (sxx == 0) return std::nullopt;
  return sxy / sxx;
}

BenchReport run_bench(const Config& config) {
  BenchReport report;
  report.term_budget = config.term_budget;
  for (int q : config.bench_q) {
    BenchFit fit;
    fit.q = q;
    std::vector<double> nodes_ok, mults, nodes_all, work;
    for (int t : config.bench_t) {
      LabelVocabulary vocab;
      const auto tree = binary_chain_tree(t, q, vocab);
      BenchRow row;
      row.q = q;
      row.t = t;
      row.nodes = tree.size();

      SimplifiedStats stats;
      Stopwatch sw;
      const auto simple = simplified_polynomial(tree, vocab, &stats);
      row.simplified_seconds = sw.seconds();
      row.simplified_terms = simple.term_count();
      row.simplified_work = stats.work();
      nodes_all.push_back(static_cast<double>(row.nodes));
      work.push_back(static_cast<double>(row.simplified_work));

      Stopwatch so;
      try {
        const auto original = original_polynomial(tree, vocab, config.term_budget);
        row.original_ok = true;
        row.original_terms = original.polynomial.terms.term_count();
        row.multiplications = original.stats.multiplications;
        row.additions = original.stats.additions;
        row.peak_terms = original.stats.peak_terms;
        nodes_ok.push_back(static_cast<double>(row.nodes));
        mults.push_back(static_cast<double>(row.multiplications));
        fit.term_ratio = static_cast<double>(row.original_terms) /
                         static_cast<double>(row.simplified_terms);
        fit.ratio_t = t;
      } catch (const TermExplosion& e) {
        row.note = e.what();
      }
      row.original_seconds = so.seconds();
      report.rows.push_back(std::move(row));
    }
    fit.original_slope = loglog_slope(nodes_ok, mults);
    fit.simplified_slope = loglog_slope(nodes_all, work);
    report.fits.push_back(fit);
  }
  return report;
}

nlohmann::ordered_json bench_to_json(const BenchReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    json j = {{"q", row.q},
              {"t", row.t},
              {"nodes", row.nodes},
              {"simplified_terms", row.simplified_terms},
              {"simplified_work", row.simplified_work},
              {"simplified_seconds", row.simplified_seconds},
              {"original_status", row.original_ok ? "ok" : "budget_exhausted"}};
    if (row.original_ok) {
      j["original_terms"] = row.original_terms;
      j["multiplications"] = row.multiplications;
      j["additions"] = row.additions;
      j["peak_terms"] = row.peak_terms;
    } else {
      j["note"] = row.note;
    }
    j["original_seconds"] = row.original_seconds;
    rows.push_back(std::move(j));
  }
  auto opt = [](const auto& v) { return v ? json(*v) : json(nullptr); };
  json fits = json::array();
  for (const auto& f : r.fits) {
    fits.push_back({{"q", f.q},
                    {"original_multiplication_slope", opt(f.original_slope)},
                    {"simplified_work_slope", opt(f.simplified_slope)},
                    {"term_ratio_at_largest_feasible_t", opt(f.term_ratio)},
                    {"largest_feasible_t", opt(f.ratio_t)}});
  }
  return {{"tool", "syncov"},
          {"version", toolkit_version()},
          {"term_budget", r.term_budget},
          {"slope_axis", "log(node count)"},
          {"rows", rows},
          {"fits", fits}};
}

std::string bench_table(const BenchReport& r) {
  std::ostringstream os;
  os << std::left << std::setw(3) << "q" << std::setw(5) << "t" << std::right << std::setw(7)
     << "nodes" << std::setw(12) << "simp.terms" << std::setw(11) << "simp.work" << std::setw(12)
     << "orig.terms" << std::setw(14) << "orig.mults" << std::setw(11) << "simp.s"
     << std::setw(11) << "orig.s" << '\n';
  os << std::setprecision(3);
  for (const auto& row : r.rows) {
    os << std::left << std::setw(3) << row.q << std::setw(5) << row.t << std::right << std::setw(7)
       << row.nodes << std::setw(12) << row.simplified_terms << std::setw(11)
       << row.simplified_work;
    if (row.original_ok) {
      os << std::setw(12) << row.original_terms << std::setw(14) << row.multiplications;
    } else {
      os << std::setw(12) << "> budget" << std::setw(14) << "-";
    }
    os << std::setw(11) << row.simplified_seconds << std::setw(11) << row.original_seconds << '\n';
  }
  os << '\n';
  auto show = [&](const std::optional<double>& v) {
    if (v) {
      os << std::fixed << std::setprecision(2) << *v << std::defaultfloat;
    } else {
      os << "n/a";
    }
  };
  for (const auto& f : r.fits) {
    os << "q=" << f.q << ": original mults slope ";
    show(f.original_slope);
    os << ", simplified work slope ";
    show(f.simplified_slope);
    if (f.term_ratio) {
      os << ", term ratio ";
      show(f.term_ratio);
      os << "x at t=" << *f.ratio_t;
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace syncov::pipeline
