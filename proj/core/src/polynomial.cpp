#include "syncov/polynomial.hpp"

#include <algorithm>
#include <limits>

#include "syncov/error.hpp"

namespace syncov {

Polynomial::Polynomial(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.vector < b.vector; });
  terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (t.multiplicity == 0) continue;
    term_count_ += t.multiplicity;
    if (!terms_.empty() && terms_.back().vector == t.vector) {
      terms_.back().multiplicity += t.multiplicity;
    } else {
      terms_.push_back(std::move(t));
    }
  }
}

Polynomial Polynomial::from_vectors(std::vector<TermVector> vectors) {
  std::vector<Term> terms;
  terms.reserve(vectors.size());
  for (auto& v : vectors) terms.push_back({std::move(v), 1});
  return Polynomial(std::move(terms));
}

Polynomial simplified_polynomial(const DependencyTree& tree, const LabelVocabulary& vocab,
                                 SimplifiedStats* stats) {
  tree.check_labels(vocab);

  std::vector<Term> terms;
  terms.reserve(tree.size());
  SimplifiedStats local;

  // Explicit stack of (node position, next child index).
  std::vector<std::pair<std::size_t, std::size_t>> stack;
  stack.reserve(tree.height());
  PrefixPath prefix;

  auto enter = [&](std::size_t pos) {
    prefix.push(tree.label(pos));
    terms.push_back({prefix.snapshot(), 1});
    ++local.nodes_visited;
    local.entries_written += prefix.nnz();
    stack.emplace_back(pos, 0);
  };

  enter(tree.root());
  while (!stack.empty()) {
    const std::size_t pos = stack.back().first;
    const auto children = tree.children(pos);
    if (stack.back().second < children.size()) {
      enter(children[stack.back().second++]);
    } else {
      prefix.pop(tree.label(pos));
      stack.pop_back();
    }
  }

  if (stats != nullptr) *stats = local;
  return Polynomial(std::move(terms));
}

namespace {

// Sum over p's terms of the distance to the nearest term of q, weighted by
// multiplicity.
double directed_chamfer(const Polynomial& p, const Polynomial& q) {
  double total = 0.0;
  for (const auto& s : p.terms()) {
    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    for (const auto& t : q.terms()) {
      best = std::min(best, manhattan_distance(s.vector, t.vector));
      if (best == 0) break;
    }
    total += static_cast<double>(best) * static_cast<double>(s.multiplicity);
  }
  return total;
}

}  // namespace

double polynomial_distance(const Polynomial& p, const Polynomial& q) {
  if (p.empty() || q.empty()) {
    throw DomainError("polynomial_distance requires non-empty polynomials");
  }
  const double numerator = directed_chamfer(p, q) + directed_chamfer(q, p);
  return numerator / static_cast<double>(p.term_count() + q.term_count());
}

std::string format_polynomial(const Polynomial& p, const LabelVocabulary& vocab) {
  std::string out;
  for (const auto& term : p.terms()) {
    if (!out.empty()) out += " + ";
    if (term.multiplicity != 1) out += std::to_string(term.multiplicity) + " ";
    bool first = true;
    for (const auto& e : term.vector.entries()) {
      if (!first) out += '*';
      first = false;
      out += e.label < vocab.size() ? vocab.name(e.label) : "x" + std::to_string(e.label);
      if (e.exponent != 1) out += "^" + std::to_string(e.exponent);
    }
    if (first) out += '1';
  }
  return out;
}

}  // namespace syncov
